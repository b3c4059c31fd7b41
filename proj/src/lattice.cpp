#include "torwav/lattice.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "torwav/errors.hpp"

namespace torwav {

IntMat IntMat::identity(int dim) {
  IntMat m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::transposed() const {
  IntMat t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.at(j, i) = at(i, j);
  return t;
}

IntMat IntMat::operator*(const IntMat& o) const {
  IntMat r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const std::int64_t aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < n; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

std::vector<std::int64_t> IntMat::operator*(std::span<const std::int64_t> v) const {
  std::vector<std::int64_t> r(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i] += at(i, j) * v[j];
  return r;
}

std::int64_t int_det(const IntMat& m) {
  // Bareiss: all intermediate divisions are exact.
  const int n = m.n;
  if (n == 0) return 1;
  std::vector<std::int64_t> w = m.a;
  auto at = [&](int i, int j) -> std::int64_t& { return w[static_cast<std::size_t>(i) * n + j]; };
  std::int64_t sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

IntMat int_adjugate(const IntMat& m) {
  const int n = m.n;
  IntMat adj(n);
  if (n == 1) {
    adj.at(0, 0) = 1;
    return adj;
  }
  IntMat minor(n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor.at(mr, mc) = m.at(r, c);
          ++mc;
        }
        ++mr;
      }
      const std::int64_t cof = (((i + j) % 2) ? -1 : 1) * int_det(minor);
      adj.at(j, i) = cof;  // adjugate = transpose of cofactor matrix
    }
  return adj;
}

SmithNormalForm smith_normal_form(const IntMat& m) {
  const int n = m.n;
  SmithNormalForm f{IntMat::identity(n), m, IntMat::identity(n)};
  IntMat& U = f.U;
  IntMat& D = f.D;
  IntMat& V = f.V;

  auto row_op = [&](int dst, int src, std::int64_t c) {  // row dst -= c * row src
    for (int j = 0; j < n; ++j) D.at(dst, j) -= c * D.at(src, j);
    for (int j = 0; j < n; ++j) U.at(j, src) += c * U.at(j, dst);
  };
  auto col_op = [&](int dst, int src, std::int64_t c) {  // col dst -= c * col src
    for (int i = 0; i < n; ++i) D.at(i, dst) -= c * D.at(i, src);
    for (int i = 0; i < n; ++i) V.at(src, i) += c * V.at(dst, i);
  };
  auto row_swap = [&](int r, int s) {
    for (int j = 0; j < n; ++j) std::swap(D.at(r, j), D.at(s, j));
    for (int j = 0; j < n; ++j) std::swap(U.at(j, r), U.at(j, s));
  };
  auto col_swap = [&](int r, int s) {
    for (int i = 0; i < n; ++i) std::swap(D.at(i, r), D.at(i, s));
    for (int i = 0; i < n; ++i) std::swap(V.at(r, i), V.at(s, i));
  };
  auto row_negate = [&](int r) {
    for (int j = 0; j < n; ++j) D.at(r, j) = -D.at(r, j);
    for (int j = 0; j < n; ++j) U.at(j, r) = -U.at(j, r);
  };

  for (int k = 0; k < n; ++k) {
    for (;;) {
      // Move a minimal nonzero pivot of the trailing block to (k,k).
      int pi = -1, pj = -1;
      std::int64_t best = 0;
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j) {
          const std::int64_t v = std::llabs(D.at(i, j));
          if (v != 0 && (best == 0 || v < best)) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) break;  // trailing block all zero
      if (pi != k) row_swap(pi, k);
      if (pj != k) col_swap(pj, k);
      if (D.at(k, k) < 0) row_negate(k);

      bool reduced = true;
      for (int i = k + 1; i < n; ++i) {
        const std::int64_t c = D.at(i, k) / D.at(k, k);
        if (c != 0) row_op(i, k, c);
        if (D.at(i, k) != 0) reduced = false;
      }
      for (int j = k + 1; j < n; ++j) {
        const std::int64_t c = D.at(k, j) / D.at(k, k);
        if (c != 0) col_op(j, k, c);
        if (D.at(k, j) != 0) reduced = false;
      }
      if (!reduced) continue;

      // Enforce divisibility d_k | trailing entries.
      bool divides = true;
      for (int i = k + 1; i < n && divides; ++i)
        for (int j = k + 1; j < n && divides; ++j)
          if (D.at(i, j) % D.at(k, k) != 0) {
            // Fold row i into row k and restart reduction of this pivot.
            row_op(k, i, -1);
            divides = false;
          }
      if (divides) break;
    }
  }
  return f;
}

namespace {

Eigen::MatrixXd to_eigen(const IntMat& m) {
  Eigen::MatrixXd e(m.n, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) e(i, j) = static_cast<double>(m.at(i, j));
  return e;
}

}  // namespace

DilationMatrix DilationMatrix::validate(const IntMat& m, double eps_eig) {
  if (m.n <= 0 || m.a.size() != static_cast<std::size_t>(m.n) * m.n)
    fail(Errc::ParseError, "matrix must be square and non-empty");
  DilationMatrix d;
  d.entries_ = m;
  d.det_ = int_det(m);
  if (d.det_ == 0) fail(Errc::Singular, "determinant is zero");
  d.q_ = static_cast<int>(std::llabs(d.det_));

  const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(to_eigen(m), false).eigenvalues();
  for (int i = 0; i < ev.size(); ++i)
    if (std::abs(ev[i]) <= 1.0 + eps_eig)
      fail(Errc::NotExpanding, "eigenvalue modulus " + std::to_string(std::abs(ev[i])) +
                                   " is not > 1");

  d.transpose_ = m.transposed();
  d.adjugate_ = int_adjugate(m);
  d.adjugate_t_ = int_adjugate(d.transpose_);
  return d;
}

bool DilationMatrix::in_sublattice(std::span<const std::int64_t> k) const {
  // k in A Z^n  iff  adj(A) k == 0 (mod det A) componentwise.
  const auto y = adjugate_ * k;
  for (const std::int64_t v : y)
    if (v % det_ != 0) return false;
  return true;
}

CosetReps coset_representatives(const DilationMatrix& A) {
  const int n = A.dim();
  const SmithNormalForm f = smith_normal_form(A.entries());
  std::vector<std::int64_t> d(n);
  for (int i = 0; i < n; ++i) d[i] = std::llabs(f.D.at(i, i));

  // Enumerate the SNF box, map back through U, then reduce into A[0,1)^n:
  // p - A*floor(A^{-1} p) with A^{-1} p computed exactly as adj(A) p / det.
  const IntMat& adj = A.adjugate();
  const std::int64_t det = A.det();
  std::vector<std::vector<std::int64_t>> reps;
  std::vector<std::int64_t> r(n, 0);
  for (;;) {
    auto p = f.U * std::span<const std::int64_t>(r);
    const auto y = adj * std::span<const std::int64_t>(p);
    std::vector<std::int64_t> fl(n);
    for (int i = 0; i < n; ++i) {
      // floor(y_i / det) for signed det
      std::int64_t quo = y[i] / det, rem = y[i] % det;
      if (rem != 0 && ((rem < 0) != (det < 0))) --quo;
      fl[i] = quo;
    }
    const auto afl = A.entries() * std::span<const std::int64_t>(fl);
    for (int i = 0; i < n; ++i) p[i] -= afl[i];
    reps.push_back(std::move(p));

    int axis = n - 1;
    while (axis >= 0) {
      if (++r[axis] < d[axis]) break;
      r[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }

  std::sort(reps.begin(), reps.end());
  // Zero vector reduces to zero and sorts first only when no negative
  // coordinates appear; enforce the contract explicitly.
  const std::vector<std::int64_t> zero(n, 0);
  auto it = std::find(reps.begin(), reps.end(), zero);
  if (it != reps.begin() && it != reps.end()) std::rotate(reps.begin(), it, it + 1);
  return CosetReps{std::move(reps)};
}

DualGroupF dual_group(const DilationMatrix& A) {
  const int n = A.dim();
  // F = (B^{-1} Z^n) / Z^n with B = A^T. Writing B = U D V, the points are
  // V^{-1} D^{-1} r mod 1 over the SNF box; V^{-1} = adj(V) * det(V).
  const SmithNormalForm f = smith_normal_form(A.transpose());
  const std::int64_t detV = int_det(f.V);
  IntMat vinv = int_adjugate(f.V);
  for (auto& x : vinv.a) x *= detV;  // detV = +-1

  std::vector<std::int64_t> d(n);
  for (int i = 0; i < n; ++i) d[i] = std::llabs(f.D.at(i, i));

  std::vector<RationalVec> elems;
  std::vector<std::int64_t> r(n, 0);
  for (;;) {
    RationalVec w(n);
    for (int i = 0; i < n; ++i) {
      Rational acc(0);
      for (int j = 0; j < n; ++j) {
        if (vinv.at(i, j) == 0 || r[j] == 0) continue;
        acc = acc + Rational(vinv.at(i, j) * r[j], d[j]);
      }
      w[i] = acc.mod1();
    }
    elems.push_back(std::move(w));

    int axis = n - 1;
    while (axis >= 0) {
      if (++r[axis] < d[axis]) break;
      r[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }

  std::sort(elems.begin(), elems.end(), lex_less);
  DualGroupF F{std::move(elems)};
  if (F.elements.size() != static_cast<std::size_t>(A.q()))
    fail(Errc::Singular, "dual group enumeration produced wrong cardinality");
  return F;
}

std::size_t DualGroupF::index_of(const RationalVec& w) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == w) return i;
  fail(Errc::ParseError, "point is not an element of F");
}

std::size_t DualGroupF::sum_index(std::size_t i, std::size_t j) const {
  RationalVec s(elements[i].size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = (elements[i][k] + elements[j][k]).mod1();
  return index_of(s);
}

std::size_t DualGroupF::neg_index(std::size_t i) const {
  RationalVec s(elements[i].size());
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = (-elements[i][k]).mod1();
  return index_of(s);
}

}  // namespace torwav
