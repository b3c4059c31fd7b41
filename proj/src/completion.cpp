#include "torwav/completion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "torwav/errors.hpp"
#include "torwav/kernels.hpp"

namespace torwav {

namespace {

GridShape pick_shape(const DualGroupF& F, const std::optional<GridShape>& shape,
                     const TorusFunction* f) {
  GridShape s;
  if (shape)
    s = *shape;
  else if (f && f->has_grid())
    s = f->grid_shape();
  else
    s = default_grid(F);
  if (!grid_compatible(s, F)) fail(Errc::IncompatibleGrid, "grid does not contain F-translates");
  return s;
}

void require_unit_primed_norm(const TorusFunction& h0, const DualGroupF& F, const GridShape& s) {
  const InvariantFunction nrm = bracket(h0, h0, F, /*primed=*/true, s);
  double worst = 0.0;
  for (const cd& z : nrm.fn.grid_values())
    worst = std::max(worst, std::abs(z - cd{1.0, 0.0}));
  if (worst > 1e-6)
    fail(Errc::NotNormalized, "<h0,h0>' deviates from 1 by " + std::to_string(worst));
}

}  // namespace

TorusFunction complete_q2(const TorusFunction& h0, const DilationMatrix& A,
                          const std::optional<GridShape>& shape) {
  if (A.q() != 2) fail(Errc::NotQ2, "exact completion requires q = 2, got q = " + std::to_string(A.q()));
  const DualGroupF F = dual_group(A);
  const GridShape s = pick_shape(F, shape, &h0);
  require_unit_primed_norm(h0.has_grid() || !h0.has_coeffs() ? h0 : h0.sampled(s), F, s);

  const RationalVec& w = F.elements[1];
  // q = 2 makes every coordinate of w either 0 or 1/2; tau = the character of
  // the first axis carrying 1/2, so tau(w) = -1.
  int axis = -1;
  for (std::size_t a = 0; a < w.size(); ++a)
    if (w[a].den == 2) {
      axis = static_cast<int>(a);
      break;
    }
  if (axis < 0) fail(Errc::Singular, "nonidentity element of F has no half coordinate");
  MultiIndex k(A.dim(), 0);
  k[axis] = 1;
  const TorusFunction tau = TorusFunction::character(std::move(k));

  // h1(x) = tau(x) conj(h0(x + w)); x + w is translation by -w.
  RationalVec neg_w(w.size());
  for (std::size_t a = 0; a < w.size(); ++a) neg_w[a] = (-w[a]).mod1();
  TorusFunction g = h0;
  if (!g.has_grid() && g.has_coeffs()) {
    // keep it exact in coefficient space and carry samples too
    g = g.sampled(s);
  }
  const TorusFunction shifted = g.translated(neg_w);
  return tau.sampled(s) * shifted.conjugated();
}

std::pair<TorusFunction, TorusFunction> project_and_complement(
    const TorusFunction& f, const TorusFunction& h0, const DualGroupF& F,
    const std::optional<GridShape>& shape) {
  const GridShape s = pick_shape(F, shape, &f);
  const TorusFunction fs = f.sampled(s);
  const TorusFunction hs = h0.sampled(s);
  require_unit_primed_norm(hs, F, s);
  const InvariantFunction c = bracket(fs, hs, F, /*primed=*/true, s);
  const TorusFunction p = c.fn * hs;
  const TorusFunction comp = fs.grid_only() - p;
  return {p, comp};
}

Eigen::MatrixXcd householder_complete(const Eigen::VectorXcd& row) {
  const Eigen::Index q = row.size();
  const double nrm = row.norm();
  if (std::abs(nrm - 1.0) > 1e-8)
    fail(Errc::NotUnit, "row norm deviates from 1 by " + std::to_string(std::abs(nrm - 1.0)));

  // Reflect w onto alpha*e1 with alpha = -w1/|w1| (alpha = -1 when w1 = 0);
  // then V = H diag(alpha,1,...,1) has first column w, and V^T has first
  // row w.
  const std::complex<double> w1 = row[0];
  const std::complex<double> alpha =
      std::abs(w1) < 1e-300 ? std::complex<double>(-1.0, 0.0) : std::complex<double>(-w1 / std::abs(w1));
  Eigen::VectorXcd u = row;
  u[0] -= alpha;
  const double un2 = u.squaredNorm();
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Identity(q, q);
  if (un2 > 0.0) H -= (2.0 / un2) * (u * u.adjoint());
  H.col(0) *= alpha;
  return H.transpose();
}

Eigen::MatrixXcd polar_unitary(const Eigen::MatrixXcd& K) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(K, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

namespace {

// Unitary S minimizing ||S C - C_prev||_F: S = V U* for C C_prev* = U S V*.
Eigen::MatrixXcd align_to(const Eigen::MatrixXcd& C, const Eigen::MatrixXcd& C_prev) {
  const Eigen::MatrixXcd K = C * C_prev.adjoint();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(K, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixV() * svd.matrixU().adjoint();
}

// Principal fractional power of a (numerically) unitary matrix via Schur;
// eigenphases taken in (-pi, pi].
Eigen::MatrixXcd unitary_fractional_power(const Eigen::MatrixXcd& R, double t) {
  if (R.rows() == 1) {
    const double th = std::arg(R(0, 0));
    return (Eigen::MatrixXcd(1, 1) << std::polar(1.0, t * th)).finished();
  }
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(R);
  const Eigen::MatrixXcd& Q = schur.matrixU();
  Eigen::VectorXcd d(R.rows());
  for (Eigen::Index i = 0; i < R.rows(); ++i) d[i] = std::polar(1.0, t * std::arg(schur.matrixT()(i, i)));
  return Q * d.asDiagonal() * Q.adjoint();
}

struct DomainIter {
  // multi-index iteration over the fundamental domain in sweep-order
  // significance (axes[0] slowest).
  std::vector<int> dims;        // per-axis domain sizes, original axis order
  std::vector<int> axes;        // sweep significance order
  std::vector<std::size_t> stride;  // row-major strides in original order

  std::size_t flat(const std::vector<int>& d) const {
    std::size_t f = 0;
    for (std::size_t a = 0; a < dims.size(); ++a) f += stride[a] * static_cast<std::size_t>(d[a]);
    return f;
  }
};

}  // namespace

SweepResult align_sweep(const TorusFunction& h0, const DilationMatrix& A, const GridShape& shape,
                        SweepOrder order, double jump_threshold) {
  const DualGroupF F = dual_group(A);
  const int n = A.dim();
  const int q = A.q();
  if (!grid_compatible(shape, F)) fail(Errc::IncompatibleGrid, "grid does not contain F-translates");

  const TorusFunction h0s = h0.sampled(shape);
  require_unit_primed_norm(h0s, F, shape);

  // Integer grid shifts of the F elements; each must touch a single axis.
  std::vector<std::vector<int>> shifts(F.size(), std::vector<int>(n, 0));
  for (std::size_t i = 0; i < F.size(); ++i) {
    int touched = 0;
    for (int a = 0; a < n; ++a) {
      const Rational& w = F.elements[i][a];
      const int s = static_cast<int>((w.num * shape.dims[a] / w.den) % shape.dims[a]);
      shifts[i][a] = s;
      if (s != 0) ++touched;
    }
    if (touched > 1)
      fail(Errc::UnsupportedSweepLattice,
           "F-translates must be axis-aligned on the grid for the sweep");
  }

  // Per-axis shift subgroup: domain size M_a = gcd of the axis shifts and N_a.
  std::vector<int> M(n);
  for (int a = 0; a < n; ++a) {
    long long g = shape.dims[a];
    for (std::size_t i = 0; i < F.size(); ++i)
      if (shifts[i][a] != 0) g = std::gcd(g, static_cast<long long>(shifts[i][a]));
    M[a] = static_cast<int>(g);
  }
  // Twist element per axis: the F element shifting axis a by exactly M_a.
  std::vector<int> twist_elem(n, -1);  // index into F, or -1 when no wrap twist
  for (int a = 0; a < n; ++a) {
    if (M[a] == shape.dims[a]) continue;
    for (std::size_t i = 0; i < F.size(); ++i)
      if (shifts[i][a] == M[a]) {
        twist_elem[a] = static_cast<int>(i);
        break;
      }
    if (twist_elem[a] < 0)
      fail(Errc::UnsupportedSweepLattice, "axis shift subgroup has no generator in F");
  }

  // Column permutations sigma_w: U(x - w) = U(x) P_w, (P_w)(sigma(i), i) = 1
  // with w_{sigma(i)} = w_i + w. Stored as sigma[w][i].
  std::vector<std::vector<int>> sigma(F.size(), std::vector<int>(F.size()));
  for (std::size_t w = 0; w < F.size(); ++w)
    for (std::size_t i = 0; i < F.size(); ++i) sigma[w][i] = static_cast<int>(F.sum_index(i, w));

  // Translate rows of h0 on the full grid.
  std::vector<std::vector<cd>> rows(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) {
    const TorusFunction t = h0s.translated(F.elements[i]);
    rows[i].assign(t.grid_values().begin(), t.grid_values().end());
  }

  DomainIter dom;
  dom.dims = M;
  dom.axes.resize(n);
  for (int a = 0; a < n; ++a) dom.axes[a] = (order == SweepOrder::lex) ? a : n - 1 - a;
  dom.stride.assign(n, 1);
  for (int a = n - 2; a >= 0; --a)
    dom.stride[a] = dom.stride[a + 1] * static_cast<std::size_t>(M[a + 1]);
  std::size_t dom_size = 1;
  for (int a = 0; a < n; ++a) dom_size *= static_cast<std::size_t>(M[a]);

  // Full-grid flat index of a domain node.
  std::vector<std::size_t> gstride(n, 1);
  for (int a = n - 2; a >= 0; --a)
    gstride[a] = gstride[a + 1] * static_cast<std::size_t>(shape.dims[a + 1]);
  auto grid_flat = [&](const std::vector<int>& d) {
    std::size_t f = 0;
    for (int a = 0; a < n; ++a) f += gstride[a] * static_cast<std::size_t>(d[a]);
    return f;
  };

  std::vector<Eigen::MatrixXcd> field(dom_size);

  // Tree sweep: Householder completion aligned to the already-fixed
  // predecessor (decrement the least significant nonzero sweep coordinate).
  std::vector<int> d(n, 0);
  for (;;) {
    const std::size_t df = dom.flat(d);
    const std::size_t gf = grid_flat(d);
    Eigen::VectorXcd row(q);
    for (int i = 0; i < q; ++i) row[i] = rows[i][gf];
    Eigen::MatrixXcd U = householder_complete(row);
    bool has_pred = false;
    std::vector<int> p = d;
    for (int a = n - 1; a >= 0; --a) {
      const int ax = dom.axes[a];
      if (p[ax] > 0) {
        --p[ax];
        has_pred = true;
        break;
      }
    }
    if (has_pred) {
      const Eigen::MatrixXcd& Uprev = field[dom.flat(p)];
      const Eigen::MatrixXcd C = U.bottomRows(q - 1);
      const Eigen::MatrixXcd S = align_to(C, Uprev.bottomRows(q - 1));
      U.bottomRows(q - 1) = S * C;
    }
    field[df] = std::move(U);

    int a = n - 1;
    for (; a >= 0; --a) {
      const int ax = dom.axes[a];
      if (++d[ax] < M[ax]) break;
      d[ax] = 0;
    }
    if (a < 0) break;
  }

  // Wrap image of the domain node with d[axis] = 0, stepping past the end of
  // `axis`: U_wrap = U(d with d[axis]=0) * P_{-w*} when the axis carries a
  // twist, else plain periodic wrap.
  auto wrap_matrix = [&](const Eigen::MatrixXcd& U0, int axis) {
    if (twist_elem[axis] < 0) return U0;
    const int w = twist_elem[axis];
    const int wneg = static_cast<int>(F.neg_index(static_cast<std::size_t>(w)));
    Eigen::MatrixXcd R(q, q);
    for (int i = 0; i < q; ++i) R.col(i) = U0.col(sigma[wneg][i]);
    return R;
  };

  // Closure passes, fastest sweep axis first: spread each circle's
  // end-to-end complement mismatch evenly along the circle.
  for (int a = n - 1; a >= 0; --a) {
    const int ax = dom.axes[a];
    if (M[ax] < 1) continue;
    std::vector<int> c(n, 0);
    for (;;) {  // iterate all circles (c[ax] stays 0)
      std::vector<int> end = c, start = c;
      end[ax] = M[ax] - 1;
      const Eigen::MatrixXcd& Uend = field[dom.flat(end)];
      const Eigen::MatrixXcd Utarget = wrap_matrix(field[dom.flat(start)], ax);
      // S carries the transported complement onto the wrap target; spread it
      // in fractional powers along the circle.
      const Eigen::MatrixXcd S = align_to(Uend.bottomRows(q - 1), Utarget.bottomRows(q - 1));
      for (int j = 0; j < M[ax]; ++j) {
        std::vector<int> node = c;
        node[ax] = j;
        const Eigen::MatrixXcd Sj =
            unitary_fractional_power(S, static_cast<double>(j + 1) / static_cast<double>(M[ax]));
        Eigen::MatrixXcd& U = field[dom.flat(node)];
        U.bottomRows(q - 1) = Sj * U.bottomRows(q - 1);
      }
      // advance over the transverse coordinates
      int b = n - 1;
      for (; b >= 0; --b) {
        const int bx = dom.axes[b];
        if (bx == ax) continue;
        if (++c[bx] < M[bx]) break;
        c[bx] = 0;
      }
      if (b < 0) break;
    }
  }

  // Jump metric over all domain-adjacent pairs, wraparound included.
  double max_jump = 0.0;
  std::vector<int> worst_node(n, 0);
  {
    std::vector<int> u(n, 0);
    for (;;) {
      const Eigen::MatrixXcd& U = field[dom.flat(u)];
      for (int ax = 0; ax < n; ++ax) {
        std::vector<int> v = u;
        Eigen::MatrixXcd Unext;
        if (u[ax] + 1 < M[ax]) {
          v[ax] += 1;
          Unext = field[dom.flat(v)];
        } else {
          v[ax] = 0;
          Unext = wrap_matrix(field[dom.flat(v)], ax);
        }
        const double jump = (U - Unext).norm();
        if (jump > max_jump) {
          max_jump = jump;
          worst_node = u;
        }
      }
      int a = n - 1;
      for (; a >= 0; --a) {
        if (++u[a] < M[a]) break;
        u[a] = 0;
      }
      if (a < 0) break;
    }
  }

  // Induced family on the full grid: h_j(x) = [U(dom(x)) P_{-w(x)}]_{j,0}
  // = U(dom(x))(j, index of -w(x)).
  std::vector<std::vector<cd>> hvals(q, std::vector<cd>(shape.size()));
  {
    std::vector<int> g(n, 0);
    for (;;) {
      std::vector<int> drep(n);
      RationalVec w(n, Rational(0));
      for (int a = 0; a < n; ++a) {
        drep[a] = g[a] % M[a];
        const int mult = g[a] / M[a];
        if (mult != 0 && twist_elem[a] >= 0) {
          for (int t = 0; t < mult; ++t) {
            for (int c2 = 0; c2 < n; ++c2)
              w[c2] = (w[c2] + F.elements[twist_elem[a]][c2]).mod1();
          }
        }
      }
      RationalVec wneg(n);
      for (int a = 0; a < n; ++a) wneg[a] = (-w[a]).mod1();
      const int col = static_cast<int>(F.index_of(wneg));
      const Eigen::MatrixXcd& U = field[dom.flat(drep)];
      const std::size_t gf = grid_flat(g);
      for (int j = 0; j < q; ++j) hvals[j][gf] = U(j, col);
      int a = n - 1;
      for (; a >= 0; --a) {
        if (++g[a] < shape.dims[a]) break;
        g[a] = 0;
      }
      if (a < 0) break;
    }
  }

  std::vector<TorusFunction> hs;
  hs.reserve(q);
  for (int j = 0; j < q; ++j) hs.push_back(TorusFunction::from_grid(shape, std::move(hvals[j])));

  // Covariance residual of the induced polyphase entries.
  double cov = 0.0;
  for (int j = 0; j < q; ++j)
    for (std::size_t i = 0; i < F.size(); ++i) {
      const TorusFunction t = hs[static_cast<std::size_t>(j)].translated(F.elements[i]);
      // compare with U(x)(j, i) = field value at column i
      std::vector<int> g(n, 0);
      double worst = 0.0;
      for (;;) {
        std::vector<int> drep(n);
        RationalVec w(n, Rational(0));
        for (int a = 0; a < n; ++a) {
          drep[a] = g[a] % M[a];
          const int mult = g[a] / M[a];
          if (mult != 0 && twist_elem[a] >= 0)
            for (int t2 = 0; t2 < mult; ++t2)
              for (int c2 = 0; c2 < n; ++c2)
                w[c2] = (w[c2] + F.elements[twist_elem[a]][c2]).mod1();
        }
        RationalVec wneg(n);
        for (int a2 = 0; a2 < n; ++a2) wneg[a2] = (-w[a2]).mod1();
        const int icol = sigma[F.index_of(wneg)][i];
        const std::size_t gf = grid_flat(g);
        worst = std::max(worst,
                         std::abs(field[dom.flat(drep)](j, icol) - t.grid_values()[gf]));
        int a3 = n - 1;
        for (; a3 >= 0; --a3) {
          if (++g[a3] < shape.dims[a3]) break;
          g[a3] = 0;
        }
        if (a3 < 0) break;
      }
      cov = std::max(cov, worst);
    }

  SweepResult res;
  res.max_jump = max_jump;
  res.closed = max_jump < jump_threshold;
  res.jump_threshold = jump_threshold;
  res.grid = shape.dims;
  res.sweep = order == SweepOrder::lex ? "lex" : "revlex";
  res.covariance_residual = cov;
  res.location.resize(n);
  for (int a = 0; a < n; ++a)
    res.location[a] = static_cast<double>(worst_node[a]) / static_cast<double>(shape.dims[a]);
  std::vector<TorusFunction> ms;
  ms.reserve(q);
  for (auto& h : hs) ms.push_back(h.scaled(cd{static_cast<double>(q), 0.0}));
  res.bank = FilterBank(A, std::move(ms), /*normalized=*/false);
  return res;
}

FilterBank gram_schmidt_smooth(const FilterBank& family,
                               const std::vector<TorusFunction>& approximants, double eps,
                               const std::optional<GridShape>& shape) {
  const DilationMatrix& A = family.dilation();
  const int q = A.q();
  if (family.size() != static_cast<std::size_t>(q))
    fail(Errc::WrongCount, "family must have q members");
  if (approximants.size() != static_cast<std::size_t>(q - 1))
    fail(Errc::WrongCount, "expected q-1 approximants");
  const DualGroupF F = dual_group(A);
  const GridShape s = pick_shape(F, shape, &family.filters().front());

  const FilterBank ref = family.normalized();
  const double scale_in = family.is_normalized() ? 1.0 : 1.0 / static_cast<double>(q);

  std::vector<TorusFunction> rebuilt;
  rebuilt.push_back(ref.filters()[0].sampled(s));

  for (int j = 1; j < q; ++j) {
    const TorusFunction target = ref.filters()[static_cast<std::size_t>(j)].sampled(s);
    TorusFunction g = approximants[static_cast<std::size_t>(j - 1)].scaled(cd{scale_in, 0.0}).sampled(s);
    const double dist = g.sup_abs_diff(target);
    if (dist > eps)
      fail(Errc::TooFarToNormalize,
           "approximant " + std::to_string(j) + " is " + std::to_string(dist) + " away (eps " +
               std::to_string(eps) + ")");
    for (const TorusFunction& prev : rebuilt) {
      const InvariantFunction c = bracket(g, prev, F, /*primed=*/true, s);
      std::vector<cd> acc(g.grid_values().begin(), g.grid_values().end());
      // acc -= c * prev
      std::vector<cd> tmp(s.size(), cd{0.0, 0.0});
      kernels::mul_add(tmp.data(), c.fn.grid_values().data(), prev.grid_values().data(),
                       tmp.size());
      kernels::axpy(acc.data(), cd{-1.0, 0.0}, tmp.data(), acc.size());
      g = TorusFunction::from_grid(s, std::move(acc));
    }
    const InvariantFunction nrm = bracket(g, g, F, /*primed=*/true, s);
    double floor = std::numeric_limits<double>::infinity();
    for (const cd& z : nrm.fn.grid_values()) floor = std::min(floor, z.real());
    if (!(floor > 0.25))
      fail(Errc::TooFarToNormalize,
           "pointwise <f,f>' floor " + std::to_string(floor) + " is not above 1/4");
    // pointwise 1/sqrt normalization; <f,f>' is F-invariant and real.
    std::vector<cd> v(g.grid_values().begin(), g.grid_values().end());
    const auto nv = nrm.fn.grid_values();
    for (std::size_t p = 0; p < v.size(); ++p) v[p] /= std::sqrt(nv[p].real());
    rebuilt.push_back(TorusFunction::from_grid(s, std::move(v)));
  }

  if (family.is_normalized()) return FilterBank(A, std::move(rebuilt), true);
  std::vector<TorusFunction> ms;
  ms.reserve(rebuilt.size());
  for (auto& h : rebuilt) ms.push_back(h.scaled(cd{static_cast<double>(q), 0.0}));
  return FilterBank(A, std::move(ms), false);
}

}  // namespace torwav
