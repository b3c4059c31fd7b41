#include "torwav/torusfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "torwav/errors.hpp"
#include "torwav/kernels.hpp"

namespace torwav {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(2 pi i r) for exact rational r, with exact values on the quarter grid
// so that Haar-style identities come out bit-clean.
cd unit_phase(const Rational& r0) {
  const Rational r = r0.mod1();
  if (r.den == 1) return {1.0, 0.0};
  if (r.den == 2) return {-1.0, 0.0};
  if (r.den == 4) return r.num == 1 ? cd{0.0, 1.0} : cd{0.0, -1.0};
  return std::polar(1.0, kTwoPi * r.value());
}

// Roots-of-unity table for one axis: root[j] = exp(2 pi i j / N).
std::vector<cd> root_table(int N) {
  std::vector<cd> t(N);
  for (int j = 0; j < N; ++j) t[j] = unit_phase(Rational(j, N));
  return t;
}

int mod_pos(long long a, int m) {
  long long r = a % m;
  if (r < 0) r += m;
  return static_cast<int>(r);
}

}  // namespace

std::size_t GridShape::size() const {
  std::size_t s = 1;
  for (int d : dims) s *= static_cast<std::size_t>(d);
  return s;
}

GridShape default_grid(const DualGroupF& F, int multiplier) {
  if (F.elements.empty()) fail(Errc::ParseError, "empty dual group");
  const int n = static_cast<int>(F.elements.front().size());
  std::vector<int> dims(n, 1);
  for (const auto& w : F.elements)
    for (int a = 0; a < n; ++a)
      dims[a] = static_cast<int>(std::lcm<std::int64_t>(dims[a], w[a].den));
  for (int a = 0; a < n; ++a) dims[a] *= multiplier;
  return GridShape(dims);
}

bool grid_compatible(const GridShape& shape, const DualGroupF& F) {
  if (shape.rank() != static_cast<int>(F.elements.front().size())) return false;
  for (const auto& w : F.elements)
    for (int a = 0; a < shape.rank(); ++a)
      if ((w[a].num * shape.dims[a]) % w[a].den != 0) return false;
  return true;
}

TorusFunction TorusFunction::from_coeffs(int dim, std::map<MultiIndex, cd> coeffs) {
  TorusFunction f;
  f.dim_ = dim;
  for (const auto& [k, v] : coeffs)
    if (static_cast<int>(k.size()) != dim) fail(Errc::ParseError, "coefficient index rank mismatch");
  f.coeffs_ = std::move(coeffs);
  return f;
}

TorusFunction TorusFunction::from_grid(GridShape shape, std::vector<cd> values) {
  if (values.size() != shape.size()) fail(Errc::ParseError, "grid size mismatch");
  TorusFunction f;
  f.dim_ = shape.rank();
  f.grid_shape_ = std::move(shape);
  f.grid_values_ = std::move(values);
  return f;
}

TorusFunction TorusFunction::constant(int dim, cd value) {
  std::map<MultiIndex, cd> c;
  c[MultiIndex(dim, 0)] = value;
  return from_coeffs(dim, std::move(c));
}

TorusFunction TorusFunction::character(MultiIndex k) {
  const int dim = static_cast<int>(k.size());
  std::map<MultiIndex, cd> c;
  c[std::move(k)] = cd{1.0, 0.0};
  return from_coeffs(dim, std::move(c));
}

const std::map<MultiIndex, cd>& TorusFunction::coeffs() const {
  if (!coeffs_) fail(Errc::NoCoefficientForm, "function has grid samples only");
  return *coeffs_;
}

const GridShape& TorusFunction::grid_shape() const {
  if (!grid_values_) fail(Errc::OffGrid, "function has no grid samples");
  return grid_shape_;
}

std::span<const cd> TorusFunction::grid_values() const {
  if (!grid_values_) fail(Errc::OffGrid, "function has no grid samples");
  return *grid_values_;
}

std::span<cd> TorusFunction::mutable_grid_values() {
  if (!grid_values_) fail(Errc::OffGrid, "function has no grid samples");
  return *grid_values_;
}

cd TorusFunction::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim_) fail(Errc::ParseError, "point rank mismatch");
  if (coeffs_) {
    cd acc{0.0, 0.0};
    for (const auto& [k, c] : *coeffs_) {
      double phase = 0.0;
      for (int a = 0; a < dim_; ++a) phase += k[a] * x[a];
      acc += c * std::polar(1.0, kTwoPi * phase);
    }
    return acc;
  }
  // Grid lookup; the point must sit on a node.
  std::size_t idx = 0;
  for (int a = 0; a < dim_; ++a) {
    const int N = grid_shape_.dims[a];
    const double t = x[a] * N;
    const double j = std::round(t);
    if (std::abs(t - j) > 1e-9) fail(Errc::OffGrid, "point is not a grid node");
    idx = idx * N + mod_pos(static_cast<long long>(j), N);
  }
  return (*grid_values_)[idx];
}

namespace {

// Roll grid values: out[j] = in[(j - shift) mod N] along every axis.
std::vector<cd> roll(const std::vector<cd>& in, const GridShape& shape,
                     const std::vector<int>& shift) {
  const int n = shape.rank();
  std::vector<cd> cur = in;
  std::vector<cd> next(in.size());
  // stride of axis a = product of dims after a
  for (int a = 0; a < n; ++a) {
    const int s = mod_pos(shift[a], shape.dims[a]);
    if (s == 0) continue;
    const int N = shape.dims[a];
    std::size_t stride = 1;
    for (int b = a + 1; b < n; ++b) stride *= static_cast<std::size_t>(shape.dims[b]);
    const std::size_t block = stride * static_cast<std::size_t>(N);
    for (std::size_t base = 0; base < cur.size(); base += block) {
      for (int j = 0; j < N; ++j) {
        const int src = (j - s + N) % N;
        std::copy_n(cur.begin() + base + static_cast<std::size_t>(src) * stride, stride,
                    next.begin() + base + static_cast<std::size_t>(j) * stride);
      }
    }
    std::swap(cur, next);
  }
  return cur;
}

std::vector<cd> sample_coeffs(const std::map<MultiIndex, cd>& coeffs, const GridShape& shape) {
  const int n = shape.rank();
  std::vector<std::vector<cd>> roots(n);
  for (int a = 0; a < n; ++a) roots[a] = root_table(shape.dims[a]);

  std::vector<cd> out(shape.size(), cd{0.0, 0.0});
  const int last = n - 1;
  const int Nl = n > 0 ? shape.dims[last] : 1;

  std::vector<cd> axis_row(static_cast<std::size_t>(Nl));
  for (const auto& [k, c] : coeffs) {
    if (n == 0) {
      out[0] += c;
      continue;
    }
    for (int j = 0; j < Nl; ++j)
      axis_row[j] = roots[last][mod_pos(static_cast<long long>(k[last]) * j, Nl)];
    // iterate outer indices
    std::vector<int> idx(n - 1, 0);
    std::size_t base = 0;
    for (;;) {
      cd pref = c;
      for (int a = 0; a + 1 < n; ++a)
        pref *= roots[a][mod_pos(static_cast<long long>(k[a]) * idx[a], shape.dims[a])];
      kernels::axpy(out.data() + base, pref, axis_row.data(), axis_row.size());
      int a = n - 2;
      while (a >= 0) {
        if (++idx[a] < shape.dims[a]) break;
        idx[a] = 0;
        --a;
      }
      if (a < 0) break;
      base = 0;
      for (int b = 0; b + 1 < n; ++b) base = base * shape.dims[b] + idx[b];
      base *= static_cast<std::size_t>(Nl);
    }
  }
  return out;
}

}  // namespace

TorusFunction TorusFunction::sampled(const GridShape& shape) const {
  if (grid_values_ && grid_shape_ == shape) return *this;
  if (!coeffs_) {
    if (!grid_values_) fail(Errc::OffGrid, "function is empty");
    fail(Errc::IncompatibleGrid, "grid-only function cannot be resampled");
  }
  TorusFunction f = *this;
  f.grid_shape_ = shape;
  f.grid_values_ = sample_coeffs(*coeffs_, shape);
  return f;
}

TorusFunction TorusFunction::translated(const RationalVec& w) const {
  if (static_cast<int>(w.size()) != dim_) fail(Errc::ParseError, "translation rank mismatch");
  TorusFunction f;
  f.dim_ = dim_;
  if (coeffs_) {
    std::map<MultiIndex, cd> c;
    for (const auto& [k, v] : *coeffs_) {
      Rational dot(0);
      for (int a = 0; a < dim_; ++a) dot = dot + Rational(k[a]) * w[a];
      c[k] = v * unit_phase(-dot);
    }
    f.coeffs_ = std::move(c);
  }
  if (grid_values_) {
    std::vector<int> shift(dim_);
    for (int a = 0; a < dim_; ++a) {
      const int N = grid_shape_.dims[a];
      if ((w[a].num * N) % w[a].den != 0)
        fail(Errc::OffGrid, "translation does not preserve the grid lattice");
      shift[a] = mod_pos(w[a].num * N / w[a].den, N);
    }
    f.grid_shape_ = grid_shape_;
    f.grid_values_ = roll(*grid_values_, grid_shape_, shift);
  }
  if (!f.coeffs_ && !f.grid_values_) fail(Errc::OffGrid, "function is empty");
  return f;
}

TorusFunction TorusFunction::operator+(const TorusFunction& o) const {
  if (dim_ != o.dim_) fail(Errc::ParseError, "dimension mismatch");
  TorusFunction r;
  r.dim_ = dim_;
  if (coeffs_ && o.coeffs_) {
    auto c = *coeffs_;
    for (const auto& [k, v] : *o.coeffs_) c[k] += v;
    r.coeffs_ = std::move(c);
  }
  if (grid_values_ && o.grid_values_ && grid_shape_ == o.grid_shape_) {
    auto v = *grid_values_;
    kernels::axpy(v.data(), cd{1.0, 0.0}, o.grid_values_->data(), v.size());
    r.grid_shape_ = grid_shape_;
    r.grid_values_ = std::move(v);
  }
  if (!r.coeffs_ && !r.grid_values_) fail(Errc::IncompatibleGrid, "no common representation");
  return r;
}

TorusFunction TorusFunction::operator-(const TorusFunction& o) const {
  return *this + o.scaled(cd{-1.0, 0.0});
}

TorusFunction TorusFunction::operator*(const TorusFunction& o) const {
  if (dim_ != o.dim_) fail(Errc::ParseError, "dimension mismatch");
  TorusFunction r;
  r.dim_ = dim_;
  if (coeffs_ && o.coeffs_) {
    std::map<MultiIndex, cd> c;
    for (const auto& [k1, v1] : *coeffs_)
      for (const auto& [k2, v2] : *o.coeffs_) {
        MultiIndex m(dim_);
        for (int a = 0; a < dim_; ++a) m[a] = k1[a] + k2[a];
        c[m] += v1 * v2;
      }
    r.coeffs_ = std::move(c);
  }
  if (grid_values_ && o.grid_values_ && grid_shape_ == o.grid_shape_) {
    std::vector<cd> v(grid_values_->size());
    kernels::mul(v.data(), grid_values_->data(), o.grid_values_->data(), v.size());
    r.grid_shape_ = grid_shape_;
    r.grid_values_ = std::move(v);
  }
  if (!r.coeffs_ && !r.grid_values_) fail(Errc::IncompatibleGrid, "no common representation");
  return r;
}

TorusFunction TorusFunction::conjugated() const {
  TorusFunction r;
  r.dim_ = dim_;
  if (coeffs_) {
    std::map<MultiIndex, cd> c;
    for (const auto& [k, v] : *coeffs_) {
      MultiIndex m(dim_);
      for (int a = 0; a < dim_; ++a) m[a] = -k[a];
      c[m] = std::conj(v);
    }
    r.coeffs_ = std::move(c);
  }
  if (grid_values_) {
    auto v = *grid_values_;
    for (auto& z : v) z = std::conj(z);
    r.grid_shape_ = grid_shape_;
    r.grid_values_ = std::move(v);
  }
  return r;
}

TorusFunction TorusFunction::scaled(cd s) const {
  TorusFunction r = *this;
  if (r.coeffs_)
    for (auto& [k, v] : *r.coeffs_) v *= s;
  if (r.grid_values_) kernels::scale(r.grid_values_->data(), s, r.grid_values_->size());
  return r;
}

double TorusFunction::sup_abs() const {
  if (grid_values_) return kernels::sup_abs(grid_values_->data(), grid_values_->size());
  if (!coeffs_) return 0.0;
  // Coefficient-only path: the l1 coefficient norm bounds the sup norm.
  double s = 0.0;
  for (const auto& [k, v] : *coeffs_) s += std::abs(v);
  return s;
}

double TorusFunction::sup_abs_diff(const TorusFunction& o) const {
  if (grid_values_ && o.grid_values_ && grid_shape_ == o.grid_shape_)
    return kernels::sup_abs_diff(grid_values_->data(), o.grid_values_->data(),
                                 grid_values_->size());
  if (coeffs_ && o.coeffs_) {
    auto d = *this - o;
    double s = 0.0;
    for (const auto& [k, v] : d.coeffs()) s += std::abs(v);
    return s;
  }
  fail(Errc::IncompatibleGrid, "no common representation for sup-diff");
}

TorusFunction TorusFunction::grid_only() const {
  TorusFunction r;
  r.dim_ = dim_;
  r.grid_shape_ = grid_shape_;
  r.grid_values_ = grid_values_;
  if (!r.grid_values_) fail(Errc::OffGrid, "function has no grid samples");
  return r;
}

double invariance_residual(const TorusFunction& f, const DualGroupF& F) {
  double worst = 0.0;
  for (const auto& w : F.elements) {
    const TorusFunction t = f.translated(w);
    worst = std::max(worst, f.sup_abs_diff(t));
  }
  return worst;
}

InvariantFunction InvariantFunction::checked(TorusFunction f, const DualGroupF& F, double tol) {
  const double r = invariance_residual(f, F);
  if (r > tol)
    fail(Errc::IncompatibleGrid, "function is not F-invariant (residual " + std::to_string(r) + ")");
  return InvariantFunction{std::move(f)};
}

InvariantFunction bracket(const TorusFunction& f, const TorusFunction& g, const DualGroupF& F,
                          bool primed, const std::optional<GridShape>& shape_opt) {
  GridShape shape;
  if (shape_opt)
    shape = *shape_opt;
  else if (f.has_grid())
    shape = f.grid_shape();
  else if (g.has_grid())
    shape = g.grid_shape();
  else
    shape = default_grid(F);
  if (!grid_compatible(shape, F))
    fail(Errc::IncompatibleGrid, "grid does not contain the F-translates");

  const TorusFunction fs = f.sampled(shape);
  const TorusFunction gs = g.sampled(shape);

  std::vector<cd> prod(shape.size(), cd{0.0, 0.0});
  kernels::conj_mul_add(prod.data(), fs.grid_values().data(), gs.grid_values().data(),
                        prod.size());

  std::vector<cd> acc(shape.size(), cd{0.0, 0.0});
  const TorusFunction prod_fn = TorusFunction::from_grid(shape, std::move(prod));
  for (const auto& w : F.elements) {
    const TorusFunction t = prod_fn.translated(w);
    kernels::axpy(acc.data(), cd{1.0, 0.0}, t.grid_values().data(), acc.size());
  }
  if (!primed)
    kernels::scale(acc.data(), cd{1.0 / static_cast<double>(F.size()), 0.0}, acc.size());

  TorusFunction out = TorusFunction::from_grid(shape, std::move(acc));
  return InvariantFunction{std::move(out)};
}

InvariantFunction coefficient_bracket(const TorusFunction& f, const TorusFunction& g,
                                      const DilationMatrix& A, bool primed) {
  const TorusFunction prod = f * g.conjugated();
  std::map<MultiIndex, cd> kept;
  std::vector<std::int64_t> k64(A.dim());
  for (const auto& [k, v] : prod.coeffs()) {
    for (int a = 0; a < A.dim(); ++a) k64[a] = k[a];
    if (A.in_sublattice(k64)) kept[k] = primed ? v * static_cast<double>(A.q()) : v;
  }
  return InvariantFunction{TorusFunction::from_coeffs(A.dim(), std::move(kept))};
}

std::vector<TorusFunction> standard_orthonormal_basis(const DilationMatrix& A,
                                                      const CosetReps& reps) {
  std::vector<TorusFunction> basis;
  basis.reserve(reps.size());
  for (const auto& p : reps.reps) {
    MultiIndex k(A.dim());
    for (int a = 0; a < A.dim(); ++a) k[a] = static_cast<int>(p[a]);
    basis.push_back(TorusFunction::character(std::move(k)));
  }
  return basis;
}

}  // namespace torwav
