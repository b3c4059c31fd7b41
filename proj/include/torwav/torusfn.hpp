#ifndef TORWAV_TORUSFN_HPP
#define TORWAV_TORUSFN_HPP

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "torwav/lattice.hpp"

namespace torwav {

using cd = std::complex<double>;
using MultiIndex = std::vector<int>;  // frequency k in Z^n

/// Per-axis resolutions of a uniform grid on T^n; samples live at
/// (j_1/N_1, ..., j_n/N_n), row-major with the last axis fastest.
struct GridShape {
  std::vector<int> dims;

  GridShape() = default;
  explicit GridShape(std::vector<int> d) : dims(std::move(d)) {}

  int rank() const { return static_cast<int>(dims.size()); }
  std::size_t size() const;
  bool operator==(const GridShape& o) const { return dims == o.dims; }
};

/// Largest per-axis denominator step needed so every w in F lands on grid
/// nodes, times `multiplier` (the library default working resolution).
GridShape default_grid(const DualGroupF& F, int multiplier = 16);

/// True when every coordinate of every w in F is an integer multiple of the
/// grid step on its axis.
bool grid_compatible(const GridShape& shape, const DualGroupF& F);

/// A complex-valued function on T^n held as a finitely supported Fourier
/// coefficient map, as uniform grid samples, or both. When both are present
/// they describe the same function; operations keep whichever forms they can
/// compute exactly.
class TorusFunction {
 public:
  TorusFunction() = default;

  static TorusFunction from_coeffs(int dim, std::map<MultiIndex, cd> coeffs);
  static TorusFunction from_grid(GridShape shape, std::vector<cd> values);
  static TorusFunction constant(int dim, cd value);
  static TorusFunction character(MultiIndex k);  // x -> exp(2 pi i k.x)

  int dim() const { return dim_; }
  bool has_coeffs() const { return coeffs_.has_value(); }
  bool has_grid() const { return grid_values_.has_value(); }
  const std::map<MultiIndex, cd>& coeffs() const;
  const GridShape& grid_shape() const;
  std::span<const cd> grid_values() const;
  std::span<cd> mutable_grid_values();

  cd evaluate(std::span<const double> x) const;

  /// f(. - w) for exact rational w; grid form requires w on the grid lattice.
  TorusFunction translated(const RationalVec& w) const;

  /// Returns a copy carrying grid samples of the given shape (computed from
  /// coefficients when absent or of a different shape).
  TorusFunction sampled(const GridShape& shape) const;

  TorusFunction operator+(const TorusFunction& o) const;
  TorusFunction operator-(const TorusFunction& o) const;
  TorusFunction operator*(const TorusFunction& o) const;  // pointwise product
  TorusFunction conjugated() const;
  TorusFunction scaled(cd s) const;

  double sup_abs() const;                              // over grid samples
  double sup_abs_diff(const TorusFunction& o) const;   // over common grid

  /// Drops the coefficient form (used when exactness of a downstream edit
  /// applies to samples only).
  TorusFunction grid_only() const;

 private:
  int dim_ = 0;
  std::optional<std::map<MultiIndex, cd>> coeffs_;
  GridShape grid_shape_;
  std::optional<std::vector<cd>> grid_values_;
};

/// A TorusFunction verified invariant under translation by every w in F.
struct InvariantFunction {
  TorusFunction fn;

  static InvariantFunction checked(TorusFunction f, const DualGroupF& F, double tol = 1e-8);
};

double invariance_residual(const TorusFunction& f, const DualGroupF& F);

/// <f,g>_A (x) = q^{-1} sum_{w in F} f(x-w) conj(g(x-w)); primed drops q^{-1}.
/// Grid-based; both arguments are brought onto `shape` (or f's grid, or the
/// default grid for F).
InvariantFunction bracket(const TorusFunction& f, const TorusFunction& g, const DualGroupF& F,
                          bool primed = false, const std::optional<GridShape>& shape = std::nullopt);

/// Same inner product computed purely in coefficient space: form f * conj(g)
/// and keep the frequencies lying in A Z^n.
InvariantFunction coefficient_bracket(const TorusFunction& f, const TorusFunction& g,
                                      const DilationMatrix& A, bool primed = false);

/// e_j(x) = exp(2 pi i p_j . x) for the coset representatives p_j; orthonormal
/// for the unprimed bracket.
std::vector<TorusFunction> standard_orthonormal_basis(const DilationMatrix& A,
                                                      const CosetReps& reps);

}  // namespace torwav

#endif  // TORWAV_TORUSFN_HPP
