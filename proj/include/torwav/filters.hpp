#ifndef TORWAV_FILTERS_HPP
#define TORWAV_FILTERS_HPP

#include <optional>
#include <string>
#include <vector>

#include "torwav/torusfn.hpp"

namespace torwav {

struct ValidationCheck {
  std::string condition;
  double residual = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::vector<int> grid;
  std::string note;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  double max_residual() const {
    double r = 0.0;
    for (const auto& c : checks) r = std::max(r, c.residual);
    return r;
  }
};

/// An ordered family of filters for one dilation matrix. `normalized` means
/// the stored functions are h_j = q^{-1} m_j (orthonormal for the primed
/// bracket when valid); otherwise they are the m_j of Definition-style
/// statements (bracket Gram q*I when valid).
class FilterBank {
 public:
  FilterBank(DilationMatrix A, std::vector<TorusFunction> filters, bool normalized = false);

  const DilationMatrix& dilation() const { return A_; }
  const std::vector<TorusFunction>& filters() const { return filters_; }
  std::size_t size() const { return filters_.size(); }
  bool is_normalized() const { return normalized_; }

  FilterBank normalized() const;    // h_j = m_j / q
  FilterBank denormalized() const;  // m_j = q h_j

 private:
  DilationMatrix A_;
  std::vector<TorusFunction> filters_;
  bool normalized_;
};

/// Definition 2.1 conditions (i) and (ii); condition (iii) is out of scope
/// and the report says so.
ValidationReport validate_low_pass(const TorusFunction& m0, const DilationMatrix& A, double tol,
                                   const std::optional<GridShape>& shape = std::nullopt);

/// Gram residual of the family against q*delta (unprimed, m-scale) or delta
/// (primed, h-scale) depending on the bank's normalization flag.
ValidationReport validate_family(const FilterBank& bank, double tol,
                                 const std::optional<GridShape>& shape = std::nullopt);

/// The matrix field U(x) with u_{ji}(x) = h_j(x - w_i); columns ordered by
/// the DualGroupF element order. Entries are stored as one grid per (j,i).
class PolyphaseField {
 public:
  PolyphaseField(GridShape grid, int rows, int cols);

  const GridShape& grid() const { return grid_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::span<const cd> entry(int j, int i) const;
  std::span<cd> entry(int j, int i);

  /// sup_x |row Gram - I| in operator norm (defined for rectangular fields).
  double row_gram_residual() const;

 private:
  GridShape grid_;
  int rows_, cols_;
  std::vector<std::vector<cd>> entries_;
};

PolyphaseField polyphase(const FilterBank& bank, const DualGroupF& F,
                         const std::optional<GridShape>& shape = std::nullopt);

/// sup_x of the covariance defect |u_{ji}(x - w_k) - u_{j sigma_k(i)}(x)|.
double polyphase_covariance_residual(const PolyphaseField& U, const DualGroupF& F);

struct UnitarityDefect {
  double right;  // sup ||U U* - I||
  double left;   // sup ||U* U - I||
  double max() const { return right > left ? right : left; }
};

/// Requires a square field.
UnitarityDefect unitarity_defect(const PolyphaseField& U);

/// g = sum_i <f, h_i>' h_i together with sup|g - f|.
std::pair<TorusFunction, double> reconstruct(const TorusFunction& f, const FilterBank& bank,
                                             const std::optional<GridShape>& shape = std::nullopt);

/// m x m matrix of F-invariant functions, meant to satisfy P^2 = P = P*.
class ModuleProjection {
 public:
  ModuleProjection(int m, std::vector<TorusFunction> entries);  // row-major m*m

  int rank() const { return m_; }
  const TorusFunction& at(int i, int j) const;

  /// Residual max(sup|P^2-P|, sup|P-P*|) over a common grid.
  double projection_residual(const GridShape& shape) const;

 private:
  int m_;
  std::vector<TorusFunction> entries_;
};

/// xi_j = P e_j = sum_i P_ij basis_i. Throws NotProjection when the residual
/// exceeds tol.
std::vector<TorusFunction> frame_from_projection(const ModuleProjection& P,
                                                 const std::vector<TorusFunction>& basis,
                                                 const GridShape& shape, double tol = 1e-10);

}  // namespace torwav

#endif  // TORWAV_FILTERS_HPP
