#include "torwav/filters.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "torwav/errors.hpp"
#include "torwav/kernels.hpp"

namespace torwav {

namespace {

GridShape working_shape(const DualGroupF& F, const std::optional<GridShape>& shape,
                        const TorusFunction* f = nullptr) {
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

double sup_abs_minus_const(std::span<const cd> v, double c) {
  double m = 0.0;
  for (const cd& z : v) {
    const double re = z.real() - c, im = z.imag();
    m = std::max(m, re * re + im * im);
  }
  return std::sqrt(m);
}

}  // namespace

FilterBank::FilterBank(DilationMatrix A, std::vector<TorusFunction> filters, bool normalized)
    : A_(std::move(A)), filters_(std::move(filters)), normalized_(normalized) {
  if (filters_.empty()) fail(Errc::WrongCount, "filter bank must not be empty");
  for (const auto& f : filters_)
    if (f.dim() != A_.dim()) fail(Errc::ParseError, "filter dimension does not match dilation");
}

FilterBank FilterBank::normalized() const {
  if (normalized_) return *this;
  std::vector<TorusFunction> h;
  h.reserve(filters_.size());
  const cd s{1.0 / static_cast<double>(A_.q()), 0.0};
  for (const auto& m : filters_) h.push_back(m.scaled(s));
  return FilterBank(A_, std::move(h), true);
}

FilterBank FilterBank::denormalized() const {
  if (!normalized_) return *this;
  std::vector<TorusFunction> m;
  m.reserve(filters_.size());
  const cd s{static_cast<double>(A_.q()), 0.0};
  for (const auto& h : filters_) m.push_back(h.scaled(s));
  return FilterBank(A_, std::move(m), false);
}

ValidationReport validate_low_pass(const TorusFunction& m0, const DilationMatrix& A, double tol,
                                   const std::optional<GridShape>& shape) {
  const DualGroupF F = dual_group(A);
  const GridShape s = working_shape(F, shape, &m0);
  const double q = static_cast<double>(A.q());

  ValidationReport rep;
  rep.grid = s.dims;
  rep.note = "condition (iii) of the low-pass definition (Cohen-type) is not checked";

  const std::vector<double> zero(A.dim(), 0.0);
  const double r1 = std::abs(m0.evaluate(zero) - q);
  rep.checks.push_back({"(i) m0(0) = q", r1, r1 < tol});

  const InvariantFunction br = bracket(m0, m0, F, /*primed=*/false, s);
  const double r2 = sup_abs_minus_const(br.fn.grid_values(), q);
  rep.checks.push_back({"(ii) <m0,m0> = q", r2, r2 < tol});
  return rep;
}

ValidationReport validate_family(const FilterBank& bank, double tol,
                                 const std::optional<GridShape>& shape) {
  const DilationMatrix& A = bank.dilation();
  if (bank.size() != static_cast<std::size_t>(A.q()))
    fail(Errc::WrongCount, "family must have exactly q = " + std::to_string(A.q()) + " filters");
  const DualGroupF F = dual_group(A);
  const GridShape s = working_shape(F, shape, &bank.filters().front());
  const bool primed = bank.is_normalized();
  const double target = primed ? 1.0 : static_cast<double>(A.q());

  ValidationReport rep;
  rep.grid = s.dims;
  for (std::size_t j = 0; j < bank.size(); ++j)
    for (std::size_t k = j; k < bank.size(); ++k) {
      const InvariantFunction br = bracket(bank.filters()[j], bank.filters()[k], F, primed, s);
      const double r = (j == k) ? sup_abs_minus_const(br.fn.grid_values(), target)
                                : kernels::sup_abs(br.fn.grid_values().data(),
                                                   br.fn.grid_values().size());
      const std::string label = std::string("<m") + std::to_string(j) + ",m" + std::to_string(k) +
                                "> = " + (j == k ? (primed ? "1" : "q") : "0");
      rep.checks.push_back({label, r, r < tol});
    }
  return rep;
}

PolyphaseField::PolyphaseField(GridShape grid, int rows, int cols)
    : grid_(std::move(grid)), rows_(rows), cols_(cols),
      entries_(static_cast<std::size_t>(rows) * cols) {
  for (auto& e : entries_) e.assign(grid_.size(), cd{0.0, 0.0});
}

std::span<const cd> PolyphaseField::entry(int j, int i) const {
  return entries_[static_cast<std::size_t>(j) * cols_ + i];
}

std::span<cd> PolyphaseField::entry(int j, int i) {
  return entries_[static_cast<std::size_t>(j) * cols_ + i];
}

double PolyphaseField::row_gram_residual() const {
  const std::size_t nodes = grid_.size();
  Eigen::MatrixXcd M(rows_, cols_);
  double worst = 0.0;
  for (std::size_t p = 0; p < nodes; ++p) {
    for (int j = 0; j < rows_; ++j)
      for (int i = 0; i < cols_; ++i) M(j, i) = entry(j, i)[p];
    const Eigen::MatrixXcd G =
        M * M.adjoint() - Eigen::MatrixXcd::Identity(rows_, rows_);
    worst = std::max(worst, G.operatorNorm());
  }
  return worst;
}

PolyphaseField polyphase(const FilterBank& bank, const DualGroupF& F,
                         const std::optional<GridShape>& shape) {
  if (!bank.is_normalized()) fail(Errc::NotNormalized, "polyphase needs a normalized bank");
  const GridShape s = working_shape(F, shape, &bank.filters().front());
  PolyphaseField U(s, static_cast<int>(bank.size()), static_cast<int>(F.size()));
  for (int j = 0; j < U.rows(); ++j) {
    const TorusFunction h = bank.filters()[j].sampled(s);
    for (int i = 0; i < U.cols(); ++i) {
      const TorusFunction t = h.translated(F.elements[i]);
      auto dst = U.entry(j, i);
      std::copy(t.grid_values().begin(), t.grid_values().end(), dst.begin());
    }
  }
  return U;
}

double polyphase_covariance_residual(const PolyphaseField& U, const DualGroupF& F) {
  // u_{ji}(x - w_k) = u_{j sigma_k(i)}(x) with w_{sigma_k(i)} = w_i + w_k.
  const int n = static_cast<int>(F.elements.front().size());
  double worst = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) {
    for (int j = 0; j < U.rows(); ++j)
      for (int i = 0; i < U.cols(); ++i) {
        const std::size_t si = F.sum_index(i, k);
        const TorusFunction e =
            TorusFunction::from_grid(U.grid(), {U.entry(j, i).begin(), U.entry(j, i).end()});
        const TorusFunction shifted = e.translated(F.elements[k]);
        worst = std::max(worst, kernels::sup_abs_diff(shifted.grid_values().data(),
                                                      U.entry(j, static_cast<int>(si)).data(),
                                                      shifted.grid_values().size()));
      }
  }
  (void)n;
  return worst;
}

UnitarityDefect unitarity_defect(const PolyphaseField& U) {
  if (U.rows() != U.cols()) fail(Errc::WrongCount, "unitarity defect needs a square field");
  const int q = U.rows();
  const std::size_t nodes = U.grid().size();
  Eigen::MatrixXcd M(q, q);
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(q, q);
  UnitarityDefect d{0.0, 0.0};
  for (std::size_t p = 0; p < nodes; ++p) {
    for (int j = 0; j < q; ++j)
      for (int i = 0; i < q; ++i) M(j, i) = U.entry(j, i)[p];
    d.right = std::max(d.right, (M * M.adjoint() - I).operatorNorm());
    d.left = std::max(d.left, (M.adjoint() * M - I).operatorNorm());
  }
  return d;
}

std::pair<TorusFunction, double> reconstruct(const TorusFunction& f, const FilterBank& bank,
                                             const std::optional<GridShape>& shape) {
  const FilterBank h = bank.normalized();
  const DualGroupF F = dual_group(h.dilation());
  const GridShape s = working_shape(F, shape, &f);
  const TorusFunction fs = f.sampled(s);

  std::vector<cd> acc(s.size(), cd{0.0, 0.0});
  for (const auto& hi : h.filters()) {
    const TorusFunction his = hi.sampled(s);
    const InvariantFunction coeff = bracket(fs, his, F, /*primed=*/true, s);
    kernels::mul_add(acc.data(), coeff.fn.grid_values().data(), his.grid_values().data(),
                     acc.size());
  }
  TorusFunction g = TorusFunction::from_grid(s, std::move(acc));
  const double residual = kernels::sup_abs_diff(g.grid_values().data(), fs.grid_values().data(),
                                                g.grid_values().size());
  return {std::move(g), residual};
}

ModuleProjection::ModuleProjection(int m, std::vector<TorusFunction> entries)
    : m_(m), entries_(std::move(entries)) {
  if (entries_.size() != static_cast<std::size_t>(m) * m)
    fail(Errc::WrongCount, "projection needs m*m entries");
}

const TorusFunction& ModuleProjection::at(int i, int j) const {
  return entries_[static_cast<std::size_t>(i) * m_ + j];
}

double ModuleProjection::projection_residual(const GridShape& shape) const {
  // P entries on a common grid; worst of sup|P^2 - P| and sup|P - P*|.
  std::vector<std::vector<cd>> g(entries_.size());
  for (std::size_t e = 0; e < entries_.size(); ++e) {
    const TorusFunction s = entries_[e].sampled(shape);
    g[e].assign(s.grid_values().begin(), s.grid_values().end());
  }
  const std::size_t nodes = shape.size();
  double worst = 0.0;
  std::vector<cd> acc(nodes);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) {
      std::fill(acc.begin(), acc.end(), cd{0.0, 0.0});
      for (int k = 0; k < m_; ++k)
        kernels::mul_add(acc.data(), g[static_cast<std::size_t>(i) * m_ + k].data(),
                         g[static_cast<std::size_t>(k) * m_ + j].data(), nodes);
      worst = std::max(worst, kernels::sup_abs_diff(
                                  acc.data(), g[static_cast<std::size_t>(i) * m_ + j].data(), nodes));
      // self-adjointness: P_ij = conj(P_ji)
      const auto& a = g[static_cast<std::size_t>(i) * m_ + j];
      const auto& b = g[static_cast<std::size_t>(j) * m_ + i];
      double h = 0.0;
      for (std::size_t p = 0; p < nodes; ++p) h = std::max(h, std::abs(a[p] - std::conj(b[p])));
      worst = std::max(worst, h);
    }
  return worst;
}

std::vector<TorusFunction> frame_from_projection(const ModuleProjection& P,
                                                 const std::vector<TorusFunction>& basis,
                                                 const GridShape& shape, double tol) {
  if (static_cast<int>(basis.size()) != P.rank())
    fail(Errc::WrongCount, "basis size must match projection rank");
  const double r = P.projection_residual(shape);
  if (r > tol)
    fail(Errc::NotProjection, "P^2=P / P=P* residual " + std::to_string(r));
  std::vector<TorusFunction> xi;
  xi.reserve(basis.size());
  for (int j = 0; j < P.rank(); ++j) {
    std::vector<cd> acc(shape.size(), cd{0.0, 0.0});
    for (int i = 0; i < P.rank(); ++i) {
      const TorusFunction pij = P.at(i, j).sampled(shape);
      const TorusFunction ei = basis[i].sampled(shape);
      kernels::mul_add(acc.data(), pij.grid_values().data(), ei.grid_values().data(), acc.size());
    }
    xi.push_back(TorusFunction::from_grid(shape, std::move(acc)));
  }
  return xi;
}

}  // namespace torwav
