#ifndef TORWAV_COMPLETION_HPP
#define TORWAV_COMPLETION_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torwav/filters.hpp"
#include "torwav/torusfn.hpp"

namespace torwav {

/// Exact q = 2 completion: h1(x) = tau(x) conj(h0(x+w)) with tau a character
/// taking value -1 at the nonidentity element w of F.
TorusFunction complete_q2(const TorusFunction& h0, const DilationMatrix& A,
                          const std::optional<GridShape>& shape = std::nullopt);

/// (projection, complement) of f against a normalized h0:
/// p = <f,h0>' h0 and c = f - p.
std::pair<TorusFunction, TorusFunction> project_and_complement(
    const TorusFunction& f, const TorusFunction& h0, const DualGroupF& F,
    const std::optional<GridShape>& shape = std::nullopt);

/// Deterministic unitary with the given unit vector as first row.
Eigen::MatrixXcd householder_complete(const Eigen::VectorXcd& row);

/// Closest unitary factor of the polar decomposition.
Eigen::MatrixXcd polar_unitary(const Eigen::MatrixXcd& K);

enum class SweepOrder { lex, revlex };

/// Outcome of the heuristic continuous-completion attempt. `closed` is a
/// jump-threshold verdict on a finite grid: a demonstration, not a proof,
/// in either direction.
struct SweepResult {
  bool closed = false;
  double max_jump = 0.0;
  std::vector<double> location;  // torus coordinates of the worst edge
  std::vector<int> grid;
  std::string sweep;
  double covariance_residual = 0.0;
  double jump_threshold = 0.0;
  std::optional<FilterBank> bank;  // candidate family (m-scale), always present on return
};

/// Pointwise Householder completion of the translate row of h0, aligned node
/// to node by polar decomposition along a lexicographic sweep of a
/// fundamental domain of the F-translation action, followed by per-axis
/// closure passes that spread each circle's end-to-end mismatch evenly.
/// Covariance of the induced family holds by construction; the reported jump
/// metric is the sup over adjacent grid nodes (wraparound included) of the
/// Frobenius distance between completed matrices.
///
/// Supported lattices: every F-translate must shift a single grid axis
/// (throws UnsupportedSweepLattice otherwise).
SweepResult align_sweep(const TorusFunction& h0, const DilationMatrix& A, const GridShape& shape,
                        SweepOrder order = SweepOrder::lex, double jump_threshold = 0.5);

/// Orthonormalize smooth approximants against family.m0 and the already
/// rebuilt members, then renormalize pointwise; mirrors the smoothing step of
/// the completion argument. `approximants` has q-1 entries for members 1..q-1.
FilterBank gram_schmidt_smooth(const FilterBank& family,
                               const std::vector<TorusFunction>& approximants, double eps,
                               const std::optional<GridShape>& shape = std::nullopt);

}  // namespace torwav

#endif  // TORWAV_COMPLETION_HPP
