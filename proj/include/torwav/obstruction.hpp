#ifndef TORWAV_OBSTRUCTION_HPP
#define TORWAV_OBSTRUCTION_HPP

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "torwav/completion.hpp"
#include "torwav/torusfn.hpp"

// Numerical realization of the det-3 dilation on Z^5 whose low-pass filter
// admits no continuous high-pass family: the Hopf-related unitary U0 on S^4,
// its two-chart factorization over S^5, the contraction path W_t, the column
// N0 = W_t E3, the pinch map T^4 -> S^4, and the assembled filter h0 on T^5.

namespace torwav {

/// (v, ir) in the equatorial S^4 of S^5, stored as (v, r).
struct Sphere4Point {
  Eigen::Vector2cd v;
  double r = 1.0;

  static Sphere4Point make(const Eigen::Vector2cd& v, double r);  // OffSphere beyond 1e-12
  double constraint_residual() const;
};

struct Sphere5Point {
  Eigen::Vector2cd v;
  cd xi{1.0, 0.0};

  static Sphere5Point make(const Eigen::Vector2cd& v, cd xi);
  double constraint_residual() const;
};

struct PathUnitary {
  double t = 0.0;
  Eigen::Matrix3cd value;
};

/// U0(v,r) = I2 - 2 (1+ir)^{-2} v v*.
Eigen::Matrix2cd u0(const Sphere4Point& p);

enum class PhiSign { plus, minus };

/// The two chart unitaries on S^5 minus a pole:
///   phi+(v,xi) = [ I2 - (1+conj(xi))^{-1} v v*   v ;  -b(xi) v*   xi ],
///   phi-(v,xi) = [ I2 - (1-conj(xi))^{-1} v v*   v ;   c(xi) v*   xi ],
/// b(xi) = (1+xi)/(1+conj(xi)), c(xi) = (1-xi)/(1-conj(xi)). phi+ is
/// undefined at xi = -1 and phi- at xi = +1 (PoleSingularity within 1e-8).
Eigen::Matrix3cd phi(const Sphere5Point& p, PhiSign sign);

/// Frobenius residual of diag(U0(v,r), 1) - phi+(v,ir)* phi-(v,ir).
double factorization_residual(const Sphere4Point& p);

/// Latitude flow moving the equator to the poles:
///   p_t^+(v,r) = (cos(s) v, cos(s) i r + sin(s)),
///   p_t^-(v,r) = (cos(s) v, cos(s) i r - sin(s)),  s = pi t / 2.
/// Exactly on S^5 for every input, poles of S^4 included.
std::pair<Sphere5Point, Sphere5Point> path_point(double t, const Sphere4Point& p);

/// W_t = (phi+ o p_t^+)* (phi- o p_t^-) c_t with c_t = diag(1, 1, e^{i pi t});
/// W_0 = U0 + I1, W_1 = I3.
PathUnitary w_path(double t, const Sphere4Point& p);

/// N0(t) = W_t E3 (third column); N0(0,p) = N0(1,p) = e3.
Eigen::Vector3cd n0(double t, const Sphere4Point& p);

/// P(u) = (u ||u||_2^{-1} sin(pi ||u||_inf), cos(pi ||u||_inf)) with the whole
/// boundary ||u||_inf = 1 collapsing to (0,-1) and P(0) = (0,1).
Sphere4Point pinch(const std::array<double, 4>& u);

/// The constant calibration unitary Q with Q e3 = 3^{-1/2} (1,1,1).
Eigen::Matrix3cd calibration_unitary();

/// H0(x) = N0(x1, P(u(x2..x5))) for x on the quotient torus; u is the
/// wraparound rescale of [0,1)^4 onto [-1,1]^4 sending 0 to 0. With
/// `calibrated`, returns Q H0(x).
Eigen::Vector3cd h0_field(const std::array<double, 5>& x, bool calibrated);

/// The 5x5 dilation with det 3 (columns e2,e3,e4,e5,3e1).
IntMat obstruction_matrix();
DilationMatrix obstruction_dilation();

/// h0(x) = 3^{-1/2} [H_3(y) + H_1(y) e^{2 pi i x1} + H_2(y) e^{4 pi i x1}],
/// y = (3 x1 mod 1, x2..x5), sampled on the given T^5 grid. The first axis
/// resolution must be divisible by 3 (BadResolution).
TorusFunction assemble_h0(const GridShape& shape, bool calibrated);

struct DemoCase {
  std::string name;
  std::vector<std::vector<int>> resolutions;
  std::vector<double> max_jumps;
  std::vector<bool> closed;
};

struct DemoReport {
  std::vector<DemoCase> cases;
  std::string verdict_note = "demonstration-not-proof";
};

/// Runs align_sweep ladders: a Haar control (jumps expected to decay) against
/// the assembled T^5 filter (jumps expected to stay up). Evidence, not proof.
DemoReport demo_completion_failure(const std::vector<int>& haar_resolutions,
                                   const std::vector<std::vector<int>>& t5_resolutions,
                                   double jump_threshold = 0.5);

}  // namespace torwav

#endif  // TORWAV_OBSTRUCTION_HPP
