#include "torwav/obstruction.hpp"

#include <cmath>
#include <numbers>

#include "torwav/errors.hpp"

namespace torwav {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

Sphere4Point Sphere4Point::make(const Eigen::Vector2cd& v, double r) {
  Sphere4Point p{v, r};
  const double res = p.constraint_residual();
  if (res > 1e-12)
    fail(Errc::OffSphere, "|v|^2 + r^2 deviates from 1 by " + std::to_string(res));
  return p;
}

double Sphere4Point::constraint_residual() const { return std::abs(v.squaredNorm() + r * r - 1.0); }

Sphere5Point Sphere5Point::make(const Eigen::Vector2cd& v, cd xi) {
  Sphere5Point p{v, xi};
  const double res = p.constraint_residual();
  if (res > 1e-12)
    fail(Errc::OffSphere, "|v|^2 + |xi|^2 deviates from 1 by " + std::to_string(res));
  return p;
}

double Sphere5Point::constraint_residual() const {
  return std::abs(v.squaredNorm() + std::norm(xi) - 1.0);
}

Eigen::Matrix2cd u0(const Sphere4Point& p) {
  if (p.constraint_residual() > 1e-12) fail(Errc::OffSphere, "point is not on S^4");
  const cd one_ir{1.0, p.r};
  const cd coef = 2.0 / (one_ir * one_ir);
  return Eigen::Matrix2cd::Identity() - coef * (p.v * p.v.adjoint());
}

Eigen::Matrix3cd phi(const Sphere5Point& p, PhiSign sign) {
  if (p.constraint_residual() > 1e-12) fail(Errc::OffSphere, "point is not on S^5");
  const cd xi = p.xi;
  const cd xibar = std::conj(xi);
  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  if (sign == PhiSign::plus) {
    if (std::abs(cd{1.0, 0.0} + xi) < 1e-8)
      fail(Errc::PoleSingularity, "phi+ is undefined at the south pole");
    const cd b = (1.0 + xi) / (1.0 + xibar);
    m.topLeftCorner<2, 2>() =
        Eigen::Matrix2cd::Identity() - (1.0 / (1.0 + xibar)) * (p.v * p.v.adjoint());
    m.block<1, 2>(2, 0) = -b * p.v.adjoint();
  } else {
    if (std::abs(cd{1.0, 0.0} - xi) < 1e-8)
      fail(Errc::PoleSingularity, "phi- is undefined at the north pole");
    const cd c = (1.0 - xi) / (1.0 - xibar);
    m.topLeftCorner<2, 2>() =
        Eigen::Matrix2cd::Identity() - (1.0 / (1.0 - xibar)) * (p.v * p.v.adjoint());
    m.block<1, 2>(2, 0) = c * p.v.adjoint();
  }
  m.block<2, 1>(0, 2) = p.v;
  m(2, 2) = xi;
  return m;
}

double factorization_residual(const Sphere4Point& p) {
  const Sphere5Point e = Sphere5Point::make(p.v, cd{0.0, p.r});
  Eigen::Matrix3cd lhs = Eigen::Matrix3cd::Identity();
  lhs.topLeftCorner<2, 2>() = u0(p);
  const Eigen::Matrix3cd rhs = phi(e, PhiSign::plus).adjoint() * phi(e, PhiSign::minus);
  return (lhs - rhs).norm();
}

std::pair<Sphere5Point, Sphere5Point> path_point(double t, const Sphere4Point& p) {
  const double s = 0.5 * kPi * t;
  const double cs = std::cos(s), sn = std::sin(s);
  const Eigen::Vector2cd u = cs * p.v;
  const cd xi_plus{sn, cs * p.r};
  const cd xi_minus{-sn, cs * p.r};
  return {Sphere5Point{u, xi_plus}, Sphere5Point{u, xi_minus}};
}

PathUnitary w_path(double t, const Sphere4Point& p) {
  const auto [pp, pm] = path_point(t, p);
  Eigen::Matrix3cd ct = Eigen::Matrix3cd::Identity();
  ct(2, 2) = std::polar(1.0, kPi * t);
  PathUnitary w;
  w.t = t;
  w.value = phi(pp, PhiSign::plus).adjoint() * phi(pm, PhiSign::minus) * ct;
  return w;
}

Eigen::Vector3cd n0(double t, const Sphere4Point& p) {
  // Third column only: W_t E3 = e^{i pi t} phi+(p_t^+)* (u, xi^-).
  const auto [pp, pm] = path_point(t, p);
  Eigen::Vector3cd col;
  col.head<2>() = pm.v;
  col[2] = pm.xi;
  const Eigen::Vector3cd out = phi(pp, PhiSign::plus).adjoint() * col;
  return std::polar(1.0, kPi * t) * out;
}

Sphere4Point pinch(const std::array<double, 4>& u) {
  double sup = 0.0, nrm2 = 0.0;
  for (double c : u) {
    sup = std::max(sup, std::abs(c));
    nrm2 += c * c;
  }
  if (sup > 1.0 + 1e-12) fail(Errc::ParseError, "pinch input must lie in [-1,1]^4");
  if (sup == 0.0) return Sphere4Point{Eigen::Vector2cd::Zero(), 1.0};
  const double r = std::cos(kPi * sup);
  const double mag = std::sin(kPi * sup) / std::sqrt(nrm2);
  Eigen::Vector2cd v;
  v[0] = cd{u[0] * mag, u[1] * mag};
  v[1] = cd{u[2] * mag, u[3] * mag};
  if (sup >= 1.0) {
    // whole boundary collapses to the south pole exactly
    v.setZero();
    return Sphere4Point{v, -1.0};
  }
  return Sphere4Point{v, r};
}

Eigen::Matrix3cd calibration_unitary() {
  const double s = 1.0 / std::sqrt(3.0);
  Eigen::VectorXcd row(3);
  row << cd{s, 0}, cd{s, 0}, cd{s, 0};
  const Eigen::MatrixXcd W = householder_complete(row);  // first row = target
  Eigen::Matrix3cd Q0 = W.transpose();                   // first column = target
  Eigen::Matrix3cd P = Eigen::Matrix3cd::Zero();         // P e3 = e1
  P(0, 2) = 1.0;
  P(1, 0) = 1.0;
  P(2, 1) = 1.0;
  return Q0 * P;
}

Eigen::Vector3cd h0_field(const std::array<double, 5>& x, bool calibrated) {
  std::array<double, 4> u;
  for (int a = 0; a < 4; ++a) {
    double c = x[a + 1] - std::floor(x[a + 1]);
    u[a] = c <= 0.5 ? 2.0 * c : 2.0 * c - 2.0;
  }
  const double t = x[0] - std::floor(x[0]);
  const Eigen::Vector3cd h = n0(t, pinch(u));
  if (!calibrated) return h;
  static const Eigen::Matrix3cd Q = calibration_unitary();
  return Q * h;
}

IntMat obstruction_matrix() {
  IntMat m(5);
  m.at(0, 4) = 3;
  for (int i = 1; i < 5; ++i) m.at(i, i - 1) = 1;
  return m;
}

DilationMatrix obstruction_dilation() { return DilationMatrix::validate(obstruction_matrix()); }

TorusFunction assemble_h0(const GridShape& shape, bool calibrated) {
  if (shape.rank() != 5) fail(Errc::BadResolution, "T^5 grid expected");
  const int n1 = shape.dims[0];
  if (n1 % 3 != 0) fail(Errc::BadResolution, "first-axis resolution must be divisible by 3");

  // Cache the field over distinct (t, u) pairs: t = (3 j mod n1)/n1 takes
  // n1/3 values; u depends on the trailing four axes.
  const int nt = n1 / 3;
  std::size_t usize = 1;
  for (int a = 1; a < 5; ++a) usize *= static_cast<std::size_t>(shape.dims[a]);

  std::vector<Eigen::Vector3cd> cache(static_cast<std::size_t>(nt) * usize);
  {
    std::vector<int> idx(4, 0);
    for (std::size_t ui = 0; ui < usize; ++ui) {
      std::array<double, 5> x{};
      for (int a = 0; a < 4; ++a) x[a + 1] = static_cast<double>(idx[a]) / shape.dims[a + 1];
      for (int k = 0; k < nt; ++k) {
        x[0] = static_cast<double>(3 * k % n1) / n1;  // = k/nt
        cache[static_cast<std::size_t>(k) * usize + ui] = h0_field(x, calibrated);
      }
      int a = 3;
      for (; a >= 0; --a) {
        if (++idx[a] < shape.dims[a + 1]) break;
        idx[a] = 0;
      }
      if (a < 0) break;
    }
  }

  const double s = 1.0 / std::sqrt(3.0);
  std::vector<cd> values(shape.size());
  std::vector<cd> chi(n1);  // e^{2 pi i j / n1}
  for (int j = 0; j < n1; ++j) chi[j] = std::polar(1.0, 2.0 * kPi * j / n1);

  for (int j1 = 0; j1 < n1; ++j1) {
    const int k = (3 * j1 % n1) / 3;  // index of t = (3 j1 mod n1)/n1 among multiples of 3/n1
    const cd c1 = chi[j1];
    const cd c2 = chi[(2 * j1) % n1];
    for (std::size_t ui = 0; ui < usize; ++ui) {
      const Eigen::Vector3cd& H = cache[static_cast<std::size_t>(k) * usize + ui];
      // third component -> constant character, first -> e1-hat, second -> square
      values[static_cast<std::size_t>(j1) * usize + ui] = s * (H[2] + H[0] * c1 + H[1] * c2);
    }
  }
  return TorusFunction::from_grid(shape, std::move(values));
}

DemoReport demo_completion_failure(const std::vector<int>& haar_resolutions,
                                   const std::vector<std::vector<int>>& t5_resolutions,
                                   double jump_threshold) {
  DemoReport report;

  {
    DemoCase ctrl;
    ctrl.name = "haar-control";
    IntMat two(1);
    two.at(0, 0) = 2;
    const DilationMatrix A = DilationMatrix::validate(two);
    const TorusFunction h0 =
        TorusFunction::from_coeffs(1, {{{0}, cd{0.5, 0.0}}, {{1}, cd{0.5, 0.0}}});
    for (int N : haar_resolutions) {
      const SweepResult r =
          align_sweep(h0, A, GridShape({N}), SweepOrder::lex, jump_threshold);
      ctrl.resolutions.push_back({N});
      ctrl.max_jumps.push_back(r.max_jump);
      ctrl.closed.push_back(r.closed);
    }
    report.cases.push_back(std::move(ctrl));
  }

  {
    DemoCase obs;
    obs.name = "obstruction-t5";
    const DilationMatrix A = obstruction_dilation();
    for (const auto& res : t5_resolutions) {
      const GridShape shape(res);
      const TorusFunction h0 = assemble_h0(shape, /*calibrated=*/true);
      const SweepResult r = align_sweep(h0, A, shape, SweepOrder::lex, jump_threshold);
      obs.resolutions.push_back(res);
      obs.max_jumps.push_back(r.max_jump);
      obs.closed.push_back(r.closed);
    }
    report.cases.push_back(std::move(obs));
  }
  return report;
}

}  // namespace torwav
