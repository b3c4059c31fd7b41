// torwav: wavelet filter functions on the n-torus.
//
// Subcommands: lattice, validate, complete, cascade, obstruct.
// Exit codes: 0 = pass, 1 = a requested check ran and failed, 2 = usage or
// data error.

#include <CLI11.hpp>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "torwav/cascade.hpp"
#include "torwav/completion.hpp"
#include "torwav/errors.hpp"
#include "torwav/filters.hpp"
#include "torwav/io.hpp"
#include "torwav/lattice.hpp"
#include "torwav/obstruction.hpp"
#include "torwav/torusfn.hpp"

namespace {

using nlohmann::json;
using namespace torwav;

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::optional<GridShape> parse_grid(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return GridShape(parse_int_list(s));
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    atomic_write(out_path, j.dump(2) + "\n");
}

int cmd_lattice(const std::string& file, const std::string& out) {
  const FilterFile f = read_filter_file(file);
  const DilationMatrix& A = f.dilation;
  const CosetReps reps = coset_representatives(A);
  const DualGroupF F = dual_group(A);

  std::cout << "n = " << A.dim() << ", det = " << A.det() << ", q = " << A.q() << "\n";
  std::cout << "coset representatives:\n";
  for (const auto& p : reps.reps) {
    std::cout << "  (";
    for (std::size_t a = 0; a < p.size(); ++a) std::cout << (a ? "," : "") << p[a];
    std::cout << ")\n";
  }
  std::cout << "dual group F:\n";
  for (const auto& w : F.elements) {
    std::cout << "  (";
    for (std::size_t a = 0; a < w.size(); ++a) std::cout << (a ? "," : "") << w[a].str();
    std::cout << ")\n";
  }

  json j;
  j["n"] = A.dim();
  j["det"] = A.det();
  j["q"] = A.q();
  j["coset_reps"] = json::array();
  for (const auto& p : reps.reps) j["coset_reps"].push_back(p);
  j["dual_group"] = json::array();
  for (const auto& w : F.elements) {
    json e = json::array();
    for (const auto& r : w) e.push_back(r.str());
    j["dual_group"].push_back(std::move(e));
  }
  if (!out.empty()) atomic_write(out, j.dump(2) + "\n");
  return 0;
}

int cmd_validate(const std::string& file, double tol, const std::string& grid,
                 const std::string& out) {
  const FilterFile f = read_filter_file(file);
  const auto shape = parse_grid(grid);

  json reports = json::array();
  bool all_pass = true;
  if (f.filters.size() == 1) {
    TorusFunction m0 = f.filters.front();
    if (f.normalized) m0 = m0.scaled(cd{static_cast<double>(f.dilation.q()), 0.0});
    const ValidationReport rep = validate_low_pass(m0, f.dilation, tol, shape);
    all_pass = rep.pass();
    for (const auto& c : rep.checks)
      std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.condition << "  residual " << c.residual
                << "\n";
    std::cout << "note: " << rep.note << "\n";
    reports.push_back(report_to_json(rep));
  } else {
    const FilterBank bank(f.dilation, f.filters, f.normalized);
    const ValidationReport rep = validate_family(bank, tol, shape);
    all_pass = rep.pass();
    for (const auto& c : rep.checks)
      std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.condition << "  residual " << c.residual
                << "\n";
    reports.push_back(report_to_json(rep));
  }
  if (!out.empty()) atomic_write(out, reports.dump(2) + "\n");
  return all_pass ? 0 : 1;
}

int cmd_complete(const std::string& file, const std::string& method, const std::string& grid,
                 double threshold, const std::string& out, const std::string& report_path) {
  const FilterFile f = read_filter_file(file);
  const DilationMatrix& A = f.dilation;
  TorusFunction h0 = f.filters.front();
  if (!f.normalized) h0 = h0.scaled(cd{1.0 / static_cast<double>(A.q()), 0.0});
  const auto shape = parse_grid(grid);

  if (method == "q2") {
    const TorusFunction h1 = complete_q2(h0, A, shape);
    const FilterBank bank(A, {h0, h1}, true);
    const ValidationReport rep = validate_family(bank, 1e-10, shape);
    std::cout << "q2 completion Gram residual: " << rep.max_residual() << "\n";
    if (!out.empty()) {
      const FilterBank m = bank.denormalized();
      write_filter_file(out, A, m.filters(), false);
    }
    if (!report_path.empty()) atomic_write(report_path, report_to_json(rep).dump(2) + "\n");
    return rep.pass() ? 0 : 1;
  }
  if (method == "sweep") {
    GridShape s = shape ? *shape : default_grid(dual_group(A));
    const SweepResult res = align_sweep(h0, A, s, SweepOrder::lex, threshold);
    std::cout << (res.closed ? "closed" : "NOT closed") << ": max jump " << res.max_jump
              << " (threshold " << res.jump_threshold << "), covariance residual "
              << res.covariance_residual << "\n";
    if (!out.empty() && res.bank)
      write_filter_file(out, A, res.bank->filters(), res.bank->is_normalized());
    if (!report_path.empty()) atomic_write(report_path, sweep_to_json(res).dump(2) + "\n");
    return res.closed ? 0 : 1;
  }
  fail(Errc::ParseError, "unknown method '" + method + "' (expected q2 or sweep)");
}

int cmd_cascade(const std::string& file, int depth, const std::string& box_str,
                const std::string& res_str, bool wavelets, const std::string& out) {
  const FilterFile f = read_filter_file(file);
  const DilationMatrix& A = f.dilation;
  TorusFunction m0 = f.filters.front();
  if (f.normalized) m0 = m0.scaled(cd{static_cast<double>(A.q()), 0.0});
  const int n = A.dim();

  SampleBox box;
  {
    std::stringstream ss(box_str);
    std::string pair;
    std::vector<std::pair<double, double>> pairs;
    while (std::getline(ss, pair, ',')) {
      const auto colon = pair.find(':');
      if (colon == std::string::npos) fail(Errc::ParseError, "box axis must be lo:hi");
      pairs.emplace_back(std::stod(pair.substr(0, colon)), std::stod(pair.substr(colon + 1)));
    }
    if (pairs.size() == 1) pairs.assign(static_cast<std::size_t>(n), pairs.front());
    if (static_cast<int>(pairs.size()) != n) fail(Errc::ParseError, "box rank mismatch");
    for (const auto& [lo, hi] : pairs) {
      box.lo.push_back(lo);
      box.hi.push_back(hi);
    }
  }
  {
    auto res = parse_int_list(res_str);
    if (res.size() == 1) res.assign(static_cast<std::size_t>(n), res.front());
    if (static_cast<int>(res.size()) != n) fail(Errc::ParseError, "res rank mismatch");
    box.res = std::move(res);
  }

  const ScalingTransform phi(m0, A, depth);
  std::ostringstream csv;
  if (wavelets && f.filters.size() > 1) {
    std::vector<TorusFunction> ws;
    for (std::size_t i = 1; i < f.filters.size(); ++i) {
      TorusFunction w = f.filters[i];
      if (f.normalized) w = w.scaled(cd{static_cast<double>(A.q()), 0.0});
      ws.push_back(std::move(w));
    }
    sample_export_with_wavelets(phi, ws, box, csv);
  } else {
    sample_export(phi, box, csv);
  }
  if (out.empty())
    std::cout << csv.str();
  else
    atomic_write(out, csv.str());

  // convergence table: |Phi_N - Phi_2N| at box corners and center
  std::vector<std::vector<double>> pts;
  pts.push_back(box.lo);
  pts.push_back(box.hi);
  {
    std::vector<double> mid(box.lo.size());
    for (std::size_t a = 0; a < mid.size(); ++a) mid[a] = 0.5 * (box.lo[a] + box.hi[a]);
    pts.push_back(std::move(mid));
  }
  const auto conv = convergence_report(m0, A, pts, depth, 2);
  std::cerr << "convergence |Phi_N - Phi_2N| at N=" << depth << ": " << conv[0]
            << ", N=" << 2 * depth << ": " << conv[1] << "\n";
  return 0;
}

int cmd_obstruct(bool check_identities, bool build_h0, bool demo_failure, const std::string& res,
                 unsigned seed, bool uncalibrated, double tol, const std::string& out) {
  if (check_identities) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto random_s4 = [&]() {
      double c[5];
      double n2 = 0.0;
      for (double& x : c) {
        x = gauss(rng);
        n2 += x * x;
      }
      const double inv = 1.0 / std::sqrt(n2);
      Eigen::Vector2cd v;
      v << cd{c[0] * inv, c[1] * inv}, cd{c[2] * inv, c[3] * inv};
      return Sphere4Point::make(v, c[4] * inv);
    };
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double worst_u0 = 0, worst_phi = 0, worst_w = 0, worst_fact = 0, worst_sphere = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
      const Sphere4Point p = random_s4();
      const double t = unit(rng);
      const Eigen::Matrix2cd U = u0(p);
      worst_u0 = std::max(worst_u0,
                          (U * U.adjoint() - Eigen::Matrix2cd::Identity()).norm());
      const auto [pp, pm] = path_point(t, p);
      worst_sphere = std::max({worst_sphere, pp.constraint_residual(), pm.constraint_residual()});
      const Eigen::Matrix3cd fp = phi(pp, PhiSign::plus);
      const Eigen::Matrix3cd fm = phi(pm, PhiSign::minus);
      worst_phi = std::max({worst_phi,
                            (fp * fp.adjoint() - Eigen::Matrix3cd::Identity()).norm(),
                            (fm * fm.adjoint() - Eigen::Matrix3cd::Identity()).norm()});
      const PathUnitary w = w_path(t, p);
      worst_w = std::max(worst_w,
                         (w.value * w.value.adjoint() - Eigen::Matrix3cd::Identity()).norm());
      worst_fact = std::max(worst_fact, factorization_residual(p));
    }
    double worst_end = 0;
    for (int i = 0; i < 1000; ++i) {
      const Sphere4Point p = random_s4();
      Eigen::Matrix3cd w0_expect = Eigen::Matrix3cd::Identity();
      w0_expect.topLeftCorner<2, 2>() = u0(p);
      worst_end = std::max({worst_end, (w_path(0.0, p).value - w0_expect).norm(),
                            (w_path(1.0, p).value - Eigen::Matrix3cd::Identity()).norm(),
                            (n0(0.0, p) - Eigen::Vector3cd::Unit(2)).norm(),
                            (n0(1.0, p) - Eigen::Vector3cd::Unit(2)).norm()});
    }

    json j;
    j["unitarity_u0"] = worst_u0;
    j["unitarity_phi"] = worst_phi;
    j["unitarity_w"] = worst_w;
    j["factorization"] = worst_fact;
    j["sphere_constraint"] = worst_sphere;
    j["endpoints"] = worst_end;
    j["trials"] = trials;
    const double bound = 1e-11;
    const bool pass = worst_u0 < bound && worst_phi < bound && worst_w < bound &&
                      worst_fact < bound && worst_end < bound && worst_sphere < 1e-12;
    j["pass"] = pass;
    std::cout << "identity suite " << (pass ? "pass" : "FAIL") << ": u0 " << worst_u0 << ", phi "
              << worst_phi << ", W " << worst_w << ", factorization " << worst_fact
              << ", endpoints " << worst_end << "\n";
    emit(j, out);
    return pass ? 0 : 1;
  }

  if (build_h0) {
    const GridShape shape(res.empty() ? std::vector<int>{9, 8, 8, 8, 8} : parse_int_list(res));
    const DilationMatrix A = obstruction_dilation();
    const TorusFunction h0 = assemble_h0(shape, !uncalibrated);
    const DualGroupF F = dual_group(A);
    const InvariantFunction nrm = bracket(h0, h0, F, /*primed=*/true, shape);
    double worst = 0.0;
    for (const cd& z : nrm.fn.grid_values()) worst = std::max(worst, std::abs(z - cd{1.0, 0.0}));
    std::cout << "assembled h0 on grid; sup |<h0,h0>' - 1| = " << worst << "\n";
    if (!out.empty()) write_filter_file(out, A, {h0}, true);
    return worst < tol ? 0 : 1;
  }

  if (demo_failure) {
    const DemoReport rep = demo_completion_failure({64, 128, 256},
                                                   {{6, 6, 6, 6, 6}, {9, 6, 6, 6, 6}, {12, 8, 8, 8, 8}});
    for (const auto& c : rep.cases) {
      std::cout << c.name << ": max jumps";
      for (double m : c.max_jumps) std::cout << " " << m;
      std::cout << "\n";
    }
    std::cout << "verdict: " << rep.verdict_note << "\n";
    emit(demo_to_json(rep), out);
    return 0;
  }

  fail(Errc::ParseError, "choose one of --check-identities, --build-h0, --demo-failure");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavelet filter functions on the n-torus"};
  app.require_subcommand(1);

  std::string file, out, grid, method = "q2", box = "-4:4", res_str = "512", report_path, obs_res;
  double tol = 1e-10, threshold = 0.5;
  int depth = 40;
  unsigned seed = 0;
  bool wavelets = false, check_identities = false, build_h0 = false, demo_failure = false,
       uncalibrated = false;

  auto* lat = app.add_subcommand("lattice", "coset representatives and dual group of a dilation");
  lat->add_option("file", file, "filter/matrix JSON file")->required();
  lat->add_option("--out", out, "write JSON report here");

  auto* val = app.add_subcommand("validate", "check the low-pass or family conditions");
  val->add_option("file", file)->required();
  val->add_option("--tol", tol, "residual tolerance");
  val->add_option("--grid", grid, "comma-separated grid resolutions");
  val->add_option("--out", out, "write JSON report here");

  auto* comp = app.add_subcommand("complete", "complete a low-pass filter to a family");
  comp->add_option("file", file)->required();
  comp->add_option("--method", method, "q2 | sweep");
  comp->add_option("--grid", grid);
  comp->add_option("--threshold", threshold, "sweep jump threshold");
  comp->add_option("--out", out, "write completed bank here");
  comp->add_option("--report", report_path, "write JSON report here");

  auto* casc = app.add_subcommand("cascade", "sample the scaling-function Fourier transform");
  casc->add_option("file", file)->required();
  casc->add_option("--depth", depth, "truncation depth N");
  casc->add_option("--box", box, "lo:hi per axis, comma separated");
  casc->add_option("--res", res_str, "samples per axis");
  casc->add_flag("--wavelets", wavelets, "also sample the wavelet transforms");
  casc->add_option("--out", out, "write CSV here");

  auto* obs = app.add_subcommand("obstruct", "the det-3 T^5 construction");
  obs->add_flag("--check-identities", check_identities);
  obs->add_flag("--build-h0", build_h0);
  obs->add_flag("--demo-failure", demo_failure);
  obs->add_option("--res", obs_res, "T^5 grid, e.g. 9,8,8,8,8");
  obs->add_option("--seed", seed, "RNG seed for sampled identity checks");
  obs->add_option("--tol", tol);
  obs->add_flag("--uncalibrated", uncalibrated, "skip the zero-point calibration unitary");
  obs->add_option("--out", out, "write JSON/filter output here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (lat->parsed()) return cmd_lattice(file, out);
    if (val->parsed()) return cmd_validate(file, tol, grid, out);
    if (comp->parsed()) return cmd_complete(file, method, grid, threshold, out, report_path);
    if (casc->parsed()) return cmd_cascade(file, depth, box, res_str, wavelets, out);
    if (obs->parsed())
      return cmd_obstruct(check_identities, build_h0, demo_failure, obs_res, seed, uncalibrated,
                          tol, out);
  } catch (const torwav::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
