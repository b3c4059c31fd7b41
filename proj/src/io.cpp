#include "torwav/io.hpp"

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "torwav/errors.hpp"

namespace torwav {

using nlohmann::json;

nlohmann::json filter_to_json(const TorusFunction& f) {
  json j;
  if (f.has_coeffs()) {
    j["representation"] = "coeff";
    json arr = json::array();
    for (const auto& [k, v] : f.coeffs()) {
      json e;
      e["k"] = k;
      e["re"] = v.real();
      e["im"] = v.imag();
      arr.push_back(std::move(e));
    }
    j["coeffs"] = std::move(arr);
  } else {
    j["representation"] = "grid";
    json g;
    g["shape"] = f.grid_shape().dims;
    json vals = json::array();
    for (const cd& v : f.grid_values()) vals.push_back(json::array({v.real(), v.imag()}));
    g["values"] = std::move(vals);
    j["grid"] = std::move(g);
  }
  return j;
}

TorusFunction filter_from_json(const nlohmann::json& j, int dim) {
  const std::string rep = j.value("representation", "coeff");
  if (rep == "coeff") {
    if (!j.contains("coeffs")) fail(Errc::ParseError, "missing 'coeffs'");
    std::map<MultiIndex, cd> c;
    for (const auto& e : j.at("coeffs")) {
      MultiIndex k = e.at("k").get<MultiIndex>();
      if (static_cast<int>(k.size()) != dim) fail(Errc::ParseError, "coefficient rank mismatch");
      c[std::move(k)] += cd{e.at("re").get<double>(), e.at("im").get<double>()};
    }
    return TorusFunction::from_coeffs(dim, std::move(c));
  }
  if (rep == "grid") {
    if (!j.contains("grid")) fail(Errc::ParseError, "missing 'grid'");
    const auto& g = j.at("grid");
    GridShape shape(g.at("shape").get<std::vector<int>>());
    if (shape.rank() != dim) fail(Errc::ParseError, "grid rank mismatch");
    std::vector<cd> vals;
    vals.reserve(shape.size());
    for (const auto& e : g.at("values"))
      vals.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return TorusFunction::from_grid(std::move(shape), std::move(vals));
  }
  fail(Errc::ParseError, "unknown representation '" + rep + "'");
}

FilterFile read_filter_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::IoFailure, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("invalid JSON: ") + e.what());
  }
  try {
    const int n = j.at("n").get<int>();
    const auto flat = j.at("dilation").get<std::vector<std::int64_t>>();
    if (flat.size() != static_cast<std::size_t>(n) * n)
      fail(Errc::ParseError, "dilation must have n*n entries");
    IntMat m(n);
    m.a = flat;
    FilterFile f{DilationMatrix::validate(m), {}, j.value("normalized", false)};
    if (j.contains("filters")) {
      for (const auto& e : j.at("filters")) f.filters.push_back(filter_from_json(e, n));
    } else {
      f.filters.push_back(filter_from_json(j, n));
    }
    if (f.filters.empty()) fail(Errc::ParseError, "file carries no filters");
    return f;
  } catch (const json::exception& e) {
    fail(Errc::ParseError, std::string("bad filter file: ") + e.what());
  }
}

void write_filter_file(const std::string& path, const DilationMatrix& A,
                       const std::vector<TorusFunction>& filters, bool normalized) {
  json j;
  j["n"] = A.dim();
  j["dilation"] = A.entries().a;
  if (filters.size() == 1) {
    j.update(filter_to_json(filters.front()));
  } else {
    json arr = json::array();
    for (const auto& f : filters) arr.push_back(filter_to_json(f));
    j["filters"] = std::move(arr);
    j["normalized"] = normalized;
  }
  atomic_write(path, j.dump(2) + "\n");
}

nlohmann::json report_to_json(const ValidationReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json e;
    e["condition"] = c.condition;
    e["residual"] = c.residual;
    e["pass"] = c.pass;
    e["grid"] = rep.grid;
    checks.push_back(std::move(e));
  }
  json j;
  j["checks"] = std::move(checks);
  j["pass"] = rep.pass();
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

nlohmann::json sweep_to_json(const SweepResult& res) {
  json j;
  j["closed"] = res.closed;
  j["max_jump"] = res.max_jump;
  j["location"] = res.location;
  j["grid"] = res.grid;
  j["sweep"] = res.sweep;
  j["covariance_residual"] = res.covariance_residual;
  j["jump_threshold"] = res.jump_threshold;
  return j;
}

nlohmann::json demo_to_json(const DemoReport& rep) {
  json cases = json::array();
  for (const auto& c : rep.cases) {
    json e;
    e["case"] = c.name;
    e["resolutions"] = c.resolutions;
    e["max_jumps"] = c.max_jumps;
    e["closed"] = c.closed;
    e["verdict_note"] = rep.verdict_note;
    cases.push_back(std::move(e));
  }
  json j;
  j["cases"] = std::move(cases);
  j["verdict_note"] = rep.verdict_note;
  return j;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::IoFailure, "cannot open " + tmp);
    out << content;
    if (!out) fail(Errc::IoFailure, "write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(Errc::IoFailure, "rename failed: " + ec.message());
}

}  // namespace torwav
