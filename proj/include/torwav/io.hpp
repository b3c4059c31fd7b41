#ifndef TORWAV_IO_HPP
#define TORWAV_IO_HPP

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "torwav/completion.hpp"
#include "torwav/filters.hpp"
#include "torwav/obstruction.hpp"
#include "torwav/torusfn.hpp"

// JSON filter-file schema:
//   { "n": int, "dilation": [row-major ints],
//     "representation": "coeff" | "grid",
//     "coeffs": [ {"k": [int,...], "re": f, "im": f}, ... ],
//     "grid":   { "shape": [int,...], "values": [[re,im],...] } }
// A bank file replaces the representation fields with
//   "filters": [ <per-function object>, ... ], "normalized": bool.

namespace torwav {

struct FilterFile {
  DilationMatrix dilation;
  std::vector<TorusFunction> filters;
  bool normalized = false;
};

FilterFile read_filter_file(const std::string& path);
void write_filter_file(const std::string& path, const DilationMatrix& A,
                       const std::vector<TorusFunction>& filters, bool normalized);

nlohmann::json filter_to_json(const TorusFunction& f);
TorusFunction filter_from_json(const nlohmann::json& j, int dim);

nlohmann::json report_to_json(const ValidationReport& rep);
nlohmann::json sweep_to_json(const SweepResult& res);
nlohmann::json demo_to_json(const DemoReport& rep);

/// Write via temp file + rename so readers never observe partial output.
void atomic_write(const std::string& path, const std::string& content);

}  // namespace torwav

#endif  // TORWAV_IO_HPP
