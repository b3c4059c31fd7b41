#ifndef TORWAV_ERRORS_HPP
#define TORWAV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace torwav {

/// Error categories surfaced by the library. The CLI maps any of these to
/// exit code 2 (usage/data error); a check that ran and failed is not an
/// error and exits with 1.
enum class Errc {
  Singular,
  NotExpanding,
  OffGrid,
  IncompatibleGrid,
  WrongCount,
  NotQ2,
  NotNormalized,
  NotUnit,
  NotProjection,
  OffSphere,
  PoleSingularity,
  TooFarToNormalize,
  NoCoefficientForm,
  MismatchedDilation,
  BadResolution,
  BadDepth,
  UnsupportedSweepLattice,
  IoFailure,
  ParseError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace torwav

#endif  // TORWAV_ERRORS_HPP
