#include "torwav/errors.hpp"

namespace torwav {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::Singular: return "Singular";
    case Errc::NotExpanding: return "NotExpanding";
    case Errc::OffGrid: return "OffGrid";
    case Errc::IncompatibleGrid: return "IncompatibleGrid";
    case Errc::WrongCount: return "WrongCount";
    case Errc::NotQ2: return "NotQ2";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::NotUnit: return "NotUnit";
    case Errc::NotProjection: return "NotProjection";
    case Errc::OffSphere: return "OffSphere";
    case Errc::PoleSingularity: return "PoleSingularity";
    case Errc::TooFarToNormalize: return "TooFarToNormalize";
    case Errc::NoCoefficientForm: return "NoCoefficientForm";
    case Errc::MismatchedDilation: return "MismatchedDilation";
    case Errc::BadResolution: return "BadResolution";
    case Errc::BadDepth: return "BadDepth";
    case Errc::UnsupportedSweepLattice: return "UnsupportedSweepLattice";
    case Errc::IoFailure: return "IoFailure";
    case Errc::ParseError: return "ParseError";
  }
  return "Error";
}

}  // namespace torwav
