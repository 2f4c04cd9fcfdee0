#ifndef QGRASS_ERROR_HPP
#define QGRASS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qgrass {

enum class Errc {
  DimensionMismatch,
  ZeroQuaternion,
  NotQuaternionicStructure,
  NoConvergence,
  PairingFailure,
  NotUnitary,
  NotOrthonormalFrame,
  NotProjector,
  CutLocus,
  RankDeficient,
  InvalidComponentCount,
  LinearlyDependent,
  ImageSizeMismatch,
  EmptyImageSet,
  EmptyObjectDirectory,
  DecodeError,
  InsufficientClassSize,
  MixedDimensions,
  InvalidArgument,
  IoError,
  ParseError,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ZeroQuaternion: return "ZeroQuaternion";
    case Errc::NotQuaternionicStructure: return "NotQuaternionicStructure";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::PairingFailure: return "PairingFailure";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::NotOrthonormalFrame: return "NotOrthonormalFrame";
    case Errc::NotProjector: return "NotProjector";
    case Errc::CutLocus: return "CutLocus";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::InvalidComponentCount: return "InvalidComponentCount";
    case Errc::LinearlyDependent: return "LinearlyDependent";
    case Errc::ImageSizeMismatch: return "ImageSizeMismatch";
    case Errc::EmptyImageSet: return "EmptyImageSet";
    case Errc::EmptyObjectDirectory: return "EmptyObjectDirectory";
    case Errc::DecodeError: return "DecodeError";
    case Errc::InsufficientClassSize: return "InsufficientClassSize";
    case Errc::MixedDimensions: return "MixedDimensions";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::IoError: return "IoError";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qgrass

#endif  // QGRASS_ERROR_HPP
