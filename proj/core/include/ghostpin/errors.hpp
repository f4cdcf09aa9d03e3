#pragma once

#include <stdexcept>
#include <string>

namespace ghostpin {

// Failure classes surfaced by the library. The CLI maps ConfigError-kind
// codes to exit code 2 and everything else to 3.
enum class ErrorCode {
  EnergyMismatch,
  NonPositiveLength,
  GeometryOrder,
  InvalidSize,
  WindowTooSmall,
  ObjectUnresolvable,
  FitDiverged,
  ZeroMass,
  Evanescent,
  GridUndersampled,
  WrongRepresentation,
  OutOfWindow,
  ParseError,
  NonMonotonicX,
  ValueOutOfRange,
  NotBimodal,
  NonPositiveRealPart,
  ZeroMagnification,
  DegenerateAlpha,
  BoundsInvalid,
  ConfigError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EnergyMismatch: return "EnergyMismatch";
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::GeometryOrder: return "GeometryOrder";
    case ErrorCode::InvalidSize: return "InvalidSize";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::ObjectUnresolvable: return "ObjectUnresolvable";
    case ErrorCode::FitDiverged: return "FitDiverged";
    case ErrorCode::ZeroMass: return "ZeroMass";
    case ErrorCode::Evanescent: return "Evanescent";
    case ErrorCode::GridUndersampled: return "GridUndersampled";
    case ErrorCode::WrongRepresentation: return "WrongRepresentation";
    case ErrorCode::OutOfWindow: return "OutOfWindow";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonMonotonicX: return "NonMonotonicX";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::NotBimodal: return "NotBimodal";
    case ErrorCode::NonPositiveRealPart: return "NonPositiveRealPart";
    case ErrorCode::ZeroMagnification: return "ZeroMagnification";
    case ErrorCode::DegenerateAlpha: return "DegenerateAlpha";
    case ErrorCode::BoundsInvalid: return "BoundsInvalid";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace ghostpin
