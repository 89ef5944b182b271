#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hbn {

enum class ErrorCode {
  InvalidArgument,
  QueryOutsideDomain,
  ZeroScale,
  UnsupportedShape,
  BasepointOutsideDomain,
  DegenerateDomain,
  ZeroMeasure,
  TooFewPoints,
  QuadratureFailure,
  ZeroOnDisk,
  UnsupportedImage,
  DivergentCase,
  Parse,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::QueryOutsideDomain: return "query_outside_domain";
    case ErrorCode::ZeroScale: return "zero_scale";
    case ErrorCode::UnsupportedShape: return "unsupported_shape";
    case ErrorCode::BasepointOutsideDomain: return "basepoint_outside_domain";
    case ErrorCode::DegenerateDomain: return "degenerate_domain";
    case ErrorCode::ZeroMeasure: return "zero_measure";
    case ErrorCode::TooFewPoints: return "too_few_points";
    case ErrorCode::QuadratureFailure: return "quadrature_failure";
    case ErrorCode::ZeroOnDisk: return "zero_on_disk";
    case ErrorCode::UnsupportedImage: return "unsupported_image";
    case ErrorCode::DivergentCase: return "divergent_case";
    case ErrorCode::Parse: return "parse_error";
  }
  return "unknown";
}

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

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace hbn
