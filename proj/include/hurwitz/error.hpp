#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hurwitz {

enum class ErrorCode {
  kNotStrictlyConvex,
  kNonpositiveMean,
  kDuplicateHarmonic,
  kGridNotUniform,
  kInsufficientSamples,
  kAmplitudeTooLarge,
  kEmptyGrid,
  kInsufficientNodes,
  kBadInterval,
  kInteriorPoint,
  kBoundaryCollar,
  kRootCountAnomaly,
  kDegenerateGap,
  kNonIntegrableKernel,
  kBadOrder,
  kBadConfig,
  kOpenPolyline,
  kBadSpec,
  kEmptyScene,
  kParseError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above; the
// what() string starts with the code name so diagnostics stay greppable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NotStrictlyConvexError : public Error {
 public:
  NotStrictlyConvexError(double rho_min, double phi_at);

  double rho_min() const noexcept { return rho_min_; }
  double phi_at() const noexcept { return phi_at_; }

 private:
  double rho_min_;
  double phi_at_;
};

}  // namespace hurwitz
