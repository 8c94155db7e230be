#include "hurwitz/error.hpp"

#include <fmt/format.h>

namespace hurwitz {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotStrictlyConvex: return "NotStrictlyConvex";
    case ErrorCode::kNonpositiveMean: return "NonpositiveMean";
    case ErrorCode::kDuplicateHarmonic: return "DuplicateHarmonic";
    case ErrorCode::kGridNotUniform: return "GridNotUniform";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kAmplitudeTooLarge: return "AmplitudeTooLarge";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
    case ErrorCode::kInsufficientNodes: return "InsufficientNodes";
    case ErrorCode::kBadInterval: return "BadInterval";
    case ErrorCode::kInteriorPoint: return "InteriorPoint";
    case ErrorCode::kBoundaryCollar: return "BoundaryCollar";
    case ErrorCode::kRootCountAnomaly: return "RootCountAnomaly";
    case ErrorCode::kDegenerateGap: return "DegenerateGap";
    case ErrorCode::kNonIntegrableKernel: return "NonIntegrableKernel";
    case ErrorCode::kBadOrder: return "BadOrder";
    case ErrorCode::kBadConfig: return "BadConfig";
    case ErrorCode::kOpenPolyline: return "OpenPolyline";
    case ErrorCode::kBadSpec: return "BadSpec";
    case ErrorCode::kEmptyScene: return "EmptyScene";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(fmt::format("{}: {}", to_string(code), detail)),
      code_(code) {}

NotStrictlyConvexError::NotStrictlyConvexError(double rho_min, double phi_at)
    : Error(ErrorCode::kNotStrictlyConvex,
            fmt::format("minimum radius of curvature {:.6g} at phi={:.6g}",
                        rho_min, phi_at)),
      rho_min_(rho_min),
      phi_at_(phi_at) {}

}  // namespace hurwitz
