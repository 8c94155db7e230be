#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hurwitz/functionals.hpp"
#include "hurwitz/spectral_body.hpp"
#include "hurwitz/visual_angle.hpp"

namespace hurwitz {

/// Every inequality checked by the suite. Wire names (to_string) are stable.
enum class TheoremId {
  kHurwitz,                // pi |Fe| >= Delta
  kVisualAngleBound,       // Hurwitz deficit vs the teo51 visual-angle kernel
  kPedalBound,             // Hurwitz deficit vs pedal area and sin^3 integral
  kDelta2Bound,            // Hurwitz deficit vs delta_2 and sin^3 integral
  kConstantWidthHurwitz,   // (4/9) pi |Fe| >= Delta, constant width
  kPedalEvolute,           // |Fe| / 8 >= A - F, constant width (external)
  kConstantWidthVisual,    // (4/9) pi |Fe| - Delta vs the teo64 kernel
  kConstantWidthPedal,     // pi |Fe| - Delta >= (40/9) pi (A - F)
  kConstantWidthDelta2,    // pi |Fe| - Delta >= 20 pi d2^2, |Fe| >= 36 d2^2
  kWignerDeficit,          // Delta >= 4 pi |Aw|
  kWignerPedal,            // A - F >= |Aw|
  kPedalDeficit,           // Delta >= (32/9) pi (A - F), constant width
};

inline constexpr std::array<TheoremId, 12> kAllTheorems{
    TheoremId::kHurwitz,
    TheoremId::kVisualAngleBound,
    TheoremId::kPedalBound,
    TheoremId::kDelta2Bound,
    TheoremId::kConstantWidthHurwitz,
    TheoremId::kPedalEvolute,
    TheoremId::kConstantWidthVisual,
    TheoremId::kConstantWidthPedal,
    TheoremId::kConstantWidthDelta2,
    TheoremId::kWignerDeficit,
    TheoremId::kWignerPedal,
    TheoremId::kPedalDeficit,
};

std::string_view to_string(TheoremId id);
/// Inverse of to_string; nullopt for unknown names.
std::optional<TheoremId> theorem_from_string(std::string_view name);
/// Theorems stated only for bodies of constant width.
bool constant_width_only(TheoremId id);
/// Theorems resting on an inequality imported from elsewhere.
bool external_result(TheoremId id);

enum class VerdictPath { kSpectral, kGeometric };

std::string_view to_string(VerdictPath path);

/// One inequality lhs >= rhs.
struct Comparison {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double error_bar = 0.0;
  bool equality = false;
  bool passed = true;
};

struct Verdict {
  TheoremId id = TheoremId::kHurwitz;
  bool applicable = true;
  VerdictPath path = VerdictPath::kSpectral;
  // Primary comparison; multi-part theorems list every part in `parts`.
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double error_bar = 0.0;  // propagated from exterior integrals
  double scale = 0.0;      // max(L^2, pi |Fe|)
  double tolerance = 0.0;  // tol * scale + 3 * error_bar
  bool equality = false;   // all parts within tolerance of zero
  bool passed = true;      // no part below -tolerance
  bool external = false;
  bool discrepancy = false;  // equality claim not borne out by the formulas
  std::vector<Comparison> parts;
  std::string notes;
};

struct VerifyOptions {
  VerdictPath path = VerdictPath::kSpectral;
  double tol = 1e-9;
  ExteriorConfig exterior;
  int quadrature_nodes = 0;  // geometric path; 0 = QuadratureGrid::for_body
};

/// Evaluates one theorem. Constant-width-only theorems come back with
/// applicable = false on other bodies.
Verdict verify(const ConvexBody& body, TheoremId id,
               const VerifyOptions& options = {});

enum class EqualityKind {
  kDisk,
  kAstroidParallel,
  kSteinerParallel,
  kHypocycloid5Parallel,
  kMinkowskiSum,
  kNone,
};

std::string_view to_string(EqualityKind kind);

struct EqualityClass {
  EqualityKind kind = EqualityKind::kNone;
  std::vector<EqualityKind> components;  // for kMinkowskiSum
  std::vector<int> support;              // S = {n >= 2 : c_n > tol * a0}
};

/// e.g. "astroid_parallel" or "minkowski_sum{astroid_parallel,steiner_parallel}".
std::string describe(const EqualityClass& cls);

/// Classifies by the set of Steiner-centred harmonics with c_n > tol * a0.
EqualityClass classify_equality(const ConvexBody& body, double tol = 1e-9);

/// Whether the theorem is predicted to hold with equality for a body whose
/// supported harmonic set is `support`.
bool predicted_equality(TheoremId id, std::span<const int> support);

enum class PathSelection { kSpectral, kGeometric, kBoth };

std::string_view to_string(PathSelection selection);

struct SuiteConfig {
  PathSelection paths = PathSelection::kSpectral;
  double tol = 1e-9;
  ExteriorConfig exterior;
  int quadrature_nodes = 0;  // geometric path; 0 = QuadratureGrid::for_body
};

struct SuiteReport {
  std::vector<Verdict> verdicts;  // theorem order, spectral before geometric
  EqualityClass equality_class;
  bool constant_width = false;
  bool passed = true;
};

/// All theorems on the selected paths plus the equality class. The exterior
/// integrals of the geometric path are computed once and shared.
SuiteReport run_suite(const ConvexBody& body, const SuiteConfig& config = {});

}  // namespace hurwitz
