#include "hurwitz/verdicts.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "hurwitz/error.hpp"
#include "hurwitz/quadrature.hpp"

namespace hurwitz {

std::string_view to_string(TheoremId id) {
  switch (id) {
    case TheoremId::kHurwitz: return "hurwitz";
    case TheoremId::kVisualAngleBound: return "teo51";
    case TheoremId::kPedalBound: return "teo71";
    case TheoremId::kDelta2Bound: return "teo73";
    case TheoremId::kConstantWidthHurwitz: return "bvb";
    case TheoremId::kPedalEvolute: return "cor_pedal_evolute";
    case TheoremId::kConstantWidthVisual: return "teo64";
    case TheoremId::kConstantWidthPedal: return "coroaf";
    case TheoremId::kConstantWidthDelta2: return "cor_delta2_cw";
    case TheoremId::kWignerDeficit: return "wigner_zwier";
    case TheoremId::kWignerPedal: return "wigner_pedal";
    case TheoremId::kPedalDeficit: return "cr_external";
  }
  return "unknown";
}

std::optional<TheoremId> theorem_from_string(std::string_view name) {
  for (TheoremId id : kAllTheorems) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

bool constant_width_only(TheoremId id) {
  switch (id) {
    case TheoremId::kConstantWidthHurwitz:
    case TheoremId::kPedalEvolute:
    case TheoremId::kConstantWidthVisual:
    case TheoremId::kConstantWidthPedal:
    case TheoremId::kConstantWidthDelta2:
    case TheoremId::kPedalDeficit:
      return true;
    default:
      return false;
  }
}

bool external_result(TheoremId id) {
  return id == TheoremId::kPedalEvolute || id == TheoremId::kWignerDeficit ||
         id == TheoremId::kWignerPedal || id == TheoremId::kPedalDeficit;
}

std::string_view to_string(VerdictPath path) {
  return path == VerdictPath::kSpectral ? "spectral" : "geometric";
}

std::string_view to_string(PathSelection selection) {
  switch (selection) {
    case PathSelection::kSpectral: return "spectral";
    case PathSelection::kGeometric: return "geometric";
    case PathSelection::kBoth: return "both";
  }
  return "unknown";
}

std::string_view to_string(EqualityKind kind) {
  switch (kind) {
    case EqualityKind::kDisk: return "disk";
    case EqualityKind::kAstroidParallel: return "astroid_parallel";
    case EqualityKind::kSteinerParallel: return "steiner_parallel";
    case EqualityKind::kHypocycloid5Parallel: return "hypocycloid5_parallel";
    case EqualityKind::kMinkowskiSum: return "minkowski_sum";
    case EqualityKind::kNone: return "none";
  }
  return "unknown";
}

std::string describe(const EqualityClass& cls) {
  std::string out(to_string(cls.kind));
  if (cls.kind == EqualityKind::kMinkowskiSum) {
    out += '{';
    for (std::size_t i = 0; i < cls.components.size(); ++i) {
      if (i > 0) out += ',';
      out += to_string(cls.components[i]);
    }
    out += '}';
  }
  return out;
}

namespace {

bool subset_of(std::span<const int> support, std::initializer_list<int> set) {
  return std::all_of(support.begin(), support.end(), [&](int n) {
    return std::find(set.begin(), set.end(), n) != set.end();
  });
}

EqualityKind single_kind(int n) {
  switch (n) {
    case 2: return EqualityKind::kAstroidParallel;
    case 3: return EqualityKind::kSteinerParallel;
    case 5: return EqualityKind::kHypocycloid5Parallel;
    default: return EqualityKind::kNone;
  }
}

}  // namespace

EqualityClass classify_equality(const ConvexBody& body, double tol) {
  EqualityClass cls;
  const double threshold = tol * body.a0();
  for (const Harmonic& h : body.support().harmonics()) {
    if (h.n >= 2 && std::sqrt(h.c_sq()) > threshold) cls.support.push_back(h.n);
  }
  const auto& s = cls.support;
  if (s.empty()) {
    cls.kind = EqualityKind::kDisk;
  } else if (s.size() == 1 && single_kind(s[0]) != EqualityKind::kNone) {
    cls.kind = single_kind(s[0]);
  } else if (subset_of(s, {2, 3}) || subset_of(s, {3, 5})) {
    cls.kind = EqualityKind::kMinkowskiSum;
    for (int n : s) cls.components.push_back(single_kind(n));
  } else {
    cls.kind = EqualityKind::kNone;
  }
  return cls;
}

bool predicted_equality(TheoremId id, std::span<const int> support) {
  switch (id) {
    case TheoremId::kHurwitz:
      return subset_of(support, {2});
    case TheoremId::kVisualAngleBound:
    case TheoremId::kPedalBound:
    case TheoremId::kDelta2Bound:
      return subset_of(support, {2, 3});
    case TheoremId::kConstantWidthHurwitz:
    case TheoremId::kPedalEvolute:
    case TheoremId::kConstantWidthPedal:
    case TheoremId::kConstantWidthDelta2:
    case TheoremId::kPedalDeficit:
      return subset_of(support, {3});
    case TheoremId::kConstantWidthVisual:
      return subset_of(support, {3, 5});
    case TheoremId::kWignerDeficit:
      return std::none_of(support.begin(), support.end(),
                          [](int n) { return n % 2 == 0; });
    case TheoremId::kWignerPedal:
      return support.empty();
  }
  return false;
}

namespace {

// Exterior integrals entering the theorem statements, with error bars
// (zero on the spectral path).
struct Integral {
  double value = 0.0;
  double error_bar = 0.0;
};

struct Inputs {
  FunctionalSet fs;
  VerdictPath path = VerdictPath::kSpectral;
  std::optional<Integral> sin_cubed;
  std::optional<Integral> visual51;
  std::optional<Integral> visual64;
};

enum class KernelUse { kSinCubed, kVisual51, kVisual64 };

std::vector<KernelUse> kernels_for(TheoremId id) {
  switch (id) {
    case TheoremId::kVisualAngleBound: return {KernelUse::kVisual51};
    case TheoremId::kPedalBound:
    case TheoremId::kDelta2Bound: return {KernelUse::kSinCubed};
    case TheoremId::kConstantWidthVisual: return {KernelUse::kVisual64};
    default: return {};
  }
}

Kernel make_kernel(KernelUse use) {
  switch (use) {
    case KernelUse::kSinCubed: return Kernel::sin_cubed();
    case KernelUse::kVisual51: return Kernel::hurwitz_visual();
    case KernelUse::kVisual64: return Kernel::constant_width_visual();
  }
  return Kernel::crofton();
}

std::optional<Integral>& slot(Inputs& in, KernelUse use) {
  switch (use) {
    case KernelUse::kSinCubed: return in.sin_cubed;
    case KernelUse::kVisual51: return in.visual51;
    case KernelUse::kVisual64: return in.visual64;
  }
  return in.sin_cubed;
}

void ensure_integral(const ConvexBody& body, Inputs& in, KernelUse use,
                     const ExteriorConfig& exterior) {
  std::optional<Integral>& target = slot(in, use);
  if (target) return;
  const Kernel kernel = make_kernel(use);
  if (in.path == VerdictPath::kSpectral) {
    target = Integral{*kernel.spectral_integral(in.fs), 0.0};
  } else {
    const IntegralResult r = integrate_exterior(body, kernel, exterior);
    target = Integral{r.value, r.error_bar};
  }
}

Inputs make_inputs(const ConvexBody& body, VerdictPath path,
                   int quadrature_nodes) {
  Inputs in;
  in.path = path;
  if (path == VerdictPath::kSpectral) {
    in.fs = functionals_spectral(body);
  } else if (quadrature_nodes > 0) {
    in.fs = functionals_quadrature(
        body, QuadratureGrid(quadrature_nodes, body.support()));
  } else {
    in.fs = functionals_quadrature(body);
  }
  return in;
}

// On the spectral path every residual is a diagonal form sum_n w(n) c_n^2
// over the Steiner-centred harmonics n >= 2. Summing it termwise avoids the
// cancellation in lhs - rhs, so equality cases come out as exact zeros.
double residual_weight(TheoremId id, int part, int n) {
  const double pi2 = kPi * kPi;
  const double m = static_cast<double>(n) * n;  // n^2
  const bool from3 = n >= 3;
  switch (id) {
    case TheoremId::kHurwitz:
      return pi2 / 2.0 * (m - 1.0) * (m - 4.0);
    case TheoremId::kVisualAngleBound:
      return from3 ? pi2 / 2.0 * (m - 1.0) * (m - 9.0) : 0.0;
    case TheoremId::kPedalBound:
      return from3 ? pi2 / 18.0 * (m - 9.0) * (9.0 * m - 4.0) : 0.0;
    case TheoremId::kDelta2Bound:
      return from3 ? pi2 / 2.0 * (m - 9.0) * (m + 4.0) : 0.0;
    case TheoremId::kConstantWidthHurwitz:
      return 2.0 * pi2 / 9.0 * (m - 1.0) * (m - 9.0);
    case TheoremId::kPedalEvolute:
      return kPi / 16.0 * m * (m - 9.0);
    case TheoremId::kConstantWidthVisual:
      // Valid for odd n, the only harmonics of a constant-width body; the
      // kernel carries no n = 3 component.
      return n == 3 ? 0.0 : 2.0 * pi2 / 9.0 * (m - 1.0) * (m - 25.0);
    case TheoremId::kConstantWidthPedal:
      return pi2 / 18.0 * (m - 9.0) * (9.0 * m - 4.0);
    case TheoremId::kConstantWidthDelta2:
      return part == 0 ? pi2 / 2.0 * (m - 9.0) * (m + 4.0)
                       : kPi / 2.0 * (m - 9.0) * (m + 8.0);
    case TheoremId::kWignerDeficit:
      return n % 2 == 0 ? 2.0 * pi2 * (m - 1.0) : 0.0;
    case TheoremId::kWignerPedal:
      return n % 2 == 0 ? kPi / 2.0 * m : kPi / 2.0;
    case TheoremId::kPedalDeficit:
      return 2.0 * pi2 / 9.0 * (m - 9.0);
  }
  return 0.0;
}

double termwise_residual(TheoremId id, int part, const FunctionalSet& fs) {
  CompensatedSum sum;
  for (const auto& [n, c2] : fs.cn_sq) {
    sum.add(residual_weight(id, part, n) * c2);
  }
  return sum.value();
}

Comparison compare(std::string label, double lhs, double rhs, double error_bar,
                   double tolerance_floor,
                   std::optional<double> residual = std::nullopt) {
  Comparison c;
  c.label = std::move(label);
  c.lhs = lhs;
  c.rhs = rhs;
  c.residual = residual.value_or(lhs - rhs);
  c.error_bar = error_bar;
  const double tolerance = tolerance_floor + 3.0 * error_bar;
  c.equality = std::abs(c.residual) <= tolerance;
  c.passed = c.residual >= -tolerance;
  return c;
}

Verdict evaluate(const ConvexBody& body, TheoremId id, const Inputs& in,
                 double tol) {
  const FunctionalSet& fs = in.fs;
  Verdict v;
  v.id = id;
  v.path = in.path;
  v.external = external_result(id);
  const ConstantWidth cw = is_constant_width(body.support());
  if (constant_width_only(id) && !cw.constant_width) {
    v.applicable = false;
    v.notes = "requires constant width";
    return v;
  }

  const double pi = kPi;
  const double l2 = fs.length * fs.length;
  const double fe = std::abs(fs.evolute_area);
  const double deficit = fs.deficit;
  // pi |Fe| - Delta, taken from its own termwise sum rather than as a
  // difference of two large numbers, so equality cases come out exact.
  const double hurwitz_gap = fs.hurwitz_deficit;
  const double pedal = fs.pedal_excess;
  const double aw = std::abs(fs.wigner_area);
  v.scale = std::max(l2, pi * fe);
  const double floor = tol * v.scale;

  auto integral = [&](const std::optional<Integral>& i) { return *i; };

  switch (id) {
    case TheoremId::kHurwitz:
      v.parts.push_back(compare("pi|Fe| >= Delta", pi * fe, deficit, 0.0, floor,
                                hurwitz_gap));
      break;
    case TheoremId::kVisualAngleBound: {
      const Integral j = integral(in.visual51);
      v.parts.push_back(compare("pi|Fe| - Delta >= 5L^2/4 + 5 J51", hurwitz_gap,
                                1.25 * l2 + 5.0 * j.value, 5.0 * j.error_bar,
                                floor));
      break;
    }
    case TheoremId::kPedalBound: {
      const Integral j = integral(in.sin_cubed);
      v.parts.push_back(compare(
          "pi|Fe| - Delta >= 40/9 (pi(A-F) + 2L^2/3 - 8/9 J3)", hurwitz_gap,
          40.0 / 9.0 * (pi * pedal + 2.0 / 3.0 * l2 - 8.0 / 9.0 * j.value),
          40.0 / 9.0 * 8.0 / 9.0 * j.error_bar, floor));
      break;
    }
    case TheoremId::kDelta2Bound: {
      const Integral j = integral(in.sin_cubed);
      v.parts.push_back(compare(
          "pi|Fe| - Delta >= 20 (pi d2^2 + L^2/3 - 4/9 J3)", hurwitz_gap,
          20.0 * (pi * fs.delta2_sq + l2 / 3.0 - 4.0 / 9.0 * j.value),
          20.0 * 4.0 / 9.0 * j.error_bar, floor));
      break;
    }
    case TheoremId::kConstantWidthHurwitz:
      v.parts.push_back(compare("4/9 pi|Fe| >= Delta", 4.0 / 9.0 * pi * fe,
                                deficit, 0.0, floor));
      break;
    case TheoremId::kPedalEvolute:
      v.parts.push_back(compare("|Fe|/8 >= A - F", fe / 8.0, pedal, 0.0, floor));
      break;
    case TheoremId::kConstantWidthVisual: {
      const Integral j = integral(in.visual64);
      v.parts.push_back(compare("4/9 pi|Fe| - Delta >= 64/9 J64",
                                4.0 / 9.0 * pi * fe - deficit,
                                64.0 / 9.0 * j.value,
                                64.0 / 9.0 * j.error_bar, floor));
      break;
    }
    case TheoremId::kConstantWidthPedal:
      v.parts.push_back(compare("pi|Fe| - Delta >= 40/9 pi (A-F)", hurwitz_gap,
                                40.0 / 9.0 * pi * pedal, 0.0, floor));
      break;
    case TheoremId::kConstantWidthDelta2:
      v.parts.push_back(compare("pi|Fe| - Delta >= 20 pi d2^2", hurwitz_gap,
                                20.0 * pi * fs.delta2_sq, 0.0, floor));
      v.parts.push_back(
          compare("|Fe| >= 36 d2^2", fe, 36.0 * fs.delta2_sq, 0.0, floor));
      break;
    case TheoremId::kWignerDeficit:
      v.parts.push_back(
          compare("Delta >= 4 pi |Aw|", deficit, 4.0 * pi * aw, 0.0, floor));
      break;
    case TheoremId::kWignerPedal:
      v.parts.push_back(compare("A - F >= |Aw|", pedal, aw, 0.0, floor));
      break;
    case TheoremId::kPedalDeficit:
      v.parts.push_back(compare("Delta >= 32/9 pi (A-F)", deficit,
                                32.0 / 9.0 * pi * pedal, 0.0, floor));
      break;
  }

  if (in.path == VerdictPath::kSpectral) {
    for (std::size_t i = 0; i < v.parts.size(); ++i) {
      Comparison& c = v.parts[i];
      c.residual = termwise_residual(id, static_cast<int>(i), fs);
      c.equality = std::abs(c.residual) <= floor;
      c.passed = c.residual >= -floor;
    }
  }

  const Comparison& primary = v.parts.front();
  v.lhs = primary.lhs;
  v.rhs = primary.rhs;
  v.residual = primary.residual;
  v.error_bar = primary.error_bar;
  v.tolerance = floor + 3.0 * primary.error_bar;
  v.equality = std::all_of(v.parts.begin(), v.parts.end(),
                           [](const Comparison& c) { return c.equality; });
  v.passed = std::all_of(v.parts.begin(), v.parts.end(),
                         [](const Comparison& c) { return c.passed; });

  if (id == TheoremId::kWignerPedal && cw.constant_width && !v.equality) {
    v.discrepancy = true;
    v.notes = fmt::format(
        "discrepancy: the stated constant-width equality case does not "
        "hold, residual (pi/2) sum_odd c_n^2 = {:.17g}",
        v.residual);
  } else if (v.external) {
    v.notes = "external inequality";
  }
  return v;
}

}  // namespace

Verdict verify(const ConvexBody& body, TheoremId id,
               const VerifyOptions& options) {
  Inputs in = make_inputs(body, options.path, options.quadrature_nodes);
  const bool applicable =
      !constant_width_only(id) || is_constant_width(body.support()).constant_width;
  if (applicable) {
    for (KernelUse use : kernels_for(id)) {
      ensure_integral(body, in, use, options.exterior);
    }
  }
  return evaluate(body, id, in, options.tol);
}

SuiteReport run_suite(const ConvexBody& body, const SuiteConfig& config) {
  SuiteReport report;
  report.constant_width = is_constant_width(body.support()).constant_width;
  report.equality_class = classify_equality(body, config.tol);

  std::vector<VerdictPath> paths;
  if (config.paths != PathSelection::kGeometric) {
    paths.push_back(VerdictPath::kSpectral);
  }
  if (config.paths != PathSelection::kSpectral) {
    paths.push_back(VerdictPath::kGeometric);
  }
  for (VerdictPath path : paths) {
    Inputs in = make_inputs(body, path, config.quadrature_nodes);
    for (TheoremId id : kAllTheorems) {
      if (constant_width_only(id) && !report.constant_width) continue;
      for (KernelUse use : kernels_for(id)) {
        ensure_integral(body, in, use, config.exterior);
      }
    }
    for (TheoremId id : kAllTheorems) {
      Verdict v = evaluate(body, id, in, config.tol);
      if (v.applicable && !v.passed) report.passed = false;
      report.verdicts.push_back(std::move(v));
    }
  }
  return report;
}

}  // namespace hurwitz
