#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace hurwitz {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

/// One term a*cos(n*phi) + b*sin(n*phi) of a support function.
struct Harmonic {
  int n = 1;
  double a = 0.0;
  double b = 0.0;

  double c_sq() const noexcept { return a * a + b * b; }

  friend bool operator==(const Harmonic&, const Harmonic&) = default;
};

/// Truncated trigonometric series
///   p(phi) = a0 + sum_n a_n cos(n phi) + b_n sin(n phi).
///
/// Harmonics are kept sparse, sorted by frequency, with at most one entry per
/// frequency. Terms with a == b == 0 are dropped so that equal series compare
/// equal. A TrigSupport need not describe a convex body; generalized support
/// functions (evolutes, Wigner caustics, hypocycloids) use the same type.
class TrigSupport {
 public:
  TrigSupport() = default;
  /// Throws DuplicateHarmonic for repeated frequencies or n < 1.
  explicit TrigSupport(double a0, std::vector<Harmonic> harmonics = {});

  double a0() const noexcept { return a0_; }
  std::span<const Harmonic> harmonics() const noexcept { return harmonics_; }
  /// Largest frequency present, 0 for a constant.
  int max_degree() const noexcept;

  /// Coefficients at frequency n (zero when absent). n == 0 gives (a0, 0).
  Harmonic coefficient(int n) const noexcept;
  double c_sq(int n) const noexcept { return coefficient(n).c_sq(); }

  friend bool operator==(const TrigSupport&, const TrigSupport&) = default;

 private:
  double a0_ = 0.0;
  std::vector<Harmonic> harmonics_;
};

/// p, p', p'', p''' ... at phi by direct summation. Any order >= 0 works;
/// the library itself uses 0 through 4.
double eval_support(const TrigSupport& body, double phi, int order = 0);

/// Derivative series p'.
TrigSupport derivative(const TrigSupport& body);
/// Series multiplied by a scalar.
TrigSupport scaled(const TrigSupport& body, double factor);

struct CurvatureMinimum {
  double rho_min = 0.0;
  double phi_at = 0.0;
};

/// Global minimum of rho = p + p'' over [0, 2 pi).
CurvatureMinimum min_curvature_radius(const TrigSupport& body);

/// A TrigSupport that passed validate_convex. Only validate_convex creates
/// one, so functions taking a ConvexBody cannot receive an unchecked body.
class ConvexBody {
 public:
  const TrigSupport& support() const noexcept { return support_; }
  double a0() const noexcept { return support_.a0(); }
  double min_curvature() const noexcept { return min_curvature_; }

 private:
  friend ConvexBody validate_convex(const TrigSupport&, std::optional<double>);
  ConvexBody(TrigSupport support, double rho_min)
      : support_(std::move(support)), min_curvature_(rho_min) {}

  TrigSupport support_;
  double min_curvature_;
};

/// Accepts the body iff a0 > 0 and min(p + p'') >= eps (default 1e-9 * a0).
/// Throws NonpositiveMean or NotStrictlyConvexError.
ConvexBody validate_convex(const TrigSupport& body,
                           std::optional<double> eps = std::nullopt);

/// s(K) = (a1, b1).
Point steiner_point(const TrigSupport& body);
/// The body with the degree-1 harmonic removed, i.e. seen from s(K).
TrigSupport recenter_to_steiner(const TrigSupport& body);

TrigSupport minkowski_sum(const TrigSupport& lhs, const TrigSupport& rhs);
/// Parallel body at signed distance r: a0 += r.
TrigSupport offset(const TrigSupport& body, double r);
/// Counterclockwise rotation by theta about the origin followed by a
/// translation by v: p_new(phi) = p(phi - theta) + v.x cos phi + v.y sin phi.
TrigSupport rigid_motion(const TrigSupport& body, double theta, Point v);

struct SupportSample {
  double phi = 0.0;
  double value = 0.0;
};

/// Discrete Fourier analysis of M uniform samples onto degree <= N.
/// Requires M >= 2N + 2; throws InsufficientSamples or GridNotUniform.
/// Coefficients at round-off level (|c| <= 64 eps max|p|) are set to zero.
TrigSupport from_samples(std::span<const SupportSample> samples, int degree);

/// Samples p on phi_i = 2 pi i / M.
std::vector<SupportSample> sample_support(const TrigSupport& body, int count);

struct ConstantWidth {
  bool constant_width = false;
  double width = 0.0;
};

/// Constant width iff every even harmonic has |a|, |b| <= tol; then w = 2 a0.
ConstantWidth is_constant_width(const TrigSupport& body, double tol = 1e-12);

namespace spec {

struct Circle {
  double radius = 1.0;
};
/// a0 + amplitude * sin(2 phi); needs amplitude < a0 / 3.
struct AstroidParallel {
  double a0 = 1.0;
  double amplitude = 0.0;
};
/// a0 + amplitude * cos(3 phi); needs amplitude < a0 / 8.
struct DeltoidParallel {
  double a0 = 1.0;
  double amplitude = 0.0;
};
/// a0 + amplitude * cos(k phi), parallel to the hypocycloid generated by a
/// single harmonic of frequency k; needs amplitude (k^2 - 1) < a0.
struct HypocycloidParallel {
  int k = 3;
  double a0 = 1.0;
  double amplitude = 0.0;
};
/// Random harmonics of degree 1..degree with |c_n| <= C n^-3, shrunk until
/// strictly convex. Even harmonics are omitted for constant width.
struct Random {
  std::uint64_t seed = 0;
  int degree = 4;
  bool constant_width = false;
};
struct Explicit {
  TrigSupport support;
};

}  // namespace spec

using BodySpec = std::variant<spec::Circle, spec::AstroidParallel,
                              spec::DeltoidParallel, spec::HypocycloidParallel,
                              spec::Random, spec::Explicit>;

/// The index-th body of a seeded random sweep: degrees cycle through 2..8,
/// odd indices are constant width (degree at least 3), and each body draws
/// from its own derived stream.
spec::Random sweep_spec(std::uint64_t seed, std::uint64_t index);

/// Builds the support function for a named family. Amplitude bounds are
/// checked before anything is built (AmplitudeTooLarge).
TrigSupport construct(const BodySpec& spec);

/// Hypocycloid traced by a circle of radius r rolling inside one of radius
/// (m/n) r, with m, n coprime and m > 2n. The closed curve has m cusps.
struct HypocycloidSpec {
  int m = 3;
  int n = 1;
  double r = 1.0;

  double ratio() const noexcept { return static_cast<double>(m) / n; }
  /// Throws BadSpec when m <= 2n, gcd(m, n) != 1 or r <= 0.
  void validate() const;
};

}  // namespace hurwitz
