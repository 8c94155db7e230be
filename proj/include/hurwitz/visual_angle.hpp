#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hurwitz/functionals.hpp"
#include "hurwitz/spectral_body.hpp"

namespace hurwitz {

/// The two support lines of a convex body through an exterior point P.
/// Their normal angles phi1 < phi2 (cyclically) bound the arc of directions u
/// with <P, u> > p(u); the arc length delta lies in (0, pi) and the visual
/// angle is omega = pi - delta. t1, t2 are the tangent segment lengths.
struct TangentPair {
  double phi1 = 0.0;
  double phi2 = 0.0;
  double omega = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
};

/// Finds both support lines through P by locating the maximum of
/// g(phi) = <P, N(phi)> - p(phi) and bracketing outward from it.
/// Throws InteriorPoint, BoundaryCollar (0 < max g <= collar * a0) or
/// RootCountAnomaly.
TangentPair support_line_angles(const ConvexBody& body, Point p,
                                double collar = 1e-10);

struct ExteriorPoint {
  Point point;
  double jacobian = 0.0;  // dP = jacobian * dphi1 * ddelta
  double omega = 0.0;
};

/// Intersection of the support lines with normals phi1 and phi1 + delta.
/// The area element is t1 t2 / sin(omega). Throws DegenerateGap unless
/// 0 < delta < pi.
ExteriorPoint exterior_point(const ConvexBody& body, double phi1, double delta);

/// A kernel f(omega) = c * omega + sum_k s_k sin(k omega). A kernel can be
/// integrated over the exterior of a body only if f = O(omega^3) at 0, i.e.
/// c + sum_k k s_k = 0.
class Kernel {
 public:
  struct SineTerm {
    int k = 1;
    double coeff = 0.0;
  };
  /// Optional closed form: f = crofton_weight * (omega - sin omega)
  ///                         + sum_n weight_n * I_n kernel.
  struct Decomposition {
    double crofton_weight = 0.0;
    std::vector<std::pair<int, double>> moment_weights;
  };

  Kernel(std::string name, double linear, std::vector<SineTerm> sines,
         std::optional<Decomposition> decomposition = std::nullopt);

  /// omega - sin omega; integrates to L^2/2 - pi F.
  static Kernel crofton();
  /// sin^3 omega.
  static Kernel sin_cubed();
  /// -2 sin w + (n+1)/(n-1) sin (n-1)w - (n-1)/(n+1) sin (n+1)w, n >= 2;
  /// integrates to L^2 + (-1)^n pi^2 (n^2 - 1) c_n^2.
  static Kernel moment(int n);
  /// omega - sin omega - (2/3) sin^3 omega.
  static Kernel hurwitz_visual();
  /// omega - 2 sin w + sin 2w - (1/4) sin 4w - sin^3 w.
  static Kernel constant_width_visual();

  const std::string& name() const noexcept { return name_; }
  double operator()(double omega) const;
  /// f(omega) / sin^3(omega), finite as omega -> 0 for integrable kernels.
  double over_sin_cubed(double omega) const;
  /// Coefficient of omega^1 in the Taylor series at 0.
  double linear_taylor_coefficient() const noexcept { return taylor_[0]; }
  bool integrable() const noexcept;
  /// Exterior integral from the closed forms, if a decomposition is known.
  std::optional<double> spectral_integral(const FunctionalSet& fs) const;

 private:
  double series(double omega) const;

  std::string name_;
  double linear_;
  std::vector<SineTerm> sines_;
  std::optional<Decomposition> decomposition_;
  std::vector<double> taylor_;  // coefficients of omega^1, omega^3, ...
  double coeff_scale_ = 0.0;
  int max_frequency_ = 1;
};

enum class ExteriorMethod { kTangentCoords, kPolarGrid };

std::string_view to_string(ExteriorMethod method);

struct ExteriorConfig {
  int nodes_phi = 64;       // periodic direction (phi1, or theta on the grid)
  int nodes_delta = 64;     // gap direction, split over graded panels
  double delta_min = 1e-4;  // collar excluded next to the boundary
  ExteriorMethod method = ExteriorMethod::kTangentCoords;
  double r_max_factor = 50.0;  // polar grid cutoff R_max = factor * a0
  int radial_nodes = 128;      // polar grid, per direction
  int workers = 0;             // 0 = default_workers()

  /// Throws BadConfig unless nodes >= 16, 0 < delta_min < pi/64 and
  /// r_max_factor >= 20.
  void validate() const;
};

struct IntegralResult {
  double value = 0.0;
  double error_bar = 0.0;
  ExteriorMethod method = ExteriorMethod::kTangentCoords;
  int nodes = 0;
};

/// int_{P not in K} f(omega(P)) dP in tangent coordinates (phi1, delta):
/// periodic trapezoid in phi1, graded Gauss-Legendre panels in delta
/// clustered towards delta = pi. The error bar combines a half-resolution
/// comparison, the excluded collar and summation round-off.
IntegralResult exterior_integral(const ConvexBody& body, const Kernel& kernel,
                                 const ExteriorConfig& config = {});

/// Independent oracle: polar quadrature about the Steiner point out to R_max
/// with a fitted O(r^-3) tail, calling support_line_angles at every node.
IntegralResult exterior_integral_grid(const ConvexBody& body,
                                      const Kernel& kernel,
                                      const ExteriorConfig& config = {});

/// Dispatches on config.method.
IntegralResult integrate_exterior(const ConvexBody& body, const Kernel& kernel,
                                  const ExteriorConfig& config = {});

struct VisualMoment {
  IntegralResult numeric;
  double spectral = 0.0;
};

/// I_n numerically and as L^2 + (-1)^n pi^2 (n^2 - 1) c_n^2. Throws BadOrder
/// for n < 2.
VisualMoment visual_moment(const ConvexBody& body, int n,
                           const ExteriorConfig& config = {});

}  // namespace hurwitz
