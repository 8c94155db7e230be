#pragma once

#include <map>
#include <optional>
#include <span>
#include <string_view>

#include "hurwitz/quadrature.hpp"
#include "hurwitz/spectral_body.hpp"

namespace hurwitz {

enum class FunctionalPath { kSpectral, kQuadrature };

std::string_view to_string(FunctionalPath path);

/// Scalar functionals of one convex body. Pedal area, delta_2 and the
/// harmonic energies are taken about the Steiner point; the rest do not
/// depend on the origin.
struct FunctionalSet {
  double length = 0.0;           // L
  double area = 0.0;             // F
  double deficit = 0.0;          // Delta = L^2 - 4 pi F
  double evolute_area = 0.0;     // F_e, signed, <= 0
  double hurwitz_deficit = 0.0;  // pi |F_e| - Delta
  double pedal_area = 0.0;       // A
  double pedal_excess = 0.0;     // A - F
  double delta2_sq = 0.0;        // delta_2(K)^2
  double wigner_area = 0.0;      // A_w, signed
  double wirtinger_q = 0.0;      // W_q with q = p - L / 2 pi
  Point steiner;
  std::map<int, double> cn_sq;   // n >= 2 -> c_n^2
  FunctionalPath path = FunctionalPath::kSpectral;
};

/// Node count for the periodic trapezoid rule. Products of two degree-N
/// series and their derivatives have degree 2N, so M >= 4N + 8 integrates
/// every integrand exactly.
class QuadratureGrid {
 public:
  /// Throws InsufficientNodes unless nodes is a power of two >= 4N + 8.
  QuadratureGrid(int nodes, const TrigSupport& body);
  /// max(256, next power of two >= 4N + 8).
  static QuadratureGrid for_body(const TrigSupport& body);

  int nodes() const noexcept { return nodes_; }

 private:
  explicit QuadratureGrid(int nodes) : nodes_(nodes) {}
  int nodes_;
};

/// Closed-form sums over c_n^2.
FunctionalSet functionals_spectral(const ConvexBody& body);

/// The same quantities from sampled integrands. The Steiner point is itself
/// found by quadrature, and c_n^2 by discrete Fourier analysis.
FunctionalSet functionals_quadrature(
    const ConvexBody& body, std::optional<QuadratureGrid> grid = std::nullopt);

struct Interval {
  double lo = 0.0;
  double hi = kTwoPi;
};

/// Signed area with multiplicity swept by the envelope of
/// x cos t + y sin t = f(t):  (1/2) int_a^b f (f + f'') dt.
/// Periodic trapezoid on [0, 2 pi], composite Simpson otherwise.
double generalized_area(const TrigSupport& f, Interval interval = {},
                        int nodes = 0);

/// Same, from samples of f and f'' on a uniform grid. On the full period the
/// grid is t_i = lo + i (hi - lo) / M, i < M; otherwise both endpoints are
/// included and the count must be odd.
double generalized_area_sampled(std::span<const double> f,
                                std::span<const double> f_second,
                                Interval interval);

/// Area of the r-parallel set: pi r^2 + L r + F.
double steiner_polynomial(const ConvexBody& body, double r);

/// W_f = int (f'^2 - f^2) = -2 pi a0^2 + pi sum (n^2 - 1) c_n^2.
double wirtinger_deficit(const TrigSupport& f);

/// W_{f'} - 4 W_f - (2/pi) (int f)^2, which is >= 0 for every f and zero
/// iff f has degree <= 2.
double wirtinger_lemma_gap(const TrigSupport& f);

}  // namespace hurwitz
