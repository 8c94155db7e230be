#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hurwitz/spectral_body.hpp"

namespace hurwitz {

struct Polyline {
  bool closed = true;
  std::vector<Point> vertices;
};

enum class CurveKind { kBoundary, kEvolute, kPedal, kParallel, kWigner };

std::string_view to_string(CurveKind kind);

/// Samples a curve attached to the body at phi_i = 2 pi i / m, m >= 64:
///   boundary  gamma = p N + p' N'
///   evolute   gamma - (p + p'') N
///   pedal     s(K) + (p - <s(K), N>) N, the polar graph about the Steiner point
///   parallel  boundary of offset(body, r), possibly self-intersecting
///   wigner    envelope of the support q(phi) = (p(phi) - p(phi + pi)) / 2
/// `r` is used by kParallel only. Throws BadConfig for m < 64.
Polyline sample_curve(const ConvexBody& body, CurveKind kind, int m,
                      double r = 0.0);

/// Parallel curve at any signed distance r of any support function.
Polyline sample_parallel(const TrigSupport& body, double r, int m);

/// Envelope x cos t + y sin t = f(t) of a generalized support function,
/// sampled at t_i = 2 pi i / m.
Polyline sample_envelope(const TrigSupport& f, int m);

/// x(t) = r(k-1) sin t - r sin((k-1) t), y(t) = r(k-1) cos t + r cos((k-1) t)
/// on t in [0, 2 n pi), k = m/n. Throws BadSpec for an invalid spec.
Polyline sample_hypocycloid(const HypocycloidSpec& spec, int samples);

/// Signed area, positive for counterclockwise polygons. Throws OpenPolyline
/// for open or degenerate (< 3 vertex) polylines.
double shoelace_area(const Polyline& poly);

/// Number of cusps of a closed polyline: runs of consecutive vertices whose
/// turning angle exceeds 0.25 rad. Near a cusp the tangent reverses, so the
/// discrete curvature peaks there; the count is independent of scale.
int count_cusps(const Polyline& poly);

struct Style {
  std::string stroke = "#000000";
  double width = 1.0;  // in units of 1/250 of the scene extent
  std::string dash;    // SVG dash array, empty for solid
};

struct Layer {
  std::string name;
  Polyline polyline;
  Style style;
};

struct Scene {
  std::vector<Layer> layers;
};

/// Standalone SVG 1.1 document. The view box fits every layer with a 5%
/// margin, y points up, coordinates carry 6 decimals. Layers that collapse
/// to a point are drawn as a small disk marker. Throws EmptyScene.
std::string write_svg(const Scene& scene);

}  // namespace hurwitz
