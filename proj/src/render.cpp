#include "hurwitz/render.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "hurwitz/error.hpp"
#include "hurwitz/quadrature.hpp"

namespace hurwitz {

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::kBoundary: return "boundary";
    case CurveKind::kEvolute: return "evolute";
    case CurveKind::kPedal: return "pedal";
    case CurveKind::kParallel: return "parallel";
    case CurveKind::kWigner: return "wigner";
  }
  return "unknown";
}

namespace {

void require_samples(int m) {
  if (m < 64) {
    throw Error(ErrorCode::kBadConfig,
                fmt::format("curve sampling needs >= 64 points, got {}", m));
  }
}

// Odd part of p, i.e. (p(phi) - p(phi + pi)) / 2.
TrigSupport wigner_support(const TrigSupport& p) {
  std::vector<Harmonic> odd;
  for (const Harmonic& h : p.harmonics()) {
    if (h.n % 2 == 1) odd.push_back(h);
  }
  return TrigSupport(0.0, std::move(odd));
}

}  // namespace

Polyline sample_envelope(const TrigSupport& f, int m) {
  require_samples(m);
  Polyline poly;
  poly.vertices.reserve(m);
  for (int i = 0; i < m; ++i) {
    const double t = kTwoPi * i / m;
    const double v = eval_support(f, t, 0);
    const double d = eval_support(f, t, 1);
    const double c = std::cos(t), s = std::sin(t);
    poly.vertices.push_back({v * c - d * s, v * s + d * c});
  }
  return poly;
}

Polyline sample_parallel(const TrigSupport& body, double r, int m) {
  return sample_envelope(offset(body, r), m);
}

Polyline sample_curve(const ConvexBody& body, CurveKind kind, int m,
                      double r) {
  require_samples(m);
  const TrigSupport& p = body.support();
  switch (kind) {
    case CurveKind::kBoundary:
      return sample_envelope(p, m);
    case CurveKind::kParallel:
      return sample_parallel(p, r, m);
    case CurveKind::kWigner:
      return sample_envelope(wigner_support(p), m);
    case CurveKind::kEvolute: {
      Polyline poly;
      for (int i = 0; i < m; ++i) {
        const double t = kTwoPi * i / m;
        const double d1 = eval_support(p, t, 1);
        const double d2 = eval_support(p, t, 2);
        const double c = std::cos(t), s = std::sin(t);
        poly.vertices.push_back({-d1 * s - d2 * c, d1 * c - d2 * s});
      }
      return poly;
    }
    case CurveKind::kPedal: {
      const Point centre = steiner_point(p);
      const TrigSupport q = recenter_to_steiner(p);
      Polyline poly;
      for (int i = 0; i < m; ++i) {
        const double t = kTwoPi * i / m;
        const double v = eval_support(q, t, 0);
        poly.vertices.push_back(
            {centre.x + v * std::cos(t), centre.y + v * std::sin(t)});
      }
      return poly;
    }
  }
  throw Error(ErrorCode::kBadConfig, "unknown curve kind");
}

Polyline sample_hypocycloid(const HypocycloidSpec& spec, int samples) {
  spec.validate();
  if (samples < 64) {
    throw Error(ErrorCode::kBadConfig,
                fmt::format("curve sampling needs >= 64 points, got {}",
                            samples));
  }
  const double k = spec.ratio();
  const double r = spec.r;
  const double period = kTwoPi * spec.n;
  Polyline poly;
  poly.vertices.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    const double t = period * i / samples;
    poly.vertices.push_back(
        {r * (k - 1.0) * std::sin(t) - r * std::sin((k - 1.0) * t),
         r * (k - 1.0) * std::cos(t) + r * std::cos((k - 1.0) * t)});
  }
  return poly;
}

double shoelace_area(const Polyline& poly) {
  if (!poly.closed || poly.vertices.size() < 3) {
    throw Error(ErrorCode::kOpenPolyline,
                fmt::format("shoelace needs a closed polyline with >= 3 "
                            "vertices (closed={}, vertices={})",
                            poly.closed, poly.vertices.size()));
  }
  CompensatedSum sum;
  const std::size_t n = poly.vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly.vertices[i];
    const Point& b = poly.vertices[(i + 1) % n];
    sum.add(a.x * b.y - a.y * b.x);
  }
  return 0.5 * sum.value();
}

int count_cusps(const Polyline& poly) {
  const std::size_t n = poly.vertices.size();
  if (!poly.closed || n < 3) {
    throw Error(ErrorCode::kOpenPolyline, "cusp count needs a closed polyline");
  }
  // A cusp reverses the direction of travel: its turn of about pi lands on
  // one vertex, or on two neighbours when the cusp falls between samples.
  // Smooth stretches turn by O(2 pi / n) per vertex.
  constexpr double kSharpTurn = 0.25;
  std::vector<bool> sharp(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = poly.vertices[(i + n - 1) % n];
    const Point& b = poly.vertices[i];
    const Point& c = poly.vertices[(i + 1) % n];
    const double ux = b.x - a.x, uy = b.y - a.y;
    const double vx = c.x - b.x, vy = c.y - b.y;
    sharp[i] = std::abs(std::atan2(ux * vy - uy * vx, ux * vx + uy * vy)) >
               kSharpTurn;
  }
  int cusps = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sharp[i] && !sharp[(i + n - 1) % n]) ++cusps;
  }
  if (cusps == 0 && sharp[0]) cusps = 1;  // every vertex is sharp
  return cusps;
}

namespace {

std::string coord(double v) {
  if (std::abs(v) < 5e-7) v = 0.0;
  return fmt::format("{:.6f}", v);
}

}  // namespace

std::string write_svg(const Scene& scene) {
  if (scene.layers.empty()) {
    throw Error(ErrorCode::kEmptyScene, "scene has no layers");
  }
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const Layer& layer : scene.layers) {
    for (const Point& p : layer.polyline.vertices) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  if (!std::isfinite(xmin)) {
    throw Error(ErrorCode::kEmptyScene, "scene layers have no vertices");
  }
  double extent = std::max(xmax - xmin, ymax - ymin);
  if (extent <= 1e-12) extent = 1.0;
  const double margin = 0.05 * extent;
  const double vx = xmin - margin;
  const double vy = -ymax - margin;
  const double vw = (xmax - xmin) + 2.0 * margin;
  const double vh = (ymax - ymin) + 2.0 * margin;
  const double unit = extent / 250.0;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      "viewBox=\"{} {} {} {}\" width=\"600\" height=\"{}\">\n",
      coord(vx), coord(vy), coord(std::max(vw, 2.0 * margin)),
      coord(std::max(vh, 2.0 * margin)),
      static_cast<int>(std::lround(600.0 * std::max(vh, 2.0 * margin) /
                                   std::max(vw, 2.0 * margin))));
  for (const Layer& layer : scene.layers) {
    const auto& vs = layer.polyline.vertices;
    double lx = INFINITY, hx = -INFINITY, ly = INFINITY, hy = -INFINITY;
    for (const Point& p : vs) {
      lx = std::min(lx, p.x);
      hx = std::max(hx, p.x);
      ly = std::min(ly, p.y);
      hy = std::max(hy, p.y);
    }
    const std::string stroke_width = coord(layer.style.width * unit);
    out += fmt::format("  <g id=\"{}\">\n", layer.name);
    if (vs.empty()) {
      out += "  </g>\n";
      continue;
    }
    if (std::max(hx - lx, hy - ly) <= 1e-9 * extent) {
      out += fmt::format(
          "    <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>\n",
          coord(0.5 * (lx + hx)), coord(-0.5 * (ly + hy)), coord(3.0 * unit),
          layer.style.stroke);
    } else {
      std::string points;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i > 0) points += ' ';
        points += coord(vs[i].x);
        points += ',';
        points += coord(-vs[i].y);
      }
      out += fmt::format(
          "    <{} points=\"{}\" fill=\"none\" stroke=\"{}\" "
          "stroke-width=\"{}\"",
          layer.polyline.closed ? "polygon" : "polyline", points,
          layer.style.stroke, stroke_width);
      if (!layer.style.dash.empty()) {
        out += fmt::format(" stroke-dasharray=\"{}\"", layer.style.dash);
      }
      out += "/>\n";
    }
    out += "  </g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace hurwitz
