#include "hurwitz/visual_angle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "hurwitz/error.hpp"
#include "hurwitz/parallel.hpp"
#include "hurwitz/quadrature.hpp"
#include "hurwitz/root_finding.hpp"

namespace hurwitz {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double norm(Point p) { return std::hypot(p.x, p.y); }

// g(phi) = <P, N(phi)> - p(phi) and its first two derivatives.
struct SupportGap {
  const TrigSupport& body;
  Point p;

  double value(double phi) const {
    return p.x * std::cos(phi) + p.y * std::sin(phi) - eval_support(body, phi);
  }
  double slope(double phi) const {
    return -p.x * std::sin(phi) + p.y * std::cos(phi) -
           eval_support(body, phi, 1);
  }
  double curvature(double phi) const {
    return -p.x * std::cos(phi) - p.y * std::sin(phi) -
           eval_support(body, phi, 2);
  }
};

double wrap_angle(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

}  // namespace

TangentPair support_line_angles(const ConvexBody& body, Point p,
                                double collar) {
  const TrigSupport& support = body.support();
  const SupportGap gap{support, p};
  const int count = std::max(64, 8 * support.max_degree());
  const double h = kTwoPi / count;
  const double scale = norm(p) + body.a0();
  const double tol = 1e-13 * scale;

  int best = 0;
  double best_value = -INFINITY;
  for (int i = 0; i < count; ++i) {
    const double v = gap.value(i * h);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  double peak = best * h;
  {
    const double lo = peak - h;
    const double hi = peak + h;
    const double s_lo = gap.slope(lo);
    if (s_lo >= 0.0 && gap.slope(hi) <= 0.0) {
      peak = solve_bracketed(
          [&](double x) { return std::pair{gap.slope(x), gap.curvature(x)}; },
          lo, hi, s_lo, 1e-15 * scale);
    }
  }
  const double g_max = std::max(best_value, gap.value(peak));
  if (g_max < -tol) {
    throw Error(ErrorCode::kInteriorPoint,
                fmt::format("point ({}, {}) lies inside the body (max gap {})",
                            p.x, p.y, g_max));
  }
  if (g_max <= std::max(collar * body.a0(), tol)) {
    throw Error(ErrorCode::kBoundaryCollar,
                fmt::format("point ({}, {}) is within the boundary collar "
                            "(max gap {})",
                            p.x, p.y, g_max));
  }

  // The positive set of g is a single arc around the peak; step outwards
  // until g turns negative, then polish the bracketed root.
  auto find_edge = [&](double direction) {
    double inner = peak;
    for (int step = 1; step <= count; ++step) {
      const double outer = peak + direction * step * h;
      const double v = gap.value(outer);
      if (v < 0.0) {
        const double lo = std::min(inner, outer);
        const double hi = std::max(inner, outer);
        double root = solve_bracketed(
            [&](double x) { return std::pair{gap.value(x), gap.slope(x)}; },
            lo, hi, gap.value(lo), tol);
        // Close to the boundary the slope at the root is small, so a residual
        // of tol still leaves tol / t of error in phi; Newton steps recover
        // the angle to round-off.
        for (int polish = 0; polish < 3; ++polish) {
          const double g = gap.value(root);
          const double next = root - g / gap.slope(root);
          if (!(next >= lo && next <= hi) ||
              std::abs(gap.value(next)) >= std::abs(g)) {
            break;
          }
          root = next;
        }
        return root;
      }
      inner = outer;
    }
    throw Error(ErrorCode::kRootCountAnomaly,
                fmt::format("no sign change of the support gap around ({}, {})",
                            p.x, p.y));
  };
  const double phi1 = find_edge(-1.0);
  const double phi2 = find_edge(+1.0);
  const double delta = phi2 - phi1;
  if (!(delta > 0.0 && delta < kPi)) {
    throw Error(ErrorCode::kRootCountAnomaly,
                fmt::format("support arc of length {} from ({}, {})", delta,
                            p.x, p.y));
  }

  TangentPair out;
  out.phi1 = wrap_angle(phi1);
  out.phi2 = wrap_angle(phi2);
  out.omega = kPi - delta;
  out.t1 = std::abs(gap.slope(phi1));
  out.t2 = std::abs(gap.slope(phi2));
  return out;
}

namespace {

// Support-line intersection scaled by sin(delta), and the scaled tangent
// lengths u_i = t_i sin(delta). All three stay finite as delta -> pi.
struct ScaledExterior {
  Point p_sin;
  double u1;
  double u2;
  double sin_delta;
};

ScaledExterior scaled_exterior(const TrigSupport& body, double phi1,
                               double delta) {
  const double phi2 = phi1 + delta;
  const double p1 = eval_support(body, phi1, 0);
  const double p2 = eval_support(body, phi2, 0);
  const double d1 = eval_support(body, phi1, 1);
  const double d2 = eval_support(body, phi2, 1);
  const double c1 = std::cos(phi1), s1 = std::sin(phi1);
  const double c2 = std::cos(phi2), s2 = std::sin(phi2);
  const double sd = std::sin(delta);
  const Point ps{p1 * s2 - p2 * s1, p2 * c1 - p1 * c2};
  const double u1 = -ps.x * s1 + ps.y * c1 - d1 * sd;
  const double u2 = -(-ps.x * s2 + ps.y * c2 - d2 * sd);
  return {ps, u1, u2, sd};
}

}  // namespace

ExteriorPoint exterior_point(const ConvexBody& body, double phi1,
                             double delta) {
  if (!(delta > 0.0 && delta < kPi)) {
    throw Error(ErrorCode::kDegenerateGap,
                fmt::format("gap {} outside (0, pi)", delta));
  }
  const ScaledExterior e = scaled_exterior(body.support(), phi1, delta);
  ExteriorPoint out;
  out.point = {e.p_sin.x / e.sin_delta, e.p_sin.y / e.sin_delta};
  out.omega = kPi - delta;
  out.jacobian = e.u1 * e.u2 / (e.sin_delta * e.sin_delta * e.sin_delta);
  return out;
}

// ---------------------------------------------------------------------------
// Kernels

Kernel::Kernel(std::string name, double linear, std::vector<SineTerm> sines,
               std::optional<Decomposition> decomposition)
    : name_(std::move(name)),
      linear_(linear),
      sines_(std::move(sines)),
      decomposition_(std::move(decomposition)) {
  coeff_scale_ = std::abs(linear_);
  for (const SineTerm& t : sines_) {
    coeff_scale_ += std::abs(t.coeff) * t.k;
    max_frequency_ = std::max(max_frequency_, t.k);
  }
  // Odd Taylor coefficients up to omega^59.
  constexpr int kTerms = 30;
  taylor_.assign(kTerms, 0.0);
  taylor_[0] = linear_;
  for (const SineTerm& t : sines_) {
    double power = t.k;  // k^j / j!, starting at j = 1
    double sign = 1.0;
    for (int i = 0; i < kTerms; ++i) {
      const int j = 2 * i + 1;
      taylor_[i] += sign * t.coeff * power;
      power *= static_cast<double>(t.k) * t.k / ((j + 1.0) * (j + 2.0));
      sign = -sign;
    }
  }
}

Kernel Kernel::crofton() {
  return Kernel("crofton", 1.0, {{1, -1.0}}, Decomposition{1.0, {}});
}

Kernel Kernel::sin_cubed() {
  // sin^3 w = (3 sin w - sin 3w) / 4.
  return Kernel("sin3", 0.0, {{1, 0.75}, {3, -0.25}},
                Decomposition{0.0, {{2, 0.75}}});
}

Kernel Kernel::moment(int n) {
  if (n < 2) {
    throw Error(ErrorCode::kBadOrder,
                fmt::format("visual moment order must be >= 2, got {}", n));
  }
  const double up = (n + 1.0) / (n - 1.0);
  const double down = (n - 1.0) / (n + 1.0);
  std::vector<SineTerm> terms;
  if (n == 2) {
    terms = {{1, -2.0 + up}, {3, -down}};
  } else {
    terms = {{1, -2.0}, {n - 1, up}, {n + 1, -down}};
  }
  return Kernel(fmt::format("In({})", n), 0.0, std::move(terms),
                Decomposition{0.0, {{n, 1.0}}});
}

Kernel Kernel::hurwitz_visual() {
  // w - sin w - (2/3) sin^3 w = w - (3/2) sin w + (1/6) sin 3w.
  return Kernel("teo51", 1.0, {{1, -1.5}, {3, 1.0 / 6.0}},
                Decomposition{1.0, {{2, -0.5}}});
}

Kernel Kernel::constant_width_visual() {
  // w - 2 sin w + sin 2w - (1/4) sin 4w - sin^3 w
  //   = w - (11/4) sin w + sin 2w + (1/4) sin 3w - (1/4) sin 4w.
  return Kernel("teo64", 1.0,
                {{1, -2.75}, {2, 1.0}, {3, 0.25}, {4, -0.25}},
                Decomposition{1.0, {{3, 0.5}, {2, -0.75}}});
}

double Kernel::series(double omega) const {
  const double w2 = omega * omega;
  double power = omega;
  double sum = 0.0;
  for (double c : taylor_) {
    sum += c * power;
    power *= w2;
  }
  return sum;
}

double Kernel::operator()(double omega) const {
  if (omega * max_frequency_ < 1.0) return series(omega);
  CompensatedSum sum;
  sum.add(linear_ * omega);
  for (const SineTerm& t : sines_) sum.add(t.coeff * std::sin(t.k * omega));
  return sum.value();
}

double Kernel::over_sin_cubed(double omega) const {
  const double s = std::sin(omega);
  return (*this)(omega) / (s * s * s);
}

bool Kernel::integrable() const noexcept {
  return std::abs(taylor_[0]) <= 1e-12 * std::max(coeff_scale_, 1.0);
}

std::optional<double> Kernel::spectral_integral(const FunctionalSet& fs) const {
  if (!decomposition_) return std::nullopt;
  const double l2 = fs.length * fs.length;
  CompensatedSum sum;
  sum.add(decomposition_->crofton_weight * (0.5 * l2 - kPi * fs.area));
  for (const auto& [n, weight] : decomposition_->moment_weights) {
    const auto it = fs.cn_sq.find(n);
    const double c2 = it == fs.cn_sq.end() ? 0.0 : it->second;
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    sum.add(weight * (l2 + sign * kPi * kPi * (n * n - 1.0) * c2));
  }
  return sum.value();
}

// ---------------------------------------------------------------------------
// Exterior integrals

std::string_view to_string(ExteriorMethod method) {
  return method == ExteriorMethod::kTangentCoords ? "tangent_coords"
                                                  : "polar_grid";
}

void ExteriorConfig::validate() const {
  if (nodes_phi < 16 || nodes_delta < 16 || radial_nodes < 16) {
    throw Error(ErrorCode::kBadConfig,
                fmt::format("node counts must be >= 16 (phi {}, delta {}, "
                            "radial {})",
                            nodes_phi, nodes_delta, radial_nodes));
  }
  if (!(delta_min > 0.0 && delta_min < kPi / 64.0)) {
    throw Error(ErrorCode::kBadConfig,
                fmt::format("collar delta_min = {} outside (0, pi/64)",
                            delta_min));
  }
  if (!(r_max_factor >= 20.0)) {
    throw Error(ErrorCode::kBadConfig,
                fmt::format("polar cutoff factor {} below 20", r_max_factor));
  }
}

namespace {

struct Rule1d {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre panels on [lo, hi] with the given breakpoints.
Rule1d panel_rule(const std::vector<double>& breaks, int per_panel) {
  const GaussRule g = gauss_legendre(per_panel);
  Rule1d rule;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    const double mid = 0.5 * (breaks[j] + breaks[j + 1]);
    const double half = 0.5 * (breaks[j + 1] - breaks[j]);
    for (int i = 0; i < per_panel; ++i) {
      rule.nodes.push_back(mid + half * g.nodes[i]);
      rule.weights.push_back(half * g.weights[i]);
    }
  }
  return rule;
}

constexpr int kDeltaPanels = 4;

// (delta_min, pi) split at pi - (pi - delta_min) 2^-j.
Rule1d gap_rule(double delta_min, int per_panel) {
  std::vector<double> breaks{delta_min};
  for (int j = 1; j < kDeltaPanels; ++j) {
    breaks.push_back(kPi - (kPi - delta_min) * std::ldexp(1.0, -j));
  }
  breaks.push_back(kPi);
  return panel_rule(breaks, per_panel);
}

struct Accumulated {
  double value = 0.0;
  double magnitude = 0.0;  // integral of |integrand|, for the round-off bound
};

Accumulated tangent_pass(const TrigSupport& body, const Kernel& kernel,
                         int nodes_phi, const Rule1d& gap, int workers) {
  std::vector<double> column(nodes_phi), column_abs(nodes_phi);
  std::vector<double> weight_g(gap.nodes.size());
  for (std::size_t j = 0; j < gap.nodes.size(); ++j) {
    weight_g[j] = kernel.over_sin_cubed(kPi - gap.nodes[j]);
  }
  parallel_for(static_cast<std::size_t>(nodes_phi), workers, [&](std::size_t i) {
    const double phi1 = kTwoPi * static_cast<double>(i) / nodes_phi;
    CompensatedSum sum;
    CompensatedSum sum_abs;
    for (std::size_t j = 0; j < gap.nodes.size(); ++j) {
      const ScaledExterior e = scaled_exterior(body, phi1, gap.nodes[j]);
      const double h = e.u1 * e.u2 * weight_g[j] * gap.weights[j];
      sum.add(h);
      sum_abs.add(std::abs(h));
    }
    column[i] = sum.value();
    column_abs[i] = sum_abs.value();
  });
  const double w = kTwoPi / nodes_phi;
  return {w * compensated_sum(column), w * compensated_sum(column_abs)};
}

void require_integrable(const Kernel& kernel) {
  if (!kernel.integrable()) {
    throw Error(ErrorCode::kNonIntegrableKernel,
                fmt::format("kernel {} is not O(omega^3) at 0 (linear Taylor "
                            "coefficient {})",
                            kernel.name(), kernel.linear_taylor_coefficient()));
  }
}

}  // namespace

IntegralResult exterior_integral(const ConvexBody& body, const Kernel& kernel,
                                 const ExteriorConfig& config) {
  config.validate();
  require_integrable(kernel);
  const TrigSupport& p = body.support();
  const int per_panel = std::max(4, config.nodes_delta / kDeltaPanels);

  const Rule1d fine_gap = gap_rule(config.delta_min, per_panel);
  const Rule1d coarse_gap = gap_rule(config.delta_min, per_panel / 2);
  const Accumulated fine =
      tangent_pass(p, kernel, config.nodes_phi, fine_gap, config.workers);
  const Accumulated coarse =
      tangent_pass(p, kernel, config.nodes_phi / 2, coarse_gap, config.workers);

  // The integrand vanishes linearly at delta = 0, so the excluded strip holds
  // about h(delta_min) * delta_min / 2 per unit phi1; the bound doubles that
  // to absorb the curvature of h across the strip.
  CompensatedSum collar;
  const double g_min = kernel.over_sin_cubed(kPi - config.delta_min);
  for (int i = 0; i < config.nodes_phi; ++i) {
    const double phi1 = kTwoPi * i / config.nodes_phi;
    const ScaledExterior e = scaled_exterior(p, phi1, config.delta_min);
    collar.add(std::abs(e.u1 * e.u2 * g_min) * config.delta_min);
  }
  const double collar_bound = kTwoPi / config.nodes_phi * collar.value();

  const int nodes = config.nodes_phi * static_cast<int>(fine_gap.nodes.size());
  IntegralResult out;
  out.value = fine.value;
  out.error_bar = std::abs(fine.value - coarse.value) + collar_bound +
                  nodes * kEps * fine.magnitude;
  out.method = ExteriorMethod::kTangentCoords;
  out.nodes = nodes;
  return out;
}

namespace {

// Radial function of the body about a centre, from the boundary
// parametrization gamma = p N + p' N'.
class RadialBoundary {
 public:
  RadialBoundary(const TrigSupport& body, Point centre)
      : body_(body), centre_(centre) {
    const int count = std::max(512, 32 * body.max_degree());
    phi_.resize(count);
    rel_.resize(count);
    for (int i = 0; i < count; ++i) {
      phi_[i] = kTwoPi * i / count;
      rel_[i] = relative(phi_[i]);
    }
  }

  double radius(double theta) const {
    const Point u{std::cos(theta), std::sin(theta)};
    const auto cross = [&](Point v) { return u.x * v.y - u.y * v.x; };
    const int count = static_cast<int>(phi_.size());
    for (int i = 0; i < count; ++i) {
      const int j = (i + 1) % count;
      const double c0 = cross(rel_[i]);
      const double c1 = cross(rel_[j]);
      const bool ahead = u.x * rel_[i].x + u.y * rel_[i].y > 0.0;
      if (ahead && c0 <= 0.0 && c1 > 0.0) {
        const double lo = phi_[i];
        const double hi = j == 0 ? kTwoPi : phi_[j];
        const double phi = solve_bracketed(
            [&](double x) {
              const Point v = relative(x);
              const double rho = eval_support(body_, x, 0) +
                                 eval_support(body_, x, 2);
              const Point tangent{-rho * std::sin(x), rho * std::cos(x)};
              return std::pair{cross(v), cross(tangent)};
            },
            lo, hi, c0, 1e-15 * (std::abs(body_.a0()) + 1.0));
        const Point v = relative(phi);
        return u.x * v.x + u.y * v.y;
      }
    }
    throw Error(ErrorCode::kRootCountAnomaly,
                fmt::format("no boundary crossing in direction {}", theta));
  }

 private:
  Point relative(double phi) const {
    const double p0 = eval_support(body_, phi, 0);
    const double p1 = eval_support(body_, phi, 1);
    const double c = std::cos(phi), s = std::sin(phi);
    return {p0 * c - p1 * s - centre_.x, p0 * s + p1 * c - centre_.y};
  }

  const TrigSupport& body_;
  Point centre_;
  std::vector<double> phi_;
  std::vector<Point> rel_;
};

struct RayResult {
  double value = 0.0;
  double magnitude = 0.0;
  double tail_bar = 0.0;
};

// Least-squares fit of y = A + B x + C x^2 (or A + B x) with x = R / r,
// returning the tail integral (A + B/2 + C/3) / R.
double fitted_tail(const std::vector<double>& x, const std::vector<double>& y,
                   double r_max, int terms) {
  std::array<std::array<double, 4>, 3> m{};
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::array<double, 3> basis{1.0, x[i], x[i] * x[i]};
    for (int a = 0; a < terms; ++a) {
      for (int b = 0; b < terms; ++b) m[a][b] += basis[a] * basis[b];
      m[a][3] += basis[a] * y[i];
    }
  }
  // Gaussian elimination with partial pivoting on the normal equations.
  for (int c = 0; c < terms; ++c) {
    int pivot = c;
    for (int r = c + 1; r < terms; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[pivot][c])) pivot = r;
    }
    std::swap(m[c], m[pivot]);
    for (int r = c + 1; r < terms; ++r) {
      const double f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::array<double, 3> coef{};
  for (int c = terms - 1; c >= 0; --c) {
    double v = m[c][3];
    for (int k = c + 1; k < terms; ++k) v -= m[c][k] * coef[k];
    coef[c] = v / m[c][c];
  }
  return (coef[0] + coef[1] / 2.0 + coef[2] / 3.0) / r_max;
}

RayResult polar_ray(const ConvexBody& body, const Kernel& kernel, Point centre,
                    double theta, double r_boundary, double r_max,
                    int per_panel) {
  const double s_max = std::sqrt(r_max - r_boundary);
  const std::vector<double> breaks{0.0,         s_max / 16.0, s_max / 8.0,
                                   s_max / 4.0, s_max / 2.0,  0.75 * s_max,
                                   s_max};
  const Rule1d rule = panel_rule(breaks, per_panel);
  const Point u{std::cos(theta), std::sin(theta)};
  CompensatedSum sum;
  CompensatedSum sum_abs;
  std::vector<double> fit_x, fit_y;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double s = rule.nodes[i];
    const double r = r_boundary + s * s;
    const Point p{centre.x + r * u.x, centre.y + r * u.y};
    const double omega = support_line_angles(body, p).omega;
    const double f = kernel(omega);
    const double h = f * r * 2.0 * s * rule.weights[i];
    sum.add(h);
    sum_abs.add(std::abs(h));
    if (r >= 0.1 * r_max) {
      fit_x.push_back(r_max / r);
      fit_y.push_back(f * r * r * r);
    }
  }
  const double tail = fitted_tail(fit_x, fit_y, r_max, 3);
  const double tail_linear = fitted_tail(fit_x, fit_y, r_max, 2);
  RayResult out;
  out.value = sum.value() + tail;
  out.magnitude = sum_abs.value() + std::abs(tail);
  out.tail_bar = std::abs(tail - tail_linear);
  return out;
}

struct GridPass {
  double value = 0.0;
  double magnitude = 0.0;
  double tail_bar = 0.0;
};

GridPass polar_pass(const ConvexBody& body, const Kernel& kernel,
                    const RadialBoundary& boundary, Point centre, int nodes_theta,
                    int per_panel, double r_max, int workers) {
  std::vector<RayResult> rays(nodes_theta);
  parallel_for(static_cast<std::size_t>(nodes_theta), workers,
               [&](std::size_t j) {
                 const double theta = kTwoPi * static_cast<double>(j) / nodes_theta;
                 rays[j] = polar_ray(body, kernel, centre, theta,
                                     boundary.radius(theta), r_max, per_panel);
               });
  CompensatedSum value, magnitude, tail_bar;
  for (const RayResult& r : rays) {
    value.add(r.value);
    magnitude.add(r.magnitude);
    tail_bar.add(r.tail_bar);
  }
  const double w = kTwoPi / nodes_theta;
  return {w * value.value(), w * magnitude.value(), w * tail_bar.value()};
}

constexpr int kRadialPanels = 6;

}  // namespace

IntegralResult exterior_integral_grid(const ConvexBody& body,
                                      const Kernel& kernel,
                                      const ExteriorConfig& config) {
  config.validate();
  require_integrable(kernel);
  const Point centre = steiner_point(body.support());
  const double r_max = config.r_max_factor * body.a0();
  const RadialBoundary boundary(body.support(), centre);
  const int per_panel = std::max(4, config.radial_nodes / kRadialPanels);

  const GridPass fine = polar_pass(body, kernel, boundary, centre,
                                   config.nodes_phi, per_panel, r_max,
                                   config.workers);
  const GridPass coarse = polar_pass(body, kernel, boundary, centre,
                                     config.nodes_phi / 2, per_panel / 2,
                                     r_max, config.workers);
  const int nodes = config.nodes_phi * per_panel * kRadialPanels;
  IntegralResult out;
  out.value = fine.value;
  out.error_bar = std::abs(fine.value - coarse.value) + fine.tail_bar +
                  nodes * kEps * fine.magnitude;
  out.method = ExteriorMethod::kPolarGrid;
  out.nodes = nodes;
  return out;
}

IntegralResult integrate_exterior(const ConvexBody& body, const Kernel& kernel,
                                  const ExteriorConfig& config) {
  return config.method == ExteriorMethod::kTangentCoords
             ? exterior_integral(body, kernel, config)
             : exterior_integral_grid(body, kernel, config);
}

VisualMoment visual_moment(const ConvexBody& body, int n,
                           const ExteriorConfig& config) {
  if (n < 2) {
    throw Error(ErrorCode::kBadOrder,
                fmt::format("visual moment order must be >= 2, got {}", n));
  }
  const Kernel kernel = Kernel::moment(n);
  VisualMoment out;
  out.numeric = integrate_exterior(body, kernel, config);
  const double length = kTwoPi * body.a0();
  const double c2 = body.support().c_sq(n);
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  out.spectral = length * length + sign * kPi * kPi * (n * n - 1.0) * c2;
  return out;
}

}  // namespace hurwitz
