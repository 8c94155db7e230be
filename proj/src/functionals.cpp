#include "hurwitz/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "hurwitz/error.hpp"

namespace hurwitz {

std::string_view to_string(FunctionalPath path) {
  return path == FunctionalPath::kSpectral ? "spectral" : "quadrature";
}

QuadratureGrid::QuadratureGrid(int nodes, const TrigSupport& body)
    : nodes_(nodes) {
  const int needed = 4 * body.max_degree() + 8;
  if (nodes < needed || next_power_of_two(nodes) != nodes) {
    throw Error(ErrorCode::kInsufficientNodes,
                fmt::format("quadrature needs a power of two >= {} nodes for "
                            "degree {}, got {}",
                            needed, body.max_degree(), nodes));
  }
}

QuadratureGrid QuadratureGrid::for_body(const TrigSupport& body) {
  return QuadratureGrid(
      std::max(256, next_power_of_two(4 * body.max_degree() + 8)));
}

FunctionalSet functionals_spectral(const ConvexBody& body) {
  const TrigSupport& p = body.support();
  const double a0 = p.a0();
  const double pi = kPi;

  CompensatedSum curvature_energy;  // sum_{n>=2} (n^2 - 1) c_n^2
  CompensatedSum evolute;           // sum n^2 (n^2 - 1) c_n^2
  CompensatedSum hurwitz;           // sum_{n>=3} (n^2 - 1)(n^2 - 4) c_n^2
  CompensatedSum pedal;             // sum_{n>=2} n^2 c_n^2
  CompensatedSum energy;            // sum_{n>=2} c_n^2
  CompensatedSum wigner;            // sum_{odd n>=3} (n^2 - 1) c_n^2

  FunctionalSet out;
  for (const Harmonic& h : p.harmonics()) {
    if (h.n < 2) continue;
    const double n2 = static_cast<double>(h.n) * h.n;
    const double c2 = h.c_sq();
    out.cn_sq[h.n] = c2;
    curvature_energy.add((n2 - 1.0) * c2);
    evolute.add(n2 * (n2 - 1.0) * c2);
    hurwitz.add((n2 - 1.0) * (n2 - 4.0) * c2);
    pedal.add(n2 * c2);
    energy.add(c2);
    if (h.n % 2 == 1) wigner.add((n2 - 1.0) * c2);
  }

  out.length = 2.0 * pi * a0;
  out.area = pi * a0 * a0 - 0.5 * pi * curvature_energy.value();
  out.deficit = 2.0 * pi * pi * curvature_energy.value();
  out.evolute_area = -0.5 * pi * evolute.value();
  out.hurwitz_deficit = 0.5 * pi * pi * hurwitz.value();
  out.pedal_excess = 0.5 * pi * pedal.value();
  out.pedal_area = out.area + out.pedal_excess;
  out.delta2_sq = pi * energy.value();
  out.wigner_area = -0.5 * pi * wigner.value();
  out.wirtinger_q = pi * curvature_energy.value();
  out.steiner = steiner_point(p);
  out.path = FunctionalPath::kSpectral;
  return out;
}

FunctionalSet functionals_quadrature(const ConvexBody& body,
                                     std::optional<QuadratureGrid> grid) {
  const TrigSupport& p = body.support();
  const QuadratureGrid g = grid.value_or(QuadratureGrid::for_body(p));
  const int m = g.nodes();
  const double pi = kPi;

  std::vector<double> phi(m), v0(m), v1(m), v2(m);
  for (int i = 0; i < m; ++i) {
    phi[i] = kTwoPi * i / m;
    v0[i] = eval_support(p, phi[i], 0);
    v1[i] = eval_support(p, phi[i], 1);
    v2[i] = eval_support(p, phi[i], 2);
  }

  std::vector<double> work(m);
  auto integral_of = [&](auto&& integrand) {
    for (int i = 0; i < m; ++i) work[i] = integrand(i);
    return periodic_integral(work);
  };

  FunctionalSet out;
  out.path = FunctionalPath::kQuadrature;
  out.length = integral_of([&](int i) { return v0[i]; });
  out.area = 0.5 * integral_of(
                       [&](int i) { return v0[i] * v0[i] - v1[i] * v1[i]; });
  out.steiner = {integral_of([&](int i) { return v0[i] * std::cos(phi[i]); }) / pi,
                 integral_of([&](int i) { return v0[i] * std::sin(phi[i]); }) / pi};

  // Support function and derivatives about the Steiner point.
  const Point s = out.steiner;
  std::vector<double> c0(m), c1(m);
  for (int i = 0; i < m; ++i) {
    const double cs = std::cos(phi[i]);
    const double sn = std::sin(phi[i]);
    c0[i] = v0[i] - s.x * cs - s.y * sn;
    c1[i] = v1[i] + s.x * sn - s.y * cs;
  }
  out.pedal_area = 0.5 * integral_of([&](int i) { return c0[i] * c0[i]; });
  out.pedal_excess = 0.5 * integral_of([&](int i) { return c1[i] * c1[i]; });

  const double mean = out.length / kTwoPi;
  out.delta2_sq = integral_of([&](int i) {
    const double d = c0[i] - mean;
    return d * d;
  });

  // q = p - L/2pi; W_q and the Hurwitz deficit (pi/2)(W_q' - 4 W_q) written
  // as (pi/2) int (4 q^2 - 5 q'^2 + q''^2).
  out.wirtinger_q = integral_of([&](int i) {
    const double q = v0[i] - mean;
    return v1[i] * v1[i] - q * q;
  });
  out.deficit = kTwoPi * out.wirtinger_q;
  out.hurwitz_deficit = 0.5 * pi * integral_of([&](int i) {
    const double q = v0[i] - mean;
    return 4.0 * q * q - 5.0 * v1[i] * v1[i] + v2[i] * v2[i];
  });

  // Evolute: generalized support f(phi) = p'(phi - pi/2), f'' = p'''(...).
  {
    std::vector<double> f(m), f2(m);
    for (int i = 0; i < m; ++i) {
      f[i] = eval_support(p, phi[i] - 0.5 * pi, 1);
      f2[i] = eval_support(p, phi[i] - 0.5 * pi, 3);
    }
    out.evolute_area = generalized_area_sampled(f, f2, Interval{});
  }
  // Wigner caustic: q_w(phi) = (p(phi) - p(phi + pi)) / 2.
  {
    std::vector<double> f(m), f2(m);
    for (int i = 0; i < m; ++i) {
      f[i] = 0.5 * (v0[i] - eval_support(p, phi[i] + pi, 0));
      f2[i] = 0.5 * (v2[i] - eval_support(p, phi[i] + pi, 2));
    }
    out.wigner_area = generalized_area_sampled(f, f2, Interval{});
  }

  std::vector<SupportSample> samples(m);
  for (int i = 0; i < m; ++i) samples[i] = {phi[i], c0[i]};
  const TrigSupport analysed = from_samples(samples, (m - 2) / 2);
  for (const Harmonic& h : analysed.harmonics()) {
    if (h.n >= 2 && h.c_sq() > 0.0) out.cn_sq[h.n] = h.c_sq();
  }
  return out;
}

double generalized_area_sampled(std::span<const double> f,
                                std::span<const double> f_second,
                                Interval interval) {
  if (!(interval.hi > interval.lo)) {
    throw Error(ErrorCode::kBadInterval,
                fmt::format("interval [{}, {}] is empty", interval.lo,
                            interval.hi));
  }
  if (f.size() != f_second.size()) {
    throw Error(ErrorCode::kBadConfig, "f and f'' sample counts differ");
  }
  std::vector<double> integrand(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    integrand[i] = 0.5 * f[i] * (f[i] + f_second[i]);
  }
  const double width = interval.hi - interval.lo;
  if (std::abs(width - kTwoPi) <= 1e-12) return periodic_integral(integrand);
  return simpson_integral(integrand, interval.lo, interval.hi);
}

double generalized_area(const TrigSupport& f, Interval interval, int nodes) {
  if (!(interval.hi > interval.lo)) {
    throw Error(ErrorCode::kBadInterval,
                fmt::format("interval [{}, {}] is empty", interval.lo,
                            interval.hi));
  }
  const bool periodic = std::abs(interval.hi - interval.lo - kTwoPi) <= 1e-12;
  int m = nodes > 0 ? nodes
                    : std::max(256, next_power_of_two(4 * f.max_degree() + 8));
  if (!periodic && m % 2 == 0) ++m;
  const double step =
      (interval.hi - interval.lo) / (periodic ? m : m - 1);
  std::vector<double> v(m), v2(m);
  for (int i = 0; i < m; ++i) {
    const double t = interval.lo + i * step;
    v[i] = eval_support(f, t, 0);
    v2[i] = eval_support(f, t, 2);
  }
  return generalized_area_sampled(v, v2, interval);
}

double steiner_polynomial(const ConvexBody& body, double r) {
  const FunctionalSet fs = functionals_spectral(body);
  return kPi * r * r + fs.length * r + fs.area;
}

double wirtinger_deficit(const TrigSupport& f) {
  CompensatedSum sum;
  sum.add(-2.0 * kPi * f.a0() * f.a0());
  for (const Harmonic& h : f.harmonics()) {
    sum.add(kPi * (static_cast<double>(h.n) * h.n - 1.0) * h.c_sq());
  }
  return sum.value();
}

double wirtinger_lemma_gap(const TrigSupport& f) {
  const double integral = kTwoPi * f.a0();
  return wirtinger_deficit(derivative(f)) - 4.0 * wirtinger_deficit(f) -
         2.0 / kPi * integral * integral;
}

}  // namespace hurwitz
