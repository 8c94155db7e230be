#include "hurwitz/quadrature.hpp"

#include <fmt/format.h>

#include "hurwitz/error.hpp"

namespace hurwitz {

double compensated_sum(std::span<const double> terms) {
  CompensatedSum sum;
  for (double t : terms) sum.add(t);
  return sum.value();
}

double periodic_integral(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::kEmptyGrid,
                fmt::format("periodic grid needs at least 2 nodes, got {}",
                            samples.size()));
  }
  return kTwoPi / static_cast<double>(samples.size()) *
         compensated_sum(samples);
}

double simpson_integral(std::span<const double> samples, double a, double b) {
  const std::size_t m = samples.size();
  if (m < 3 || m % 2 == 0) {
    throw Error(ErrorCode::kEmptyGrid,
                fmt::format("Simpson rule needs an odd node count >= 3, got {}",
                            m));
  }
  if (!(b > a)) {
    throw Error(ErrorCode::kBadInterval,
                fmt::format("interval [{}, {}] is empty", a, b));
  }
  const double h = (b - a) / static_cast<double>(m - 1);
  CompensatedSum sum;
  for (std::size_t i = 0; i < m; ++i) {
    double w = (i == 0 || i + 1 == m) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum.add(w * samples[i]);
  }
  return h / 3.0 * sum.value();
}

GaussRule gauss_legendre(int n) {
  if (n < 1) {
    throw Error(ErrorCode::kBadConfig,
                fmt::format("Gauss-Legendre order must be >= 1, got {}", n));
  }
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi's initial guess, then Newton on the three-term recurrence.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

int next_power_of_two(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace hurwitz
