#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace hurwitz {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Neumaier's variant of Kahan summation. Terms must be added in a fixed
// order for results to be reproducible.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }

  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

double compensated_sum(std::span<const double> terms);

/// Periodic trapezoid rule on the uniform grid phi_i = 2*pi*i/M:
/// (2*pi/M) * sum(samples). Exact for trigonometric polynomials of degree
/// at most M-1; a harmonic of frequency M aliases onto the constant.
/// Throws EmptyGrid when fewer than two samples are given.
double periodic_integral(std::span<const double> samples);

/// Composite Simpson rule on a uniform grid including both endpoints. The
/// sample count must be odd and at least 3.
double simpson_integral(std::span<const double> samples, double a, double b);

struct GaussRule {
  std::vector<double> nodes;    // on (-1, 1), ascending
  std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights by Newton iteration on P_n.
GaussRule gauss_legendre(int n);

/// Smallest power of two that is >= n (n >= 1).
int next_power_of_two(int n);

}  // namespace hurwitz
