#pragma once

#include <cmath>

#include "hurwitz/spectral_body.hpp"

namespace hurwitz::testing {

inline constexpr double kPiSq = M_PI * M_PI;

// Astroid parallel: a0 = 1, 0.2 sin 2phi.
inline TrigSupport ast() { return TrigSupport(1.0, {{2, 0.0, 0.2}}); }
// Deltoid (Steiner curve) parallel: a0 = 1, 0.1 cos 3phi.
inline TrigSupport delt() { return TrigSupport(1.0, {{3, 0.1, 0.0}}); }
// Constant width, deltoid plus five-cusp hypocycloid harmonics.
inline TrigSupport cw35() {
  return TrigSupport(1.0, {{3, 0.05, 0.0}, {5, 0.0, 0.01}});
}
// Mixed body with no equality pattern.
inline TrigSupport mix() {
  return TrigSupport(1.0, {{2, 0.0, 0.1}, {5, 0.02, 0.0}});
}
inline TrigSupport unit_circle() { return TrigSupport(1.0); }

inline bool close_rel(double x, double y, double rel, double abs_floor = 0.0) {
  return std::abs(x - y) <= rel * std::max(std::abs(x), std::abs(y)) + abs_floor;
}

}  // namespace hurwitz::testing
