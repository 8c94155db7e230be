#include "hurwitz/spectral_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "hurwitz/error.hpp"
#include "hurwitz/quadrature.hpp"
#include "hurwitz/rng.hpp"
#include "hurwitz/root_finding.hpp"

namespace hurwitz {

TrigSupport::TrigSupport(double a0, std::vector<Harmonic> harmonics)
    : a0_(a0), harmonics_(std::move(harmonics)) {
  std::sort(harmonics_.begin(), harmonics_.end(),
            [](const Harmonic& l, const Harmonic& r) { return l.n < r.n; });
  for (std::size_t i = 0; i < harmonics_.size(); ++i) {
    if (harmonics_[i].n < 1) {
      throw Error(ErrorCode::kDuplicateHarmonic,
                  fmt::format("harmonic frequency must be >= 1, got {}",
                              harmonics_[i].n));
    }
    if (i > 0 && harmonics_[i].n == harmonics_[i - 1].n) {
      throw Error(ErrorCode::kDuplicateHarmonic,
                  fmt::format("frequency {} listed twice", harmonics_[i].n));
    }
  }
  std::erase_if(harmonics_,
                [](const Harmonic& h) { return h.a == 0.0 && h.b == 0.0; });
}

int TrigSupport::max_degree() const noexcept {
  return harmonics_.empty() ? 0 : harmonics_.back().n;
}

Harmonic TrigSupport::coefficient(int n) const noexcept {
  if (n == 0) return Harmonic{0, a0_, 0.0};
  auto it = std::lower_bound(
      harmonics_.begin(), harmonics_.end(), n,
      [](const Harmonic& h, int freq) { return h.n < freq; });
  if (it != harmonics_.end() && it->n == n) return *it;
  return Harmonic{n, 0.0, 0.0};
}

double eval_support(const TrigSupport& body, double phi, int order) {
  if (order < 0) {
    throw Error(ErrorCode::kBadOrder,
                fmt::format("derivative order must be >= 0, got {}", order));
  }
  CompensatedSum sum;
  if (order == 0) sum.add(body.a0());
  for (const Harmonic& h : body.harmonics()) {
    const double c = std::cos(h.n * phi);
    const double s = std::sin(h.n * phi);
    double term = 0.0;
    switch (order % 4) {
      case 0: term = h.a * c + h.b * s; break;
      case 1: term = -h.a * s + h.b * c; break;
      case 2: term = -h.a * c - h.b * s; break;
      case 3: term = h.a * s - h.b * c; break;
    }
    sum.add(std::pow(static_cast<double>(h.n), order) * term);
  }
  return sum.value();
}

TrigSupport derivative(const TrigSupport& body) {
  std::vector<Harmonic> out;
  out.reserve(body.harmonics().size());
  for (const Harmonic& h : body.harmonics()) {
    out.push_back({h.n, h.n * h.b, -h.n * h.a});
  }
  return TrigSupport(0.0, std::move(out));
}

TrigSupport scaled(const TrigSupport& body, double factor) {
  std::vector<Harmonic> out;
  out.reserve(body.harmonics().size());
  for (const Harmonic& h : body.harmonics()) {
    out.push_back({h.n, factor * h.a, factor * h.b});
  }
  return TrigSupport(factor * body.a0(), std::move(out));
}

namespace {

double curvature_radius(const TrigSupport& body, double phi) {
  return eval_support(body, phi, 0) + eval_support(body, phi, 2);
}

double scale_of(const TrigSupport& body) {
  double s = std::abs(body.a0());
  for (const Harmonic& h : body.harmonics()) s = std::max(s, std::sqrt(h.c_sq()));
  return s > 0.0 ? s : 1.0;
}

}  // namespace

CurvatureMinimum min_curvature_radius(const TrigSupport& body) {
  const int degree = body.max_degree();
  if (degree < 2) {
    // rho = a0 exactly: the degree-1 term cancels in p + p''.
    return {body.a0(), 0.0};
  }
  const int count = 16 * std::max(degree, 4);
  const double h = kTwoPi / count;
  std::vector<double> rho(count);
  for (int i = 0; i < count; ++i) rho[i] = curvature_radius(body, i * h);

  std::vector<int> candidates;
  for (int i = 0; i < count; ++i) {
    const double prev = rho[(i + count - 1) % count];
    const double next = rho[(i + 1) % count];
    if (rho[i] <= prev && rho[i] <= next) candidates.push_back(i);
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](int l, int r) { return rho[l] < rho[r]; });
  if (candidates.size() > 4) candidates.resize(4);

  const double tol = 1e-12 * std::max(std::abs(body.a0()), scale_of(body));
  CurvatureMinimum best{rho[candidates.front()], candidates.front() * h};
  for (int i : candidates) {
    // rho' = p' + p''' and rho'' = p'' + p''''.
    auto slope = [&](double phi) {
      return std::pair{eval_support(body, phi, 1) + eval_support(body, phi, 3),
                       eval_support(body, phi, 2) + eval_support(body, phi, 4)};
    };
    const double lo = (i - 1) * h;
    const double hi = (i + 1) * h;
    const double s_lo = slope(lo).first;
    const double s_hi = slope(hi).first;
    double phi = i * h;
    if (s_lo <= 0.0 && s_hi >= 0.0) {
      phi = solve_bracketed(slope, lo, hi, s_lo, tol);
    }
    const double value = curvature_radius(body, phi);
    if (value < best.rho_min) best = {value, phi};
  }
  best.phi_at = std::fmod(best.phi_at, kTwoPi);
  if (best.phi_at < 0.0) best.phi_at += kTwoPi;
  return best;
}

ConvexBody validate_convex(const TrigSupport& body, std::optional<double> eps) {
  if (!(body.a0() > 0.0)) {
    throw Error(ErrorCode::kNonpositiveMean,
                fmt::format("mean term a0 = {} must be positive", body.a0()));
  }
  const double threshold = eps.value_or(1e-9 * body.a0());
  if (!(threshold > 0.0)) {
    throw Error(ErrorCode::kBadConfig,
                fmt::format("convexity tolerance must be positive, got {}",
                            threshold));
  }
  const CurvatureMinimum m = min_curvature_radius(body);
  if (!(m.rho_min >= threshold)) {
    throw NotStrictlyConvexError(m.rho_min, m.phi_at);
  }
  return ConvexBody(body, m.rho_min);
}

Point steiner_point(const TrigSupport& body) {
  const Harmonic h = body.coefficient(1);
  return {h.a, h.b};
}

TrigSupport recenter_to_steiner(const TrigSupport& body) {
  std::vector<Harmonic> out;
  for (const Harmonic& h : body.harmonics()) {
    if (h.n != 1) out.push_back(h);
  }
  return TrigSupport(body.a0(), std::move(out));
}

TrigSupport minkowski_sum(const TrigSupport& lhs, const TrigSupport& rhs) {
  std::vector<Harmonic> out;
  auto l = lhs.harmonics().begin();
  auto r = rhs.harmonics().begin();
  while (l != lhs.harmonics().end() || r != rhs.harmonics().end()) {
    if (r == rhs.harmonics().end() ||
        (l != lhs.harmonics().end() && l->n < r->n)) {
      out.push_back(*l++);
    } else if (l == lhs.harmonics().end() || r->n < l->n) {
      out.push_back(*r++);
    } else {
      out.push_back({l->n, l->a + r->a, l->b + r->b});
      ++l;
      ++r;
    }
  }
  return TrigSupport(lhs.a0() + rhs.a0(), std::move(out));
}

TrigSupport offset(const TrigSupport& body, double r) {
  std::vector<Harmonic> out(body.harmonics().begin(), body.harmonics().end());
  return TrigSupport(body.a0() + r, std::move(out));
}

TrigSupport rigid_motion(const TrigSupport& body, double theta, Point v) {
  std::vector<Harmonic> out;
  bool has_first = false;
  for (const Harmonic& h : body.harmonics()) {
    // a cos n(phi - theta) + b sin n(phi - theta), re-expanded in phi.
    const double c = std::cos(h.n * theta);
    const double s = std::sin(h.n * theta);
    Harmonic rotated{h.n, h.a * c - h.b * s, h.a * s + h.b * c};
    if (h.n == 1) {
      rotated.a += v.x;
      rotated.b += v.y;
      has_first = true;
    }
    out.push_back(rotated);
  }
  if (!has_first) out.push_back({1, v.x, v.y});
  return TrigSupport(body.a0(), std::move(out));
}

TrigSupport from_samples(std::span<const SupportSample> samples, int degree) {
  const auto m = static_cast<int>(samples.size());
  if (degree < 0 || m < 2 * degree + 2) {
    throw Error(ErrorCode::kInsufficientSamples,
                fmt::format("{} samples cannot resolve degree {} (need >= {})",
                            m, degree, 2 * degree + 2));
  }
  const double step = kTwoPi / m;
  const double start = samples.front().phi;
  double max_abs = 0.0;
  for (int i = 0; i < m; ++i) {
    const double expected = start + i * step;
    if (std::abs(samples[i].phi - expected) > 1e-9 * kTwoPi) {
      throw Error(ErrorCode::kGridNotUniform,
                  fmt::format("sample {} at phi={} but grid expects {}", i,
                              samples[i].phi, expected));
    }
    max_abs = std::max(max_abs, std::abs(samples[i].value));
  }
  if (start < -1e-12 || start >= step) {
    throw Error(ErrorCode::kGridNotUniform,
                fmt::format("grid must start in [0, {}), starts at {}", step,
                            start));
  }
  const double chop = 64.0 * std::numeric_limits<double>::epsilon() * max_abs;
  CompensatedSum mean;
  for (const SupportSample& s : samples) mean.add(s.value);
  const double a0 = mean.value() / m;
  std::vector<Harmonic> out;
  for (int n = 1; n <= degree; ++n) {
    CompensatedSum ca;
    CompensatedSum cb;
    for (int i = 0; i < m; ++i) {
      const double phi = start + i * step;
      ca.add(samples[i].value * std::cos(n * phi));
      cb.add(samples[i].value * std::sin(n * phi));
    }
    double a = 2.0 * ca.value() / m;
    double b = 2.0 * cb.value() / m;
    if (std::abs(a) <= chop) a = 0.0;
    if (std::abs(b) <= chop) b = 0.0;
    out.push_back({n, a, b});
  }
  return TrigSupport(a0, std::move(out));
}

std::vector<SupportSample> sample_support(const TrigSupport& body, int count) {
  std::vector<SupportSample> out(count);
  for (int i = 0; i < count; ++i) {
    const double phi = kTwoPi * i / count;
    out[i] = {phi, eval_support(body, phi, 0)};
  }
  return out;
}

ConstantWidth is_constant_width(const TrigSupport& body, double tol) {
  for (const Harmonic& h : body.harmonics()) {
    if (h.n % 2 == 0 && (std::abs(h.a) > tol || std::abs(h.b) > tol)) {
      return {false, 0.0};
    }
  }
  return {true, 2.0 * body.a0()};
}

namespace {

void check_amplitude(double amplitude, double a0, int n, const char* family) {
  const double factor = static_cast<double>(n) * n - 1.0;
  if (!(a0 > 0.0)) {
    throw Error(ErrorCode::kNonpositiveMean,
                fmt::format("{}: mean term a0 = {} must be positive", family,
                            a0));
  }
  if (!(std::abs(amplitude) * factor < a0)) {
    throw Error(ErrorCode::kAmplitudeTooLarge,
                fmt::format("{}: amplitude {} violates |amp| < a0/{} = {}",
                            family, amplitude, factor, a0 / factor));
  }
}

TrigSupport random_body(const spec::Random& r) {
  if (r.degree < 1) {
    throw Error(ErrorCode::kBadSpec,
                fmt::format("random body degree must be >= 1, got {}",
                            r.degree));
  }
  CounterRng rng(r.seed);
  constexpr double kDecayScale = 0.5;
  std::vector<Harmonic> harmonics;
  for (int n = 1; n <= r.degree; ++n) {
    const double bound = kDecayScale / (static_cast<double>(n) * n * n);
    const double a = bound * rng.uniform(-1.0, 1.0);
    const double b = bound * rng.uniform(-1.0, 1.0);
    if (r.constant_width && n % 2 == 0) continue;
    harmonics.push_back({n, a, b});
  }
  TrigSupport body(1.0, harmonics);
  for (int halvings = 0; halvings <= 60; ++halvings) {
    if (min_curvature_radius(body).rho_min >= 1e-9) return body;
    for (Harmonic& h : harmonics) {
      if (h.n >= 2) {
        h.a *= 0.5;
        h.b *= 0.5;
      }
    }
    body = TrigSupport(1.0, harmonics);
  }
  throw Error(ErrorCode::kAmplitudeTooLarge,
              fmt::format("random body (seed {}) not convex after 60 halvings",
                          r.seed));
}

}  // namespace

spec::Random sweep_spec(std::uint64_t seed, std::uint64_t index) {
  spec::Random r;
  r.seed = CounterRng::derive(seed, index);
  r.degree = 2 + static_cast<int>(index % 7);
  r.constant_width = index % 2 == 1;
  if (r.constant_width) r.degree = std::max(r.degree, 3);
  return r;
}

TrigSupport construct(const BodySpec& body_spec) {
  struct Visitor {
    TrigSupport operator()(const spec::Circle& c) const {
      if (!(c.radius >= 0.0)) {
        throw Error(ErrorCode::kBadSpec,
                    fmt::format("circle radius must be >= 0, got {}", c.radius));
      }
      return TrigSupport(c.radius);
    }
    TrigSupport operator()(const spec::AstroidParallel& s) const {
      check_amplitude(s.amplitude, s.a0, 2, "astroid_parallel");
      return TrigSupport(s.a0, {{2, 0.0, s.amplitude}});
    }
    TrigSupport operator()(const spec::DeltoidParallel& s) const {
      check_amplitude(s.amplitude, s.a0, 3, "deltoid_parallel");
      return TrigSupport(s.a0, {{3, s.amplitude, 0.0}});
    }
    TrigSupport operator()(const spec::HypocycloidParallel& s) const {
      if (s.k < 3) {
        throw Error(ErrorCode::kBadSpec,
                    fmt::format("hypocycloid_parallel needs k >= 3, got {}",
                                s.k));
      }
      check_amplitude(s.amplitude, s.a0, s.k, "hypocycloid_parallel");
      return TrigSupport(s.a0, {{s.k, s.amplitude, 0.0}});
    }
    TrigSupport operator()(const spec::Random& r) const {
      return random_body(r);
    }
    TrigSupport operator()(const spec::Explicit& e) const { return e.support; }
  };
  return std::visit(Visitor{}, body_spec);
}

void HypocycloidSpec::validate() const {
  if (n < 1 || m <= 2 * n) {
    throw Error(ErrorCode::kBadSpec,
                fmt::format("hypocycloid needs m > 2n >= 2, got m={} n={}", m,
                            n));
  }
  if (std::gcd(m, n) != 1) {
    throw Error(ErrorCode::kBadSpec,
                fmt::format("hypocycloid needs coprime m, n, got m={} n={}", m,
                            n));
  }
  if (!(r > 0.0)) {
    throw Error(ErrorCode::kBadSpec,
                fmt::format("rolling radius must be positive, got {}", r));
  }
}

}  // namespace hurwitz
