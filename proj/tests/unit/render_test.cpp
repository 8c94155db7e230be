#include "hurwitz/render.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hurwitz/error.hpp"
#include "hurwitz/functionals.hpp"
#include "hurwitz/rng.hpp"

namespace hurwitz {
namespace {

using testing::ast;
using testing::cw35;
using testing::delt;
using testing::mix;
using testing::unit_circle;

ConvexBody body_of(const TrigSupport& s) { return validate_convex(s); }

template <typename Fn>
ErrorCode error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no hurwitz::Error thrown";
  return ErrorCode::kParseError;
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

// ---------------------------------------------------------------------------
// Shoelace oracle

TEST(ShoelaceArea, UnitSquare) {
  const Polyline square{true, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  EXPECT_DOUBLE_EQ(shoelace_area(square), 1.0);
  Polyline clockwise = square;
  std::reverse(clockwise.vertices.begin(), clockwise.vertices.end());
  EXPECT_DOUBLE_EQ(shoelace_area(clockwise), -1.0);
}

TEST(ShoelaceArea, InscribedPolygonApproachesCircle) {
  const Polyline p = sample_curve(body_of(unit_circle()), CurveKind::kBoundary, 1000);
  EXPECT_NEAR(shoelace_area(p), kPi, 1e-4);
}

TEST(ShoelaceArea, RejectsOpenAndDegeneratePolylines) {
  const Polyline open{false, {{0, 0}, {1, 0}, {1, 1}}};
  const Polyline two{true, {{0, 0}, {1, 0}}};
  EXPECT_EQ(error_code_of([&] { shoelace_area(open); }), ErrorCode::kOpenPolyline);
  EXPECT_EQ(error_code_of([&] { shoelace_area(two); }), ErrorCode::kOpenPolyline);
}

// ---------------------------------------------------------------------------
// sample_curve

TEST(SampleCurve, CircleEvoluteIsItsCentre) {
  const Polyline p = sample_curve(body_of(unit_circle()), CurveKind::kEvolute, 256);
  ASSERT_EQ(p.vertices.size(), 256u);
  for (const Point& v : p.vertices) EXPECT_LE(std::hypot(v.x, v.y), 1e-12);
}

TEST(SampleCurve, AstroidParallelBoundaryArea) {
  const Polyline p = sample_curve(body_of(ast()), CurveKind::kBoundary, 512);
  EXPECT_NEAR(shoelace_area(p), 0.94 * kPi, 1e-4);
}

TEST(SampleCurve, DeltoidParallelPedalArea) {
  const Polyline p = sample_curve(body_of(delt()), CurveKind::kPedal, 512);
  EXPECT_NEAR(shoelace_area(p), 1.005 * kPi, 1e-4);
}

TEST(SampleCurve, RejectsCoarseSampling) {
  EXPECT_EQ(error_code_of([] {
              sample_curve(body_of(unit_circle()), CurveKind::kBoundary, 63);
            }),
            ErrorCode::kBadConfig);
}

TEST(SampleCurve, BoundaryAndPedalAreasMatchFunctionals) {
  CounterRng rng(41);
  for (int i = 0; i < 20; ++i) {
    const TrigSupport s = construct(sweep_spec(41, i));
    const ConvexBody body = body_of(rigid_motion(s, rng.uniform(0.0, kTwoPi),
                                                 {rng.uniform(-2, 2), rng.uniform(-2, 2)}));
    const FunctionalSet fs = functionals_spectral(body);
    const double boundary = shoelace_area(sample_curve(body, CurveKind::kBoundary, 4096));
    const double pedal = shoelace_area(sample_curve(body, CurveKind::kPedal, 4096));
    EXPECT_NEAR(boundary, fs.area, 1e-6 * fs.area) << i;
    EXPECT_NEAR(pedal, fs.pedal_area, 1e-6 * fs.pedal_area) << i;
  }
}

TEST(SampleCurve, BoundaryConvergesQuadratically) {
  const ConvexBody body = body_of(mix());
  const double area = functionals_spectral(body).area;
  const double e1 = std::abs(shoelace_area(sample_curve(body, CurveKind::kBoundary, 256)) - area);
  const double e2 = std::abs(shoelace_area(sample_curve(body, CurveKind::kBoundary, 512)) - area);
  EXPECT_NEAR(e1 / e2, 4.0, 0.2);
}

TEST(SampleCurve, EvoluteAreaOfSingleHarmonicBodies) {
  // The evolute of a_0 + a cos(n phi) is a hypocycloid-like curve traced once
  // over [0, 2 pi); its signed area is F_e.
  for (const TrigSupport& s : {ast(), delt(), TrigSupport(1.0, {{5, 0.0, 0.01}})}) {
    const ConvexBody body = body_of(s);
    const double fe = functionals_spectral(body).evolute_area;
    const double area = shoelace_area(sample_curve(body, CurveKind::kEvolute, 4096));
    EXPECT_NEAR(std::abs(area), std::abs(fe), 1e-5 * std::abs(fe));
  }
}

TEST(SampleCurve, WignerCausticIsInnerParallelForConstantWidth) {
  for (const TrigSupport& s : {delt(), cw35(), construct(sweep_spec(5, 3))}) {
    ASSERT_TRUE(is_constant_width(s).constant_width);
    const ConvexBody body = body_of(s);
    const double r = -s.a0();  // -L / 2 pi
    const Polyline parallel = sample_curve(body, CurveKind::kParallel, 512, r);
    const Polyline wigner = sample_curve(body, CurveKind::kWigner, 512);
    ASSERT_EQ(parallel.vertices.size(), wigner.vertices.size());
    for (std::size_t i = 0; i < wigner.vertices.size(); ++i) {
      EXPECT_NEAR(parallel.vertices[i].x, wigner.vertices[i].x, 1e-10);
      EXPECT_NEAR(parallel.vertices[i].y, wigner.vertices[i].y, 1e-10);
    }
  }
}

TEST(SampleCurve, ParallelAcceptsAnyDistance) {
  const Polyline p = sample_parallel(ast(), -5.0, 128);
  EXPECT_EQ(p.vertices.size(), 128u);
  const Polyline q = sample_parallel(ast(), 0.5, 4096);
  EXPECT_NEAR(shoelace_area(q), kPi * 0.25 + 2 * kPi * 0.5 + 0.94 * kPi, 1e-4);
}

// ---------------------------------------------------------------------------
// Hypocycloids

TEST(SampleHypocycloid, AstroidArea) {
  const Polyline p = sample_hypocycloid({4, 1, 1.0}, 2048);
  EXPECT_NEAR(std::abs(shoelace_area(p)), 6.0 * kPi, 1e-3);
  // Second oracle: the astroid is the envelope of 2 r sin 2 theta.
  const TrigSupport envelope(0.0, {{2, 0.0, 2.0}});
  EXPECT_NEAR(std::abs(generalized_area(envelope)), 6.0 * kPi, 1e-12);
}

TEST(SampleHypocycloid, DeltoidArea) {
  const Polyline p = sample_hypocycloid({3, 1, 1.0}, 2048);
  EXPECT_NEAR(std::abs(shoelace_area(p)), 2.0 * kPi, 1e-3);
}

TEST(SampleHypocycloid, CuspCounts) {
  EXPECT_EQ(count_cusps(sample_hypocycloid({3, 1, 1.0}, 2048)), 3);
  EXPECT_EQ(count_cusps(sample_hypocycloid({4, 1, 1.0}, 2048)), 4);
  EXPECT_EQ(count_cusps(sample_hypocycloid({5, 2, 1.0}, 4096)), 5);
  EXPECT_EQ(count_cusps(sample_hypocycloid({7, 3, 0.5}, 4096)), 7);
  // Cusps that fall between samples are still counted once.
  for (int samples : {777, 1000, 1001, 3001}) {
    EXPECT_EQ(count_cusps(sample_hypocycloid({5, 2, 1.0}, samples)), 5) << samples;
  }
}

TEST(CountCusps, EvolutesOfEqualityBodies) {
  EXPECT_EQ(count_cusps(sample_curve(body_of(ast()), CurveKind::kEvolute, 1000)), 4);
  // An odd harmonic has f(phi + pi) = -f(phi), so over one period the
  // three-cusped evolute is traced twice.
  EXPECT_EQ(count_cusps(sample_curve(body_of(delt()), CurveKind::kEvolute, 1000)), 6);
}

TEST(SampleHypocycloid, FiveHalvesClosesAfterTwoTurns) {
  // Sampling [0, 4 pi) closes the curve: the vertex after the last one is
  // the first.
  const HypocycloidSpec spec{5, 2, 1.0};
  const Polyline p = sample_hypocycloid(spec, 1000);
  EXPECT_TRUE(p.closed);
  const double k = spec.ratio();
  const double t = 4.0 * kPi;
  EXPECT_NEAR(p.vertices[0].x, (k - 1) * std::sin(t) - std::sin((k - 1) * t), 1e-12);
  EXPECT_NEAR(p.vertices[0].y, (k - 1) * std::cos(t) + std::cos((k - 1) * t), 1e-12);
}

TEST(SampleHypocycloid, RejectsBadSpecs) {
  EXPECT_EQ(error_code_of([] { sample_hypocycloid({4, 2, 1.0}, 256); }),
            ErrorCode::kBadSpec);
  EXPECT_EQ(error_code_of([] { sample_hypocycloid({5, 3, 1.0}, 256); }),
            ErrorCode::kBadSpec);
  EXPECT_EQ(error_code_of([] { sample_hypocycloid({3, 1, -1.0}, 256); }),
            ErrorCode::kBadSpec);
}

TEST(CountCusps, SmoothBoundaryHasNone) {
  EXPECT_EQ(count_cusps(sample_curve(body_of(ast()), CurveKind::kBoundary, 1024)), 0);
}

// ---------------------------------------------------------------------------
// SVG output

Scene figure_scene(const TrigSupport& s) {
  const ConvexBody body = body_of(s);
  Scene scene;
  scene.layers.push_back({"boundary", sample_curve(body, CurveKind::kBoundary, 256), {}});
  scene.layers.push_back(
      {"evolute", sample_curve(body, CurveKind::kEvolute, 256), {"#c03030", 1.0, ""}});
  scene.layers.push_back({"parallel",
                          sample_curve(body, CurveKind::kParallel, 256, -s.a0()),
                          {"#3060c0", 1.0, "4 2"}});
  scene.layers.push_back(
      {"pedal", sample_curve(body, CurveKind::kPedal, 256), {"#208040", 1.0, ""}});
  return scene;
}

TEST(WriteSvg, IsDeterministicAndWellFormed) {
  const std::string a = write_svg(figure_scene(ast()));
  const std::string b = write_svg(figure_scene(ast()));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("<?xml", 0), 0u);
  EXPECT_NE(a.find("version=\"1.1\""), std::string::npos);
  EXPECT_EQ(count_occurrences(a, "<g "), 4);
  EXPECT_NE(a.find("id=\"evolute\""), std::string::npos);
  EXPECT_NE(a.find("stroke-dasharray=\"4 2\""), std::string::npos);
  EXPECT_NE(a.find("</svg>"), std::string::npos);
}

TEST(WriteSvg, UsesSixDecimals) {
  Scene scene;
  scene.layers.push_back({"tri", {true, {{0, 0}, {1.0 / 3.0, 0}, {0, 1}}}, {}});
  const std::string svg = write_svg(scene);
  EXPECT_NE(svg.find("0.333333"), std::string::npos);
  EXPECT_EQ(svg.find("0.3333333"), std::string::npos);
}

TEST(WriteSvg, DegenerateLayerBecomesMarker) {
  Scene scene;
  scene.layers.push_back(
      {"evolute", sample_curve(body_of(unit_circle()), CurveKind::kEvolute, 64), {}});
  const std::string svg = write_svg(scene);
  EXPECT_NE(svg.find("<circle"), std::string::npos);
  EXPECT_EQ(svg.find("<polygon"), std::string::npos);
}

TEST(WriteSvg, WignerLayerForConstantWidth) {
  Scene scene = figure_scene(delt());
  scene.layers.push_back(
      {"wigner", sample_curve(body_of(delt()), CurveKind::kWigner, 256), {}});
  const std::string svg = write_svg(scene);
  EXPECT_NE(svg.find("id=\"wigner\""), std::string::npos);
}

TEST(WriteSvg, HypocycloidFigure) {
  Scene scene;
  scene.layers.push_back({"k3", sample_hypocycloid({3, 1, 1.0}, 512), {}});
  scene.layers.push_back({"k4", sample_hypocycloid({4, 1, 1.0}, 512), {}});
  scene.layers.push_back({"k5_2", sample_hypocycloid({5, 2, 1.0}, 1024), {}});
  EXPECT_EQ(count_occurrences(write_svg(scene), "<polygon"), 3);
}

TEST(WriteSvg, RejectsEmptyScene) {
  EXPECT_EQ(error_code_of([] { write_svg(Scene{}); }), ErrorCode::kEmptyScene);
}

}  // namespace
}  // namespace hurwitz
