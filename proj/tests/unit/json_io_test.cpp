#include "hurwitz/json_io.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "hurwitz/error.hpp"

namespace hurwitz {
namespace {

using testing::cw35;
using testing::mix;

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

TEST(BodyJson, RoundTripsExactly) {
  for (int i = 0; i < 30; ++i) {
    const TrigSupport s = construct(sweep_spec(8, i));
    EXPECT_EQ(parse_body(dump(to_json(s))), s) << i;
    EXPECT_EQ(parse_body(dump(to_json(s), -1)), s) << i;
  }
}

TEST(BodyJson, ParsesMinimalBodies) {
  EXPECT_EQ(parse_body(R"({"a0": 2})"), TrigSupport(2.0));
  EXPECT_EQ(parse_body(R"({"a0": 1, "harmonics": [{"n": 3, "a": 0.1}]})"),
            TrigSupport(1.0, {{3, 0.1, 0.0}}));
}

TEST(BodyJson, RejectsMalformedInput) {
  for (const char* text : {"", "[1, 2]", "{\"harmonics\": []}", "{\"a0\": \"x\"}",
                           "{\"a0\": 1, \"harmonics\": {}}",
                           "{\"a0\": 1, \"harmonics\": [{\"a\": 0.1}]}",
                           "{\"a0\": 1, \"harmonics\": [{\"n\": 2.5}]}",
                           "{\"a0\": 1, \"harmonics\": [{\"n\": 3}, {\"n\": 2}]}",
                           "{\"a0\": 1,"}) {
    EXPECT_EQ(error_code_of([&] { parse_body(text); }), ErrorCode::kParseError)
        << text;
  }
}

TEST(BodyJson, RejectsRepeatedFrequency) {
  EXPECT_EQ(error_code_of([] {
              parse_body(R"({"a0": 1, "harmonics": [{"n": 2}, {"n": 2}]})");
            }),
            ErrorCode::kDuplicateHarmonic);
}

TEST(BodyJson, MissingFileIsParseError) {
  EXPECT_EQ(error_code_of([] { load_body("/nonexistent/body.json"); }),
            ErrorCode::kParseError);
}

TEST(Dump, WritesSeventeenSignificantDigits) {
  const Json j = {{"x", 0.1}, {"third", 1.0 / 3.0}};
  const std::string text = dump(j, -1);
  EXPECT_EQ(text, R"({"x":0.10000000000000001,"third":0.33333333333333331})");
  EXPECT_EQ(Json::parse(text)["third"].get<double>(), 1.0 / 3.0);
}

TEST(Dump, NormalizesSignedZeroAndNonFinite) {
  const Json j = Json::array({-0.0, std::numeric_limits<double>::infinity(),
                              std::nan("")});
  EXPECT_EQ(dump(j, -1), "[0,null,null]");
}

TEST(Dump, IndentsNestedStructures) {
  const Json j = {{"a", Json::array({1, 2})}, {"b", Json::object()}};
  EXPECT_EQ(dump(j), "{\n  \"a\": [\n    1,\n    2\n  ],\n  \"b\": {}\n}");
}

TEST(FunctionalJson, CarriesEveryField) {
  const Json j = to_json(functionals_spectral(validate_convex(mix())));
  for (const char* key : {"path", "L", "F", "Delta", "Fe", "hurwitz_deficit", "A",
                          "AmF", "delta2_sq", "Aw", "Wq", "steiner", "cn_sq"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["path"], "spectral");
  EXPECT_NEAR(j["L"].get<double>(), kTwoPi, 1e-15);
  EXPECT_EQ(j["cn_sq"].size(), 2u);
}

TEST(SuiteJson, ListsVerdictsWithRequiredKeys) {
  const SuiteReport report = run_suite(validate_convex(cw35()));
  const Json j = to_json(report);
  EXPECT_EQ(j["verdicts"].size(), report.verdicts.size());
  EXPECT_EQ(j["equality_class"]["description"],
            "minkowski_sum{steiner_parallel,hypocycloid5_parallel}");
  for (const Json& v : j["verdicts"]) {
    for (const char* key : {"id", "applicable", "lhs", "rhs", "residual",
                            "equality", "path", "error_bar"}) {
      EXPECT_TRUE(v.contains(key)) << key;
    }
  }
}

TEST(SuiteJson, InapplicableVerdictsCarryNotes) {
  const SuiteReport report = run_suite(validate_convex(mix()));
  const Json j = to_json(report);
  bool saw = false;
  for (const Json& v : j["verdicts"]) {
    if (!v["applicable"].get<bool>()) {
      saw = true;
      EXPECT_FALSE(v["notes"].get<std::string>().empty());
      EXPECT_TRUE(v["lhs"].is_null());
      EXPECT_TRUE(v["passed"].get<bool>());
    }
  }
  EXPECT_TRUE(saw);
}

TEST(PolylineJson, ListsPointPairs) {
  const Json j = to_json(Polyline{true, {{0.0, 1.0}, {2.0, 3.0}, {4.0, 5.0}}});
  EXPECT_EQ(dump(j, -1), R"({"closed":true,"vertices":[[0,1],[2,3],[4,5]]})");
}

}  // namespace
}  // namespace hurwitz
