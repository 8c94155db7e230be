#include "hurwitz/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hurwitz/error.hpp"
#include "hurwitz/json_io.hpp"

namespace hurwitz {
namespace {

const std::string kDataDir = HURWITZ_TEST_DATA_DIR;

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

const Json* find_verdict(const Json& report, const std::string& id,
                         const std::string& path) {
  for (const Json& v : report["verdicts"]) {
    if (v["id"] == id && v["path"] == path) return &v;
  }
  return nullptr;
}

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

// ---------------------------------------------------------------------------
// Named specs

TEST(NamedSpec, ParsesEveryFamily) {
  EXPECT_TRUE(std::holds_alternative<BodySpec>(parse_named_spec("circle:2")));
  EXPECT_TRUE(std::holds_alternative<BodySpec>(parse_named_spec("astroid:1,0.2")));
  EXPECT_TRUE(std::holds_alternative<BodySpec>(parse_named_spec("deltoid:1,0.1")));
  EXPECT_TRUE(
      std::holds_alternative<BodySpec>(parse_named_spec("hypoparallel:5,1,0.01")));
  const NamedSpec random = parse_named_spec("random:7,5,cw");
  const auto& r = std::get<spec::Random>(std::get<BodySpec>(random));
  EXPECT_EQ(r.seed, 7u);
  EXPECT_EQ(r.degree, 5);
  EXPECT_TRUE(r.constant_width);
  const auto h = std::get<HypocycloidSpec>(parse_named_spec("hypocycloid:5/2,1"));
  EXPECT_EQ(h.m, 5);
  EXPECT_EQ(h.n, 2);
  EXPECT_EQ(h.r, 1.0);
  EXPECT_EQ(std::get<HypocycloidSpec>(parse_named_spec("hypocycloid:4,0.5")).n, 1);
}

TEST(NamedSpec, RejectsBadInput) {
  for (const char* text : {"circle", "circle:", "circle:x", "square:1",
                           "astroid:1", "random:1,4,xx", "hypocycloid:4/2,1",
                           "hypocycloid:5/2/1,1", "deltoid:1,0.1,3"}) {
    EXPECT_EQ(error_code_of([&] { parse_named_spec(text); }), ErrorCode::kBadSpec)
        << text;
  }
}

TEST(NamedSpec, ChecksAmplitudeBoundsEagerly) {
  EXPECT_EQ(error_code_of([] { parse_named_spec("astroid:1,0.4"); }),
            ErrorCode::kAmplitudeTooLarge);
  EXPECT_EQ(error_code_of([] { parse_named_spec("deltoid:1,0.2"); }),
            ErrorCode::kAmplitudeTooLarge);
}

// ---------------------------------------------------------------------------
// report

TEST(CliReport, AstroidParallelValues) {
  const CliResult r = run({"report", "--spec", "astroid:1,0.2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  const Json& fs = j["functionals"][0];
  EXPECT_NEAR(fs["L"].get<double>(), 6.2831853, 1e-7);
  // Delta = 0.24 pi^2 = 2.36870506; the quoted 2.3687052 is rounded.
  EXPECT_NEAR(fs["Delta"].get<double>(), 0.24 * kPi * kPi, 1e-14);
  EXPECT_NEAR(fs["Delta"].get<double>(), 2.3687052, 5e-7);
  EXPECT_EQ(j["equality_class"]["kind"], "astroid_parallel");
}

TEST(CliReport, CircleValues) {
  const CliResult r = run({"report", "--spec", "circle:1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json fs = Json::parse(r.out)["functionals"][0];
  EXPECT_NEAR(fs["F"].get<double>(), 3.1415927, 1e-7);
  EXPECT_EQ(fs["Fe"].get<double>(), 0.0);
}

TEST(CliReport, NonConvexBodyFileIsRejected) {
  const CliResult r = run({"report", "--body", kDataDir + "/bad.json"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("NotStrictlyConvex"), std::string::npos) << r.err;
}

TEST(CliReport, BothPathsIncludeExteriorIntegrals) {
  const CliResult r = run({"report", "--body", kDataDir + "/ast.json", "--path", "both"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j["functionals"].size(), 2u);
  EXPECT_EQ(j["functionals"][1]["path"], "quadrature");
  EXPECT_NEAR(j["functionals"][0]["Fe"].get<double>(),
              j["functionals"][1]["Fe"].get<double>(), 1e-12);
  ASSERT_TRUE(j.contains("exterior_integrals"));
  for (const auto& [name, entry] : j["exterior_integrals"].items()) {
    EXPECT_LE(std::abs(entry["value"].get<double>() -
                       entry["closed_form"].get<double>()),
              entry["error_bar"].get<double>())
        << name;
  }
}

// ---------------------------------------------------------------------------
// verify

TEST(CliVerify, DeltoidParallelPassesWithConstantWidthEquality) {
  const CliResult r = run({"verify", "--spec", "deltoid:1,0.1", "--json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  const Json* bvb = find_verdict(j, "bvb", "spectral");
  ASSERT_NE(bvb, nullptr);
  EXPECT_TRUE((*bvb)["equality"].get<bool>());
}

TEST(CliVerify, Cw35FileOnBothPaths) {
  const CliResult r = run({"verify", "--body", kDataDir + "/cw35.json", "--path", "both",
                     "--json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  for (const char* path : {"spectral", "geometric"}) {
    const Json* v = find_verdict(j, "teo64", path);
    ASSERT_NE(v, nullptr) << path;
    EXPECT_TRUE((*v)["equality"].get<bool>()) << path;
  }
}

TEST(CliVerify, TableOutput) {
  const CliResult r = run({"verify", "--spec", "deltoid:1,0.1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("equality class: steiner_parallel"), std::string::npos);
  EXPECT_NE(r.out.find("bvb"), std::string::npos);
  EXPECT_NE(r.out.find("[discrepancy]"), std::string::npos);
  EXPECT_NE(r.out.find("overall: PASS"), std::string::npos);
}

TEST(CliVerify, AmplitudeBeyondConvexityBound) {
  const CliResult r = run({"verify", "--spec", "astroid:1,0.4"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("AmplitudeTooLarge"), std::string::npos) << r.err;
}

TEST(CliVerify, WritesJsonToOutFile) {
  const auto path = std::filesystem::temp_directory_path() / "hurwitz_verify.json";
  std::filesystem::remove(path);
  const CliResult r = run({"verify", "--spec", "circle:1", "--out", path.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  const Json j = Json::parse(text.str());
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["equality_class"]["kind"], "disk");
  std::filesystem::remove(path);
}

TEST(CliVerify, RejectsBadNumericFlags) {
  EXPECT_EQ(run({"verify", "--spec", "circle:1", "--nodes", "100"}).code,
            kExitInputError);
  EXPECT_EQ(run({"verify", "--spec", "circle:1", "--path", "both", "--collar", "1"})
                .code,
            kExitInputError);
  EXPECT_EQ(run({"verify", "--spec", "circle:1", "--exterior-nodes", "8"}).code,
            kExitInputError);
  EXPECT_EQ(run({"verify", "--spec", "circle:1", "--path", "sideways"}).code,
            kExitInputError);
  EXPECT_EQ(run({"verify", "--spec", "circle:1", "--tol", "-1"}).code,
            kExitInputError);
}

// ---------------------------------------------------------------------------
// Body sources and argument errors

TEST(CliArguments, RequiresExactlyOneBodySource) {
  EXPECT_EQ(run({"report"}).code, kExitInputError);
  EXPECT_EQ(run({"report", "--spec", "circle:1", "--body", kDataDir + "/ast.json"})
                .code,
            kExitInputError);
}

TEST(CliArguments, RejectsUnknownCommandsAndFlags) {
  EXPECT_EQ(run({}).code, kExitInputError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInputError);
  EXPECT_EQ(run({"report", "--spec", "circle:1", "--bogus"}).code, kExitInputError);
}

TEST(CliArguments, MissingBodyFile) {
  const CliResult r = run({"report", "--body", kDataDir + "/does_not_exist.json"});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("ParseError"), std::string::npos) << r.err;
}

TEST(CliArguments, HypocycloidIsRenderOnly) {
  EXPECT_EQ(run({"report", "--spec", "hypocycloid:3,1"}).code, kExitInputError);
}

TEST(CliArguments, HelpExitsCleanly) {
  const CliResult r = run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("sweep"), std::string::npos);
}

// ---------------------------------------------------------------------------
// render

TEST(CliRender, FiveHalvesHypocycloid) {
  const CliResult r = run({"render", "--spec", "hypocycloid:5/2,1", "--kind", "curve"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("<?xml", 0), 0u);
  EXPECT_NE(r.out.find("<polygon"), std::string::npos);
}

TEST(CliRender, AstroidFigureLayers) {
  const CliResult r = run({"render", "--spec", "astroid:1,0.2", "--kind",
                     "boundary,evolute,pedal,parallel"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* id : {"boundary", "evolute", "pedal", "parallel"}) {
    EXPECT_NE(r.out.find(std::string("id=\"") + id + "\""), std::string::npos) << id;
  }
}

TEST(CliRender, CircleEvoluteIsAPointMarker) {
  const CliResult r = run({"render", "--spec", "circle:1", "--kind", "evolute"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("<circle"), std::string::npos);
}

TEST(CliRender, ParallelDistanceOverride) {
  const CliResult a = run({"render", "--spec", "deltoid:1,0.1", "--kind", "parallel=-0.5"});
  const CliResult b = run({"render", "--spec", "deltoid:1,0.1", "--kind", "parallel"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  ASSERT_EQ(b.code, kExitOk) << b.err;
  EXPECT_NE(a.out, b.out);
}

TEST(CliRender, RejectsBadKinds) {
  EXPECT_EQ(run({"render", "--spec", "circle:1", "--kind", "spiral"}).code,
            kExitInputError);
  EXPECT_EQ(run({"render", "--spec", "hypocycloid:3,1", "--kind", "evolute"}).code,
            kExitInputError);
  EXPECT_EQ(run({"render", "--spec", "circle:1", "--kind", "parallel=x"}).code,
            kExitInputError);
  EXPECT_EQ(run({"render", "--spec", "circle:1", "--samples", "10"}).code,
            kExitInputError);
}

// ---------------------------------------------------------------------------
// sweep

TEST(CliSweep, TwoHundredBodiesPass) {
  const CliResult r = run({"sweep", "--count", "200", "--seed", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.out;
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["constant_width_bodies"], 100);
  bool saw_hurwitz = false;
  for (const Json& t : j["theorems"]) {
    if (t["id"] == "hurwitz") {
      saw_hurwitz = true;
      EXPECT_EQ(t["evaluated"], 200);
      EXPECT_GE(t["min_residual"].get<double>(), 0.0);
    }
  }
  EXPECT_TRUE(saw_hurwitz);
}

TEST(CliSweep, PathsAgreeWithinErrorBars) {
  const CliResult r = run({"sweep", "--count", "50", "--seed", "2", "--path", "both"});
  ASSERT_EQ(r.code, kExitOk) << r.out;
  const Json j = Json::parse(r.out);
  EXPECT_GT(j["agreement"]["checked"].get<int>(), 0);
  EXPECT_EQ(j["agreement"]["failures"], 0);
  EXPECT_LE(j["agreement"]["max_discrepancy_over_tolerance"].get<double>(), 1.0);
}

TEST(CliSweep, ZeroCountIsInputError) {
  EXPECT_EQ(run({"sweep", "--count", "0"}).code, kExitInputError);
}

TEST(CliSweep, OutputIsDeterministic) {
  const std::vector<std::string> args{"sweep", "--count", "40", "--seed", "9"};
  const CliResult a = run(args);
  const CliResult b = run(args);
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliSweep, WorkerOverrideDoesNotChangeOutput) {
  const std::vector<std::string> args{"sweep", "--count", "12", "--seed", "4",
                                      "--path", "both"};
  ::setenv("HURWITZ_WORKERS", "1", 1);
  const CliResult serial = run(args);
  ::setenv("HURWITZ_WORKERS", "3", 1);
  const CliResult threaded = run(args);
  ::unsetenv("HURWITZ_WORKERS");
  ASSERT_EQ(serial.code, kExitOk);
  EXPECT_EQ(serial.out, threaded.out);
}

TEST(CliDeterminism, ReportAndRenderAreByteIdentical) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"report", "--spec", "random:5,6", "--path", "both"},
        std::vector<std::string>{"render", "--spec", "deltoid:1,0.1", "--kind",
                                 "boundary,wigner"}}) {
    const CliResult a = run(args);
    const CliResult b = run(args);
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

}  // namespace
}  // namespace hurwitz
