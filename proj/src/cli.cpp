#include "hurwitz/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hurwitz/error.hpp"
#include "hurwitz/functionals.hpp"
#include "hurwitz/json_io.hpp"
#include "hurwitz/parallel.hpp"
#include "hurwitz/render.hpp"
#include "hurwitz/verdicts.hpp"
#include "hurwitz/visual_angle.hpp"

namespace hurwitz {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void bad_spec(std::string_view text, std::string_view why) {
  throw Error(ErrorCode::kBadSpec, fmt::format("--spec {}: {}", text, why));
}

double parse_double(std::string_view s, std::string_view spec) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v)) {
    bad_spec(spec, fmt::format("'{}' is not a number", s));
  }
  return v;
}

template <typename Int>
Int parse_int(std::string_view s, std::string_view spec) {
  Int v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size()) {
    bad_spec(spec, fmt::format("'{}' is not an integer", s));
  }
  return v;
}

}  // namespace

NamedSpec parse_named_spec(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) bad_spec(text, "expected NAME:params");
  const std::string_view name = text.substr(0, colon);
  const std::vector<std::string_view> p = split(text.substr(colon + 1), ',');
  auto expect = [&](std::size_t lo, std::size_t hi) {
    if (p.size() < lo || p.size() > hi) {
      bad_spec(text, fmt::format("{} takes {} parameter(s)", name,
                                 lo == hi ? fmt::format("{}", lo)
                                          : fmt::format("{}-{}", lo, hi)));
    }
  };
  BodySpec body;
  if (name == "circle") {
    expect(1, 1);
    body = spec::Circle{parse_double(p[0], text)};
  } else if (name == "astroid") {
    expect(2, 2);
    body = spec::AstroidParallel{parse_double(p[0], text),
                                 parse_double(p[1], text)};
  } else if (name == "deltoid") {
    expect(2, 2);
    body = spec::DeltoidParallel{parse_double(p[0], text),
                                 parse_double(p[1], text)};
  } else if (name == "hypoparallel") {
    expect(3, 3);
    body = spec::HypocycloidParallel{parse_int<int>(p[0], text),
                                     parse_double(p[1], text),
                                     parse_double(p[2], text)};
  } else if (name == "random") {
    expect(2, 3);
    spec::Random r;
    r.seed = parse_int<std::uint64_t>(p[0], text);
    r.degree = parse_int<int>(p[1], text);
    if (p.size() == 3) {
      if (p[2] != "cw") bad_spec(text, "third random parameter must be 'cw'");
      r.constant_width = true;
    }
    body = r;
  } else if (name == "hypocycloid") {
    expect(2, 2);
    HypocycloidSpec h;
    const std::vector<std::string_view> ratio = split(p[0], '/');
    if (ratio.size() > 2) bad_spec(text, "ratio must be m or m/n");
    h.m = parse_int<int>(ratio[0], text);
    h.n = ratio.size() == 2 ? parse_int<int>(ratio[1], text) : 1;
    h.r = parse_double(p[1], text);
    h.validate();
    return h;
  } else {
    bad_spec(text, fmt::format("unknown family '{}'", name));
  }
  // Build once so amplitude bounds fail before any computation.
  construct(body);
  return body;
}

namespace {

struct Invocation {
  std::string body_file;
  std::string spec;
  int nodes = 0;
  int exterior_nodes = 0;
  double collar = 0.0;
  std::string path = "spectral";
  std::string out_file;
  std::uint64_t seed = 1;
  int count = 100;
  double tol = 1e-9;
  std::string kind;
  int samples = 1024;
  bool json = false;
};

PathSelection path_selection(const std::string& path) {
  if (path == "geometric") return PathSelection::kGeometric;
  if (path == "both") return PathSelection::kBoth;
  return PathSelection::kSpectral;
}

ExteriorConfig exterior_config(const Invocation& inv) {
  ExteriorConfig config;
  if (inv.exterior_nodes > 0) {
    config.nodes_phi = inv.exterior_nodes;
    config.nodes_delta = inv.exterior_nodes;
    config.radial_nodes = std::max(config.radial_nodes, inv.exterior_nodes);
  }
  if (inv.collar > 0.0) config.delta_min = inv.collar;
  config.validate();
  return config;
}

SuiteConfig suite_config(const Invocation& inv) {
  if (!(inv.tol > 0.0)) {
    throw Error(ErrorCode::kBadConfig,
                fmt::format("--tol must be positive, got {}", inv.tol));
  }
  SuiteConfig config;
  config.paths = path_selection(inv.path);
  config.tol = inv.tol;
  config.exterior = exterior_config(inv);
  config.quadrature_nodes = inv.nodes;
  return config;
}

NamedSpec resolve_source(const Invocation& inv) {
  const bool has_file = !inv.body_file.empty();
  const bool has_spec = !inv.spec.empty();
  if (has_file == has_spec) {
    throw Error(ErrorCode::kBadConfig,
                "exactly one of --body FILE or --spec NAME:params is required");
  }
  if (has_file) return BodySpec{spec::Explicit{load_body(inv.body_file)}};
  return parse_named_spec(inv.spec);
}

ConvexBody resolve_body(const Invocation& inv) {
  const NamedSpec named = resolve_source(inv);
  if (std::holds_alternative<HypocycloidSpec>(named)) {
    throw Error(ErrorCode::kBadSpec,
                "hypocycloid specs can only be rendered, not analysed");
  }
  const TrigSupport support = construct(std::get<BodySpec>(named));
  if (inv.nodes > 0) QuadratureGrid(inv.nodes, support);  // validates --nodes
  return validate_convex(support);
}

void emit(const Invocation& inv, const std::string& text, std::ostream& out) {
  if (inv.out_file.empty()) {
    out << text;
    return;
  }
  std::ofstream file(inv.out_file, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::kBadConfig,
                fmt::format("cannot write {}", inv.out_file));
  }
  file << text;
}

int cmd_report(const Invocation& inv, std::ostream& out) {
  const ConvexBody body = resolve_body(inv);
  const SuiteConfig config = suite_config(inv);
  Json j;
  j["body"] = to_json(body.support());
  j["constant_width"] = is_constant_width(body.support()).constant_width;
  j["min_curvature_radius"] = body.min_curvature();
  Json sets = Json::array();
  if (config.paths != PathSelection::kGeometric) {
    sets.push_back(to_json(functionals_spectral(body)));
  }
  if (config.paths != PathSelection::kSpectral) {
    const FunctionalSet fs =
        inv.nodes > 0 ? functionals_quadrature(
                            body, QuadratureGrid(inv.nodes, body.support()))
                      : functionals_quadrature(body);
    sets.push_back(to_json(fs));
    const FunctionalSet spectral = functionals_spectral(body);
    Json integrals = Json::object();
    for (const Kernel& k :
         {Kernel::crofton(), Kernel::sin_cubed(), Kernel::hurwitz_visual(),
          Kernel::constant_width_visual()}) {
      Json entry = to_json(integrate_exterior(body, k, config.exterior));
      entry["closed_form"] = *k.spectral_integral(spectral);
      integrals[k.name()] = std::move(entry);
    }
    j["exterior_integrals"] = std::move(integrals);
  }
  j["functionals"] = std::move(sets);
  j["equality_class"] = to_json(classify_equality(body, config.tol));
  emit(inv, dump(j) + "\n", out);
  return kExitOk;
}

std::string verdict_table(const SuiteReport& report) {
  std::string s = fmt::format("equality class: {}\nconstant width: {}\n",
                              describe(report.equality_class),
                              report.constant_width ? "yes" : "no");
  s += fmt::format("{:<18} {:<9} {:>24} {:>24} {:>24} {:<8} {}\n", "theorem",
                   "path", "lhs", "rhs", "residual", "equality", "status");
  for (const Verdict& v : report.verdicts) {
    if (!v.applicable) {
      s += fmt::format("{:<18} {:<9} {:>24} {:>24} {:>24} {:<8} {}\n",
                       to_string(v.id), to_string(v.path), "-", "-", "-", "-",
                       "n/a (" + v.notes + ")");
      continue;
    }
    std::string status = v.passed ? "ok" : "VIOLATED";
    if (v.discrepancy) status += " [discrepancy]";
    if (v.external) status += " [external]";
    s += fmt::format("{:<18} {:<9} {:>24.17g} {:>24.17g} {:>24.17g} {:<8} {}\n",
                     to_string(v.id), to_string(v.path), v.lhs, v.rhs,
                     v.residual, v.equality ? "yes" : "no", status);
  }
  s += fmt::format("overall: {}\n", report.passed ? "PASS" : "FAIL");
  return s;
}

int cmd_verify(const Invocation& inv, std::ostream& out) {
  const ConvexBody body = resolve_body(inv);
  const SuiteReport report = run_suite(body, suite_config(inv));
  Json j = to_json(report);
  j["body"] = to_json(body.support());
  if (inv.json) {
    out << dump(j) << "\n";
  } else {
    out << verdict_table(report);
  }
  if (!inv.out_file.empty()) emit(inv, dump(j) + "\n", out);
  return report.passed ? kExitOk : kExitViolation;
}

Style style_for(std::string_view kind) {
  static const std::map<std::string_view, std::string> colours{
      {"boundary", "#000000"}, {"evolute", "#b2182b"}, {"pedal", "#2166ac"},
      {"parallel", "#1b7837"}, {"wigner", "#762a83"},  {"curve", "#000000"}};
  Style style;
  if (const auto it = colours.find(kind); it != colours.end()) {
    style.stroke = it->second;
  }
  return style;
}

int cmd_render(const Invocation& inv, std::ostream& out) {
  const NamedSpec named = resolve_source(inv);
  if (inv.samples < 64) {
    throw Error(ErrorCode::kBadConfig,
                fmt::format("--samples must be >= 64, got {}", inv.samples));
  }
  Scene scene;
  const std::string_view kinds = inv.kind;
  auto kind_list = [&](std::string_view fallback) {
    return split(kinds.empty() ? fallback : kinds, ',');
  };
  if (const auto* hypo = std::get_if<HypocycloidSpec>(&named)) {
    for (std::string_view kind : kind_list("curve")) {
      if (kind != "curve") {
        throw Error(ErrorCode::kBadConfig,
                    fmt::format("hypocycloids only support --kind curve, got "
                                "'{}'",
                                kind));
      }
      scene.layers.push_back(
          {"curve", sample_hypocycloid(*hypo, inv.samples), style_for(kind)});
    }
  } else {
    const ConvexBody body =
        validate_convex(construct(std::get<BodySpec>(named)));
    for (std::string_view kind : kind_list("boundary")) {
      CurveKind curve;
      double r = 0.0;
      std::string_view base = kind.substr(0, kind.find('='));
      if (base == "boundary") {
        curve = CurveKind::kBoundary;
      } else if (base == "evolute") {
        curve = CurveKind::kEvolute;
      } else if (base == "pedal") {
        curve = CurveKind::kPedal;
      } else if (base == "wigner") {
        curve = CurveKind::kWigner;
      } else if (base == "parallel") {
        curve = CurveKind::kParallel;
        // Default distance -L/2pi, the parallel the figures show.
        r = -body.a0();
        if (base.size() < kind.size()) {
          const std::string_view value = kind.substr(base.size() + 1);
          double parsed = 0.0;
          const auto [end, ec] = std::from_chars(
              value.data(), value.data() + value.size(), parsed);
          if (ec != std::errc() || end != value.data() + value.size()) {
            throw Error(ErrorCode::kBadConfig,
                        fmt::format("bad parallel distance '{}'", value));
          }
          r = parsed;
        }
      } else {
        throw Error(ErrorCode::kBadConfig,
                    fmt::format("unknown --kind '{}' (expected boundary, "
                                "evolute, pedal, parallel[=r], wigner)",
                                kind));
      }
      scene.layers.push_back({std::string(kind),
                              sample_curve(body, curve, inv.samples, r),
                              style_for(base)});
    }
  }
  emit(inv, write_svg(scene), out);
  return kExitOk;
}

struct SweepItem {
  std::uint64_t seed = 0;
  TrigSupport support;
  SuiteReport report;
};

struct TheoremStats {
  int evaluated = 0;
  int equality_hits = 0;
  double min_residual = INFINITY;
  double min_relative = INFINITY;
};

int cmd_sweep(const Invocation& inv, std::ostream& out) {
  if (inv.count < 1) {
    throw Error(ErrorCode::kBadConfig,
                fmt::format("--count must be >= 1, got {}", inv.count));
  }
  SuiteConfig config = suite_config(inv);
  const int workers = default_workers();
  if (workers > 1) config.exterior.workers = 1;

  std::vector<SweepItem> items(static_cast<std::size_t>(inv.count));
  parallel_for(items.size(), workers, [&](std::size_t i) {
    const spec::Random r = sweep_spec(inv.seed, i);
    SweepItem& item = items[i];
    item.seed = r.seed;
    item.support = construct(r);
    item.report = run_suite(validate_convex(item.support), config);
  });

  std::map<std::pair<int, int>, TheoremStats> stats;  // (path, theorem)
  Json violations = Json::array();
  int agreement_checked = 0;
  int agreement_failures = 0;
  double worst_ratio = 0.0;
  int constant_width_bodies = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const SweepItem& item = items[i];
    if (item.report.constant_width) ++constant_width_bodies;
    std::vector<std::string> failed;
    std::map<int, const Verdict*> spectral;
    for (const Verdict& v : item.report.verdicts) {
      if (!v.applicable) continue;
      TheoremStats& s =
          stats[{static_cast<int>(v.path), static_cast<int>(v.id)}];
      ++s.evaluated;
      if (v.equality) ++s.equality_hits;
      s.min_residual = std::min(s.min_residual, v.residual);
      s.min_relative = std::min(s.min_relative, v.residual / v.scale);
      if (!v.passed) {
        failed.push_back(fmt::format("{}/{}", to_string(v.id),
                                     to_string(v.path)));
      }
      if (v.path == VerdictPath::kSpectral) {
        spectral[static_cast<int>(v.id)] = &v;
      } else if (const auto it = spectral.find(static_cast<int>(v.id));
                 it != spectral.end()) {
        ++agreement_checked;
        const double allowed = v.tolerance;
        const double diff = std::abs(v.residual - it->second->residual);
        worst_ratio = std::max(worst_ratio, diff / allowed);
        if (diff > allowed) {
          ++agreement_failures;
          failed.push_back(fmt::format("{}/agreement", to_string(v.id)));
        }
      }
    }
    if (!failed.empty()) {
      violations.push_back({{"index", i},
                            {"seed", item.seed},
                            {"failed", failed},
                            {"body", to_json(item.support)}});
    }
  }

  Json theorems = Json::array();
  for (const auto& [key, s] : stats) {
    theorems.push_back(
        {{"id", std::string(to_string(static_cast<TheoremId>(key.second)))},
         {"path", std::string(to_string(static_cast<VerdictPath>(key.first)))},
         {"evaluated", s.evaluated},
         {"equality_hits", s.equality_hits},
         {"min_residual", s.min_residual},
         {"min_relative_residual", s.min_relative}});
  }
  Json j = {{"count", inv.count},
            {"seed", inv.seed},
            {"path", inv.path},
            {"constant_width_bodies", constant_width_bodies},
            {"theorems", std::move(theorems)}};
  if (config.paths == PathSelection::kBoth) {
    j["agreement"] = {{"checked", agreement_checked},
                      {"failures", agreement_failures},
                      {"max_discrepancy_over_tolerance", worst_ratio}};
  }
  const bool clean = violations.empty();
  j["violations"] = std::move(violations);
  j["passed"] = clean;
  emit(inv, dump(j) + "\n", out);
  return clean ? kExitOk : kExitViolation;
}

void add_body_options(CLI::App* app, Invocation& inv) {
  auto* body = app->add_option("--body", inv.body_file, "Body JSON file");
  auto* spec =
      app->add_option("--spec", inv.spec,
                      "Named body: circle:R, astroid:a0,amp, deltoid:a0,amp, "
                      "hypoparallel:k,a0,amp, random:seed,degree[,cw]");
  body->excludes(spec);
}

void add_numeric_options(CLI::App* app, Invocation& inv) {
  app->add_option("--nodes", inv.nodes,
                  "Quadrature nodes (power of two >= 4N+8; default automatic)");
  app->add_option("--exterior-nodes", inv.exterior_nodes,
                  "Exterior integral nodes per direction (>= 16)");
  app->add_option("--collar", inv.collar,
                  "Excluded gap next to the boundary, 0 < collar < pi/64");
  app->add_option("--path", inv.path, "Computation path")
      ->check(CLI::IsMember({"spectral", "geometric", "both"}));
  app->add_option("--tol", inv.tol, "Relative equality tolerance");
  app->add_option("--out", inv.out_file, "Output file (default stdout)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Reverse isoperimetric inequality laboratory", "hurwitz_lab"};
  app.require_subcommand(1);
  Invocation inv;

  auto* report = app.add_subcommand("report", "Functionals of one body");
  add_body_options(report, inv);
  add_numeric_options(report, inv);

  auto* verify = app.add_subcommand("verify", "Run the theorem suite");
  add_body_options(verify, inv);
  add_numeric_options(verify, inv);
  verify->add_flag("--json", inv.json, "Print the report as JSON");

  auto* render = app.add_subcommand("render", "Write an SVG figure");
  add_body_options(render, inv);
  render->add_option("--kind", inv.kind,
                     "Comma list: boundary, evolute, pedal, parallel[=r], "
                     "wigner; curve for hypocycloid:m/n,r");
  render->add_option("--samples", inv.samples, "Points per curve (>= 64)");
  render->add_option("--out", inv.out_file, "Output file (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Random body sweep");
  add_numeric_options(sweep, inv);
  sweep->add_option("--seed", inv.seed, "Sweep seed");
  sweep->add_option("--count", inv.count, "Number of bodies (>= 1)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  try {
    if (report->parsed()) return cmd_report(inv, out);
    if (verify->parsed()) return cmd_verify(inv, out);
    if (render->parsed()) return cmd_render(inv, out);
    return cmd_sweep(inv, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace hurwitz
