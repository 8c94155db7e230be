#include "hurwitz/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "hurwitz/error.hpp"

namespace hurwitz {

namespace {

double number_field(const Json& j, const char* key, bool required) {
  const auto it = j.find(key);
  if (it == j.end()) {
    if (required) {
      throw Error(ErrorCode::kParseError,
                  fmt::format("missing field \"{}\"", key));
    }
    return 0.0;
  }
  if (!it->is_number()) {
    throw Error(ErrorCode::kParseError,
                fmt::format("field \"{}\" must be a number", key));
  }
  return it->get<double>();
}

}  // namespace

TrigSupport body_from_json(const Json& j) {
  if (!j.is_object()) {
    throw Error(ErrorCode::kParseError, "body must be a JSON object");
  }
  const double a0 = number_field(j, "a0", true);
  std::vector<Harmonic> harmonics;
  if (const auto it = j.find("harmonics"); it != j.end()) {
    if (!it->is_array()) {
      throw Error(ErrorCode::kParseError, "\"harmonics\" must be an array");
    }
    int previous = 0;
    for (const Json& h : *it) {
      if (!h.is_object()) {
        throw Error(ErrorCode::kParseError, "harmonic must be an object");
      }
      const auto n_it = h.find("n");
      if (n_it == h.end() || !n_it->is_number_integer()) {
        throw Error(ErrorCode::kParseError,
                    "harmonic needs an integer frequency \"n\"");
      }
      const int n = n_it->get<int>();
      if (n == previous) {
        throw Error(ErrorCode::kDuplicateHarmonic,
                    fmt::format("frequency {} appears twice", n));
      }
      if (n < previous) {
        throw Error(ErrorCode::kParseError,
                    fmt::format("frequencies must ascend ({} after {})", n,
                                previous));
      }
      previous = n;
      harmonics.push_back(
          {n, number_field(h, "a", false), number_field(h, "b", false)});
    }
  }
  return TrigSupport(a0, std::move(harmonics));
}

TrigSupport parse_body(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  return body_from_json(j);
}

TrigSupport load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kParseError,
                fmt::format("cannot open body file {}", path));
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_body(text.str());
}

Json to_json(const TrigSupport& body) {
  Json harmonics = Json::array();
  for (const Harmonic& h : body.harmonics()) {
    harmonics.push_back({{"n", h.n}, {"a", h.a}, {"b", h.b}});
  }
  return {{"a0", body.a0()}, {"harmonics", std::move(harmonics)}};
}

Json to_json(const FunctionalSet& fs) {
  Json cn = Json::object();
  for (const auto& [n, c2] : fs.cn_sq) cn[std::to_string(n)] = c2;
  return {{"path", std::string(to_string(fs.path))},
          {"L", fs.length},
          {"F", fs.area},
          {"Delta", fs.deficit},
          {"Fe", fs.evolute_area},
          {"hurwitz_deficit", fs.hurwitz_deficit},
          {"A", fs.pedal_area},
          {"AmF", fs.pedal_excess},
          {"delta2_sq", fs.delta2_sq},
          {"Aw", fs.wigner_area},
          {"Wq", fs.wirtinger_q},
          {"steiner", {fs.steiner.x, fs.steiner.y}},
          {"cn_sq", std::move(cn)}};
}

Json to_json(const IntegralResult& result) {
  return {{"value", result.value},
          {"error_bar", result.error_bar},
          {"method", std::string(to_string(result.method))},
          {"nodes", result.nodes}};
}

Json to_json(const Verdict& v) {
  Json j = {{"id", std::string(to_string(v.id))},
            {"applicable", v.applicable},
            {"path", std::string(to_string(v.path))}};
  if (!v.applicable) {
    for (const char* key : {"lhs", "rhs", "residual", "error_bar"}) {
      j[key] = nullptr;
    }
    j["equality"] = false;
    j["passed"] = true;
    j["notes"] = v.notes;
    return j;
  }
  j["lhs"] = v.lhs;
  j["rhs"] = v.rhs;
  j["residual"] = v.residual;
  j["equality"] = v.equality;
  j["passed"] = v.passed;
  j["error_bar"] = v.error_bar;
  j["scale"] = v.scale;
  j["tolerance"] = v.tolerance;
  j["external"] = v.external;
  j["discrepancy"] = v.discrepancy;
  if (v.parts.size() > 1) {
    Json parts = Json::array();
    for (const Comparison& c : v.parts) {
      parts.push_back({{"label", c.label},
                       {"lhs", c.lhs},
                       {"rhs", c.rhs},
                       {"residual", c.residual},
                       {"equality", c.equality},
                       {"passed", c.passed}});
    }
    j["parts"] = std::move(parts);
  }
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

Json to_json(const EqualityClass& cls) {
  Json components = Json::array();
  for (EqualityKind k : cls.components) {
    components.push_back(std::string(to_string(k)));
  }
  return {{"kind", std::string(to_string(cls.kind))},
          {"description", describe(cls)},
          {"components", std::move(components)},
          {"support", cls.support}};
}

Json to_json(const SuiteReport& report) {
  Json verdicts = Json::array();
  for (const Verdict& v : report.verdicts) verdicts.push_back(to_json(v));
  return {{"passed", report.passed},
          {"constant_width", report.constant_width},
          {"equality_class", to_json(report.equality_class)},
          {"verdicts", std::move(verdicts)}};
}

Json to_json(const Polyline& poly) {
  Json points = Json::array();
  for (const Point& p : poly.vertices) points.push_back({p.x, p.y});
  return {{"closed", poly.closed}, {"vertices", std::move(points)}};
}

namespace {

void write(const Json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int level) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += Json(key).dump();
        out += indent < 0 ? ":" : ": ";
        write(value, indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const Json& value : j) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write(value, indent, depth + 1, out);
      }
      newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        out += fmt::format("{:.17g}", v == 0.0 ? 0.0 : v);  // drop -0
      }
      return;
    }
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump(const Json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  return out;
}

}  // namespace hurwitz
