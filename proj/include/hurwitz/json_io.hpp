#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "hurwitz/functionals.hpp"
#include "hurwitz/render.hpp"
#include "hurwitz/spectral_body.hpp"
#include "hurwitz/verdicts.hpp"
#include "hurwitz/visual_angle.hpp"

namespace hurwitz {

using Json = nlohmann::ordered_json;

/// {"a0": x, "harmonics": [{"n": k, "a": x, "b": x}, ...]} with unique,
/// ascending frequencies. Throws ParseError or DuplicateHarmonic.
TrigSupport body_from_json(const Json& j);
TrigSupport parse_body(std::string_view text);
TrigSupport load_body(const std::string& path);

Json to_json(const TrigSupport& body);
Json to_json(const FunctionalSet& fs);
Json to_json(const IntegralResult& result);
Json to_json(const Verdict& verdict);
Json to_json(const EqualityClass& cls);
Json to_json(const SuiteReport& report);
/// Array of [x, y] pairs.
Json to_json(const Polyline& poly);

/// Serializes with every floating-point number written to 17 significant
/// digits (non-finite values become null). Key order is preserved.
std::string dump(const Json& j, int indent = 2);

}  // namespace hurwitz
