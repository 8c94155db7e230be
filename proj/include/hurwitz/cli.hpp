#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hurwitz/spectral_body.hpp"

namespace hurwitz {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInputError = 2;

/// A --spec argument: a body family or, for rendering only, a hypocycloid.
using NamedSpec = std::variant<BodySpec, HypocycloidSpec>;

/// Parses NAME:params, one of
///   circle:R  astroid:a0,amp  deltoid:a0,amp  hypoparallel:k,a0,amp
///   random:seed,degree[,cw]   hypocycloid:m/n,r  (or hypocycloid:k,r)
/// Amplitude bounds are checked here. Throws BadSpec or AmplitudeTooLarge.
NamedSpec parse_named_spec(std::string_view text);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns 0 on success, 1 on an inequality violation and 2 on
/// any input or validation error (diagnostic on `err`).
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace hurwitz
