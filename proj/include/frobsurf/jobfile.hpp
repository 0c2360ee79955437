#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frobsurf/geometry.hpp"

namespace frobsurf {

// Job file grammar, one statement per line, "#" starts a comment:
//   field p=<int> e=<int>
//   modulus <c_n> ... <c_0>            coefficients of the generator's minimal polynomial, leading first
//   surface [<name>] = <poly>          the first surface is the default; unnamed means "f"
//   curve <name> = <poly> [; <poly>]*
//   assert irreducible <name>
//   assert complete <name>
//   assert degree <name> <int>
struct JobFile {
  FieldPtr field;
  std::optional<Elem> generator;  // value of "a" when a modulus line is present
  std::vector<std::pair<std::string, Surface>> surfaces;
  std::vector<CurveSpec> curves;

  /// Empty name: the first surface.  Usage error when absent.
  const Surface& surface(const std::string& name = "") const;
  const CurveSpec& curve(const std::string& name) const;
};

/// SyntaxError messages carry "line L, column C".
JobFile parse_jobfile(std::string_view text);
JobFile load_jobfile(const std::string& path);

/// The root of `modulus` (low to high) in the canonical GF(p^e) used for "a".
/// BadFieldLiteral unless it is irreducible of degree e.
Elem generator_for_modulus(const FieldPtr& F, const std::vector<std::uint32_t>& low_to_high);

}  // namespace frobsurf
