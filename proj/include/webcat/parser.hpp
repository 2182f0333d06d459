#pragma once

#include <string>

#include "webcat/diagram.hpp"

namespace webcat::diag {

struct parse_error : std::runtime_error {
  parse_error(const std::string& msg, int line, int col);
  int line, col;
};

/// Parses the textual diagram language:
///
///   morphism := lincomb
///   lincomb  := scaled ('+' scaled | '-' scaled)*
///   scaled   := (RATIONAL '*')? seq
///   seq      := par (';' par)*            vertical, bottom to top
///   par      := prim ('@' prim)*          horizontal, left to right
///   prim     := id(N) | merge(N,N) | split(N,N) | cross(N,N) | dot(N)
///             | wdot(N,N) | packet(N,[N,...]) | '(' morphism ')'
Morphism parse(const std::string& text);

/// Deterministic canonical rendering; parse(render(m)) == m.
std::string render(const Morphism& m);

}  // namespace webcat::diag
