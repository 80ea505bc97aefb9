#pragma once

#include <string>
#include <string_view>

#include "qpal/formula.hpp"

namespace qpal {

// Concrete syntax, loosest to tightest:
//
//   f -> g                 implication, right associative
//   f | g                  disjunction, left associative
//   f & g                  conjunction, left associative
//   ~f  K a f  M a f  [f]g  <f>g  box f  dia f
//   [{a,b}]f  <{a,b}>f  [<{a,b}>]f  <[{a,b}]>f
//   true  false  p  (f)
//
// Duals are kept as written; expand_duals rewrites them.

/// Throws ParseError with the byte offset of the offending token.
Formula parse(std::string_view text);

/// Minimal-parenthesis rendering; parse(render(f)) == f.
std::string render(const Formula& f);

}  // namespace qpal
