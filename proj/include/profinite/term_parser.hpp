#pragma once

#include <string_view>
#include <vector>

#include "profinite/term.hpp"
#include "profinite/theory.hpp"

namespace profinite {

  /// Parses
  ///
  ///   expr    := postfix (INFIX postfix)*        left-associative
  ///   postfix := primary ("^w")*
  ///   primary := "(" expr ")" | var | const | opname "(" expr ("," expr)* ")"
  ///
  /// where INFIX is the theory's infix symbol ("·" is accepted for "*")
  /// and "^ω" for "^w". Whitespace is ignored. Throws ParseError (with the
  /// byte offset) on syntax errors and unknown symbols, InputError on sort
  /// mismatches and ω on an ineligible sort.
  Term parse_omega_term(std::string_view  text,
                        const Theory&     theory,
                        const VarContext& vars);

  /// "t1 = t2" or "t1 <= t2".
  OmegaEquation parse_equation(std::string_view  text,
                               const Theory&     theory,
                               const VarContext& vars);

  /// Equation file: "#" comments, blank lines, a header "vars: x y ..."
  /// (each optionally "name:sort") before the first relation, then one
  /// relation per line. Inequations require an ordered theory.
  std::vector<OmegaEquation> parse_equation_file(std::string_view text,
                                                 const Theory&    theory);

  /// Parses a header line body such as "x y:M z".
  VarContext parse_var_context(std::string_view text, const Theory& theory);

}  // namespace profinite
