#pragma once

#include <vector>

#include "profinite/algebra.hpp"
#include "profinite/term.hpp"
#include "profinite/theory.hpp"

namespace profinite {

  /// Interpretation of a variable context: element of variable i at index i.
  using Assignment = std::vector<Element>;

  /// Bottom-up table evaluation of an ω-free term. Throws InputError on a
  /// missing binding or an omega node.
  Element eval_term(const FiniteAlgebra& a, const Term& t, const Assignment& f);

  /// The unique idempotent power of x under the binary operation mul,
  /// found by walking x, x², ... until the first repeat (index i, period
  /// p) and returning x^m for the least m ≥ i divisible by p.
  Element omega_power(const FiniteAlgebra& a, OpId mul, Element x);

  /// omega_power with the theory's ω-structure.
  Element omega_power(const Theory& theory, const FiniteAlgebra& a, Element x);

  /// Evaluation where omega nodes take the ω-power: the value of the
  /// implicit operation of t at f. Throws InputError when t has omega
  /// nodes and the theory has no ω-structure.
  Element eval_implicit(const Theory&        theory,
                        const FiniteAlgebra& a,
                        const Term&          t,
                        const Assignment&    f);

  /// Every assignment of vars into a, in lexicographic order with the last
  /// variable varying fastest.
  std::vector<Assignment> all_assignments(const FiniteAlgebra& a,
                                          const VarContext&    vars);

  /// Sort of t in the signature; throws InputError on sort errors.
  SortId sort_of(const Term& t, const Theory& theory, const VarContext& vars);

}  // namespace profinite
