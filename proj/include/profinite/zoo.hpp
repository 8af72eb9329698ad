#pragma once

#include <cstddef>
#include <vector>

#include "profinite/algebra.hpp"

namespace profinite::zoo {

  // Small monoids over the signature of Theory::monoid.

  /// Monoid from a full multiplication table (row-major) and the index of
  /// its identity.
  FiniteAlgebra monoid(std::size_t                 n,
                       const std::vector<Element>& mul,
                       Element                     identity,
                       bool                        ordered = false,
                       std::vector<Relation>       order   = {});

  FiniteAlgebra trivial(bool ordered = false);

  /// {0, 1} under min; 1 is the identity.
  FiniteAlgebra u1();

  enum class U1Order { natural, dual, discrete };

  /// Ordered U1: natural has 0 ≤ 1, dual has 1 ≤ 0.
  FiniteAlgebra u1_ordered(U1Order order);

  /// Additive Z_n; 0 is the identity, 1 a generator.
  FiniteAlgebra cyclic_group(std::size_t n);

  /// {0, ..., n-1} under multiplication mod n; 1 is the identity.
  FiniteAlgebra multiplicative_mod(std::size_t n);

  /// Chain semilattice {0 < ... < n-1} under min; n-1 is the identity.
  FiniteAlgebra chain(std::size_t n);

  /// {1, a, b} with ab = a, ba = b: a left-zero band with an identity
  /// adjoined (1 = 0, a = 1, b = 2).
  FiniteAlgebra left_zero_band_with_identity();

}  // namespace profinite::zoo
