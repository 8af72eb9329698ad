#include "profinite/zoo.hpp"

#include <algorithm>

#include "profinite/theory.hpp"

namespace profinite::zoo {

  FiniteAlgebra monoid(std::size_t                 n,
                       const std::vector<Element>& mul,
                       Element                     identity,
                       bool                        ordered,
                       std::vector<Relation>       order) {
    static const Theory plain = Theory::monoid(false);
    static const Theory ord   = Theory::monoid(true);
    return FiniteAlgebra((ordered ? ord : plain).signature_ptr(),
                         {n},
                         {mul, {identity}},
                         ordered ? std::move(order) : std::vector<Relation>{});
  }

  FiniteAlgebra trivial(bool ordered) {
    return monoid(1, {0}, 0, ordered, ordered ? std::vector{Relation::identity(1)}
                                              : std::vector<Relation>{});
  }

  FiniteAlgebra u1() {
    return monoid(2, {0, 0, 0, 1}, 1);
  }

  FiniteAlgebra u1_ordered(U1Order order) {
    Relation r = Relation::identity(2);
    if (order == U1Order::natural) {
      r.set(0, 1);
    } else if (order == U1Order::dual) {
      r.set(1, 0);
    }
    return monoid(2, {0, 0, 0, 1}, 1, true, {r});
  }

  FiniteAlgebra cyclic_group(std::size_t n) {
    std::vector<Element> mul;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        mul.push_back(static_cast<Element>((i + j) % n));
      }
    }
    return monoid(n, mul, 0);
  }

  FiniteAlgebra multiplicative_mod(std::size_t n) {
    std::vector<Element> mul;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        mul.push_back(static_cast<Element>((i * j) % n));
      }
    }
    return monoid(n, mul, static_cast<Element>(1 % n));
  }

  FiniteAlgebra chain(std::size_t n) {
    std::vector<Element> mul;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        mul.push_back(static_cast<Element>(std::min(i, j)));
      }
    }
    return monoid(n, mul, static_cast<Element>(n - 1));
  }

  FiniteAlgebra left_zero_band_with_identity() {
    return monoid(3, {0, 1, 2, 1, 1, 1, 2, 2, 2}, 0);
  }

}  // namespace profinite::zoo
