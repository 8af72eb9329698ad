#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "profinite/algebra.hpp"
#include "profinite/error.hpp"

namespace profinite {

  /// One total function per sort.
  using SortedMap = std::vector<std::vector<Element>>;

  class Homomorphism {
   public:
    /// Throws InputError when the maps do not have the carrier shapes of
    /// source and target. Does not check that tables commute; see
    /// is_homomorphism.
    Homomorphism(FiniteAlgebra source, FiniteAlgebra target, SortedMap maps);

    const FiniteAlgebra& source() const noexcept {
      return source_;
    }
    const FiniteAlgebra& target() const noexcept {
      return target_;
    }
    const SortedMap& maps() const noexcept {
      return maps_;
    }
    Element operator()(SortId s, Element x) const {
      return maps_[s][x];
    }

    /// Commutes with every table and, when ordered, is monotone.
    bool is_homomorphism() const;
    bool is_monotone() const;
    bool is_surjective() const;
    bool is_injective() const;
    /// x ≤ y iff f(x) ≤ f(y), per sort. Equals is_injective when unordered.
    bool is_order_reflecting() const;

    bool operator==(const Homomorphism& other) const {
      return maps_ == other.maps_ && source_ == other.source_
             && target_ == other.target_;
    }

   private:
    FiniteAlgebra source_;
    FiniteAlgebra target_;
    SortedMap     maps_;
  };

  Homomorphism identity_homomorphism(const FiniteAlgebra& a);

  /// g ∘ f.
  Homomorphism compose(const Homomorphism& g, const Homomorphism& f);

  /// Every homomorphism a → b (monotone when ordered), sorted
  /// lexicographically by maps. Backtracks over the images of a generating
  /// set of a and propagates through the tables.
  std::vector<Homomorphism> homomorphisms(const FiniteAlgebra& a,
                                          const FiniteAlgebra& b,
                                          std::uint64_t budget = kDefaultBudget);

  /// A bijective homomorphism a → b that also reflects the order, if any.
  std::optional<Homomorphism> is_isomorphic(const FiniteAlgebra& a,
                                            const FiniteAlgebra& b);

  /// Isomorphism invariant: equal algebras up to relabeling hash equal.
  std::uint64_t invariant_hash(const FiniteAlgebra& a);

  /// Bijective homomorphisms a → a that reflect the order.
  std::vector<Homomorphism> automorphisms(const FiniteAlgebra& a);

}  // namespace profinite
