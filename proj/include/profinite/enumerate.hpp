#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "profinite/algebra.hpp"
#include "profinite/error.hpp"
#include "profinite/theory.hpp"

namespace profinite {

  /// One representative per isomorphism class of the algebras of `theory`
  /// with every carrier at most `max_size` that satisfy the theory's laws
  /// and `extra_laws`. Each representative is the first labeled algebra
  /// met by a lexicographic table search (constants first), so output is
  /// ordered by carrier sizes and then by discovery.
  ///
  /// For ordered theories every partial order making the operations
  /// monotone is tried on each unordered representative.
  ///
  /// `budget` bounds search nodes; BudgetExceeded when exhausted.
  std::vector<FiniteAlgebra>
  enumerate_algebras(const Theory&                     theory,
                     std::size_t                       max_size,
                     const std::vector<OmegaEquation>& extra_laws = {},
                     std::uint64_t                     budget     = kDefaultBudget);

  /// All partial orders on {0, ..., n-1}, in a fixed order starting with
  /// the discrete one.
  std::vector<Relation> all_partial_orders(std::size_t n);

  /// Insertion-ordered list of algebras, one per isomorphism class.
  class IsoClassList {
   public:
    /// Appends `a` unless it is isomorphic to a member; true when appended.
    bool insert(const FiniteAlgebra& a);
    /// Index of the member isomorphic to `a`, if any.
    std::optional<std::size_t> find(const FiniteAlgebra& a) const;

    const std::vector<FiniteAlgebra>& members() const noexcept {
      return members_;
    }
    std::size_t size() const noexcept {
      return members_.size();
    }

   private:
    std::vector<FiniteAlgebra>                                   members_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
  };

}  // namespace profinite
