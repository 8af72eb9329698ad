#pragma once

#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "profinite/algebra.hpp"
#include "profinite/error.hpp"
#include "profinite/homomorphism.hpp"

namespace profinite {

  // Products, subalgebras, congruences, quotients and the
  // (surjective, injective order-reflecting) factorization.

  struct Product {
    FiniteAlgebra algebra;
    Homomorphism  first;
    Homomorphism  second;
  };

  /// Componentwise product; pair (x, y) of sort s is element x * |B_s| + y.
  Product product(const FiniteAlgebra& a, const FiniteAlgebra& b);

  /// Per-sort element sets.
  using SortedSet = std::vector<std::vector<Element>>;

  struct Subalgebra {
    FiniteAlgebra algebra;
    /// Injective, order-reflecting; new element i maps to the i-th smallest
    /// element of the closed subset.
    Homomorphism embedding;
  };

  /// Smallest subset containing seed that is closed under all operations
  /// (constants included), with the restricted order.
  Subalgebra subalgebra_generated(const FiniteAlgebra& a, const SortedSet& seed);

  /// Per-sort partition of the carrier, labelled by first occurrence, plus
  /// a block preorder in the ordered case.
  class Congruence {
   public:
    /// Partition given by block labels per sort; labels are renormalized.
    /// block_order may be empty, in which case the transitive closure of
    /// the lifted order is used.
    Congruence(FiniteAlgebra                      algebra,
               std::vector<std::vector<Element>>  blocks,
               std::vector<Relation>              block_order = {});

    static Congruence identity(const FiniteAlgebra& a);
    static Congruence full(const FiniteAlgebra& a);

    const FiniteAlgebra& algebra() const noexcept {
      return algebra_;
    }
    Element block(SortId s, Element x) const {
      return blocks_[s][x];
    }
    const std::vector<std::vector<Element>>& blocks() const noexcept {
      return blocks_;
    }
    std::size_t block_count(SortId s) const {
      return counts_[s];
    }
    /// Preorder on blocks (ordered algebras only).
    const std::vector<Relation>& block_order() const noexcept {
      return block_order_;
    }
    bool related(SortId s, Element x, Element y) const {
      return blocks_[s][x] == blocks_[s][y];
    }

    /// Related arguments give related results; in the ordered case the
    /// block preorder is antisymmetric, contains the lifted order, and
    /// every operation is monotone on blocks.
    bool is_compatible() const;

    /// Partition refinement: every block of *this lies inside a block of
    /// other (and, ordered, the block preorder maps into other's).
    bool refines(const Congruence& other) const;

    bool operator==(const Congruence& other) const {
      return blocks_ == other.blocks_ && block_order_ == other.block_order_;
    }
    bool operator<(const Congruence& other) const {
      return std::tie(blocks_, block_order_)
             < std::tie(other.blocks_, other.block_order_);
    }

   private:
    FiniteAlgebra                     algebra_;
    std::vector<std::vector<Element>> blocks_;
    std::vector<std::size_t>          counts_;
    std::vector<Relation>             block_order_;
  };

  struct ElementPair {
    SortId  sort;
    Element x, y;
  };

  /// Least congruence containing pairs: union-find closure under every
  /// one-hole operation context. Ordered: the block preorder is the
  /// transitive closure of the lifted order (it may fail antisymmetry,
  /// in which case quotient rejects it).
  Congruence congruence_generated(const FiniteAlgebra&            a,
                                  const std::vector<ElementPair>& pairs);

  /// A surjective homomorphism tagged with its kernel.
  struct Quotient {
    Homomorphism map;
    Congruence   kernel;

    const FiniteAlgebra& target() const noexcept {
      return map.target();
    }
  };

  /// Blocks become elements, numbered by first occurrence. Throws
  /// InputError when c is not compatible (including an ordered block
  /// preorder that is not antisymmetric).
  Quotient quotient(const FiniteAlgebra& a, const Congruence& c);

  /// Kernel of f: partition by equal images; ordered, blocks ordered as
  /// their images.
  Congruence kernel(const Homomorphism& f);

  struct Factorization {
    Quotient     epi;
    Homomorphism mono;
  };

  /// f = mono ∘ epi.map with epi onto the image of f (target order
  /// restricted) and mono the inclusion.
  Factorization factorize(const Homomorphism& f);

  /// Join of two quotients of the same algebra: image of the pairing into
  /// the product of their targets.
  Quotient join_quotients(const Quotient& e1, const Quotient& e2);

  /// e1 ≤ e2 in the factorization order: e1 = q ∘ e2 for some q.
  bool quotient_leq(const Quotient& e1, const Quotient& e2);

  /// Every congruence of a, sorted. Unordered algebras: closure of the
  /// principal congruences under joins. Ordered algebras: additionally
  /// every admissible partial order on the blocks; throws BudgetExceeded
  /// if a quotient would need more than max_order_blocks blocks in one
  /// sort to enumerate its orders.
  std::vector<Congruence> all_congruences(const FiniteAlgebra& a,
                                          std::size_t max_order_blocks = 5);

  /// Every subset closed under the operations, as per-sort sorted element
  /// lists, in a deterministic order.
  std::vector<SortedSet> all_closed_subsets(const FiniteAlgebra& a,
                                            std::uint64_t budget = kDefaultBudget);

  /// Image subalgebra inclusion built from an explicit per-sort subset.
  Subalgebra subalgebra_on(const FiniteAlgebra& a, const SortedSet& closed);

}  // namespace profinite
