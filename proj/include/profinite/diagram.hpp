#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "profinite/algebra.hpp"
#include "profinite/error.hpp"
#include "profinite/homomorphism.hpp"
#include "profinite/theory.hpp"

namespace profinite {

  struct Arrow {
    std::size_t  source;
    std::size_t  target;
    Homomorphism map;
  };

  /// Finite graph of algebras and homomorphisms; identities are implicit.
  class FiniteDiagram {
   public:
    FiniteDiagram() = default;
    /// Throws InputError on bad endpoints, on maps whose source/target
    /// differ from the stated objects, and on signature mismatches.
    FiniteDiagram(std::vector<FiniteAlgebra> objects, std::vector<Arrow> arrows);

    const std::vector<FiniteAlgebra>& objects() const noexcept {
      return objects_;
    }
    const std::vector<Arrow>& arrows() const noexcept {
      return arrows_;
    }
    std::size_t size() const noexcept {
      return objects_.size();
    }

   private:
    std::vector<FiniteAlgebra> objects_;
    std::vector<Arrow>         arrows_;
  };

  /// Compatible tuples of a diagram. Elements of sort s are the tuples
  /// (one component per object) in lexicographic order; the algebra
  /// structure is componentwise.
  class LimitObject {
   public:
    LimitObject(FiniteAlgebra                                   algebra,
                std::vector<std::vector<std::vector<Element>>> tuples,
                std::vector<Homomorphism>                       projections);

    const FiniteAlgebra& algebra() const noexcept {
      return algebra_;
    }
    /// tuples()[s][x] is the tuple of element x of sort s.
    const std::vector<std::vector<std::vector<Element>>>& tuples() const noexcept {
      return tuples_;
    }
    const std::vector<Element>& tuple(SortId s, Element x) const {
      return tuples_[s][x];
    }
    const std::vector<Homomorphism>& projections() const noexcept {
      return projections_;
    }
    const Homomorphism& projection(std::size_t object) const {
      return projections_[object];
    }
    std::optional<Element> find(SortId s, const std::vector<Element>& tuple) const;

   private:
    FiniteAlgebra                                   algebra_;
    std::vector<std::vector<std::vector<Element>>> tuples_;
    std::vector<Homomorphism>                       projections_;
    std::vector<std::map<std::vector<Element>, Element>> index_;
  };

  /// Limit by arc consistency over the arrows followed by backtracking.
  /// `budget` bounds search nodes plus stored tuples; BudgetExceeded when
  /// exhausted. InputError for a diagram without objects.
  LimitObject limit(const FiniteDiagram& d, std::uint64_t budget = kDefaultBudget);

  struct CofilteredVerdict {
    enum class Failure { none, empty, no_common_source, not_equalized };

    bool        cofiltered = true;
    Failure     failure    = Failure::none;
    std::size_t first      = 0;  // offending objects
    std::size_t second     = 0;
    /// For not_equalized: the two distinct parallel composites first → second.
    std::optional<SortedMap> left, right;
    std::string              message;
  };

  /// Checks on the category generated by the diagram (morphisms are the
  /// distinct composite maps, identities included) that every pair of
  /// objects has a common source and every parallel pair of distinct
  /// morphisms is equalized by some morphism. Budget bounds the number
  /// of composites.
  CofilteredVerdict is_cofiltered(const FiniteDiagram& d,
                                  std::uint64_t        budget = kDefaultBudget);

  /// Diagram file format:
  ///   { "objects": [ <algebra document or file path>, ... ],
  ///     "arrows": [ {"src": i, "dst": j, "maps": {sort: [...]}} , ... ] }
  /// A bare array is accepted for "maps" in single-sorted signatures.
  /// Relative paths resolve against `base_dir`.
  FiniteDiagram parse_diagram(std::string_view   text,
                              const std::string& base_dir = ".",
                              const Theory*      theory   = nullptr);
  std::string   serialize_diagram(const FiniteDiagram& d);

}  // namespace profinite
