#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "profinite/algebra.hpp"
#include "profinite/signature.hpp"

namespace profinite {

  struct Variable {
    std::string name;
    SortId      sort = 0;

    bool operator==(const Variable&) const = default;
  };

  /// Finite sorted variable context; terms refer to variables by index.
  using VarContext = std::vector<Variable>;

  /// Term tree over a signature extended by the unary ω-power. A term
  /// without omega nodes is an ordinary Σ-term.
  ///
  /// The total order (kind: variable < operation < omega, then index, then
  /// children lexicographically) is the tie-breaker of every enumeration.
  class Term {
   public:
    enum class Kind { variable, operation, omega };

    static Term var(std::size_t index) {
      return Term(Kind::variable, index, {});
    }
    static Term op(OpId op, std::vector<Term> children = {}) {
      return Term(Kind::operation, op, std::move(children));
    }
    static Term omega(Term child) {
      std::vector<Term> c;
      c.push_back(std::move(child));
      return Term(Kind::omega, 0, std::move(c));
    }

    Kind kind() const noexcept {
      return kind_;
    }
    /// Variable index or op id.
    std::size_t index() const noexcept {
      return index_;
    }
    const std::vector<Term>& children() const noexcept {
      return children_;
    }

    std::size_t size() const;
    std::size_t depth() const;
    std::size_t omega_count() const;
    bool        omega_free() const {
      return omega_count() == 0;
    }
    /// Largest variable index used plus one (0 for ground terms).
    std::size_t variable_bound() const;

    bool                 operator==(const Term& other) const;
    std::strong_ordering operator<=>(const Term& other) const;

   private:
    Term(Kind kind, std::size_t index, std::vector<Term> children)
        : kind_(kind), index_(index), children_(std::move(children)) {}

    Kind              kind_;
    std::size_t       index_;
    std::vector<Term> children_;
  };

  enum class RelationKind { equal, less_equal };

  /// t1 = t2 or t1 ≤ t2 over a shared variable context.
  struct OmegaEquation {
    VarContext   vars;
    Term         lhs;
    Term         rhs;
    RelationKind relation = RelationKind::equal;
  };

}  // namespace profinite
