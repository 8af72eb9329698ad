#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "profinite/algebra.hpp"
#include "profinite/approx.hpp"
#include "profinite/error.hpp"
#include "profinite/eval.hpp"
#include "profinite/term.hpp"
#include "profinite/theory.hpp"

namespace profinite {

  struct Verdict {
    bool                      holds = true;
    std::optional<Assignment> counterexample;  // first failing assignment
  };

  /// Checks the relation under every assignment, in all_assignments order.
  Verdict satisfies(const Theory& theory, const FiniteAlgebra& a, const OmegaEquation& eq);

  struct CanonicalPseudoequation;

  /// A join-closed family of generated pointed algebras over `vars`, each
  /// standing for a finite quotient of the free algebra.
  class Pseudoequation {
   public:
    /// Throws InputError unless the members are generated, pairwise not
    /// pointed-isomorphic, and the join of any two members is pointed-
    /// isomorphic to a member. The message names the offending pair and
    /// says whether the join overflowed the largest member size.
    static Pseudoequation from_members(VarContext vars, std::vector<PointedAlgebra> members);

    /// Least join-closed family containing `generators`. InputError if a
    /// join has a carrier larger than `max_size`.
    static Pseudoequation join_closure(VarContext                  vars,
                                       std::vector<PointedAlgebra> generators,
                                       std::size_t                 max_size);

    const VarContext& vars() const noexcept {
      return vars_;
    }
    const std::vector<PointedAlgebra>& members() const noexcept {
      return members_;
    }

   private:
    Pseudoequation(VarContext vars, std::vector<PointedAlgebra> members)
        : vars_(std::move(vars)), members_(std::move(members)) {}
    friend CanonicalPseudoequation canonical_pseudoequation(const std::vector<FiniteAlgebra>&,
                                                            const VarContext&,
                                                            std::size_t);

    VarContext                  vars_;
    std::vector<PointedAlgebra> members_;
  };

  /// b satisfies ρ if every assignment of the variables into b factors
  /// through some member. Counterexample: the first assignment that does not.
  Verdict satisfies_pseudoequation(const FiniteAlgebra& b, const Pseudoequation& rho);

  struct JoinOverflow {
    std::size_t first;
    std::size_t second;
    std::size_t size;  // total carrier size of the join
  };

  struct CanonicalPseudoequation {
    Pseudoequation            rho;
    std::vector<JoinOverflow> overflows;  // joins with a carrier above k
  };

  /// Members: all generated pointed algebras over `vars` whose algebra is
  /// isomorphic to a member of `v` with every carrier at most k. Throws
  /// InputError if `v` is not closed under quotients, subalgebras and
  /// products within k, or if a join within k leaves `v`. Joins above k
  /// are listed in `overflows`.
  CanonicalPseudoequation canonical_pseudoequation(const std::vector<FiniteAlgebra>& v,
                                                   const VarContext&                 vars,
                                                   std::size_t                       k);

  /// The algebra with one element in every sort.
  FiniteAlgebra trivial_algebra(const SignaturePtr& sig);

  struct Closure {
    std::vector<FiniteAlgebra> classes;
    /// Some product was skipped for exceeding the product budget, so the
    /// result may miss members.
    bool truncated = false;
  };

  /// Closure of `seeds` under quotients, subalgebras and binary products,
  /// products kept only while every carrier is at most `product_budget`.
  /// Result: the classes with every carrier at most `max_size`, the trivial
  /// algebra included, ordered by total size and then by discovery.
  Closure hsp_closure(const std::vector<FiniteAlgebra>& seeds,
                      std::size_t                       max_size,
                      std::size_t                       product_budget,
                      std::uint64_t                     budget = kDefaultBudget);

  /// Default product budget: max_size squared.
  Closure hsp_closure(const std::vector<FiniteAlgebra>& seeds, std::size_t max_size);

  struct EquationSpec {
    std::vector<OmegaEquation> equations;
  };

  struct GeneratorSpec {
    std::vector<FiniteAlgebra> generators;
    std::size_t                max_size;
    std::size_t                product_budget;
  };

  using VarietySpec = std::variant<EquationSpec, GeneratorSpec>;

  struct MembershipVerdict {
    bool member = true;
    /// Equation spec: index of the first failing equation and its
    /// counterexample.
    std::optional<std::size_t> failed_equation;
    std::optional<Assignment>  counterexample;
    /// Generator spec: the closure was truncated.
    bool truncated = false;
  };

  MembershipVerdict is_member(const Theory&        theory,
                              const FiniteAlgebra& b,
                              const VarietySpec&   v,
                              std::uint64_t        budget = kDefaultBudget);

  struct Separation {
    OmegaEquation equation;
    Assignment    witness;  // failing assignment in the outside algebra
  };

  /// First relation, over at most `max_vars` variables and of depth at
  /// most `max_depth`, that holds in every inside algebra and fails in
  /// `outside`. Candidates are ordered by number of ω nodes, total size,
  /// size of the left side, then the two sides in term order. Equations
  /// are oriented with the larger side left; ordered theories search
  /// inequations in both directions. Variables range over the ω sort
  /// (sort 0 without one). `budget` bounds the number of candidate terms.
  std::optional<Separation> separate(const Theory&                     theory,
                                     const std::vector<FiniteAlgebra>& inside,
                                     const FiniteAlgebra&              outside,
                                     std::size_t                       max_vars,
                                     std::size_t                       max_depth,
                                     std::uint64_t                     budget = kDefaultBudget);

  /// All terms over `vars` of depth at most `max_depth`, sorted.
  std::vector<Term> all_terms(const Theory&     theory,
                              const VarContext& vars,
                              std::size_t       max_depth,
                              std::uint64_t     budget = kDefaultBudget);

}  // namespace profinite
