#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "profinite/algebra.hpp"
#include "profinite/diagram.hpp"
#include "profinite/error.hpp"
#include "profinite/eval.hpp"
#include "profinite/homomorphism.hpp"
#include "profinite/term.hpp"
#include "profinite/theory.hpp"

namespace profinite {

  /// An algebra with an assignment of the variables of a context.
  struct PointedAlgebra {
    FiniteAlgebra algebra;
    VarContext    vars;
    Assignment    point;
  };

  /// True if the image of the point generates the algebra.
  bool is_generated(const PointedAlgebra& p);

  /// The subalgebra of a × b generated by the paired points.
  FiniteAlgebra paired_image(const PointedAlgebra& a, const PointedAlgebra& b);

  /// The homomorphism a -> b sending point to point, if one exists. `a`
  /// must be generated by its point; the map then is unique and exists
  /// iff the paired image is the graph of a function on a (and, when
  /// ordered, that function is monotone).
  std::optional<Homomorphism> pointed_homomorphism(const PointedAlgebra& a,
                                                   const PointedAlgebra& b);

  /// Point-preserving isomorphism between generated pointed algebras.
  std::optional<Homomorphism> pointed_isomorphism(const PointedAlgebra& a,
                                                  const PointedAlgebra& b);

  /// The join of two generated pointed algebras: their paired image,
  /// pointed diagonally.
  PointedAlgebra pointed_join(const PointedAlgebra& a, const PointedAlgebra& b);

  /// All generated pointed algebras over `vars` whose algebra is isomorphic
  /// to a member of `algebras`, one per pointed isomorphism class. For each
  /// algebra, points are listed by the lexicographically least member of
  /// their automorphism orbit.
  std::vector<PointedAlgebra> pointed_generated(const std::vector<FiniteAlgebra>& algebras,
                                                const VarContext&                 vars);

  struct PointedDiagram {
    VarContext                  vars;
    std::vector<PointedAlgebra> pointed;
    FiniteDiagram               diagram;
  };

  /// Objects: the generated pointed algebras over `vars` with algebras of
  /// `theory` with carriers at most k. Arrows: every point-preserving
  /// homomorphism between distinct objects.
  PointedDiagram pointed_quotient_diagram(const Theory&     theory,
                                          const VarContext& vars,
                                          std::size_t       k,
                                          std::uint64_t     budget = kDefaultBudget);

  /// The limit of pointed_quotient_diagram, a finite stand-in for the free
  /// profinite algebra over `vars`.
  class ProfiniteApprox {
   public:
    ProfiniteApprox(const Theory&     theory,
                    const VarContext& vars,
                    std::size_t       k,
                    std::uint64_t     budget = kDefaultBudget);

    const Theory& theory() const noexcept {
      return theory_;
    }
    const VarContext& vars() const noexcept {
      return diagram_.vars;
    }
    std::size_t bound() const noexcept {
      return k_;
    }
    const PointedDiagram& diagram() const noexcept {
      return diagram_;
    }
    const LimitObject& limit() const noexcept {
      return limit_;
    }
    /// The projection onto object i.
    const Homomorphism& projection(std::size_t i) const {
      return limit_.projection(i);
    }

    /// Element of the limit whose component at every object (A, a) is the
    /// value of t at a. InputError for terms with ω or of foreign sort.
    Element phi_embed(const Term& t) const;

    /// As phi_embed, with ω evaluated as the idempotent power.
    Element eval_omega(const Term& t) const;

   private:
    Element tuple_of(const Term& t, bool allow_omega) const;

    Theory         theory_;
    std::size_t    k_;
    PointedDiagram diagram_;
    LimitObject    limit_;
  };

  /// The canonical map from the limit at bound k onto the limit at bound
  /// k' ≤ k over the same variables: each coarser object is matched to the
  /// pointed-isomorphic finer object. Per sort, index of the image.
  SortedMap refinement_map(const ProfiniteApprox& finer, const ProfiniteApprox& coarser);

  /// Graphviz rendering of a pointed diagram.
  std::string to_dot(const PointedDiagram& d);

}  // namespace profinite
