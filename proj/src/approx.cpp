#include "profinite/approx.hpp"

#include <algorithm>

#include "profinite/constructions.hpp"
#include "profinite/enumerate.hpp"

namespace profinite {

  namespace {

    SortedSet seed_of(const PointedAlgebra& p) {
      SortedSet seed(p.algebra.sort_count());
      for (std::size_t i = 0; i < p.vars.size(); ++i) {
        seed[p.vars[i].sort].push_back(p.point[i]);
      }
      return seed;
    }

    struct Paired {
      Product    prod;
      Subalgebra sub;
    };

    Paired pair(const PointedAlgebra& a, const PointedAlgebra& b) {
      if (a.vars.size() != b.vars.size()) {
        throw InputError("pointed algebras over different variable contexts");
      }
      Product   prod = product(a.algebra, b.algebra);
      SortedSet seed(a.algebra.sort_count());
      for (std::size_t i = 0; i < a.vars.size(); ++i) {
        SortId s = a.vars[i].sort;
        seed[s].push_back(
            static_cast<Element>(a.point[i] * b.algebra.carrier(s) + b.point[i]));
      }
      Subalgebra sub = subalgebra_generated(prod.algebra, seed);
      return Paired{std::move(prod), std::move(sub)};
    }

  }  // namespace

  bool is_generated(const PointedAlgebra& p) {
    auto sub = subalgebra_generated(p.algebra, seed_of(p));
    return sub.algebra.carriers() == p.algebra.carriers();
  }

  FiniteAlgebra paired_image(const PointedAlgebra& a, const PointedAlgebra& b) {
    return pair(a, b).sub.algebra;
  }

  std::optional<Homomorphism> pointed_homomorphism(const PointedAlgebra& a,
                                                   const PointedAlgebra& b) {
    auto [prod, sub] = pair(a, b);
    auto const& A    = a.algebra;
    SortedMap   maps(A.sort_count());
    for (SortId s = 0; s < A.sort_count(); ++s) {
      if (sub.algebra.carrier(s) != A.carrier(s)) {
        return std::nullopt;
      }
      maps[s].assign(A.carrier(s), 0);
      std::vector<bool> hit(A.carrier(s), false);
      for (Element z = 0; z < sub.algebra.carrier(s); ++z) {
        Element p = sub.embedding(s, z);
        Element x = prod.first(s, p);
        if (hit[x]) {
          return std::nullopt;
        }
        hit[x]     = true;
        maps[s][x] = prod.second(s, p);
      }
    }
    Homomorphism h(A, b.algebra, std::move(maps));
    if (!h.is_homomorphism()) {
      return std::nullopt;
    }
    return h;
  }

  std::optional<Homomorphism> pointed_isomorphism(const PointedAlgebra& a,
                                                  const PointedAlgebra& b) {
    if (a.algebra.carriers() != b.algebra.carriers()) {
      return std::nullopt;
    }
    auto h = pointed_homomorphism(a, b);
    if (!h || !h->is_injective() || !h->is_surjective() || !h->is_order_reflecting()) {
      return std::nullopt;
    }
    return h;
  }

  PointedAlgebra pointed_join(const PointedAlgebra& a, const PointedAlgebra& b) {
    auto [prod, sub] = pair(a, b);
    Assignment point(a.vars.size());
    for (std::size_t i = 0; i < a.vars.size(); ++i) {
      SortId  s = a.vars[i].sort;
      Element p = static_cast<Element>(a.point[i] * b.algebra.carrier(s) + b.point[i]);
      for (Element z = 0; z < sub.algebra.carrier(s); ++z) {
        if (sub.embedding(s, z) == p) {
          point[i] = z;
          break;
        }
      }
    }
    return PointedAlgebra{sub.algebra, a.vars, std::move(point)};
  }

  std::vector<PointedAlgebra> pointed_generated(const std::vector<FiniteAlgebra>& algebras,
                                                const VarContext&                 vars) {
    std::vector<PointedAlgebra> out;
    for (auto const& A : algebras) {
      auto auts = automorphisms(A);
      for (auto const& f : all_assignments(A, vars)) {
        PointedAlgebra p{A, vars, f};
        if (!is_generated(p)) {
          continue;
        }
        bool least = true;
        for (auto const& sigma : auts) {
          Assignment g(f.size());
          for (std::size_t i = 0; i < f.size(); ++i) {
            g[i] = sigma(vars[i].sort, f[i]);
          }
          if (g < f) {
            least = false;
            break;
          }
        }
        if (least) {
          out.push_back(std::move(p));
        }
      }
    }
    return out;
  }

  PointedDiagram pointed_quotient_diagram(const Theory&     theory,
                                          const VarContext& vars,
                                          std::size_t       k,
                                          std::uint64_t     budget) {
    if (k == 0) {
      throw InputError("pointed_quotient_diagram: bound must be at least 1");
    }
    auto               pointed = pointed_generated(enumerate_algebras(theory, k, {}, budget), vars);
    std::vector<Arrow> arrows;
    for (std::size_t i = 0; i < pointed.size(); ++i) {
      for (std::size_t j = 0; j < pointed.size(); ++j) {
        if (i == j) {
          continue;
        }
        if (auto h = pointed_homomorphism(pointed[i], pointed[j])) {
          arrows.push_back(Arrow{i, j, std::move(*h)});
        }
      }
    }
    std::vector<FiniteAlgebra> objects;
    for (auto const& p : pointed) {
      objects.push_back(p.algebra);
    }
    return PointedDiagram{vars, std::move(pointed),
                          FiniteDiagram(std::move(objects), std::move(arrows))};
  }

  ////////////////////////////////////////////////////////////////////////
  // ProfiniteApprox
  ////////////////////////////////////////////////////////////////////////

  ProfiniteApprox::ProfiniteApprox(const Theory&     theory,
                                   const VarContext& vars,
                                   std::size_t       k,
                                   std::uint64_t     budget)
      : theory_(theory),
        k_(k),
        diagram_(pointed_quotient_diagram(theory, vars, k, budget)),
        limit_(profinite::limit(diagram_.diagram, budget)) {}

  Element ProfiniteApprox::tuple_of(const Term& t, bool allow_omega) const {
    if (!allow_omega && t.omega_count() > 0) {
      throw InputError("phi_embed: term contains ω");
    }
    SortId               s = sort_of(t, theory_, diagram_.vars);
    std::vector<Element> tuple;
    for (auto const& p : diagram_.pointed) {
      tuple.push_back(allow_omega ? eval_implicit(theory_, p.algebra, t, p.point)
                                  : eval_term(p.algebra, t, p.point));
    }
    auto x = limit_.find(s, tuple);
    if (!x) {
      throw Error("evaluation produced an incompatible tuple");
    }
    return *x;
  }

  Element ProfiniteApprox::phi_embed(const Term& t) const {
    return tuple_of(t, false);
  }

  Element ProfiniteApprox::eval_omega(const Term& t) const {
    return tuple_of(t, true);
  }

  SortedMap refinement_map(const ProfiniteApprox& finer, const ProfiniteApprox& coarser) {
    auto const& fp = finer.diagram().pointed;
    auto const& cp = coarser.diagram().pointed;
    if (finer.vars().size() != coarser.vars().size()) {
      throw InputError("refinement_map: different variable contexts");
    }
    // match each coarse object to a finer one
    std::vector<std::pair<std::size_t, Homomorphism>> match;
    for (std::size_t c = 0; c < cp.size(); ++c) {
      std::optional<std::pair<std::size_t, Homomorphism>> m;
      for (std::size_t f = 0; f < fp.size() && !m; ++f) {
        if (auto h = pointed_isomorphism(fp[f], cp[c])) {
          m.emplace(f, std::move(*h));
        }
      }
      if (!m) {
        throw InputError("refinement_map: coarser object " + std::to_string(c)
                         + " has no counterpart");
      }
      match.push_back(std::move(*m));
    }
    auto const& fl = finer.limit();
    auto const& cl = coarser.limit();
    SortedMap   out(fl.algebra().sort_count());
    for (SortId s = 0; s < out.size(); ++s) {
      for (Element x = 0; x < fl.algebra().carrier(s); ++x) {
        std::vector<Element> tuple;
        for (auto const& [f, h] : match) {
          tuple.push_back(h(s, fl.tuple(s, x)[f]));
        }
        auto y = cl.find(s, tuple);
        if (!y) {
          throw Error("refinement_map: image tuple is not compatible");
        }
        out[s].push_back(*y);
      }
    }
    return out;
  }

  std::string to_dot(const PointedDiagram& d) {
    std::string out = "digraph pointed_quotients {\n";
    for (std::size_t i = 0; i < d.pointed.size(); ++i) {
      auto const& p     = d.pointed[i];
      std::string label = std::to_string(i) + ": size " + carrier_string(p.algebra);
      for (std::size_t v = 0; v < d.vars.size(); ++v) {
        label += "\\n" + d.vars[v].name + " = " + std::to_string(p.point[v]);
      }
      out += "  n" + std::to_string(i) + " [label=\"" + label + "\"];\n";
    }
    for (auto const& a : d.diagram.arrows()) {
      out += "  n" + std::to_string(a.source) + " -> n" + std::to_string(a.target) + ";\n";
    }
    return out + "}\n";
  }

}  // namespace profinite
