#include "profinite/pseudovariety.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "profinite/constructions.hpp"
#include "profinite/enumerate.hpp"

namespace profinite {

  ////////////////////////////////////////////////////////////////////////
  // Equations
  ////////////////////////////////////////////////////////////////////////

  Verdict satisfies(const Theory& theory, const FiniteAlgebra& a, const OmegaEquation& eq) {
    if (!theory.admits(a)) {
      throw InputError("satisfies: algebra signature does not match theory '"
                       + theory.name() + "'");
    }
    if (eq.relation == RelationKind::less_equal && !a.ordered()) {
      throw InputError("satisfies: inequation on an unordered algebra");
    }
    SortId s = sort_of(eq.lhs, theory, eq.vars);
    for (auto const& f : all_assignments(a, eq.vars)) {
      Element l  = eval_implicit(theory, a, eq.lhs, f);
      Element r  = eval_implicit(theory, a, eq.rhs, f);
      bool    ok = eq.relation == RelationKind::equal ? l == r : a.leq(s, l, r);
      if (!ok) {
        return Verdict{false, f};
      }
    }
    return Verdict{};
  }

  ////////////////////////////////////////////////////////////////////////
  // Pseudoequations
  ////////////////////////////////////////////////////////////////////////

  namespace {

    std::optional<std::size_t> find_pointed(const std::vector<PointedAlgebra>& members,
                                            const PointedAlgebra&              p) {
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (pointed_isomorphism(members[i], p)) {
          return i;
        }
      }
      return std::nullopt;
    }

    std::size_t max_carrier(const FiniteAlgebra& a) {
      std::size_t m = 0;
      for (auto n : a.carriers()) {
        m = std::max(m, n);
      }
      return m;
    }

    void check_pointed(const VarContext& vars, const std::vector<PointedAlgebra>& ms) {
      for (std::size_t i = 0; i < ms.size(); ++i) {
        if (ms[i].vars.size() != vars.size() || ms[i].point.size() != vars.size()) {
          throw InputError("pseudoequation: member " + std::to_string(i)
                           + " is pointed over another variable context");
        }
        if (i > 0) {
          require_same_signature(ms[0].algebra, ms[i].algebra, "pseudoequation");
        }
        if (!is_generated(ms[i])) {
          throw InputError("pseudoequation: member " + std::to_string(i)
                           + " is not generated by its point");
        }
      }
    }

  }  // namespace

  Pseudoequation Pseudoequation::from_members(VarContext                  vars,
                                              std::vector<PointedAlgebra> members) {
    check_pointed(vars, members);
    std::size_t bound = 0;
    for (auto const& m : members) {
      bound = std::max(bound, max_carrier(m.algebra));
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (pointed_isomorphism(members[i], members[j])) {
          throw InputError("pseudoequation: members " + std::to_string(i) + " and "
                           + std::to_string(j) + " are isomorphic");
        }
      }
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        auto join = pointed_join(members[i], members[j]);
        if (find_pointed(members, join)) {
          continue;
        }
        std::string pair = std::to_string(i) + " and " + std::to_string(j);
        if (max_carrier(join.algebra) > bound) {
          throw InputError("pseudoequation: join of members " + pair + " overflows to size "
                           + carrier_string(join.algebra));
        }
        throw InputError("pseudoequation: join of members " + pair + " is not a member");
      }
    }
    return Pseudoequation(std::move(vars), std::move(members));
  }

  Pseudoequation Pseudoequation::join_closure(VarContext                  vars,
                                              std::vector<PointedAlgebra> generators,
                                              std::size_t                 max_size) {
    check_pointed(vars, generators);
    std::vector<PointedAlgebra> members;
    for (auto& g : generators) {
      if (!find_pointed(members, g)) {
        members.push_back(std::move(g));
      }
    }
    for (std::size_t j = 0; j < members.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        auto join = pointed_join(members[i], members[j]);
        if (find_pointed(members, join)) {
          continue;
        }
        if (max_carrier(join.algebra) > max_size) {
          throw InputError("join_closure: join of members " + std::to_string(i) + " and "
                           + std::to_string(j) + " overflows to size "
                           + carrier_string(join.algebra));
        }
        members.push_back(std::move(join));
      }
    }
    return Pseudoequation(std::move(vars), std::move(members));
  }

  Verdict satisfies_pseudoequation(const FiniteAlgebra& b, const Pseudoequation& rho) {
    if (!rho.members().empty()) {
      require_same_signature(rho.members()[0].algebra, b, "satisfies_pseudoequation");
    }
    for (auto const& h : all_assignments(b, rho.vars())) {
      PointedAlgebra target{b, rho.vars(), h};
      bool           factors = false;
      for (auto const& m : rho.members()) {
        if (pointed_homomorphism(m, target)) {
          factors = true;
          break;
        }
      }
      if (!factors) {
        return Verdict{false, h};
      }
    }
    return Verdict{};
  }

  CanonicalPseudoequation canonical_pseudoequation(const std::vector<FiniteAlgebra>& v,
                                                   const VarContext&                 vars,
                                                   std::size_t                       k) {
    IsoClassList in_v;
    for (auto const& a : v) {
      in_v.insert(a);
    }
    std::vector<FiniteAlgebra> small;
    for (auto const& a : in_v.members()) {
      if (max_carrier(a) <= k) {
        small.push_back(a);
      }
    }
    auto require = [&](const FiniteAlgebra& a, const std::string& what) {
      if (max_carrier(a) <= k && !in_v.find(a)) {
        throw InputError("canonical_pseudoequation: class not closed: " + what
                         + " of size " + carrier_string(a) + " is missing");
      }
    };
    for (std::size_t i = 0; i < small.size(); ++i) {
      for (auto const& c : all_congruences(small[i])) {
        require(quotient(small[i], c).target(), "a quotient");
      }
      for (auto const& s : all_closed_subsets(small[i])) {
        require(subalgebra_on(small[i], s).algebra, "a subalgebra");
      }
      for (std::size_t j = i; j < small.size(); ++j) {
        bool fits = true;
        for (SortId s = 0; s < small[i].sort_count(); ++s) {
          fits = fits && small[i].carrier(s) * small[j].carrier(s) <= k;
        }
        if (fits) {
          require(product(small[i], small[j]).algebra, "a product");
        }
      }
    }
    auto                      members = pointed_generated(small, vars);
    std::vector<JoinOverflow> overflows;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        auto join = pointed_join(members[i], members[j]);
        if (max_carrier(join.algebra) > k) {
          overflows.push_back(JoinOverflow{i, j, join.algebra.total_size()});
          continue;
        }
        if (!find_pointed(members, join)) {
          throw InputError("canonical_pseudoequation: join of members " + std::to_string(i)
                           + " and " + std::to_string(j) + " leaves the class");
        }
      }
    }
    return CanonicalPseudoequation{Pseudoequation(vars, std::move(members)),
                                   std::move(overflows)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Closure and membership
  ////////////////////////////////////////////////////////////////////////

  FiniteAlgebra trivial_algebra(const SignaturePtr& sig) {
    std::vector<std::size_t>          carriers(sig->sort_count(), 1);
    std::vector<std::vector<Element>> tables(sig->op_count(), std::vector<Element>{0});
    std::vector<Relation>             orders;
    if (sig->ordered()) {
      orders.assign(sig->sort_count(), Relation::identity(1));
    }
    return FiniteAlgebra(sig, std::move(carriers), std::move(tables), std::move(orders));
  }

  Closure hsp_closure(const std::vector<FiniteAlgebra>& seeds,
                      std::size_t                       max_size,
                      std::size_t                       product_budget,
                      std::uint64_t                     budget) {
    if (seeds.empty()) {
      throw InputError("hsp_closure: no seed algebras");
    }
    for (std::size_t i = 1; i < seeds.size(); ++i) {
      require_same_signature(seeds[0], seeds[i], "hsp_closure");
    }
    std::uint64_t work  = 0;
    auto          spend = [&](std::uint64_t n) {
      work += n;
      if (work > budget) {
        throw BudgetExceeded("hsp_closure: budget of " + std::to_string(budget)
                             + " exceeded");
      }
    };
    Closure                   out;
    IsoClassList              seen;
    std::vector<FiniteAlgebra> processed;
    std::deque<FiniteAlgebra> queue(seeds.begin(), seeds.end());
    queue.push_back(trivial_algebra(seeds[0].signature_ptr()));
    auto fits = [](const FiniteAlgebra& a, std::size_t bound) {
      return max_carrier(a) <= bound;
    };
    while (!queue.empty()) {
      FiniteAlgebra a = std::move(queue.front());
      queue.pop_front();
      if (!fits(a, product_budget) || !seen.insert(a)) {
        continue;
      }
      spend(1);
      for (auto const& s : all_closed_subsets(a, budget)) {
        spend(1);
        queue.push_back(subalgebra_on(a, s).algebra);
      }
      for (auto const& c : all_congruences(a)) {
        spend(1);
        queue.push_back(quotient(a, c).target());
      }
      processed.push_back(a);
      for (auto const& p : processed) {
        bool ok = true;
        for (SortId s = 0; s < a.sort_count(); ++s) {
          ok = ok && a.carrier(s) * p.carrier(s) <= product_budget;
        }
        if (!ok) {
          out.truncated = true;
          continue;
        }
        spend(1);
        queue.push_back(product(a, p).algebra);
      }
    }
    for (auto const& a : seen.members()) {
      if (fits(a, max_size)) {
        out.classes.push_back(a);
      }
    }
    std::stable_sort(out.classes.begin(), out.classes.end(),
                     [](const FiniteAlgebra& x, const FiniteAlgebra& y) {
                       return x.total_size() < y.total_size();
                     });
    return out;
  }

  Closure hsp_closure(const std::vector<FiniteAlgebra>& seeds, std::size_t max_size) {
    return hsp_closure(seeds, max_size, max_size * max_size);
  }

  MembershipVerdict is_member(const Theory&        theory,
                              const FiniteAlgebra& b,
                              const VarietySpec&   v,
                              std::uint64_t        budget) {
    MembershipVerdict out;
    if (auto const* eqs = std::get_if<EquationSpec>(&v)) {
      for (std::size_t i = 0; i < eqs->equations.size(); ++i) {
        auto r = satisfies(theory, b, eqs->equations[i]);
        if (!r.holds) {
          out.member          = false;
          out.failed_equation = i;
          out.counterexample  = r.counterexample;
          return out;
        }
      }
      return out;
    }
    auto const& g = std::get<GeneratorSpec>(v);
    if (!theory.admits(b)) {
      throw InputError("is_member: algebra signature does not match theory '"
                       + theory.name() + "'");
    }
    auto closure  = hsp_closure(g.generators, g.max_size, g.product_budget, budget);
    out.truncated = closure.truncated;
    out.member    = false;
    for (auto const& c : closure.classes) {
      if (is_isomorphic(c, b)) {
        out.member = true;
        break;
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Separation
  ////////////////////////////////////////////////////////////////////////

  std::vector<Term> all_terms(const Theory&     theory,
                              const VarContext& vars,
                              std::size_t       max_depth,
                              std::uint64_t     budget) {
    auto const&             sig = theory.signature();
    std::map<Term, SortId>  level;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      level.emplace(Term::var(i), vars[i].sort);
    }
    for (OpId op = 0; op < sig.op_count(); ++op) {
      if (sig.op(op).arity() == 0) {
        level.emplace(Term::op(op), sig.op(op).codomain);
      }
    }
    auto spend = [&](std::size_t n) {
      if (n > budget) {
        throw BudgetExceeded("all_terms: more than " + std::to_string(budget) + " terms");
      }
    };
    if (max_depth == 0) {
      return {};
    }
    for (std::size_t d = 2; d <= max_depth; ++d) {
      std::vector<std::pair<Term, SortId>> prev(level.begin(), level.end());
      for (OpId op = 0; op < sig.op_count(); ++op) {
        auto const& sym = sig.op(op);
        if (sym.arity() == 0) {
          continue;
        }
        std::vector<Term>                children;
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
          if (k == sym.arity()) {
            level.emplace(Term::op(op, children), sym.codomain);
            spend(level.size());
            return;
          }
          for (auto const& [t, s] : prev) {
            if (s == sym.domain[k]) {
              children.push_back(t);
              rec(k + 1);
              children.pop_back();
            }
          }
        };
        rec(0);
      }
      if (theory.omega()) {
        for (auto const& [t, s] : prev) {
          if (s == theory.omega()->sort) {
            level.emplace(Term::omega(t), s);
            spend(level.size());
          }
        }
      }
    }
    std::vector<Term> out;
    for (auto const& [t, s] : level) {
      out.push_back(t);
    }
    return out;
  }

  namespace {

    void collect_vars(const Term& t, std::vector<bool>& used) {
      if (t.kind() == Term::Kind::variable) {
        used[t.index()] = true;
      }
      for (auto const& c : t.children()) {
        collect_vars(c, used);
      }
    }

    // number of variables used, or nullopt if they are not 0..m-1
    std::optional<std::size_t> prefix_vars(const Term& a, const Term& b, std::size_t n) {
      std::vector<bool> used(n, false);
      collect_vars(a, used);
      collect_vars(b, used);
      std::size_t m = 0;
      while (m < n && used[m]) {
        ++m;
      }
      for (std::size_t i = m; i < n; ++i) {
        if (used[i]) {
          return std::nullopt;
        }
      }
      return m;
    }

    bool candidate_less(const Term& l1, const Term& r1, const Term& l2, const Term& r2) {
      auto k1 = std::make_tuple(l1.omega_count() + r1.omega_count(), l1.size() + r1.size(),
                                l1.size());
      auto k2 = std::make_tuple(l2.omega_count() + r2.omega_count(), l2.size() + r2.size(),
                                l2.size());
      if (k1 != k2) {
        return k1 < k2;
      }
      if (l1 != l2) {
        return l1 < l2;
      }
      return r1 < r2;
    }

  }  // namespace

  std::optional<Separation> separate(const Theory&                     theory,
                                     const std::vector<FiniteAlgebra>& inside,
                                     const FiniteAlgebra&              outside,
                                     std::size_t                       max_vars,
                                     std::size_t                       max_depth,
                                     std::uint64_t                     budget) {
    if (!theory.admits(outside)) {
      throw InputError("separate: algebra signature does not match theory '"
                       + theory.name() + "'");
    }
    for (auto const& a : inside) {
      if (!theory.admits(a)) {
        throw InputError("separate: algebra signature does not match theory '"
                         + theory.name() + "'");
      }
    }
    bool       ordered = theory.signature().ordered();
    SortId     vsort   = theory.omega() ? theory.omega()->sort : 0;
    VarContext vars    = default_context(max_vars, vsort);
    auto       terms   = all_terms(theory, vars, max_depth, budget);

    // values of every term at every assignment of every algebra; the
    // outside algebra's block comes last
    std::vector<const FiniteAlgebra*> algebras;
    for (auto const& a : inside) {
      algebras.push_back(&a);
    }
    algebras.push_back(&outside);
    std::vector<std::vector<Assignment>> assigns;
    for (auto const* a : algebras) {
      assigns.push_back(all_assignments(*a, vars));
    }
    std::vector<SortId>               sorts;
    std::vector<std::vector<Element>> values;
    for (auto const& t : terms) {
      sorts.push_back(sort_of(t, theory, vars));
      std::vector<Element> v;
      for (std::size_t k = 0; k < algebras.size(); ++k) {
        for (auto const& f : assigns[k]) {
          v.push_back(eval_implicit(theory, *algebras[k], t, f));
        }
      }
      values.push_back(std::move(v));
    }
    // position -> (algebra) for order lookups
    std::vector<std::size_t> owner;
    for (std::size_t k = 0; k < algebras.size(); ++k) {
      owner.insert(owner.end(), assigns[k].size(), k);
    }
    std::size_t outside_begin = owner.size() - assigns.back().size();

    auto separates = [&](std::size_t l, std::size_t r) {
      auto const& vl = values[l];
      auto const& vr = values[r];
      SortId      s  = sorts[l];
      auto rel = [&](std::size_t p) {
        return ordered ? algebras[owner[p]]->leq(s, vl[p], vr[p]) : vl[p] == vr[p];
      };
      for (std::size_t p = 0; p < outside_begin; ++p) {
        if (!rel(p)) {
          return false;
        }
      }
      for (std::size_t p = outside_begin; p < vl.size(); ++p) {
        if (!rel(p)) {
          return true;
        }
      }
      return false;
    };
    auto larger = [&](std::size_t a, std::size_t b) {
      if (terms[a].size() != terms[b].size()) {
        return terms[a].size() > terms[b].size();
      }
      return terms[b] < terms[a];
    };

    std::optional<std::pair<std::size_t, std::size_t>> best;
    auto consider = [&](std::size_t l, std::size_t r) {
      if (best
          && !candidate_less(terms[l], terms[r], terms[best->first], terms[best->second])) {
        return;
      }
      if (separates(l, r)) {
        best.emplace(l, r);
      }
    };
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (std::size_t j = i + 1; j < terms.size(); ++j) {
        if (sorts[i] != sorts[j] || !prefix_vars(terms[i], terms[j], max_vars)) {
          continue;
        }
        if (ordered) {
          consider(i, j);
          consider(j, i);
        } else if (larger(i, j)) {
          consider(i, j);
        } else {
          consider(j, i);
        }
      }
    }
    if (!best) {
      return std::nullopt;
    }
    auto const& l = terms[best->first];
    auto const& r = terms[best->second];
    std::size_t m = *prefix_vars(l, r, max_vars);
    OmegaEquation eq{default_context(m, vsort), l, r,
                     ordered ? RelationKind::less_equal : RelationKind::equal};
    auto verdict = satisfies(theory, outside, eq);
    return Separation{std::move(eq), std::move(*verdict.counterexample)};
  }

}  // namespace profinite
