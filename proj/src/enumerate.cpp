#include "profinite/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "profinite/eval.hpp"
#include "profinite/homomorphism.hpp"

namespace profinite {

  namespace {

    constexpr Element kUnset = ~Element(0);

    // Operation tables under construction; kUnset marks open cells.
    struct PartialTables {
      const Signature*                  sig;
      const std::optional<OmegaStructure>* omega;
      std::vector<std::size_t>          carriers;
      std::vector<std::vector<Element>> tables;

      Element lookup(OpId op, const std::vector<Element>& args) const {
        auto const& dom = sig->op(op).domain;
        std::size_t idx = 0;
        for (std::size_t i = 0; i < dom.size(); ++i) {
          idx = idx * carriers[dom[i]] + args[i];
        }
        return tables[op][idx];
      }

      Element omega_power(Element x) const {
        OpId                 mul = (*omega)->mul;
        std::vector<Element> powers{x};  // powers[j] = x^(j+1)
        std::map<Element, std::size_t> seen{{x, 0}};
        while (true) {
          Element next = lookup(mul, {powers.back(), x});
          if (next == kUnset) {
            return kUnset;
          }
          if (auto it = seen.find(next); it != seen.end()) {
            std::size_t index  = it->second + 1;
            std::size_t period = powers.size() + 1 - index;
            std::size_t m      = ((index + period - 1) / period) * period;
            return powers[m - 1];
          }
          seen.emplace(next, powers.size());
          powers.push_back(next);
        }
      }

      Element eval(const Term& t, const Assignment& f) const {
        switch (t.kind()) {
          case Term::Kind::variable:
            return f[t.index()];
          case Term::Kind::omega: {
            Element x = eval(t.children()[0], f);
            return x == kUnset ? kUnset : omega_power(x);
          }
          case Term::Kind::operation:
            break;
        }
        std::vector<Element> args;
        args.reserve(t.children().size());
        for (auto const& c : t.children()) {
          Element v = eval(c, f);
          if (v == kUnset) {
            return kUnset;
          }
          args.push_back(v);
        }
        return lookup(t.index(), args);
      }
    };

    std::vector<Assignment> assignments(const std::vector<std::size_t>& carriers,
                                        const VarContext&               vars) {
      std::vector<Assignment> out;
      Assignment              f(vars.size(), 0);
      for (auto const& v : vars) {
        if (carriers[v.sort] == 0) {
          return out;
        }
      }
      while (true) {
        out.push_back(f);
        std::size_t i = vars.size();
        while (i > 0) {
          --i;
          if (++f[i] < carriers[vars[i].sort]) {
            break;
          }
          f[i] = 0;
          if (i == 0) {
            return out;
          }
        }
        if (vars.empty()) {
          return out;
        }
      }
    }

    // Carrier vectors with each entry in [lo_s, max_size], ordered by
    // total size and then lexicographically.
    std::vector<std::vector<std::size_t>> carrier_vectors(const Signature& sig,
                                                          std::size_t      max_size) {
      auto                                  inhabited = inhabited_sorts(sig);
      std::vector<std::vector<std::size_t>> out;
      std::vector<std::size_t>              c(sig.sort_count());
      std::function<void(std::size_t)>      rec = [&](std::size_t s) {
        if (s == c.size()) {
          out.push_back(c);
          return;
        }
        for (std::size_t n = inhabited[s] ? 1 : 0; n <= max_size; ++n) {
          c[s] = n;
          rec(s + 1);
        }
      };
      rec(0);
      std::stable_sort(out.begin(), out.end(), [](auto const& x, auto const& y) {
        std::size_t sx = 0, sy = 0;
        for (auto v : x) {
          sx += v;
        }
        for (auto v : y) {
          sy += v;
        }
        return sx < sy;
      });
      return out;
    }

    struct Law {
      const OmegaEquation*    eq;
      std::vector<Assignment> assignments;
    };

  }  // namespace

  std::vector<Relation> all_partial_orders(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        pairs.emplace_back(i, j);
      }
    }
    std::vector<Relation>            out;
    Relation                         r = Relation::identity(n);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == pairs.size()) {
        if (r.is_transitive()) {
          out.push_back(r);
        }
        return;
      }
      auto [i, j] = pairs[k];
      rec(k + 1);
      r.set(i, j);
      rec(k + 1);
      r.set(i, j, false);
      r.set(j, i);
      rec(k + 1);
      r.set(j, i, false);
    };
    rec(0);
    return out;
  }

  bool IsoClassList::insert(const FiniteAlgebra& a) {
    if (find(a)) {
      return false;
    }
    buckets_[invariant_hash(a)].push_back(members_.size());
    members_.push_back(a);
    return true;
  }

  std::optional<std::size_t> IsoClassList::find(const FiniteAlgebra& a) const {
    auto it = buckets_.find(invariant_hash(a));
    if (it == buckets_.end()) {
      return std::nullopt;
    }
    for (std::size_t i : it->second) {
      if (is_isomorphic(members_[i], a)) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::vector<FiniteAlgebra> enumerate_algebras(const Theory&                     theory,
                                                std::size_t                       max_size,
                                                const std::vector<OmegaEquation>& extra_laws,
                                                std::uint64_t                     budget) {
    if (max_size == 0) {
      throw InputError("enumerate_algebras: max_size must be at least 1");
    }
    auto const&  sig      = theory.signature();
    SignaturePtr base_sig = sig.ordered()
                                ? std::make_shared<const Signature>(sig.with_order(false))
                                : theory.signature_ptr();
    std::vector<const OmegaEquation*> laws;
    for (auto const& l : theory.laws()) {
      laws.push_back(&l);
    }
    for (auto const& l : extra_laws) {
      laws.push_back(&l);
    }

    // constants first, then by op id
    std::vector<OpId> op_order(sig.op_count());
    for (OpId op = 0; op < sig.op_count(); ++op) {
      op_order[op] = op;
    }
    std::stable_sort(op_order.begin(), op_order.end(), [&](OpId x, OpId y) {
      return (sig.op(x).arity() == 0) > (sig.op(y).arity() == 0);
    });

    std::uint64_t              nodes = 0;
    std::vector<FiniteAlgebra> unordered;
    for (auto const& carriers : carrier_vectors(sig, max_size)) {
      PartialTables pt{&sig, &theory.omega(), carriers, {}};
      std::vector<std::pair<OpId, std::size_t>> cells;
      for (OpId op : op_order) {
        std::size_t n = 1;
        for (SortId s : sig.op(op).domain) {
          n *= carriers[s];
        }
        for (std::size_t c = 0; c < n; ++c) {
          cells.emplace_back(op, c);
        }
      }
      pt.tables.assign(sig.op_count(), {});
      for (OpId op = 0; op < sig.op_count(); ++op) {
        std::size_t n = 1;
        for (SortId s : sig.op(op).domain) {
          n *= carriers[s];
        }
        pt.tables[op].assign(n, kUnset);
      }
      std::vector<Law> active;
      for (auto const* l : laws) {
        if (l->relation == RelationKind::equal) {
          active.push_back(Law{l, assignments(carriers, l->vars)});
        }
      }
      auto consistent = [&] {
        for (auto const& law : active) {
          for (auto const& f : law.assignments) {
            Element l = pt.eval(law.eq->lhs, f);
            if (l == kUnset) {
              continue;
            }
            Element r = pt.eval(law.eq->rhs, f);
            if (r != kUnset && l != r) {
              return false;
            }
          }
        }
        return true;
      };
      IsoClassList                     classes;
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == cells.size()) {
          classes.insert(FiniteAlgebra(base_sig, carriers, pt.tables));
          return;
        }
        auto [op, cell] = cells[k];
        std::size_t n   = carriers[sig.op(op).codomain];
        for (Element v = 0; v < n; ++v) {
          if (++nodes > budget) {
            throw BudgetExceeded("enumerate_algebras: search budget of "
                                 + std::to_string(budget) + " nodes exceeded");
          }
          pt.tables[op][cell] = v;
          if (consistent()) {
            rec(k + 1);
          }
        }
        pt.tables[op][cell] = kUnset;
      };
      rec(0);
      for (auto const& a : classes.members()) {
        unordered.push_back(a);
      }
    }
    if (!sig.ordered()) {
      return unordered;
    }

    std::vector<FiniteAlgebra> out;
    for (auto const& base : unordered) {
      std::vector<std::vector<Relation>> per_sort;
      for (SortId s = 0; s < sig.sort_count(); ++s) {
        per_sort.push_back(all_partial_orders(base.carrier(s)));
      }
      IsoClassList                     classes;
      std::vector<Relation>            orders(sig.sort_count());
      std::function<void(std::size_t)> rec = [&](std::size_t s) {
        if (s == per_sort.size()) {
          FiniteAlgebra a(theory.signature_ptr(), base.carriers(), base.tables(), orders);
          if (!validate_algebra(a).empty()) {
            return;
          }
          for (auto const* l : laws) {
            if (l->relation != RelationKind::less_equal) {
              continue;
            }
            SortId so = sort_of(l->lhs, theory, l->vars);
            for (auto const& f : all_assignments(a, l->vars)) {
              if (!a.leq(so, eval_implicit(theory, a, l->lhs, f),
                         eval_implicit(theory, a, l->rhs, f))) {
                return;
              }
            }
          }
          classes.insert(a);
          return;
        }
        for (auto const& r : per_sort[s]) {
          if (++nodes > budget) {
            throw BudgetExceeded("enumerate_algebras: search budget of "
                                 + std::to_string(budget) + " nodes exceeded");
          }
          orders[s] = r;
          rec(s + 1);
        }
      };
      rec(0);
      for (auto const& a : classes.members()) {
        out.push_back(a);
      }
    }
    return out;
  }

}  // namespace profinite
