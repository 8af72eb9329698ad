#include "profinite/eval.hpp"

#include "profinite/error.hpp"

namespace profinite {

  namespace {
    template <typename OmegaFn>
    Element evaluate(const FiniteAlgebra& a,
                     const Term&          t,
                     const Assignment&    f,
                     OmegaFn&&            omega) {
      switch (t.kind()) {
        case Term::Kind::variable:
          if (t.index() >= f.size()) {
            throw InputError("missing variable binding for variable #"
                             + std::to_string(t.index()));
          }
          return f[t.index()];
        case Term::Kind::omega:
          return omega(evaluate(a, t.children()[0], f, omega));
        case Term::Kind::operation:
          break;
      }
      auto const&          children = t.children();
      std::vector<Element> args(children.size());
      for (std::size_t i = 0; i < children.size(); ++i) {
        args[i] = evaluate(a, children[i], f, omega);
      }
      return a.apply(t.index(), args);
    }
  }  // namespace

  Element eval_term(const FiniteAlgebra& a, const Term& t, const Assignment& f) {
    return evaluate(a, t, f, [](Element) -> Element {
      throw InputError("eval_term: term contains an omega node");
    });
  }

  Element omega_power(const FiniteAlgebra& a, OpId mul, Element x) {
    std::size_t n = a.carrier(a.signature().op(mul).codomain);
    // first_seen[v] = k such that x^k = v (k ≥ 1)
    std::vector<std::size_t> first_seen(n, 0);
    std::vector<Element>     powers{0, x};  // powers[k] = x^k, k ≥ 1
    first_seen[x] = 1;
    for (std::size_t k = 2;; ++k) {
      Element next = a.apply(mul, {powers[k - 1], x});
      if (first_seen[next] != 0) {
        std::size_t index  = first_seen[next];
        std::size_t period = k - index;
        std::size_t m      = ((index + period - 1) / period) * period;
        return powers[m];
      }
      first_seen[next] = k;
      powers.push_back(next);
    }
  }

  Element omega_power(const Theory& theory, const FiniteAlgebra& a, Element x) {
    if (!theory.omega()) {
      throw InputError("theory '" + theory.name() + "' has no ω-power");
    }
    return omega_power(a, theory.omega()->mul, x);
  }

  Element eval_implicit(const Theory&        theory,
                        const FiniteAlgebra& a,
                        const Term&          t,
                        const Assignment&    f) {
    if (!theory.omega()) {
      return eval_term(a, t, f);
    }
    OpId mul = theory.omega()->mul;
    return evaluate(a, t, f, [&](Element v) { return omega_power(a, mul, v); });
  }

  std::vector<Assignment> all_assignments(const FiniteAlgebra& a,
                                          const VarContext&    vars) {
    std::vector<Assignment> out;
    for (auto const& v : vars) {
      if (a.carrier(v.sort) == 0) {
        return out;
      }
    }
    Assignment cur(vars.size(), 0);
    while (true) {
      out.push_back(cur);
      std::size_t i = vars.size();
      while (i > 0) {
        --i;
        if (++cur[i] < a.carrier(vars[i].sort)) {
          break;
        }
        cur[i] = 0;
        if (i == 0) {
          return out;
        }
      }
      if (vars.empty()) {
        return out;
      }
    }
  }

  SortId sort_of(const Term& t, const Theory& theory, const VarContext& vars) {
    auto const& sig = theory.signature();
    switch (t.kind()) {
      case Term::Kind::variable:
        if (t.index() >= vars.size()) {
          throw InputError("variable #" + std::to_string(t.index())
                           + " outside the context");
        }
        return vars[t.index()].sort;
      case Term::Kind::omega: {
        SortId s = sort_of(t.children()[0], theory, vars);
        if (!theory.omega() || theory.omega()->sort != s) {
          throw InputError("ω applied to ineligible sort '" + sig.sorts()[s] + "'");
        }
        return s;
      }
      case Term::Kind::operation:
        break;
    }
    auto const& sym = sig.op(t.index());
    if (sym.arity() != t.children().size()) {
      throw InputError("op '" + sym.name + "' applied to the wrong number of arguments");
    }
    for (std::size_t i = 0; i < sym.arity(); ++i) {
      if (sort_of(t.children()[i], theory, vars) != sym.domain[i]) {
        throw InputError("sort mismatch in argument " + std::to_string(i + 1)
                         + " of '" + sym.name + "'");
      }
    }
    return sym.codomain;
  }

}  // namespace profinite
