#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "profinite/approx.hpp"
#include "profinite/constructions.hpp"
#include "profinite/enumerate.hpp"
#include "profinite/error.hpp"
#include "profinite/eval.hpp"
#include "profinite/pseudovariety.hpp"
#include "profinite/term_parser.hpp"
#include "profinite/zoo.hpp"

using namespace profinite;

namespace {

  const Theory& mon() {
    static const Theory t = Theory::monoid();
    return t;
  }

  OmegaEquation eq(std::string_view text, std::size_t nvars = 1, const Theory& t = mon()) {
    return parse_equation(text, t, default_context(nvars));
  }

  const std::vector<FiniteAlgebra>& monoids_up_to_3() {
    static const auto all = enumerate_algebras(mon(), 3);
    return all;
  }

  // Direct check over all assignments, independent of satisfies().
  bool holds_everywhere(const Theory& t, const FiniteAlgebra& a, const OmegaEquation& e) {
    std::vector<Element> f(e.vars.size(), 0);
    do {
      Element l = eval_implicit(t, a, e.lhs, f);
      Element r = eval_implicit(t, a, e.rhs, f);
      if (e.relation == RelationKind::equal ? l != r : !a.leq(0, l, r)) {
        return false;
      }
    } while (oracle::next_word(f, a.carrier(0)));
    return true;
  }

  bool contains_iso(const std::vector<FiniteAlgebra>& list, const FiniteAlgebra& a) {
    return std::any_of(list.begin(), list.end(), [&](auto const& b) { return oracle::isomorphic(a, b); });
  }

  PointedAlgebra pointed(const FiniteAlgebra& a, Element x) {
    return {a, default_context(1), {x}};
  }

}  // namespace

TEST_CASE("equation satisfaction", "[pseudovariety][satisfies]") {
  auto aperiodic = eq("x^w * x = x^w");
  CHECK(satisfies(mon(), zoo::u1(), aperiodic).holds);

  auto z2 = satisfies(mon(), zoo::cyclic_group(2), aperiodic);
  CHECK_FALSE(z2.holds);
  CHECK(z2.counterexample == Assignment{1});

  for (auto const& a : monoids_up_to_3()) {
    CHECK(satisfies(mon(), a, eq("x * y * x^w = x * y * x^w", 2)).holds);
  }
}

TEST_CASE("satisfaction agrees with direct evaluation", "[pseudovariety][satisfies]") {
  std::vector<OmegaEquation> pool;
  for (auto const* s : {"x * x = x", "x^w * x = x^w", "x * y = y * x", "x^w = 1", "x * y * x = x",
                        "(x * y)^w * x = (x * y)^w", "x^w * y^w = y^w * x^w"}) {
    pool.push_back(eq(s, 2));
  }
  for (auto const& a : monoids_up_to_3()) {
    for (auto const& e : pool) {
      auto v = satisfies(mon(), a, e);
      CHECK(v.holds == holds_everywhere(mon(), a, e));
      if (!v.holds) {
        REQUIRE(v.counterexample.has_value());
        CHECK(eval_implicit(mon(), a, e.lhs, *v.counterexample)
              != eval_implicit(mon(), a, e.rhs, *v.counterexample));
      }
    }
  }
}

TEST_CASE("ordered satisfaction", "[pseudovariety][satisfies]") {
  Theory ord = Theory::monoid(true);
  auto   le1 = eq("x <= 1", 1, ord);
  auto   ge1 = eq("1 <= x", 1, ord);
  auto   refl = eq("x <= x", 1, ord);
  auto   nat  = zoo::u1_ordered(zoo::U1Order::natural);
  auto   dual = zoo::u1_ordered(zoo::U1Order::dual);
  auto   disc = zoo::u1_ordered(zoo::U1Order::discrete);
  CHECK(satisfies(ord, nat, le1).holds);
  CHECK_FALSE(satisfies(ord, nat, ge1).holds);
  CHECK(satisfies(ord, dual, ge1).holds);
  CHECK_FALSE(satisfies(ord, dual, le1).holds);
  CHECK_FALSE(satisfies(ord, disc, le1).holds);
  CHECK_FALSE(satisfies(ord, disc, ge1).holds);
  CHECK(satisfies(ord, disc, refl).holds);
}

TEST_CASE("pseudoequation satisfaction", "[pseudovariety][pseudoequation]") {
  auto rho = Pseudoequation::join_closure(default_context(1), {pointed(zoo::u1(), 0)}, 4);
  CHECK(rho.members().size() == 1);
  CHECK(satisfies_pseudoequation(zoo::u1(), rho).holds);

  auto z2 = satisfies_pseudoequation(zoo::cyclic_group(2), rho);
  CHECK_FALSE(z2.holds);
  CHECK(z2.counterexample == Assignment{1});

  CHECK(satisfies_pseudoequation(zoo::trivial(), rho).holds);
  auto rho2 = Pseudoequation::join_closure(default_context(1), {pointed(zoo::cyclic_group(3), 1)}, 4);
  CHECK(satisfies_pseudoequation(zoo::trivial(), rho2).holds);
}

TEST_CASE("pseudoequations must be join-closed", "[pseudovariety][pseudoequation]") {
  std::vector<PointedAlgebra> members{pointed(zoo::u1(), 0), pointed(zoo::cyclic_group(2), 1)};
  CHECK_THROWS_AS(Pseudoequation::from_members(default_context(1), members), InputError);
  CHECK_THROWS_AS(Pseudoequation::join_closure(default_context(1), members, 2), InputError);

  auto closed = Pseudoequation::join_closure(default_context(1), members, 3);
  CHECK(closed.members().size() == 3);
  CHECK_NOTHROW(Pseudoequation::from_members(default_context(1), closed.members()));

  // not generated by its point
  CHECK_THROWS_AS(Pseudoequation::from_members(default_context(1), {pointed(zoo::u1(), 1)}),
                  InputError);
}

TEST_CASE("closure under quotients, subalgebras and products", "[pseudovariety][closure]") {
  auto t = hsp_closure({zoo::trivial()}, 4);
  REQUIRE(t.classes.size() == 1);
  CHECK(t.classes[0].carrier(0) == 1);

  auto z2 = hsp_closure({zoo::cyclic_group(2)}, 4, 4).classes;
  REQUIRE(z2.size() == 3);
  CHECK(contains_iso(z2, zoo::trivial()));
  CHECK(contains_iso(z2, zoo::cyclic_group(2)));
  CHECK(contains_iso(z2, product(zoo::cyclic_group(2), zoo::cyclic_group(2)).algebra));

  auto u1 = hsp_closure({zoo::u1()}, 4, 4).classes;
  REQUIRE(u1.size() == 4);
  CHECK(contains_iso(u1, zoo::trivial()));
  CHECK(contains_iso(u1, zoo::u1()));
  CHECK(contains_iso(u1, zoo::chain(3)));
  CHECK(contains_iso(u1, product(zoo::u1(), zoo::u1()).algebra));

  auto c = hsp_closure({zoo::u1()}, 3, 9);
  CHECK(c.classes.size() == 3);
  CHECK(c.truncated);
}

TEST_CASE("closure members satisfy the identities of the seeds", "[pseudovariety][closure]") {
  auto c = hsp_closure({zoo::u1()}, 4, 4).classes;
  for (auto const& a : c) {
    CHECK(satisfies(mon(), a, eq("x * x = x")).holds);
    CHECK(satisfies(mon(), a, eq("x * y = y * x", 2)).holds);
  }
  auto g = hsp_closure({zoo::cyclic_group(3)}, 9, 9).classes;
  for (auto const& a : g) {
    CHECK(satisfies(mon(), a, eq("x * x * x = 1")).holds);
    CHECK(validate_algebra(a, mon()).empty());
  }
  CHECK(g.size() == 3);  // 1, Z3, Z3 x Z3
}

TEST_CASE("membership", "[pseudovariety][membership]") {
  EquationSpec aperiodic{{eq("x^w * x = x^w")}};
  CHECK(is_member(mon(), zoo::u1(), aperiodic).member);

  auto z2 = is_member(mon(), zoo::cyclic_group(2), aperiodic);
  CHECK_FALSE(z2.member);
  CHECK(z2.failed_equation == std::optional<std::size_t>(0));
  CHECK(z2.counterexample == Assignment{1});

  GeneratorSpec gens{{zoo::u1()}, 4, 4};
  CHECK_FALSE(is_member(mon(), zoo::cyclic_group(2), gens).member);
  CHECK(is_member(mon(), zoo::chain(3), gens).member);

  for (auto const& spec : {VarietySpec(aperiodic), VarietySpec(gens)}) {
    CHECK(is_member(mon(), zoo::trivial(), spec).member);
  }
}

TEST_CASE("separating equations", "[pseudovariety][separate]") {
  auto u1 = zoo::u1();
  auto z2 = zoo::cyclic_group(2);

  auto s1 = separate(mon(), {u1}, z2, 1, 2);
  REQUIRE(s1.has_value());
  CHECK(to_string(s1->equation, mon()) == "x * x = x");
  CHECK(s1->witness == Assignment{1});

  auto s2 = separate(mon(), {z2}, u1, 1, 2);
  REQUIRE(s2.has_value());
  CHECK(to_string(s2->equation, mon()) == "x * x = 1");
  CHECK(s2->witness == Assignment{0});

  CHECK_FALSE(separate(mon(), {u1, z2}, z2, 2, 3).has_value());
  CHECK_THROWS_AS(separate(mon(), {u1}, z2, 2, 4, 5), BudgetExceeded);
}

TEST_CASE("separating equations are sound", "[pseudovariety][separate]") {
  auto const& all = monoids_up_to_3();
  for (auto const& inside : all) {
    for (auto const& outside : all) {
      auto s = separate(mon(), {inside}, outside, 1, 3);
      if (!s) {
        continue;
      }
      CHECK(holds_everywhere(mon(), inside, s->equation));
      CHECK_FALSE(holds_everywhere(mon(), outside, s->equation));
      CHECK(eval_implicit(mon(), outside, s->equation.lhs, s->witness)
            != eval_implicit(mon(), outside, s->equation.rhs, s->witness));
    }
  }
}

TEST_CASE("ordered separation finds inequations", "[pseudovariety][separate]") {
  Theory ord  = Theory::monoid(true);
  auto   nat  = zoo::u1_ordered(zoo::U1Order::natural);
  auto   dual = zoo::u1_ordered(zoo::U1Order::dual);
  auto   s    = separate(ord, {nat}, dual, 1, 2);
  REQUIRE(s.has_value());
  CHECK(s->equation.relation == RelationKind::less_equal);
  CHECK(holds_everywhere(ord, nat, s->equation));
  CHECK_FALSE(holds_everywhere(ord, dual, s->equation));
}

TEST_CASE("terms are enumerated sorted and without repeats", "[pseudovariety][separate]") {
  auto ts = all_terms(mon(), default_context(2), 3);
  CHECK(std::is_sorted(ts.begin(), ts.end()));
  CHECK(std::adjacent_find(ts.begin(), ts.end()) == ts.end());
  for (auto const& t : ts) {
    CHECK(t.depth() <= 3);
  }
  auto one = all_terms(mon(), default_context(1), 1);
  CHECK(one == std::vector<Term>{Term::var(0), Term::op(1)});
}

TEST_CASE("canonical pseudoequations", "[pseudovariety][canonical]") {
  VarContext x = default_context(1);
  auto       t = canonical_pseudoequation({zoo::trivial()}, x, 2);
  CHECK(t.rho.members().size() == 1);
  CHECK(t.overflows.empty());

  auto tu = canonical_pseudoequation({zoo::trivial(), zoo::u1()}, x, 2);
  REQUIRE(tu.rho.members().size() == 2);
  auto const& ms = tu.rho.members();
  auto        u  = std::find_if(ms.begin(), ms.end(), [](auto& p) { return p.algebra.carrier(0) == 2; });
  auto        o  = std::find_if(ms.begin(), ms.end(), [](auto& p) { return p.algebra.carrier(0) == 1; });
  REQUIRE(u != ms.end());
  REQUIRE(o != ms.end());
  CHECK(pointed_isomorphism(pointed_join(*u, *o), *u).has_value());

  auto all = canonical_pseudoequation(enumerate_algebras(mon(), 2), x, 2);
  CHECK(all.rho.members().size() == 3);
  // (U1, zero) joined with (Z2, g) is the 3-element {1, x, x^2}
  REQUIRE(all.overflows.size() == 1);
  CHECK(all.overflows[0].size == 3);

  CHECK_THROWS_AS(canonical_pseudoequation({zoo::u1()}, x, 2), InputError);
}

TEST_CASE("canonical pseudoequations of generated classes", "[pseudovariety][canonical]") {
  auto v   = hsp_closure({zoo::u1()}, 3, 9).classes;
  auto rho = canonical_pseudoequation(v, default_context(1), 3).rho;
  CHECK(rho.members().size() == 2);
  for (auto const& b : v) {
    CHECK(satisfies_pseudoequation(b, rho).holds);
  }
  CHECK_FALSE(satisfies_pseudoequation(zoo::cyclic_group(2), rho).holds);
  // One variable does not see the failure of commutativity.
  CHECK(satisfies_pseudoequation(zoo::left_zero_band_with_identity(), rho).holds);
}

TEST_CASE("two variables present the class generated by U1", "[pseudovariety][canonical]") {
  auto v   = hsp_closure({zoo::u1()}, 3, 9).classes;
  auto rho = canonical_pseudoequation(v, default_context(2), 3).rho;
  for (auto const& b : monoids_up_to_3()) {
    CHECK(satisfies_pseudoequation(b, rho).holds == contains_iso(v, b));
  }
}

TEST_CASE("satisfaction is preserved by quotients, subalgebras and products",
          "[pseudovariety][closure]") {
  std::vector<OmegaEquation> pool{eq("x * x = x", 2), eq("x^w * x = x^w", 2), eq("x * y = y * x", 2),
                                  eq("x^w = 1", 2)};
  auto all = enumerate_algebras(mon(), 2);
  for (auto const& e : pool) {
    for (auto const& a : all) {
      if (!satisfies(mon(), a, e).holds) {
        continue;
      }
      for (auto const& c : all_congruences(a)) {
        CHECK(satisfies(mon(), quotient(a, c).target(), e).holds);
      }
      for (auto const& s : all_closed_subsets(a)) {
        CHECK(satisfies(mon(), subalgebra_on(a, s).algebra, e).holds);
      }
      for (auto const& b : all) {
        if (satisfies(mon(), b, e).holds) {
          CHECK(satisfies(mon(), product(a, b).algebra, e).holds);
        }
      }
    }
  }
}
