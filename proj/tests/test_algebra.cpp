#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "profinite/constructions.hpp"
#include "profinite/enumerate.hpp"
#include "profinite/error.hpp"
#include "profinite/homomorphism.hpp"
#include "profinite/term_parser.hpp"
#include "profinite/theory.hpp"
#include "profinite/zoo.hpp"

using namespace profinite;

namespace {

  const std::vector<FiniteAlgebra>& monoids_up_to_3() {
    static const auto all = enumerate_algebras(Theory::monoid(), 3);
    return all;
  }

  const std::vector<FiniteAlgebra>& monoids_up_to_4() {
    static const auto all = enumerate_algebras(Theory::monoid(), 4);
    return all;
  }

  bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
  }

  bool any_starts_with(const std::vector<std::string>& msgs, const std::string& prefix) {
    return std::any_of(msgs.begin(), msgs.end(), [&](auto const& m) { return starts_with(m, prefix); });
  }

  Homomorphism mod_map(std::size_t from, std::size_t to) {
    std::vector<Element> f;
    for (std::size_t i = 0; i < from; ++i) {
      f.push_back(static_cast<Element>(i % to));
    }
    return Homomorphism(zoo::cyclic_group(from), zoo::cyclic_group(to), {f});
  }

}  // namespace

TEST_CASE("validation accepts U1 and rejects broken tables", "[algebra]") {
  CHECK(validate_algebra(zoo::u1(), Theory::monoid()).empty());

  auto bad = zoo::monoid(2, {0, 0, 0, 5}, 1);
  CHECK(any_starts_with(validate_algebra(bad), "table not total"));
}

TEST_CASE("validation checks monotonicity of ordered algebras", "[algebra]") {
  CHECK(validate_algebra(zoo::u1_ordered(zoo::U1Order::natural)).empty());

  Relation r = Relation::identity(2);
  r.set(0, 1);
  auto z2 = zoo::monoid(2, {0, 1, 1, 0}, 0, true, {r});
  CHECK(any_starts_with(validate_algebra(z2), "op not monotone"));

  Relation cyclic(2);
  cyclic.set(0, 1);
  cyclic.set(1, 0);
  auto broken = zoo::monoid(2, {0, 0, 0, 1}, 1, true, {cyclic});
  CHECK(any_starts_with(validate_algebra(broken), "order not reflexive"));
}

TEST_CASE("validation reports law violations", "[algebra]") {
  // 2-element left-zero semigroup with a fake identity
  auto a = zoo::monoid(2, {0, 0, 1, 1}, 0);
  auto v = validate_algebra(a, Theory::monoid());
  CHECK(any_starts_with(v, "law violated"));
}

TEST_CASE("products", "[algebra][product]") {
  auto p = product(zoo::u1(), zoo::cyclic_group(2));
  CHECK(p.algebra.carrier(0) == 4);
  CHECK(p.first.is_surjective());
  CHECK(p.second.is_surjective());
  CHECK(p.first.is_homomorphism());
  CHECK(p.second.is_homomorphism());

  for (auto const& a : monoids_up_to_3()) {
    auto t = product(a, zoo::trivial());
    CHECK(is_isomorphic(t.algebra, a).has_value());
  }

  auto z6 = product(zoo::cyclic_group(2), zoo::cyclic_group(3)).algebra;
  CHECK(is_isomorphic(z6, zoo::cyclic_group(6)).has_value());
  CHECK(oracle::isomorphic(z6, zoo::cyclic_group(6)));
}

TEST_CASE("product projections are jointly injective", "[algebra][product]") {
  auto const& all = monoids_up_to_3();
  for (auto const& a : all) {
    for (auto const& b : all) {
      auto                                      p = product(a, b);
      std::set<std::pair<Element, Element>> seen;
      for (Element x = 0; x < p.algebra.carrier(0); ++x) {
        seen.insert({p.first(0, x), p.second(0, x)});
      }
      CHECK(seen.size() == p.algebra.carrier(0));
    }
  }
}

TEST_CASE("generated subalgebras", "[algebra][subalgebra]") {
  auto z6 = zoo::cyclic_group(6);
  auto s  = subalgebra_generated(z6, {{2}});
  CHECK(s.algebra.carrier(0) == 3);
  CHECK(s.embedding.maps()[0] == std::vector<Element>{0, 2, 4});
  CHECK(is_isomorphic(s.algebra, zoo::cyclic_group(3)).has_value());

  auto m   = zoo::left_zero_band_with_identity();
  auto all = subalgebra_generated(m, {{0, 1, 2}});
  CHECK(all.algebra == m);
  CHECK(all.embedding == identity_homomorphism(m));

  auto one = subalgebra_generated(zoo::u1(), {{}});
  CHECK(one.algebra.carrier(0) == 1);
  CHECK(one.embedding.maps()[0] == std::vector<Element>{1});
  CHECK(one.embedding.is_order_reflecting());
}

TEST_CASE("generated congruences", "[algebra][congruence]") {
  auto z3 = zoo::cyclic_group(3);
  auto c  = congruence_generated(z3, {{0, 0, 1}});
  CHECK(c.block_count(0) == 1);
  CHECK(quotient(z3, c).target().carrier(0) == 1);

  auto m = zoo::left_zero_band_with_identity();
  CHECK(congruence_generated(m, {}) == Congruence::identity(m));

  auto z6 = zoo::cyclic_group(6);
  auto c6 = congruence_generated(z6, {{0, 0, 3}});
  CHECK(c6.blocks()[0] == std::vector<Element>{0, 1, 2, 0, 1, 2});
}

TEST_CASE("generated congruence is the meet of congruences containing the pairs",
          "[algebra][congruence]") {
  for (auto const& a : monoids_up_to_4()) {
    Element n = static_cast<Element>(a.carrier(0));
    for (Element x = 0; x < n; ++x) {
      for (Element y = x + 1; y < n; ++y) {
        auto c = congruence_generated(a, {{0, x, y}});
        CHECK(c.blocks()[0] == oracle::congruence_by_intersection(a, {{x, y}}));
        CHECK(c.is_compatible());
      }
    }
  }
}

TEST_CASE("all_congruences matches the compatible partitions", "[algebra][congruence]") {
  for (auto const& a : monoids_up_to_4()) {
    auto                              cs = all_congruences(a);
    std::set<std::vector<Element>> got;
    for (auto const& c : cs) {
      got.insert(c.blocks()[0]);
    }
    std::set<std::vector<Element>> expected;
    auto                              r = oracle::raw(a);
    for (auto const& p : oracle::all_partitions(a.carrier(0))) {
      if (oracle::compatible(r, p)) {
        expected.insert(p);
      }
    }
    CHECK(got == expected);
  }
}

TEST_CASE("quotients", "[algebra][quotient]") {
  auto z6 = zoo::cyclic_group(6);
  auto q  = quotient(z6, Congruence(z6, {{0, 1, 2, 0, 1, 2}}));
  CHECK(is_isomorphic(q.target(), zoo::cyclic_group(3)).has_value());
  CHECK(q.map.is_surjective());
  CHECK(q.map.is_homomorphism());

  auto m = zoo::left_zero_band_with_identity();
  CHECK(is_isomorphic(quotient(m, Congruence::identity(m)).target(), m).has_value());

  auto z2 = zoo::cyclic_group(2);
  CHECK(quotient(z2, Congruence::full(z2)).target().carrier(0) == 1);

  // {0,1} | {2} in the left-zero band with identity is not compatible
  CHECK_THROWS_AS(quotient(m, Congruence(m, {{0, 0, 1}})), InputError);
}

TEST_CASE("quotient by the kernel of a surjection is its image", "[algebra][quotient]") {
  auto const& all = monoids_up_to_4();
  for (auto const& a : all) {
    for (auto const& b : all) {
      if (b.carrier(0) > a.carrier(0)) {
        continue;
      }
      for (auto const& f : homomorphisms(a, b)) {
        if (!f.is_surjective()) {
          continue;
        }
        std::vector<ElementPair> pairs;
        for (Element x = 0; x < a.carrier(0); ++x) {
          for (Element y = x + 1; y < a.carrier(0); ++y) {
            if (f(0, x) == f(0, y)) {
              pairs.push_back({0, x, y});
            }
          }
        }
        auto q = quotient(a, congruence_generated(a, pairs));
        CHECK(oracle::isomorphic(q.target(), b));
      }
    }
  }
}

TEST_CASE("factorization examples", "[algebra][factorize]") {
  auto z2 = zoo::cyclic_group(2);
  auto u1 = zoo::u1();
  Homomorphism f(z2, u1, {{1, 1}});
  REQUIRE(f.is_homomorphism());
  auto fac = factorize(f);
  CHECK(fac.epi.target().carrier(0) == 1);
  CHECK(fac.mono.maps()[0] == std::vector<Element>{1});
  CHECK(compose(fac.mono, fac.epi.map) == f);

  auto m  = zoo::left_zero_band_with_identity();
  auto id = factorize(identity_homomorphism(m));
  CHECK(id.epi.kernel == Congruence::identity(m));
  CHECK(id.mono.is_injective());
  CHECK(id.mono.is_surjective());

  auto g   = mod_map(6, 2);
  auto fg  = factorize(g);
  CHECK(fg.epi.map.maps() == g.maps());
  CHECK(fg.mono.maps()[0] == std::vector<Element>{0, 1});
}

TEST_CASE("factorization of every homomorphism between small monoids", "[algebra][factorize]") {
  auto const& all = monoids_up_to_3();
  for (auto const& a : all) {
    for (auto const& b : all) {
      for (auto const& f : homomorphisms(a, b)) {
        auto fac = factorize(f);
        CHECK(compose(fac.mono, fac.epi.map).maps() == f.maps());
        CHECK(fac.epi.map.is_surjective());
        CHECK(fac.mono.is_injective());
        CHECK(fac.mono.is_homomorphism());
      }
    }
  }
}

TEST_CASE("factorization of ordered monoids reflects the order", "[algebra][factorize]") {
  auto all = enumerate_algebras(Theory::monoid(true), 3);
  REQUIRE(all.size() == 42);
  for (auto const& a : all) {
    for (auto const& b : all) {
      for (auto const& f : homomorphisms(a, b)) {
        CHECK(f.is_monotone());
        auto fac = factorize(f);
        CHECK(compose(fac.mono, fac.epi.map).maps() == f.maps());
        CHECK(fac.epi.map.is_surjective());
        CHECK(fac.mono.is_order_reflecting());
        CHECK(validate_algebra(fac.epi.target()).empty());
      }
    }
  }
}

TEST_CASE("joins of quotients", "[algebra][join]") {
  auto z6 = zoo::cyclic_group(6);
  auto e2 = factorize(mod_map(6, 2)).epi;
  auto e3 = factorize(mod_map(6, 3)).epi;
  auto j  = join_quotients(e2, e3);
  CHECK(j.target().carrier(0) == 6);
  CHECK(is_isomorphic(j.target(), z6).has_value());

  auto jj = join_quotients(e2, e2);
  CHECK(jj.kernel == e2.kernel);

  auto full = quotient(z6, Congruence::full(z6));
  CHECK(join_quotients(e2, full).kernel == e2.kernel);
}

TEST_CASE("join is the least upper bound among quotients", "[algebra][join]") {
  for (auto const& a : monoids_up_to_4()) {
    std::vector<Quotient> qs;
    for (auto const& c : all_congruences(a)) {
      qs.push_back(quotient(a, c));
    }
    for (auto const& e1 : qs) {
      for (auto const& e2 : qs) {
        auto j = join_quotients(e1, e2);
        // kernel of the join = intersection of kernels
        for (Element x = 0; x < a.carrier(0); ++x) {
          for (Element y = 0; y < a.carrier(0); ++y) {
            CHECK(j.kernel.related(0, x, y)
                  == (e1.kernel.related(0, x, y) && e2.kernel.related(0, x, y)));
          }
        }
        CHECK(quotient_leq(e1, j));
        CHECK(quotient_leq(e2, j));
        for (auto const& u : qs) {
          if (quotient_leq(e1, u) && quotient_leq(e2, u)) {
            CHECK(quotient_leq(j, u));
          }
        }
      }
    }
  }
}

TEST_CASE("homomorphism counts", "[algebra][hom]") {
  auto z2 = zoo::cyclic_group(2);
  auto u1 = zoo::u1();

  auto zu = homomorphisms(z2, u1);
  REQUIRE(zu.size() == 1);
  CHECK(zu[0].maps()[0] == std::vector<Element>{1, 1});

  auto uz = homomorphisms(u1, z2);
  REQUIRE(uz.size() == 1);
  CHECK(uz[0].maps()[0] == std::vector<Element>{0, 0});

  for (auto const& a : monoids_up_to_3()) {
    CHECK(homomorphisms(a, zoo::trivial()).size() == 1);
  }
}

TEST_CASE("homomorphisms agree with a scan of all maps", "[algebra][hom]") {
  auto const& all = monoids_up_to_3();
  for (auto const& a : all) {
    for (auto const& b : all) {
      std::vector<std::vector<Element>> got;
      for (auto const& f : homomorphisms(a, b)) {
        got.push_back(f.maps()[0]);
      }
      CHECK(got == oracle::all_monoid_homs(a, b));
    }
  }
}

TEST_CASE("ordered homomorphisms agree with a scan of all maps", "[algebra][hom]") {
  auto all = enumerate_algebras(Theory::monoid(true), 2);
  for (auto const& a : all) {
    for (auto const& b : all) {
      std::vector<std::vector<Element>> got;
      for (auto const& f : homomorphisms(a, b)) {
        got.push_back(f.maps()[0]);
      }
      CHECK(got == oracle::all_monoid_homs(a, b));
    }
  }
}

TEST_CASE("isomorphism", "[algebra][iso]") {
  CHECK_FALSE(is_isomorphic(zoo::u1(), zoo::cyclic_group(2)).has_value());
  auto m  = zoo::left_zero_band_with_identity();
  auto id = is_isomorphic(m, m);
  REQUIRE(id.has_value());
  CHECK(id->is_homomorphism());
  CHECK(id->is_injective());

  auto z23 = product(zoo::cyclic_group(2), zoo::cyclic_group(3)).algebra;
  auto iso = is_isomorphic(z23, zoo::cyclic_group(6));
  REQUIRE(iso.has_value());
  CHECK(iso->is_homomorphism());
  CHECK(iso->is_surjective());

  // natural and dual ordered U1 are not isomorphic; natural and discrete neither
  CHECK_FALSE(is_isomorphic(zoo::u1_ordered(zoo::U1Order::natural),
                            zoo::u1_ordered(zoo::U1Order::dual)));
  CHECK_FALSE(is_isomorphic(zoo::u1_ordered(zoo::U1Order::natural),
                            zoo::u1_ordered(zoo::U1Order::discrete)));
}

TEST_CASE("isomorphism agrees with permutation canonical forms", "[algebra][iso]") {
  auto const& all = monoids_up_to_3();
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      CHECK(is_isomorphic(all[i], all[j]).has_value() == oracle::isomorphic(all[i], all[j]));
      CHECK(oracle::isomorphic(all[i], all[j]) == (i == j));
    }
  }
}

TEST_CASE("enumeration examples", "[algebra][enumerate]") {
  Theory m = Theory::monoid();
  CHECK(enumerate_algebras(m, 1).size() == 1);

  auto two = enumerate_algebras(m, 2);
  REQUIRE(two.size() == 3);
  CHECK(oracle::isomorphic(two[0], zoo::trivial()));
  bool has_u1 = false, has_z2 = false;
  for (auto const& a : two) {
    has_u1 = has_u1 || oracle::isomorphic(a, zoo::u1());
    has_z2 = has_z2 || oracle::isomorphic(a, zoo::cyclic_group(2));
  }
  CHECK(has_u1);
  CHECK(has_z2);

  auto comm = parse_equation_file("vars: x y\nx * y = y * x\n", m);
  CHECK(enumerate_algebras(m, 2, comm).size() == 3);
}

TEST_CASE("enumeration agrees with an unpruned table scan", "[algebra][enumerate]") {
  Theory m = Theory::monoid();
  for (std::size_t n = 1; n <= 3; ++n) {
    std::set<std::vector<std::uint32_t>> got;
    for (auto const& a : enumerate_algebras(m, n)) {
      got.insert(oracle::canonical(a));
    }
    CHECK(got == oracle::brute_monoid_classes(n));
  }
  auto comm = parse_equation_file("vars: x y\nx * y = y * x\n", m);
  std::set<std::vector<std::uint32_t>> got;
  for (auto const& a : enumerate_algebras(m, 3, comm)) {
    got.insert(oracle::canonical(a));
  }
  CHECK(got == oracle::brute_monoid_classes(3, true));
}

TEST_CASE("enumeration respects its budget", "[algebra][enumerate]") {
  CHECK_THROWS_AS(enumerate_algebras(Theory::monoid(), 3, {}, 10), BudgetExceeded);
}

TEST_CASE("partial orders", "[algebra][enumerate]") {
  // 1, 1, 3, 19 labeled posets on 0..3 elements
  CHECK(all_partial_orders(0).size() == 1);
  CHECK(all_partial_orders(1).size() == 1);
  CHECK(all_partial_orders(2).size() == 3);
  CHECK(all_partial_orders(3).size() == 19);
  CHECK(all_partial_orders(3)[0] == Relation::identity(3));
}

TEST_CASE("ordered enumeration", "[algebra][enumerate]") {
  auto two = enumerate_algebras(Theory::monoid(true), 2);
  CHECK(two.size() == 5);
  for (auto const& a : two) {
    CHECK(validate_algebra(a, Theory::monoid(true)).empty());
  }
}

TEST_CASE("iso class list", "[algebra][enumerate]") {
  IsoClassList list;
  CHECK(list.insert(zoo::u1()));
  CHECK(list.insert(zoo::cyclic_group(2)));
  CHECK_FALSE(list.insert(zoo::monoid(2, {0, 1, 1, 1}, 0)));
  CHECK(list.find(zoo::monoid(2, {0, 1, 1, 1}, 0)) == std::optional<std::size_t>(0));
  CHECK(list.size() == 2);
}
