#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "rigidity/perm_group.hpp"

using namespace rigidity;

TEST_CASE("cycle string parsing") {
  Permutation p = Permutation::from_cycle_string("(1 2)", 3);
  CHECK(p(0) == 1);
  CHECK(p(1) == 0);
  CHECK(p(2) == 2);
  CHECK(p.cycle_string() == "(1 2)");

  Permutation q = Permutation::from_cycle_string("(1 2)(3 4 5)", 5);
  CHECK(q.order() == 6);
  CHECK(q.cycle_string() == "(1 2)(3 4 5)");

  CHECK(Permutation::from_cycle_string("()", 4).is_identity());
  CHECK(Permutation::from_cycle_string("e", 4).is_identity());
  CHECK(Permutation::from_cycle_string("", 4).is_identity());
  CHECK(Permutation::identity(4).cycle_string() == "()");

  CHECK_THROWS_AS(Permutation::from_cycle_string("(1 2", 3), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_cycle_string("(0 1)", 3), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_cycle_string("(1 9)", 3), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_cycle_string("(1 1)", 3), std::invalid_argument);
  CHECK_THROWS_AS(Permutation::from_cycle_string("(1 2)(2 3)", 3), std::invalid_argument);
}

TEST_CASE("composition, inverse, moved points") {
  Permutation f = Permutation::from_cycle_string("(1 2)", 3);
  Permutation g = Permutation::from_cycle_string("(2 3)", 3);
  // (f.after(g))(x) = f(g(x)); on 0-based points: 0->1, 1->2, 2->0
  Permutation fg = f.after(g);
  CHECK(fg.cycle_string() == "(1 2 3)");
  CHECK(fg.after(fg.inverse()).is_identity());
  CHECK(f.inverse() == f);

  Permutation q = Permutation::from_cycle_string("(1 3)(2 5)", 6);
  CHECK(q.moved_points() == std::vector<int>{0, 1, 2, 4});

  CHECK_THROWS_AS(Permutation::from_images({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("closure of generators") {
  PermGroup s3 = PermGroup::close({Permutation::from_cycle_string("(1 2)", 3),
                                   Permutation::from_cycle_string("(2 3)", 3)});
  CHECK(s3.order() == 6);
  CHECK(s3 == PermGroup::symmetric(3));
  CHECK(PermGroup::symmetric(5).order() == 120);
  CHECK(PermGroup::trivial(4).order() == 1);
  CHECK_THROWS_AS(PermGroup::close({}), std::invalid_argument);
  CHECK_THROWS_AS(
      PermGroup::close({Permutation::identity(2), Permutation::identity(3)}),
      std::invalid_argument);
}

TEST_CASE("from_elements validates closure") {
  PermGroup s3 = PermGroup::symmetric(3);
  std::vector<Permutation> elems(s3.elements().begin(), s3.elements().end());
  PermGroup again = PermGroup::from_elements(elems);
  CHECK(again == s3);
  CHECK(PermGroup::from_elements_unchecked(elems) == s3);

  // {e, (1 2), (2 3)} is not closed
  CHECK_THROWS_AS(PermGroup::from_elements({Permutation::identity(3),
                                            Permutation::from_cycle_string("(1 2)", 3),
                                            Permutation::from_cycle_string("(2 3)", 3)}),
                  std::invalid_argument);
  // a list without the identity is not a group
  CHECK_THROWS_AS(PermGroup::from_elements({Permutation::from_cycle_string("(1 2)", 3)}),
                  std::invalid_argument);
}

TEST_CASE("group predicates") {
  PermGroup v4 = PermGroup::close({Permutation::from_cycle_string("(1 2)", 4),
                                   Permutation::from_cycle_string("(3 4)", 4)});
  CHECK(v4.order() == 4);
  CHECK(v4.is_abelian());
  CHECK(v4.exponent() == 2);
  CHECK(v4.element_orders() == std::vector<long>{1, 2, 2, 2});

  PermGroup s3 = PermGroup::symmetric(3);
  CHECK_FALSE(s3.is_abelian());
  CHECK(s3.exponent() == 6);
  CHECK(s3.center().size() == 1);

  PermGroup d4 = PermGroup::close({Permutation::from_cycle_string("(1 2 3 4)", 4),
                                   Permutation::from_cycle_string("(1 3)", 4)});
  CHECK(d4.order() == 8);
  CHECK(d4.center().size() == 2);
  CHECK(d4.contains(Permutation::from_cycle_string("(1 3)(2 4)", 4)));
  CHECK_FALSE(d4.contains(Permutation::from_cycle_string("(1 2)", 4)));
}

TEST_CASE("support and fixed points") {
  PermGroup g = PermGroup::close({Permutation::from_cycle_string("(1 2)", 5),
                                  Permutation::from_cycle_string("(3 4)", 5)});
  CHECK(g.support() == std::vector<int>{0, 1, 2, 3});
  CHECK(g.fixed_points() == std::vector<int>{4});
  CHECK(g.has_fixed_point());
  CHECK_FALSE(PermGroup::symmetric(3).has_fixed_point());

  // max single-element support can be smaller than the group support:
  // {e, (1 2)(3 4), (3 4)(5 6), (1 2)(5 6)} moves 6 points but each element
  // moves only 4
  PermGroup w = PermGroup::close({Permutation::from_cycle_string("(1 2)(3 4)", 6),
                                  Permutation::from_cycle_string("(3 4)(5 6)", 6)});
  CHECK(w.order() == 4);
  CHECK(w.support().size() == 6);
  std::size_t max_moved = 0;
  for (const Permutation& e : w.elements())
    max_moved = std::max(max_moved, e.moved_points().size());
  CHECK(max_moved == 4);
}

TEST_CASE("orbit statistics") {
  PermGroup a = PermGroup::close({Permutation::from_cycle_string("(1 2)(3 4)", 4)});
  OrbitStats sa = a.orbit_stats();
  CHECK(sa.p == 4);
  CHECK(sa.q == 2);
  CHECK(sa.s == 8);

  PermGroup b = PermGroup::close({Permutation::from_cycle_string("(1 2)", 5),
                                  Permutation::from_cycle_string("(3 4 5)", 5)});
  OrbitStats sb = b.orbit_stats();
  CHECK(sb.p == 5);
  CHECK(sb.q == 2);
  CHECK(sb.s == 7);

  PermGroup c = PermGroup::close({Permutation::from_cycle_string("(1 2 3)", 3)});
  OrbitStats sc = c.orbit_stats();
  CHECK(sc.q == 1);
  CHECK(sc.s == 3);

  // orbit lists are sorted and partition the domain
  std::set<int> covered;
  for (const auto& orb : sb.point_orbits) {
    CHECK(std::is_sorted(orb.begin(), orb.end()));
    for (int x : orb) covered.insert(x);
  }
  CHECK(covered.size() == 5);
}

TEST_CASE("restriction to an invariant set") {
  PermGroup g = PermGroup::close({Permutation::from_cycle_string("(1 2)", 4)});
  PermGroup r = g.restrict_to({0, 1});
  CHECK(r.degree() == 2);
  CHECK(r.order() == 2);
  CHECK_THROWS_AS(PermGroup::close({Permutation::from_cycle_string("(1 2 3)", 3)})
                      .restrict_to({0, 1}),
                  std::invalid_argument);
}

TEST_CASE("subgroup enumeration counts") {
  CHECK(subgroups_of_sym(1).size() == 1);
  CHECK(subgroups_of_sym(2).size() == 2);
  CHECK(subgroups_of_sym(3).size() == 6);
  CHECK(subgroups_of_sym(4).size() == 30);
  CHECK(subgroups_of_sym(5).size() == 156);
  CHECK_THROWS_AS(subgroups_of_sym(7), std::invalid_argument);
}

TEST_CASE("subgroup lists are valid, distinct, and closed under checks") {
  for (int d : {3, 4}) {
    auto subs = subgroups_of_sym(d);
    std::set<std::vector<Permutation>> seen;
    std::uint64_t fact = 1;
    for (int j = 2; j <= d; ++j) fact *= static_cast<std::uint64_t>(j);
    for (const PermGroup& h : subs) {
      // re-validating constructor check: throws when the list is not a group
      PermGroup again = PermGroup::from_elements(
          std::vector<Permutation>(h.elements().begin(), h.elements().end()));
      CHECK(again == h);
      CHECK(fact % h.order() == 0);
      seen.insert(h.elements());
    }
    CHECK(seen.size() == subs.size());
  }
}

TEST_CASE("degree six subgroup count") { CHECK(subgroups_of_sym(6).size() == 1455); }

TEST_CASE("abstract isomorphism") {
  PermGroup z4 = PermGroup::close({Permutation::from_cycle_string("(1 2 3 4)", 4)});
  PermGroup v4 = PermGroup::close({Permutation::from_cycle_string("(1 2)", 4),
                                   Permutation::from_cycle_string("(3 4)", 4)});
  CHECK_FALSE(are_isomorphic(z4, v4));

  PermGroup z6 = PermGroup::close({Permutation::from_cycle_string("(1 2)(3 4 5)", 5)});
  PermGroup z2xz3 = PermGroup::close({Permutation::from_cycle_string("(1 2)", 5),
                                      Permutation::from_cycle_string("(3 4 5)", 5)});
  CHECK(are_isomorphic(z6, z2xz3));

  PermGroup s3 = PermGroup::symmetric(3);
  PermGroup d3 = PermGroup::close({Permutation::from_cycle_string("(2 3 4)", 4),
                                   Permutation::from_cycle_string("(3 4)", 4)});
  CHECK(are_isomorphic(s3, d3));

  PermGroup d4 = PermGroup::close({Permutation::from_cycle_string("(1 2 3 4)", 4),
                                   Permutation::from_cycle_string("(1 3)", 4)});
  PermGroup q8 =
      PermGroup::close({Permutation::from_cycle_string("(1 2 3 4)(5 6 7 8)", 8),
                        Permutation::from_cycle_string("(1 5 3 7)(2 8 4 6)", 8)});
  REQUIRE(q8.order() == 8);
  CHECK_FALSE(are_isomorphic(d4, q8));
  CHECK(are_isomorphic(q8, q8));
}

TEST_CASE("classification labels") {
  CHECK(classify(PermGroup::trivial(3)).to_string() == "Trivial");
  CHECK(classify(PermGroup::close({Permutation::from_cycle_string("(1 2)", 2)})).to_string() ==
        "Z2^1");
  CHECK(classify(PermGroup::close({Permutation::from_cycle_string("(1 2)", 4),
                                   Permutation::from_cycle_string("(3 4)", 4)}))
            .to_string() == "Z2^2");
  CHECK(classify(PermGroup::close({Permutation::from_cycle_string("(1 2 3)", 3)})).to_string() ==
        "Z3");
  CHECK(classify(PermGroup::symmetric(3)).to_string() == "Sym3");
  CHECK(classify(PermGroup::close({Permutation::from_cycle_string("(1 2)(3 4 5)", 5)}))
            .to_string() == "Z2^1xZ3");
  CHECK(classify(PermGroup::close({Permutation::from_cycle_string("(1 2)", 5),
                                   Permutation::from_cycle_string("(3 4 5)", 5),
                                   Permutation::from_cycle_string("(4 5)", 5)}))
            .to_string() == "Z2^1xSym3");
  CHECK(classify(PermGroup::close({Permutation::from_cycle_string("(1 2 3 4)", 4)})).to_string() ==
        "Other(o=4,ab=1,exp=4)");

  // A4 has order 12 = 6*2 and is nonabelian like Z2xSym3, but its center is
  // trivial; it must fall through to Other.
  PermGroup a4 = PermGroup::close({Permutation::from_cycle_string("(1 2 3)", 4),
                                   Permutation::from_cycle_string("(2 3 4)", 4)});
  REQUIRE(a4.order() == 12);
  CHECK(classify(a4).to_string() == "Other(o=12,ab=0,exp=6)");

  PermGroup z2sym3 = PermGroup::close({Permutation::from_cycle_string("(1 2)", 5),
                                       Permutation::from_cycle_string("(3 4 5)", 5),
                                       Permutation::from_cycle_string("(4 5)", 5)});
  REQUIRE(z2sym3.order() == 12);
  CHECK(classify(z2sym3).tag == GroupClass::Tag::Z2PowerTimesSym3);

  // Z2^2 x Z3, exponent 6, abelian, order 12
  PermGroup z223 = PermGroup::close({Permutation::from_cycle_string("(1 2)", 7),
                                     Permutation::from_cycle_string("(3 4)", 7),
                                     Permutation::from_cycle_string("(5 6 7)", 7)});
  CHECK(classify(z223).to_string() == "Z2^2xZ3");

  // plain Z2^2 x Sym3 on 7 points
  PermGroup z22s3 = PermGroup::close({Permutation::from_cycle_string("(1 2)", 7),
                                      Permutation::from_cycle_string("(3 4)", 7),
                                      Permutation::from_cycle_string("(5 6 7)", 7),
                                      Permutation::from_cycle_string("(6 7)", 7)});
  REQUIRE(z22s3.order() == 24);
  CHECK(classify(z22s3).to_string() == "Z2^2xSym3");

  // Sym4 also has order 24 and is nonabelian; center is trivial, so Other.
  CHECK(classify(PermGroup::symmetric(4)).to_string() == "Other(o=24,ab=0,exp=12)");
}

TEST_CASE("classification depends only on the isomorphism type") {
  PermGroup z6a = PermGroup::close({Permutation::from_cycle_string("(1 2)(3 4 5)", 5)});
  PermGroup z6b = PermGroup::close({Permutation::from_cycle_string("(1 2)", 5),
                                    Permutation::from_cycle_string("(3 4 5)", 5)});
  CHECK(classify(z6a) == classify(z6b));
}

TEST_CASE("class labels parse back") {
  for (const char* s : {"Trivial", "Z2^1", "Z2^3", "Z3", "Sym3", "Z2^1xZ3", "Z2^2xSym3",
                        "Other(o=24,ab=0,exp=12)"}) {
    auto parsed = GroupClass::parse(s);
    REQUIRE(parsed.has_value());
    CHECK(parsed->to_string() == s);
  }
  CHECK_FALSE(GroupClass::parse("Z5").has_value());
  CHECK_FALSE(GroupClass::parse("").has_value());
}
