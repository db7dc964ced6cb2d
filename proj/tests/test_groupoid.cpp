#include "grpd/groupoid.hpp"

#include <doctest.h>

#include <numeric>

#include "grpd/errors.hpp"
#include "oracles.hpp"

using namespace grpd;

namespace {

std::vector<int> action_table(int set_size, const FiniteGroup& g,
                              const std::function<int(int, int)>& act) {
  std::vector<int> t(static_cast<std::size_t>(g.order()) * set_size);
  for (int e = 0; e < g.order(); ++e)
    for (int x = 0; x < set_size; ++x) t[e * set_size + x] = act(e, x);
  return t;
}

// C2 = {e, g} swapping two points
FiniteGroupoid c2_swap_groupoid() {
  FiniteGroup c2 = cyclic_group(2);
  return action_groupoid(
      2, c2, action_table(2, c2, [](int e, int x) { return e ? 1 - x : x; }));
}

// natural S3 action on three points
FiniteGroupoid s3_points_groupoid() {
  FiniteGroup s3 = symmetric_group(3);
  auto act = [&](int e, int x) {
    // element e is the rank of a permutation; apply it to x
    std::vector<int> p(3);
    std::vector<int> avail{0, 1, 2};
    long r = e;
    for (int i = 0; i < 3; ++i) {
      long f = (i == 0) ? 2 : (i == 1) ? 1 : 1;
      int idx = static_cast<int>(r / f);
      r %= f;
      p[i] = avail[idx];
      avail.erase(avail.begin() + idx);
    }
    return p[x];
  };
  return action_groupoid(3, s3, action_table(3, s3, act));
}

}  // namespace

TEST_CASE("validate accepts the constructions and names violations") {
  CHECK(validate(classifying_groupoid(cyclic_group(2))).empty());
  CHECK(validate(discrete_groupoid(3)).empty());
  CHECK(validate(c2_swap_groupoid()).empty());
  CHECK(validate(FiniteGroupoid()).empty());  // empty groupoid is legal

  SUBCASE("identity with the wrong endpoint is reported") {
    // two objects, two identity-ish arrows, but object 0 points at arrow 1
    FiniteGroupoid::Data d;
    d.object_count = 2;
    d.source = {0, 1};
    d.target = {0, 1};
    d.identity_arrow = {1, 1};  // wrong for object 0
    d.inverse_arrow = {0, 1};
    d.compose[0] = 0;  // key(0,0) over m=2 arrows
    d.compose[3] = 1;  // key(1,1)
    FiniteGroupoid broken(std::move(d));
    auto v = validate(broken);
    REQUIRE(!v.empty());
    CHECK(v.front().axiom == "identity endpoint");
  }
  SUBCASE("missing composition entries are reported") {
    FiniteGroupoid::Data d;
    d.object_count = 1;
    d.source = {0, 0};
    d.target = {0, 0};
    d.identity_arrow = {0};
    d.inverse_arrow = {0, 1};
    d.compose[0] = 0;  // only e∘e of the four required pairs
    FiniteGroupoid broken(std::move(d));
    auto v = validate(broken);
    REQUIRE(!v.empty());
    CHECK(v.front().axiom == "composition domain");
  }
}

TEST_CASE("coarse space") {
  CHECK(coarse_space(classifying_groupoid(make_group("S4"))).size() == 1);
  CHECK(coarse_space(discrete_groupoid(3)).size() == 3);
  CHECK(coarse_space(c2_swap_groupoid()).size() == 1);
  CHECK(coarse_space(FiniteGroupoid()).empty());
}

TEST_CASE("classifying groupoid") {
  FiniteGroupoid b = classifying_groupoid(make_group("S4"));
  CHECK(b.object_count() == 1);
  CHECK(b.arrow_count() == 24);
  CHECK(validate(b).empty());
  CHECK(classifying_groupoid(cyclic_group(2)).arrow_count() == 2);
  CHECK(classifying_groupoid(trivial_group()).arrow_count() == 1);
}

TEST_CASE("action groupoid") {
  SUBCASE("C2 swapping two points") {
    FiniteGroupoid x = c2_swap_groupoid();
    CHECK(x.object_count() == 2);
    CHECK(x.arrow_count() == 4);
    CHECK(coarse_space(x).size() == 1);
  }
  SUBCASE("action on a point is the classifying groupoid up to relabeling") {
    FiniteGroup g = make_group("S3");
    FiniteGroupoid onept =
        action_groupoid(1, g, action_table(1, g, [](int, int) { return 0; }));
    CHECK(are_equivalent(onept, classifying_groupoid(g)));
    CHECK(onept.arrow_count() == classifying_groupoid(g).arrow_count());
  }
  SUBCASE("natural S3 action: one class, point stabilizers of order two") {
    FiniteGroupoid x = s3_points_groupoid();
    CHECK(validate(x).empty());
    CHECK(coarse_space(x).size() == 1);
    for (int p = 0; p < 3; ++p)
      CHECK(automorphism_group_at(x, p).order() == 2);
  }
  SUBCASE("invalid actions are rejected with a witness") {
    FiniteGroup c2 = cyclic_group(2);
    // identity row broken
    CHECK_THROWS_AS(action_groupoid(2, c2, {1, 0, 0, 1}), ValidationError);
    // wrong arity
    CHECK_THROWS_AS(action_groupoid(3, c2, {0, 1, 1, 0}), ValidationError);
    // not compatible with multiplication: g acts as a 3-cycle on 3 points
    FiniteGroup c2b = cyclic_group(2);
    CHECK_THROWS_AS(
        action_groupoid(3, c2b, {0, 1, 2, 1, 2, 0}), ValidationError);
  }
}

TEST_CASE("automorphism groups at objects") {
  FiniteGroup s4 = make_group("S4");
  CHECK(is_isomorphic(automorphism_group_at(classifying_groupoid(s4), 0), s4));
  CHECK(automorphism_group_at(discrete_groupoid(4), 2).order() == 1);
  CHECK(automorphism_group_at(c2_swap_groupoid(), 0).order() == 1);

  SUBCASE("objects in one coarse class have isomorphic automorphism groups") {
    FiniteGroupoid x = s3_points_groupoid();
    FiniteGroup a0 = automorphism_group_at(x, 0);
    for (int p = 1; p < 3; ++p)
      CHECK(is_isomorphic(a0, automorphism_group_at(x, p)));
  }
}

TEST_CASE("disjoint union") {
  FiniteGroupoid b2 = classifying_groupoid(cyclic_group(2));
  SUBCASE("two copies of a one-object groupoid") {
    FiniteGroupoid u = disjoint_union({b2, b2});
    CHECK(u.object_count() == 2);
    CHECK(coarse_space(u).size() == 2);
    CHECK(validate(u).empty());
  }
  SUBCASE("empty input gives the empty groupoid") {
    FiniteGroupoid u = disjoint_union({});
    CHECK(u.object_count() == 0);
    CHECK(u.arrow_count() == 0);
  }
  SUBCASE("aut orders are preserved per class") {
    FiniteGroupoid u = disjoint_union({b2, discrete_groupoid(1)});
    auto classes = coarse_space(u);
    REQUIRE(classes.size() == 2);
    std::vector<int> orders;
    for (const auto& c : classes)
      orders.push_back(automorphism_group_at(u, c.front()).order());
    CHECK(orders == std::vector<int>{2, 1});
  }
  SUBCASE("coarse classes add up") {
    FiniteGroupoid u =
        disjoint_union({c2_swap_groupoid(), discrete_groupoid(3), b2});
    CHECK(coarse_space(u).size() == 1 + 3 + 1);
    CHECK(validate(u).empty());
  }
}

TEST_CASE("is_equivalence") {
  SUBCASE("skeleton inclusion is an equivalence") {
    FiniteGroupoid x = disjoint_union(
        {c2_swap_groupoid(), classifying_groupoid(cyclic_group(3))});
    SkeletonResult sk = skeleton(x);
    CHECK(validate(sk.groupoid).empty());
    CHECK(is_equivalence(sk.groupoid, x, sk.inclusion).equivalence);
  }
  SUBCASE("subgroup inclusion B(C2) → B(C4) is not fully faithful") {
    FiniteGroup c2 = cyclic_group(2), c4 = cyclic_group(4);
    FiniteGroupoid b2 = classifying_groupoid(c2);
    FiniteGroupoid b4 = classifying_groupoid(c4);
    // embed C2 = {0, 2} ⊂ C4
    GroupoidFunctor f = make_functor(b2, b4, {0}, {0, 2});
    EquivalenceCheck ec = is_equivalence(b2, b4, f);
    CHECK_FALSE(ec.equivalence);
    CHECK(ec.reason.find("hom") != std::string::npos);
  }
  SUBCASE("fold functor X ⊔ X → X is not an equivalence") {
    FiniteGroupoid b2 = classifying_groupoid(cyclic_group(2));
    FiniteGroupoid dbl = disjoint_union({b2, b2});
    GroupoidFunctor fold = make_functor(dbl, b2, {0, 0}, {0, 1, 0, 1});
    CHECK_FALSE(is_equivalence(dbl, b2, fold).equivalence);
  }
  SUBCASE("collapsing onto the identity is a functor but no equivalence") {
    FiniteGroupoid b2 = classifying_groupoid(cyclic_group(2));
    GroupoidFunctor collapse = make_functor(b2, b2, {0}, {0, 0});
    EquivalenceCheck ec = is_equivalence(b2, b2, collapse);
    CHECK_FALSE(ec.equivalence);
    CHECK(ec.reason.find("non-injectively") != std::string::npos);
  }
  SUBCASE("invalid functors are rejected") {
    FiniteGroupoid b2 = classifying_groupoid(cyclic_group(2));
    GroupoidFunctor bogus{{0}, {1, 0}};  // sends the identity arrow astray
    CHECK_THROWS_AS(is_equivalence(b2, b2, bogus), PreconditionError);
    CHECK_THROWS_AS(make_functor(b2, b2, {0}, {1, 0}), ValidationError);
  }
}

TEST_CASE("are_equivalent") {
  SUBCASE("a torsor is equivalent to a point") {
    FiniteGroup g = make_group("D8");
    std::vector<int> act(static_cast<std::size_t>(g.order()) * g.order());
    for (int e = 0; e < g.order(); ++e)
      for (int x = 0; x < g.order(); ++x)
        act[e * g.order() + x] = g.mul(e, x);
    FiniteGroupoid torsor = action_groupoid(g.order(), g, act);
    CHECK(are_equivalent(torsor, discrete_groupoid(1)));
  }
  SUBCASE("distinguishes non-isomorphic automorphism groups") {
    CHECK_FALSE(are_equivalent(classifying_groupoid(cyclic_group(4)),
                               classifying_groupoid(make_group("C2xC2"))));
  }
  SUBCASE("a groupoid is equivalent to its skeleton") {
    FiniteGroupoid x =
        disjoint_union({s3_points_groupoid(), discrete_groupoid(2)});
    CHECK(are_equivalent(x, skeleton(x).groupoid));
  }
  SUBCASE("class counts must match") {
    CHECK_FALSE(are_equivalent(discrete_groupoid(2), discrete_groupoid(3)));
  }
}

TEST_CASE("equivalences induce class bijections with isomorphic aut groups") {
  std::vector<FiniteGroupoid> sources = {
      disjoint_union({c2_swap_groupoid(), classifying_groupoid(cyclic_group(3)),
                      discrete_groupoid(2)}),
      s3_points_groupoid(),
      disjoint_union({classifying_groupoid(make_group("D8")),
                      classifying_groupoid(make_group("C2xC2"))}),
  };
  for (const auto& x : sources) {
    SkeletonResult sk = skeleton(x);
    REQUIRE(is_equivalence(sk.groupoid, x, sk.inclusion).equivalence);
    auto cs = coarse_space(sk.groupoid);
    auto ct = coarse_space(x);
    CHECK(cs.size() == ct.size());
    CHECK(are_equivalent(sk.groupoid, x));
    // the induced map on coarse classes matches isomorphic aut groups
    std::vector<int> class_of(x.object_count());
    for (std::size_t c = 0; c < ct.size(); ++c)
      for (int o : ct[c]) class_of[o] = static_cast<int>(c);
    for (const auto& cls : cs) {
      int image_class = class_of[sk.inclusion.object_map[cls.front()]];
      CHECK(is_isomorphic(
          automorphism_group_at(sk.groupoid, cls.front()),
          automorphism_group_at(x, ct[image_class].front())));
    }
  }
}

TEST_CASE("hom sets are memoized consistently") {
  FiniteGroupoid x = s3_points_groupoid();
  const auto& h1 = x.hom(0, 1);
  const auto& h2 = x.hom(0, 1);
  CHECK(&h1 == &h2);  // same cached entry
  CHECK(h1.size() == 2);
  for (int f : h1) {
    CHECK(x.source(f) == 0);
    CHECK(x.target(f) == 1);
  }
}
