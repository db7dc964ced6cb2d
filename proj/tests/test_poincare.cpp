#include "grpd/poincare.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "grpd/catalog.hpp"
#include "grpd/errors.hpp"
#include "grpd/nonabelian_h1.hpp"
#include "oracles.hpp"

using namespace grpd;

namespace {

Polynomial poly(std::initializer_list<long> coeffs) {
  std::vector<Rat> c;
  for (long v : coeffs) c.push_back(Rat(v));
  return Polynomial(std::move(c));
}

RationalFunction rf(std::initializer_list<long> num,
                    std::initializer_list<long> den) {
  return RationalFunction(poly(num), poly(den));
}

// 1/(1-t)^2, 1/(1-t)^2, (1+t^2)/((1-t)^2(1+t+t^2))
RationalFunction p_klein() { return rf({1}, {1, -2, 1}); }
RationalFunction p_s4() { return rf({1, 0, 1}, {1, -1, 0, -1, 1}); }
RationalFunction p_c2() { return rf({1}, {1, -1}); }

// Graded dimension of F2[x1, y2, z3]/(x·z): monomials x^a y^b z^c of total
// degree a + 2b + 3c avoiding a,c both positive. Independent route to the
// series coefficients.
long s4_dim_oracle(int degree) {
  long count = 0;
  for (int a = 0; a <= degree; ++a)
    for (int c = 0; 3 * c + a <= degree; ++c) {
      if (a > 0 && c > 0) continue;
      if ((degree - a - 3 * c) % 2 == 0) ++count;
    }
  return count;
}

}  // namespace

TEST_CASE("rational scalars stay canonical") {
  Rat r = make_rat(6, -4);
  CHECK(r == make_rat(-3, 2));
  CHECK(r.get_den() == 2);  // denominator positive
  CHECK(parse_rat("3/6") == make_rat(1, 2));
  CHECK(parse_rat("-7") == make_rat(-7, 1));
  CHECK(rat_str(make_rat(3, 2)) == "3/2");
  CHECK_THROWS_AS(parse_rat("x"), ParseError);
  CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
}

TEST_CASE("polynomial canonical form and arithmetic") {
  CHECK(Polynomial(std::vector<Rat>{Rat(1), Rat(0), Rat(0)}).degree() == 0);
  CHECK(Polynomial().degree() == -1);  // zero-polynomial sentinel
  CHECK(poly({1, 2}) * poly({1, 2}) == poly({1, 4, 4}));
  CHECK((poly({1, 1}) - poly({1, 1})).is_zero());
  auto [q, r] = Polynomial::divmod(poly({-1, 0, 1}), poly({1, 1}));
  CHECK(q == poly({-1, 1}));
  CHECK(r.is_zero());
  CHECK(Polynomial::gcd(poly({-1, 0, 1}), poly({1, 1})) == poly({1, 1}));
}

TEST_CASE("rational function arithmetic is exact and canonical") {
  SUBCASE("1/(1-t) squared") {
    RationalFunction sq = p_c2() * p_c2();
    // canonical denominator is monic: (t-1)^2 = 1 - 2t + t^2 scaled
    CHECK(sq.den().degree() == 2);
    CHECK(sq * RationalFunction(poly({1, -2, 1}), poly({1})) ==
          RationalFunction::constant(1));
  }
  SUBCASE("the Klein/S4 ratio reduces to (1+t+t^2)/(1+t^2)") {
    RationalFunction ratio = p_klein() / p_s4();
    RationalFunction expected = rf({1, 1, 1}, {1, 0, 1});
    CHECK(ratio == expected);
  }
  SUBCASE("a + (-a) = 0") {
    RationalFunction a = p_s4();
    CHECK((a + (-a)).is_zero());
  }
  SUBCASE("(a/b)·b = a") {
    RationalFunction a = rf({1, 3}, {1, 0, 2});
    RationalFunction b = rf({2, 1}, {1, 1});
    CHECK((a / b) * b == a);
  }
  SUBCASE("division by zero is rejected") {
    CHECK_THROWS_AS(p_c2() / RationalFunction(), PreconditionError);
  }
  SUBCASE("invariants: reduced, monic denominator") {
    RationalFunction x = rf({2, 2}, {4, 0, -4});  // (2+2t)/(4-4t^2)
    CHECK(x.den().coeffs().back() == 1);
    CHECK(Polynomial::gcd(x.num(), x.den()).degree() == 0);
    // equals 1/(2(1-t))
    CHECK(x == p_c2() * RationalFunction::constant(make_rat(1, 2)));
  }
}

TEST_CASE("series expansion") {
  SUBCASE("1/(1-t)^2 counts 1,2,3,...") {
    auto a = series_coefficients(p_klein(), 5);
    REQUIRE(a.size() == 6);
    for (int i = 0; i <= 5; ++i) CHECK(a[i] == Rat(i + 1));
  }
  SUBCASE("S4 series: non-negative integers matching the graded oracle") {
    auto a = series_coefficients(p_s4(), 40);
    for (int i = 0; i <= 40; ++i) {
      CHECK(a[i].get_den() == 1);
      CHECK(a[i] >= 0);
      CHECK(a[i] == Rat(s4_dim_oracle(i)));
    }
  }
  SUBCASE("constants expand to themselves") {
    auto a = series_coefficients(RationalFunction::constant(7), 3);
    CHECK(a == std::vector<Rat>{Rat(7), Rat(0), Rat(0), Rat(0)});
  }
  SUBCASE("den(0) = 0 is rejected") {
    RationalFunction h = rf({1}, {0, 1});  // 1/t
    CHECK_THROWS_AS(series_coefficients(h, 3), PreconditionError);
  }
}

TEST_CASE("evaluation at t = 1") {
  CHECK(evaluate_at_one(rf({1, 1, 1}, {1, 0, 1})) == make_rat(3, 2));
  CHECK(evaluate_at_one(RationalFunction::constant(1)) == 1);
  CHECK(pole_order_at_one(p_s4()) == 2);
  CHECK_THROWS_AS(evaluate_at_one(p_s4()), PoleError);
  try {
    evaluate_at_one(p_s4());
  } catch (const PoleError& e) {
    CHECK(e.order() == 2);
  }
  SUBCASE("numerator (1-t) factors evaluate to zero") {
    RationalFunction h = rf({1, -1}, {1, 1});  // (1-t)/(1+t)
    CHECK(pole_order_at_one(h) == 0);
    CHECK(evaluate_at_one(h) == 0);
  }
  SUBCASE("zero function evaluates to zero") {
    CHECK(evaluate_at_one(RationalFunction()) == 0);
  }
}

TEST_CASE("partial sums") {
  SUBCASE("f = g pins every C_n at one") {
    for (int n : {0, 1, 5, 50})
      CHECK(partial_sum_ratio(p_s4(), p_s4(), n) == 1);
  }
  SUBCASE("constants against the geometric series") {
    CHECK(partial_sum_ratio(RationalFunction::constant(1), p_c2(), 3) ==
          make_rat(1, 4));
  }
  SUBCASE("C_{10000} for Klein over S4 is within 1/100 of 3/2") {
    Rat c = partial_sum_ratio(p_klein(), p_s4(), 10000);
    Rat err = c - make_rat(3, 2);
    if (err < 0) err = -err;
    CHECK(err <= make_rat(1, 100));
  }
  SUBCASE("zero partial sums abort with the named error") {
    RationalFunction f = RationalFunction::constant(1);
    RationalFunction alt = rf({1, -1}, {1});  // 1 - t: partial sums hit zero
    CHECK_THROWS_AS(partial_sum_ratio(f, alt, 3), ZeroPartialSumError);
  }
}

TEST_CASE("catalog") {
  PoincareCatalog cat = PoincareCatalog::builtin();

  SUBCASE("built-in groups resolve to their series") {
    CHECK(cat.lookup(make_group("S4")) == p_s4());
    CHECK(cat.lookup(make_group("C2xC2")) == p_klein());
    CHECK(cat.lookup(make_group("D8")) == p_klein());
    CHECK(cat.lookup(trivial_group()) == RationalFunction::constant(1));
    CHECK(cat.lookup(make_group("C2")) == p_c2());
  }
  SUBCASE("matching is up to isomorphism") {
    FiniteGroup s4 = make_group("S4");
    int t12 = oracle::perm_index(4, {1, 0, 2, 3});
    CHECK(cat.lookup(centralizer(s4, t12).group) == p_klein());
  }
  SUBCASE("unknown groups raise the named error") {
    CHECK_THROWS_AS(cat.lookup(make_group("C6")), NotInCatalogError);
  }
  SUBCASE("all catalog series have non-negative coefficients up to 10^3") {
    for (const auto& e : cat.entries()) {
      auto a = series_coefficients(e.series, 1000);
      for (const auto& c : a) CHECK(c >= 0);
    }
  }
  SUBCASE("partial-sum ladders converge to the exact evaluation") {
    const Rat eps = make_rat(1, 1000000000);
    for (const auto& f : cat.entries())
      for (const auto& g : cat.entries()) {
        if (pole_order_at_one(f.series) > pole_order_at_one(g.series))
          continue;
        Rat limit = evaluate_at_one(f.series / g.series);
        Rat prev_err(-1);
        for (int n : {10, 100, 1000}) {
          Rat err = partial_sum_ratio(f.series, g.series, n) - limit;
          if (err < 0) err = -err;
          if (prev_err >= 0) CHECK(err < prev_err + eps);
          prev_err = err;
        }
        Rat err4 = partial_sum_ratio(f.series, g.series, 10000) - limit;
        if (err4 < 0) err4 = -err4;
        CHECK(err4 <= make_rat(1, 100));
      }
  }
  SUBCASE("user catalog files extend the built-in entries") {
    const std::string path = "test_catalog_ext.txt";
    {
      std::ofstream out(path);
      out << "# extension\nC6 | num: 1 | den: 1 -1\n";
    }
    PoincareCatalog ext = PoincareCatalog::builtin();
    ext.merge(PoincareCatalog::load(path));
    CHECK(ext.lookup(make_group("C6")) == p_c2());
    CHECK(ext.lookup(make_group("S4")) == p_s4());
    std::remove(path.c_str());
    CHECK_THROWS_AS(PoincareCatalog::load("/nonexistent/catalog"), IoError);
    CHECK_THROWS_AS(PoincareCatalog::parse("garbage line"), ParseError);
  }
  SUBCASE("the shipped data file matches the embedded text") {
    std::ifstream in(DATA_DIR "/poincare_catalog.txt");
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == std::string(PoincareCatalog::builtin_text()));
  }
}

TEST_CASE("sum of H1 ratios") {
  PoincareCatalog cat = PoincareCatalog::builtin();

  SUBCASE("S4 trivial: 1 + 3/2 + 3/2 = 4") {
    FiniteGroup s4 = make_group("S4");
    H1RatioSum sum = sum_h1_ratios(s4, trivial_group_involution(s4), cat);
    CHECK(sum.total == 4);
    REQUIRE(sum.rows.size() == 3);
    CHECK(sum.rows[0].ratio == 1);
    CHECK(sum.rows[1].ratio == make_rat(3, 2));
    CHECK(sum.rows[2].ratio == make_rat(3, 2));
    CHECK(sum.rows[0].subgroup_order == 24);
    CHECK(sum.rows[1].subgroup_order == 4);
    CHECK(sum.rows[2].subgroup_order == 8);
  }
  SUBCASE("C2 trivial: two classes of ratio one") {
    FiniteGroup c2 = make_group("C2");
    H1RatioSum sum = sum_h1_ratios(c2, trivial_group_involution(c2), cat);
    CHECK(sum.total == 2);
    for (const auto& row : sum.rows) CHECK(row.ratio == 1);
  }
  SUBCASE("trivial group sums to one") {
    FiniteGroup t = trivial_group();
    CHECK(sum_h1_ratios(t, trivial_group_involution(t), cat).total == 1);
  }
  SUBCASE("subgroups outside the catalog name the offender") {
    FiniteGroup c6 = make_group("C6");
    CHECK_THROWS_AS(
        sum_h1_ratios(c6, trivial_group_involution(c6), cat),
        NotInCatalogError);
  }
}
