#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "cis/paramring.hpp"
#include "cis/poly.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace cis;
using testutil::rp;

namespace {

// Independent restatement of the degrevlex rule, straight off its textbook
// wording: lower total degree is smaller; on ties, walk the precedence list
// from its least significant end and the smaller entry at the first
// difference wins. The engine comparator is checked against this under
// exhaustive small-degree enumeration before any frozen expectations below.
int degrevlex_rule(const Exponent& a, const Exponent& b,
                   const std::vector<std::size_t>& prec) {
  if (a.total_degree() != b.total_degree())
    return a.total_degree() > b.total_degree() ? 1 : -1;
  for (std::size_t j = prec.size(); j-- > 0;) {
    std::uint32_t ai = a[prec[j]], bi = b[prec[j]];
    if (ai != bi) return ai < bi ? 1 : -1;
  }
  return 0;
}

std::vector<Exponent> all_exponents(std::size_t n, std::uint32_t maxdeg) {
  std::vector<Exponent> out;
  std::vector<std::uint32_t> cur(n, 0);
  while (true) {
    std::uint64_t total = 0;
    for (auto d : cur) total += d;
    if (total <= maxdeg) out.push_back(Exponent(cur));
    std::size_t i = 0;
    while (i < n && cur[i] == maxdeg) cur[i++] = 0;
    if (i == n) break;
    ++cur[i];
  }
  return out;
}

}  // namespace

TEST_CASE("lex comparison follows the leftmost-difference rule") {
  auto ord = MonomialOrdering::lex(2);  // x > y
  CHECK(ord.compare(Exponent{2, 1}, Exponent{1, 3}) > 0);
  CHECK(ord.compare(Exponent{1, 3}, Exponent{2, 1}) < 0);
  CHECK(ord.compare(Exponent{2, 1}, Exponent{2, 1}) == 0);
  CHECK(ord.compare(Exponent{0, 5}, Exponent{1, 0}) < 0);
}

TEST_CASE("degrevlex matches the textual rule on every small monomial pair") {
  std::mt19937 rng(7);
  for (std::size_t n : {2u, 3u}) {
    auto mons = all_exponents(n, 3);
    std::vector<std::vector<std::size_t>> precs;
    std::vector<std::size_t> nat(n);
    std::iota(nat.begin(), nat.end(), 0);
    precs.push_back(nat);
    precs.push_back({nat.rbegin(), nat.rend()});
    precs.push_back(testutil::random_permutation(rng, n));
    for (const auto& prec : precs) {
      auto ord = MonomialOrdering::degrevlex(prec);
      for (const auto& a : mons)
        for (const auto& b : mons)
          CHECK(ord.compare(a, b) == degrevlex_rule(a, b, prec));
    }
  }
  // pinned: same degree, so the least significant slot decides
  auto ord = MonomialOrdering::degrevlex(2);
  CHECK(ord.compare(Exponent{2, 1}, Exponent{1, 2}) > 0);
}

TEST_CASE("orderings are admissible total orders") {
  std::mt19937 rng(11);
  for (int kind = 0; kind < 2; ++kind) {
    for (int rep = 0; rep < 200; ++rep) {
      std::size_t n = 1 + rng() % 4;
      auto prec = testutil::random_permutation(rng, n);
      auto ord = kind == 0 ? MonomialOrdering::lex(prec)
                           : MonomialOrdering::degrevlex(prec);
      Exponent a = testutil::random_exponent(rng, n, 4);
      Exponent b = testutil::random_exponent(rng, n, 4);
      Exponent c = testutil::random_exponent(rng, n, 4);
      Exponent t = testutil::random_exponent(rng, n, 4);

      CHECK(ord.compare(a, b) == -ord.compare(b, a));
      CHECK((ord.compare(a, b) == 0) == (a == b));
      if (!a.is_unit()) CHECK(ord.greater(a, Exponent::unit(n)));
      if (ord.greater(a, b)) CHECK(ord.greater(a.times(t), b.times(t)));
      if (ord.compare(a, b) >= 0 && ord.compare(b, c) >= 0)
        CHECK(ord.compare(a, c) >= 0);
    }
  }
}

TEST_CASE("elimination ordering compares the variable block first") {
  EliminationOrdering ord(MonomialOrdering::lex(2), MonomialOrdering::lex(2));
  // (x, a^2) vs (x^2, 1): the x-part decides
  CHECK(compare_elim({Exponent{1, 0}, Exponent{2, 0}},
                     {Exponent{2, 0}, Exponent{0, 0}}, ord) < 0);
  // equal x-part, a > b breaks the tie
  CHECK(compare_elim({Exponent{1, 0}, Exponent{1, 0}},
                     {Exponent{1, 0}, Exponent{0, 1}}, ord) > 0);
  CHECK(compare_elim({Exponent{0, 0}, Exponent{1, 0}},
                     {Exponent{0, 0}, Exponent{1, 0}}, ord) == 0);
}

TEST_CASE("elimination ordering restricts to its factors") {
  std::mt19937 rng(13);
  EliminationOrdering ord(MonomialOrdering::degrevlex(3),
                          MonomialOrdering::lex(2));
  for (int rep = 0; rep < 200; ++rep) {
    Exponent x1 = testutil::random_exponent(rng, 3, 4);
    Exponent x2 = testutil::random_exponent(rng, 3, 4);
    Exponent a1 = testutil::random_exponent(rng, 2, 4);
    Exponent a2 = testutil::random_exponent(rng, 2, 4);
    Exponent xu = Exponent::unit(3), au = Exponent::unit(2);
    CHECK(compare_elim({x1, au}, {x2, au}, ord) ==
          ord.var_order().compare(x1, x2));
    CHECK(compare_elim({xu, a1}, {xu, a2}, ord) ==
          ord.param_order().compare(a1, a2));
  }
}

TEST_CASE("monomial quotient") {
  CHECK(*monomial_quotient(Exponent{2, 1}, Exponent{1, 0}) == Exponent{1, 1});
  CHECK(!monomial_quotient(Exponent{1, 0}, Exponent{0, 1}).has_value());
  CHECK(*monomial_quotient(Exponent{1, 2}, Exponent{1, 2}) == Exponent{0, 0});
}

TEST_CASE("leading data of parametric polynomials") {
  auto ox = MonomialOrdering::lex(2);  // x > y
  auto oa = MonomialOrdering::lex(2);  // a > b
  // a x^2 y - y^3
  ParamPoly f(ox);
  f.add_term(Exponent{2, 1}, rp(oa, {{Exponent{1, 0}, 1}}));
  f.add_term(Exponent{0, 3}, rp(oa, {{Exponent{0, 0}, -1}}));
  auto [lm, lc] = leading_data(f, ox);
  CHECK(lm == Exponent{2, 1});
  CHECK(lc == rp(oa, {{Exponent{1, 0}, 1}}));

  // b x + y^2
  ParamPoly g(ox);
  g.add_term(Exponent{1, 0}, rp(oa, {{Exponent{0, 1}, 1}}));
  g.add_term(Exponent{0, 2}, rp(oa, {{Exponent{0, 0}, 1}}));
  CHECK(g.leading_monomial() == Exponent{1, 0});
  CHECK(g.leading_coeff() == rp(oa, {{Exponent{0, 1}, 1}}));

  ParamPoly c(ox);
  c.add_term(Exponent{0, 0}, rp(oa, {{Exponent{0, 0}, 5}}));
  CHECK(c.leading_monomial() == Exponent{0, 0});

  ParamPoly z(ox);
  CHECK_THROWS_AS(z.leading_monomial(), std::domain_error);
}

TEST_CASE("coefficient-ring arithmetic examples") {
  auto oa = MonomialOrdering::lex(2);
  RatPoly a = rp(oa, {{Exponent{1, 0}, 1}});
  RatPoly b = rp(oa, {{Exponent{0, 1}, 1}});
  CHECK((a + b) + (a - b) == a.scaled(2));
  CHECK(exact_divide(a * b, a) == b);
  CHECK((a - a).is_zero());
  CHECK_THROWS_AS(exact_divide(a + b, b), std::domain_error);
  CHECK_THROWS_AS(exact_divide(a, RatPoly::zero(oa)), std::domain_error);
}

TEST_CASE("ring laws hold on random polynomials") {
  std::mt19937 rng(17);
  auto oa = MonomialOrdering::degrevlex(2);
  for (int rep = 0; rep < 100; ++rep) {
    RatPoly f = testutil::random_ratpoly(rng, oa, 5, 3);
    RatPoly g = testutil::random_ratpoly(rng, oa, 5, 3);
    RatPoly h = testutil::random_ratpoly(rng, oa, 5, 3);
    CHECK((f + g) + h == f + (g + h));
    CHECK(f + g == g + f);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * g == g * f);
    CHECK(f * (g + h) == f * g + f * h);
    CHECK((f + (-f)).is_zero());
    CHECK(f - g == f + (-g));
  }
}

TEST_CASE("ring laws hold on random parametric polynomials") {
  std::mt19937 rng(19);
  auto ox = MonomialOrdering::lex(2);
  auto oa = MonomialOrdering::lex(2);
  auto random_ppoly = [&]() {
    ParamPoly p(ox);
    int k = rng() % 4;
    for (int i = 0; i < k; ++i)
      p.add_term(testutil::random_exponent(rng, 2, 3),
                 testutil::random_ratpoly(rng, oa, 3, 2));
    return p;
  };
  for (int rep = 0; rep < 60; ++rep) {
    ParamPoly f = random_ppoly(), g = random_ppoly(), h = random_ppoly();
    CHECK((f + g) + h == f + (g + h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK((f + (-f)).is_zero());
  }
}

TEST_CASE("reduction by a set leaves an irreducible remainder") {
  auto oa = MonomialOrdering::lex(2);
  RatPoly a = rp(oa, {{Exponent{1, 0}, 1}});
  RatPoly b = rp(oa, {{Exponent{0, 1}, 1}});
  CHECK(reduce_by_set(a * a + b, {a}) == b);
  CHECK(reduce_by_set(a * b, {a, b}).is_zero());
  RatPoly a1 = a + RatPoly::constant(oa, 1);
  CHECK(reduce_by_set(a1, {b}) == a1);
}

TEST_CASE("reduction traces back as an exact cofactor combination") {
  std::mt19937 rng(23);
  auto oa = MonomialOrdering::degrevlex(3);
  for (int rep = 0; rep < 120; ++rep) {
    RatPoly f = testutil::random_ratpoly(rng, oa, 6, 3);
    std::vector<RatPoly> G;
    int k = 1 + rng() % 3;
    for (int i = 0; i < k; ++i)
      G.push_back(testutil::random_ratpoly(rng, oa, 3, 2));
    std::vector<RatPoly> cof;
    RatPoly r = reduce_by_set(f, G, &cof);
    RatPoly back = r;
    for (std::size_t i = 0; i < G.size(); ++i) back += cof[i] * G[i];
    CHECK(back == f);
    for (const auto& [m, c] : r)
      for (const auto& g : G)
        if (!g.is_zero()) CHECK(!g.leading_monomial().divides(m));
  }
}

TEST_CASE("primitive normalization is canonical") {
  auto oa = MonomialOrdering::lex(2);
  RatPoly f = rp(oa, {{Exponent{1, 0}, Rational(3, 2)}, {Exponent{0, 1}, -3}});
  RatPoly n = primitive_normal(f);
  CHECK(n == rp(oa, {{Exponent{1, 0}, 1}, {Exponent{0, 1}, -2}}));
  CHECK(primitive_normal(n) == n);

  std::mt19937 rng(29);
  for (int rep = 0; rep < 80; ++rep) {
    RatPoly g = testutil::random_ratpoly(rng, oa, 5, 3);
    if (g.is_zero()) continue;
    RatPoly p = primitive_normal(g);
    CHECK(primitive_normal(p) == p);
    CHECK(primitive_normal(g.scaled(Rational(-7, 3))) == p);
    CHECK(sgn(p.leading_coeff()) > 0);
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : p) {
      num_gcd = ::gcd(num_gcd, c.get_num());
      den_lcm = lcm(den_lcm, c.get_den());
    }
    CHECK(num_gcd == 1);
    CHECK(den_lcm == 1);
  }
}

TEST_CASE("derivative and evaluation") {
  auto oa = MonomialOrdering::lex(2);
  RatPoly f = rp(oa, {{Exponent{2, 1}, 1}});  // a^2 b
  CHECK(derivative(f, 0) == rp(oa, {{Exponent{1, 1}, 2}}));
  CHECK(derivative(f, 1) == rp(oa, {{Exponent{2, 0}, 1}}));
  RatPoly g = rp(oa, {{Exponent{2, 0}, 1}, {Exponent{0, 1}, -1}});  // a^2 - b
  CHECK(evaluate(g, {3, 2}) == 7);
  CHECK(evaluate(g, {Rational(1, 2), Rational(1, 4)}) == 0);
}

TEST_CASE("rational literals") {
  CHECK(rational_from_string("4/6") == Rational(2, 3));
  CHECK(rational_from_string("-3") == -3);
  CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("x"), std::invalid_argument);
}

TEST_CASE("canonical polynomial comparison is a total order") {
  std::mt19937 rng(31);
  auto oa = MonomialOrdering::lex(2);
  for (int rep = 0; rep < 100; ++rep) {
    RatPoly f = testutil::random_ratpoly(rng, oa, 4, 3);
    RatPoly g = testutil::random_ratpoly(rng, oa, 4, 3);
    CHECK(poly_compare(f, g) == -poly_compare(g, f));
    CHECK((poly_compare(f, g) == 0) == (f == g));
  }
}
