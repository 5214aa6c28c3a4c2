#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "cis/involution.hpp"
#include "cis/verify.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace cis;
using testutil::rp;

namespace {

ParamPoly pp(const MonomialOrdering& ox,
             std::vector<std::pair<Exponent, RatPoly>> terms) {
  ParamPoly p(ox);
  for (auto& [m, c] : terms) p.add_term(m, c);
  return p;
}

struct Ex2 {
  MonomialOrdering ox = MonomialOrdering::lex(2);
  MonomialOrdering oa = MonomialOrdering::lex(2);
  RatPoly a = rp(oa, {{Exponent{1, 0}, 1}});
  RatPoly b = rp(oa, {{Exponent{0, 1}, 1}});
  ParamPoly ax2 = pp(ox, {{Exponent{2, 0}, a}});
  ParamPoly by2 = pp(ox, {{Exponent{0, 2}, b}});
  ParamPoly bxy2 = pp(ox, {{Exponent{1, 2}, b}});
  std::vector<ParamPoly> F = {ax2, by2};
  std::vector<Cell> cells = {
      {{ax2, by2, bxy2}, {{}, {a, b}}},
      {{ax2}, {{b}, {a}}},
      {{by2}, {{a}, {b}}},
      {{}, {{a, b}, {}}},
  };
};

}  // namespace

TEST_CASE("specialization at parameter points") {
  Ex2 e;
  ParamPoly f = pp(e.ox, {{Exponent{1, 0}, e.b},
                          {Exponent{0, 2}, RatPoly::constant(e.oa, 1)}});
  CHECK(specialize(f, {Rational(0), Rational(2)}) ==
        rp(e.ox, {{Exponent{1, 0}, 2}, {Exponent{0, 2}, 1}}));
  CHECK(specialize(e.ax2, {Rational(0), Rational(1)}).is_zero());
  ParamPoly free = pp(e.ox, {{Exponent{1, 1}, RatPoly::constant(e.oa, 3)}});
  CHECK(specialize(free, {Rational(5), Rational(7)}) ==
        rp(e.ox, {{Exponent{1, 1}, 3}}));
}

TEST_CASE("specialization is a ring homomorphism") {
  std::mt19937 rng(83);
  auto ox = MonomialOrdering::degrevlex(2);
  auto oa = MonomialOrdering::lex(2);
  for (int rep = 0; rep < 60; ++rep) {
    ParamPoly f = testutil::random_parampoly(rng, ox, oa, 4, 3, 2);
    ParamPoly g = testutil::random_parampoly(rng, ox, oa, 4, 3, 2);
    Point pt = random_point(rng, 2);
    CHECK(specialize(f + g, pt) == specialize(f, pt) + specialize(g, pt));
    CHECK(specialize(f * g, pt) == specialize(f, pt) * specialize(g, pt));
    CHECK(specialize(f - g, pt) == specialize(f, pt) - specialize(g, pt));
  }
}

TEST_CASE("specification membership") {
  Ex2 e;
  CHECK(satisfies_spec({Rational(1), Rational(1)}, e.cells[0].spec));
  CHECK(satisfies_spec({Rational(0), Rational(2)}, e.cells[2].spec));
  CHECK(!satisfies_spec({Rational(0), Rational(0)}, e.cells[2].spec));
  CHECK(satisfies_spec({Rational(0), Rational(0)}, e.cells[3].spec));
  CHECK(!satisfies_spec({Rational(1), Rational(0)}, e.cells[0].spec));
}

TEST_CASE("closure test on pinned sets") {
  auto d = DivisionSpec::janet(2);
  auto ox = MonomialOrdering::lex(2);
  RatPoly x2 = rp(ox, {{Exponent{2, 0}, 1}});
  RatPoly y2 = rp(ox, {{Exponent{0, 2}, 1}});
  RatPoly xy2 = rp(ox, {{Exponent{1, 2}, 1}});
  CHECK(is_involutive_basis({x2, y2, xy2}, d));
  CHECK(!is_involutive_basis({x2, y2}, d));
  CHECK(is_involutive_basis({}, d));
  CHECK(is_involutive_basis({RatPoly::zero(ox), x2, y2, xy2}, d));
}

TEST_CASE("S-polynomial test and ideal equality on pinned sets") {
  auto ox = MonomialOrdering::lex(2);
  RatPoly y3 = rp(ox, {{Exponent{0, 3}, 1}});
  RatPoly f = rp(ox, {{Exponent{1, 0}, 2}, {Exponent{0, 2}, 1}});
  CHECK(is_groebner_basis({y3, f}));
  RatPoly xy1 = rp(ox, {{Exponent{1, 1}, 1}, {Exponent{0, 0}, -1}});
  RatPoly x = rp(ox, {{Exponent{1, 0}, 1}});
  CHECK(!is_groebner_basis({xy1, x}));
  CHECK(is_groebner_basis({}));

  CHECK(same_ideal({-y3, f}, {y3, f}));
  CHECK(!same_ideal({x}, {y3}));
  CHECK(same_ideal({}, {}));
  CHECK(same_ideal({RatPoly::zero(ox)}, {}));
  CHECK(!same_ideal({x}, {}));
  CHECK(same_ideal({xy1, x}, {x, RatPoly::constant(ox, 1)}));
}

TEST_CASE("completion outputs satisfy both oracles") {
  std::mt19937 rng(89);
  for (int rep = 0; rep < 30; ++rep) {
    std::size_t n = 1 + rng() % 3;
    auto ox = rep % 2 ? MonomialOrdering::lex(n) : MonomialOrdering::degrevlex(n);
    auto d = DivisionSpec::janet(n);
    std::vector<RatPoly> F;
    int k = 1 + rng() % 3;
    for (int i = 0; i < k; ++i)
      F.push_back(testutil::random_ratpoly(rng, ox, 3, 2));
    auto out = gbi(F, d);
    CHECK(is_involutive_basis(out, d));
    CHECK(is_groebner_basis(out));
    CHECK(same_ideal(F, out));
    // uniqueness: the completion fixes its own output
    CHECK(gbi(out, d) == out);
  }
}

TEST_CASE("sample values are bounded, exact, and often zero") {
  std::mt19937 rng(97);
  int zeros = 0;
  for (int i = 0; i < 2000; ++i) {
    Rational v = random_sample_value(rng);
    CHECK(cmp(abs(v), 5) <= 0);
    CHECK(cmp(v.get_den(), 4) <= 0);
    if (is_zero(v)) ++zeros;
  }
  CHECK(zeros > 300);
  CHECK(zeros < 1400);
}

TEST_CASE("points on a cell by direct solving and rejection") {
  Ex2 e;
  std::mt19937 rng(101);
  for (std::size_t i = 0; i < e.cells.size(); ++i) {
    auto pt = cell_sample(e.cells[i], 2, rng);
    REQUIRE(pt.has_value());
    CHECK(satisfies_spec(*pt, e.cells[i].spec));
  }
  // linear but nontrivial: a = b with b nonzero
  RatPoly amb = e.a - e.b;
  Cell diag{{}, {{amb}, {e.b}}};
  auto pt = cell_sample(diag, 2, rng);
  REQUIRE(pt.has_value());
  CHECK((*pt)[0] == (*pt)[1]);
  CHECK(!is_zero((*pt)[1]));
  // contradictory region: nothing to find
  Cell bad{{}, {{e.a}, {e.a}}};
  CHECK(!cell_sample(bad, 2, rng, 50).has_value());
}

TEST_CASE("point audit on a hand-built comprehensive system") {
  Ex2 e;
  auto d = DivisionSpec::janet(2);
  std::mt19937 rng(103);
  int seen_null = 0;
  for (int i = 0; i < 60; ++i) {
    Point pt = random_point(rng, 2);
    PointAudit audit = audit_point(e.F, e.cells, d, pt);
    CHECK(audit.ok());
    if (is_zero(pt[0]) || is_zero(pt[1])) ++seen_null;
  }
  CHECK(seen_null > 10);

  // every region of the pinned system is reachable by sampling
  std::vector<bool> hit(e.cells.size(), false);
  for (int i = 0; i < 200; ++i) {
    auto m = matching_cells(e.cells, random_point(rng, 2));
    REQUIRE(m.size() == 1);
    hit[m.front()] = true;
  }
  for (bool h : hit) CHECK(h);

  // duplicated cell breaks the partition
  auto dup = e.cells;
  dup.push_back(e.cells[0]);
  PointAudit bad = audit_point(e.F, dup, d, {Rational(1), Rational(1)});
  CHECK(!bad.partition_ok);

  // dropping the completion element breaks soundness on the generic cell
  auto incomplete = e.cells;
  incomplete[0].basis = {e.ax2, e.by2};
  PointAudit unsound =
      audit_point(e.F, incomplete, d, {Rational(1), Rational(1)});
  CHECK(unsound.partition_ok);
  CHECK(!unsound.sound_ok);

  // a prolongation kept alongside its own divisor stays closed and keeps
  // the ideal, but is redundant: only the minimality check catches it
  auto oa1 = MonomialOrdering::lex(1);
  RatPoly b1 = rp(oa1, {{Exponent{1}, 1}});
  ParamPoly by2 = pp(e.ox, {{Exponent{0, 2}, b1}});
  ParamPoly bxy2 = pp(e.ox, {{Exponent{1, 2}, b1}});
  std::vector<Cell> fat_cells = {
      {{by2, bxy2}, {{}, {b1}}},
      {{}, {{b1}, {}}},
  };
  PointAudit fat = audit_point({by2}, fat_cells, d, {Rational(1)});
  CHECK(fat.partition_ok);
  CHECK(fat.sound_ok);
  CHECK(!fat.minimal_ok);
}
