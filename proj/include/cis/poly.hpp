#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cis/exponent.hpp"
#include "cis/ordering.hpp"
#include "cis/rational.hpp"

namespace cis {

template <class C>
class SparsePoly;

inline bool coeff_is_zero(const Rational& c) { return sgn(c) == 0; }
template <class C>
bool coeff_is_zero(const SparsePoly<C>& c) {
  return c.is_zero();
}

struct DescendingTermOrder {
  MonomialOrdering ord;
  bool operator()(const Exponent& a, const Exponent& b) const {
    return ord.compare(a, b) > 0;
  }
};

// Sparse polynomial with coefficients C over one variable block. Terms are
// kept descending in the carried ordering, so the leading term is begin().
template <class C>
class SparsePoly {
 public:
  using TermMap = std::map<Exponent, C, DescendingTermOrder>;
  using const_iterator = typename TermMap::const_iterator;

  explicit SparsePoly(const MonomialOrdering& ord)
      : ord_(ord), terms_(DescendingTermOrder{ord_}) {}

  // zero polynomial in a zero-variable ring; a usable null state so
  // aggregates holding polynomials stay default-constructible
  SparsePoly() : SparsePoly(MonomialOrdering::lex(0)) {}

  static SparsePoly zero(const MonomialOrdering& ord) {
    return SparsePoly(ord);
  }
  static SparsePoly term(const MonomialOrdering& ord, const Exponent& m,
                         const C& c) {
    SparsePoly p(ord);
    p.add_term(m, c);
    return p;
  }
  static SparsePoly constant(const MonomialOrdering& ord, const C& c) {
    return term(ord, Exponent::unit(ord.nvars()), c);
  }

  const MonomialOrdering& ordering() const { return ord_; }
  std::size_t nvars() const { return ordering().nvars(); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }

  const Exponent& leading_monomial() const {
    require_nonzero();
    return terms_.begin()->first;
  }
  const C& leading_coeff() const {
    require_nonzero();
    return terms_.begin()->second;
  }

  const C* coeff(const Exponent& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? nullptr : &it->second;
  }

  void add_term(const Exponent& m, const C& c) {
    if (m.size() != nvars())
      throw std::invalid_argument("term dimension mismatch");
    if (coeff_is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    require_same_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    require_same_ring(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) {
    a += b;
    return a;
  }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) {
    a -= b;
    return a;
  }
  SparsePoly operator-() const {
    SparsePoly r(ordering());
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  SparsePoly times_term(const Exponent& m, const C& c) const {
    SparsePoly r(ordering());
    if (coeff_is_zero(c)) return r;
    for (const auto& [mm, cc] : terms_) r.add_term(mm.times(m), cc * c);
    return r;
  }
  SparsePoly times_monomial(const Exponent& m) const {
    SparsePoly r(ordering());
    for (const auto& [mm, cc] : terms_) r.terms_.emplace(mm.times(m), cc);
    return r;
  }
  SparsePoly times_var(std::size_t i) const {
    return times_monomial(Exponent::var(nvars(), i));
  }
  SparsePoly scaled(const C& c) const {
    SparsePoly r(ordering());
    if (coeff_is_zero(c)) return r;
    for (const auto& [m, cc] : terms_) r.add_term(m, cc * c);
    return r;
  }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    a.require_same_ring(b);
    SparsePoly r(a.ordering());
    for (const auto& [m, c] : a.terms_) r += b.times_term(m, c);
    return r;
  }

  bool operator==(const SparsePoly& o) const {
    if (ordering() != o.ordering()) return false;
    return terms_ == o.terms_;
  }
  bool operator!=(const SparsePoly& o) const { return !(*this == o); }

 private:
  void require_nonzero() const {
    if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
  }
  void require_same_ring(const SparsePoly& o) const {
    if (ordering() != o.ordering())
      throw std::invalid_argument("polynomial ring mismatch");
  }
  MonomialOrdering ord_;
  TermMap terms_;
};

// K[y] with rational coefficients: the parameter ring K[a], and also the
// plain ring K[x] used by the non-parametric algorithms.
using RatPoly = SparsePoly<Rational>;
// K[a][x]: x-monomials with K[a] coefficients.
using ParamPoly = SparsePoly<RatPoly>;

template <class C>
std::pair<Exponent, C> leading_data(const SparsePoly<C>& f,
                                    const MonomialOrdering& ord) {
  if (f.ordering() != ord)
    throw std::invalid_argument("leading_data: ordering mismatch");
  return {f.leading_monomial(), f.leading_coeff()};
}

inline RatPoly make_monic(const RatPoly& f) {
  if (f.is_zero()) return f;
  Rational inv = 1 / f.leading_coeff();
  return f.scaled(inv);
}

// Smallest positive scaling that makes every coefficient an integer with
// overall gcd 1; the leading coefficient comes out positive.
inline RatPoly primitive_normal(const RatPoly& f) {
  if (f.is_zero()) return f;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : f) {
    num_gcd = gcd(num_gcd, c.get_num());
    den_lcm = lcm(den_lcm, c.get_den());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (sgn(f.leading_coeff()) < 0) scale = -scale;
  return f.scaled(scale);
}

inline ParamPoly primitive_normal(const ParamPoly& f) {
  if (f.is_zero()) return f;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : f)
    for (const auto& [mm, cc] : c) {
      num_gcd = gcd(num_gcd, cc.get_num());
      den_lcm = lcm(den_lcm, cc.get_den());
    }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (sgn(f.leading_coeff().leading_coeff()) < 0) scale = -scale;
  ParamPoly r(f.ordering());
  for (const auto& [m, c] : f) r.add_term(m, c.scaled(scale));
  return r;
}

inline RatPoly derivative(const RatPoly& f, std::size_t var) {
  RatPoly r(f.ordering());
  for (const auto& [m, c] : f) {
    std::uint32_t d = m[var];
    if (d == 0) continue;
    std::vector<std::uint32_t> e(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) e[i] = m[i];
    e[var] -= 1;
    r.add_term(Exponent(std::move(e)), c * d);
  }
  return r;
}

inline Rational evaluate(const RatPoly& f, const std::vector<Rational>& point) {
  if (point.size() != f.nvars())
    throw std::invalid_argument("evaluation point dimension mismatch");
  Rational total = 0;
  for (const auto& [m, c] : f) {
    Rational t = c;
    for (std::size_t i = 0; i < point.size(); ++i)
      for (std::uint32_t k = 0; k < m[i]; ++k) t *= point[i];
    total += t;
  }
  return total;
}

// Full normal form of f modulo the list G (zeros in G ignored): every
// monomial of the result is free of every LM(g). With cofactors requested,
// f == sum cofactors[i] * G[i] + result holds exactly.
inline RatPoly reduce_by_set(const RatPoly& f, const std::vector<RatPoly>& G,
                             std::vector<RatPoly>* cofactors = nullptr) {
  if (cofactors) {
    cofactors->clear();
    for (std::size_t i = 0; i < G.size(); ++i)
      cofactors->push_back(RatPoly::zero(f.ordering()));
  }
  RatPoly work = f, out(f.ordering());
  while (!work.is_zero()) {
    const Exponent& m = work.leading_monomial();
    const Rational c = work.leading_coeff();
    bool reduced = false;
    for (std::size_t i = 0; i < G.size(); ++i) {
      const RatPoly& g = G[i];
      if (g.is_zero()) continue;
      if (auto q = g.leading_monomial().quotient_of(m)) {
        Rational ratio = c / g.leading_coeff();
        work -= g.times_term(*q, ratio);
        if (cofactors) (*cofactors)[i].add_term(*q, ratio);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      out.add_term(m, c);
      work.add_term(m, -c);
    }
  }
  return out;
}

// Coefficient-wise reduction of a parametric polynomial modulo N in K[a].
inline ParamPoly reduce_coeffs(const ParamPoly& f,
                               const std::vector<RatPoly>& N) {
  if (N.empty()) return f;
  ParamPoly r(f.ordering());
  for (const auto& [m, c] : f) r.add_term(m, reduce_by_set(c, N));
  return r;
}

// Rebuild f so its term map is sorted by ord. No-op when it already is.
template <class C>
SparsePoly<C> with_ordering(const SparsePoly<C>& f,
                            const MonomialOrdering& ord) {
  if (f.ordering() == ord) return f;
  SparsePoly<C> r(ord);
  for (const auto& [m, c] : f) r.add_term(m, c);
  return r;
}

inline int coeff_compare(const Rational& a, const Rational& b) {
  return cmp(a, b);
}
template <class C>
int poly_compare(const SparsePoly<C>& a, const SparsePoly<C>& b);
template <class C>
int coeff_compare(const SparsePoly<C>& a, const SparsePoly<C>& b) {
  return poly_compare(a, b);
}

// Canonical total order on polynomials of one ring: walk both term lists
// descending; the first differing monomial (then coefficient) decides, a
// longer equal prefix wins. Used for deterministic set output, not math.
template <class C>
int poly_compare(const SparsePoly<C>& a, const SparsePoly<C>& b) {
  a.ordering() == b.ordering() ||
      (throw std::invalid_argument("poly_compare: ordering mismatch"), false);
  auto ia = a.begin(), ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (int c = a.ordering().compare(ia->first, ib->first)) return c;
    if (int c = coeff_compare(ia->second, ib->second)) return c;
  }
  if (ia != a.end()) return 1;
  if (ib != b.end()) return -1;
  return 0;
}

}  // namespace cis
