#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cis/exponent.hpp"

namespace cis {

enum class OrderKind { lex, degrevlex };

// Admissible monomial ordering over one variable block: lex or degrevlex
// composed with a precedence permutation. precedence()[0] is the most
// significant variable.
class MonomialOrdering {
 public:
  MonomialOrdering() = default;

  static MonomialOrdering lex(std::size_t nvars) {
    return MonomialOrdering(OrderKind::lex, natural(nvars));
  }
  static MonomialOrdering lex(std::vector<std::size_t> precedence) {
    return MonomialOrdering(OrderKind::lex, std::move(precedence));
  }
  static MonomialOrdering degrevlex(std::size_t nvars) {
    return MonomialOrdering(OrderKind::degrevlex, natural(nvars));
  }
  static MonomialOrdering degrevlex(std::vector<std::size_t> precedence) {
    return MonomialOrdering(OrderKind::degrevlex, std::move(precedence));
  }
  static MonomialOrdering make(OrderKind kind, std::vector<std::size_t> prec) {
    return MonomialOrdering(kind, std::move(prec));
  }

  std::size_t nvars() const { return prec_.size(); }
  OrderKind kind() const { return kind_; }
  const std::vector<std::size_t>& precedence() const { return prec_; }

  // +1 when a follows b in the ordering (a comes out "larger"), -1 when it
  // precedes, 0 on equality.
  int compare(const Exponent& a, const Exponent& b) const {
    if (a.size() != prec_.size() || b.size() != prec_.size())
      throw std::invalid_argument("exponent dimension mismatch with ordering");
    if (kind_ == OrderKind::lex) {
      for (std::size_t j = 0; j < prec_.size(); ++j) {
        std::size_t i = prec_[j];
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
      }
      return 0;
    }
    std::uint64_t da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db ? 1 : -1;
    // Equal degree: the least significant variable with differing exponent
    // decides, and the side with the smaller entry there wins.
    for (std::size_t j = prec_.size(); j-- > 0;) {
      std::size_t i = prec_[j];
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }

  bool greater(const Exponent& a, const Exponent& b) const {
    return compare(a, b) > 0;
  }
  bool less(const Exponent& a, const Exponent& b) const {
    return compare(a, b) < 0;
  }

  bool operator==(const MonomialOrdering& o) const {
    return kind_ == o.kind_ && prec_ == o.prec_;
  }
  bool operator!=(const MonomialOrdering& o) const { return !(*this == o); }

 private:
  MonomialOrdering(OrderKind kind, std::vector<std::size_t> prec)
      : kind_(kind), prec_(std::move(prec)) {
    std::vector<bool> seen(prec_.size(), false);
    for (auto i : prec_) {
      if (i >= prec_.size() || seen[i])
        throw std::invalid_argument("precedence is not a permutation");
      seen[i] = true;
    }
  }
  static std::vector<std::size_t> natural(std::size_t n) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
  }

  OrderKind kind_ = OrderKind::lex;
  std::vector<std::size_t> prec_;
};

// Block ordering on monomials of K[a][x] seen as pairs (x-part, a-part):
// the variable block dominates, parameters break ties.
class EliminationOrdering {
 public:
  EliminationOrdering(MonomialOrdering var_order, MonomialOrdering param_order)
      : vars_(std::move(var_order)), params_(std::move(param_order)) {}

  int compare(const std::pair<Exponent, Exponent>& a,
              const std::pair<Exponent, Exponent>& b) const {
    if (int c = vars_.compare(a.first, b.first)) return c;
    return params_.compare(a.second, b.second);
  }

  const MonomialOrdering& var_order() const { return vars_; }
  const MonomialOrdering& param_order() const { return params_; }

 private:
  MonomialOrdering vars_, params_;
};

inline int compare(const Exponent& a, const Exponent& b,
                   const MonomialOrdering& ord) {
  return ord.compare(a, b);
}
inline int compare_elim(const std::pair<Exponent, Exponent>& a,
                        const std::pair<Exponent, Exponent>& b,
                        const EliminationOrdering& ord) {
  return ord.compare(a, b);
}

}  // namespace cis
