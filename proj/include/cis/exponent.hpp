#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cis {

// Dense exponent vector of one monomial over a fixed variable block.
// Immutable after construction; arithmetic returns new values.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::vector<std::uint32_t> e) : e_(std::move(e)) {}
  Exponent(std::initializer_list<std::uint32_t> e) : e_(e) {}

  static Exponent unit(std::size_t nvars) {
    return Exponent(std::vector<std::uint32_t>(nvars, 0));
  }
  static Exponent var(std::size_t nvars, std::size_t i, std::uint32_t k = 1) {
    if (i >= nvars) throw std::invalid_argument("variable index out of range");
    std::vector<std::uint32_t> e(nvars, 0);
    e[i] = k;
    return Exponent(std::move(e));
  }

  std::size_t size() const { return e_.size(); }
  std::uint32_t operator[](std::size_t i) const { return e_[i]; }

  std::uint64_t total_degree() const {
    return std::accumulate(e_.begin(), e_.end(), std::uint64_t{0});
  }
  bool is_unit() const {
    for (auto d : e_)
      if (d) return false;
    return true;
  }

  Exponent times(const Exponent& o) const {
    check_dim(o);
    std::vector<std::uint32_t> r(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) {
      std::uint64_t s = std::uint64_t{e_[i]} + o.e_[i];
      if (s > std::numeric_limits<std::uint32_t>::max())
        throw std::overflow_error("exponent overflow");
      r[i] = static_cast<std::uint32_t>(s);
    }
    return Exponent(std::move(r));
  }

  Exponent times_var(std::size_t i, std::uint32_t k = 1) const {
    return times(Exponent::var(e_.size(), i, k));
  }

  bool divides(const Exponent& o) const {
    check_dim(o);
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  // o / this, or nullopt when this does not divide o.
  std::optional<Exponent> quotient_of(const Exponent& o) const {
    check_dim(o);
    std::vector<std::uint32_t> r(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (e_[i] > o.e_[i]) return std::nullopt;
      r[i] = o.e_[i] - e_[i];
    }
    return Exponent(std::move(r));
  }

  static Exponent lcm(const Exponent& a, const Exponent& b) {
    a.check_dim(b);
    std::vector<std::uint32_t> r(a.e_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::max(a.e_[i], b.e_[i]);
    return Exponent(std::move(r));
  }
  static Exponent gcd(const Exponent& a, const Exponent& b) {
    a.check_dim(b);
    std::vector<std::uint32_t> r(a.e_.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::min(a.e_[i], b.e_[i]);
    return Exponent(std::move(r));
  }

  bool operator==(const Exponent& o) const { return e_ == o.e_; }
  bool operator!=(const Exponent& o) const { return e_ != o.e_; }

  // Order-free comparison, only for use as a container key.
  struct RawLess {
    bool operator()(const Exponent& a, const Exponent& b) const {
      return a.e_ < b.e_;
    }
  };

 private:
  void check_dim(const Exponent& o) const {
    if (e_.size() != o.e_.size())
      throw std::invalid_argument("exponent dimension mismatch");
  }
  std::vector<std::uint32_t> e_;
};

inline std::optional<Exponent> monomial_quotient(const Exponent& num,
                                                 const Exponent& den) {
  return den.quotient_of(num);
}

}  // namespace cis
