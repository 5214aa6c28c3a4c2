#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace cis {

// Exact rational scalar. mpq_class keeps num/den coprime with den > 0 as long
// as values are built through arithmetic or canonicalize(), which is exactly
// the invariant we need.
using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline Rational rational_from_string(const std::string& s) {
  try {
    Rational r(s);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  }
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace cis
