#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cis/poly.hpp"

// Canonical text form for polynomials and a matching expression parser.
// Terms print in descending order with explicit `^` and `*`, coefficients
// as reduced fractions; multi-term parametric coefficients are
// parenthesized. render followed by parse is the identity.
namespace cis {

std::string render(const RatPoly& f, const std::vector<std::string>& names);

std::string render(const ParamPoly& f,
                   const std::vector<std::string>& var_names,
                   const std::vector<std::string>& param_names);

struct ParseError : std::runtime_error {
  int line, col;
  std::string msg;  // bare message, so callers can re-anchor line/col
  ParseError(int line, int col, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", col " +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col),
        msg(msg) {}
};

// Expression grammar: + - * ^, parentheses, integer and a/b literals,
// declared names. No implicit multiplication. Throws ParseError.
ParamPoly parse_poly(const std::string& text,
                     const std::vector<std::string>& var_names,
                     const std::vector<std::string>& param_names,
                     const MonomialOrdering& ox, const MonomialOrdering& oa);

// Same grammar with every name a variable; coefficients stay rational.
RatPoly parse_ratpoly(const std::string& text,
                      const std::vector<std::string>& names,
                      const MonomialOrdering& ord);

}  // namespace cis
