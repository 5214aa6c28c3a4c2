#pragma once

#include <string>
#include <vector>

#include "cis/involution.hpp"
#include "cis/paramring.hpp"
#include "cis/textio.hpp"

// Problem files: a line-oriented stanza format declaring the two variable
// blocks, their orderings, a division descriptor and the generators.
//
//   # comment to end of line
//   params: a, b
//   vars: x, y
//   order_params: lex a > b
//   order_vars: lex x > y
//   division: janet
//   generators:
//     a*x^2*y - y^3
//     b*x + y^2
//
// Stanzas may appear in any order and at most once; `vars` is mandatory,
// `params` may be empty or missing. Ordering stanzas are `lex` or
// `degrevlex`, optionally followed by a precedence chain that must list
// every name of the block exactly once (most significant first); without a
// chain the declaration order is used. Generator expressions follow the
// `generators:` header one per line (or one on the header line itself) and
// use the expression grammar of parse_poly over the declared names.
namespace cis {

struct ProblemFile {
  std::vector<std::string> params;
  std::vector<std::string> vars;
  MonomialOrdering order_params = MonomialOrdering::lex(0);
  MonomialOrdering order_vars = MonomialOrdering::lex(0);
  std::string division = "janet";
  std::vector<ParamPoly> generators;
};

// Throws ParseError with 1-based line/col of the offending token.
ProblemFile parse_problem(const std::string& text);

// Reads the file and parses it; IO failures throw std::runtime_error.
ProblemFile load_problem(const std::string& path);

// Division descriptors: `janet`, or `pair:<perm>:<order>:<adm|inv>` where
// <perm> is a comma-separated permutation of 1..n giving the scan order,
// <order> is lex or degrevlex taken with that same precedence, and the tag
// picks the plain or reversed comparison. `pair:1,..,n:lex:adm` equals
// janet. Throws std::invalid_argument on malformed descriptors.
DivisionSpec parse_division(const std::string& descriptor, std::size_t nvars);

// Canonical text form, e.g. "lex x > y"; parses back to an equal ordering.
std::string ordering_descriptor(const MonomialOrdering& o,
                                const std::vector<std::string>& names);

}  // namespace cis
