#pragma once

#include <vector>

#include "cis/poly.hpp"

namespace cis {

// A parameter-space region described by vanishing and non-vanishing
// constraints. null_conds is kept as a reduced Groebner basis in the
// parameter ring; nonnull_conds holds square-free pairwise-coprime factors.
struct Specification {
  std::vector<RatPoly> null_conds;
  std::vector<RatPoly> nonnull_conds;

  bool operator==(const Specification&) const = default;
};

// One region together with the basis valid on it. The basis polynomials
// have nonnull leading coefficients everywhere on the region.
struct Cell {
  std::vector<ParamPoly> basis;
  Specification spec;

  bool operator==(const Cell&) const = default;
};

}  // namespace cis
