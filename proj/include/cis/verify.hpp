#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

#include "cis/cells.hpp"
#include "cis/involution.hpp"
#include "cis/poly.hpp"

// Independent checking layer: specialization at rational parameter points,
// a from-scratch involutive-basis test, an S-polynomial Groebner test, and
// ideal equality. Deliberately avoids the completion engine's code paths so
// it can serve as an oracle for them.
namespace cis {

// Values for the parameters a_0..a_{m-1}, indexed by parameter position.
using Point = std::vector<Rational>;

// Evaluates every coefficient at the point and drops vanished terms.
RatPoly specialize(const ParamPoly& f, const Point& point);

// All null conditions vanish and all nonnull conditions are nonzero.
bool satisfies_spec(const Point& point, const Specification& spec);

// Brute-force closure test: every nonmultiplicative prolongation of every
// element reduces to zero under restricted division. No shortcut criteria.
// Zero elements are ignored; the empty set passes vacuously.
bool is_involutive_basis(const std::vector<RatPoly>& G, const DivisionSpec& d);

// Buchberger criterion by exhaustive S-polynomial reduction.
bool is_groebner_basis(const std::vector<RatPoly>& G);

// Mutual membership through reduced Groebner bases of both sides.
bool same_ideal(const std::vector<RatPoly>& F, const std::vector<RatPoly>& G);

// Zero-biased rational sample: 0 with probability ~1/3, otherwise a
// fraction with |value| <= 5 and denominator <= 4.
Rational random_sample_value(std::mt19937& rng);

Point random_point(std::mt19937& rng, std::size_t nparams);

// A point satisfying the cell's specification, if one can be found. Solves
// linear-lead null conditions by back substitution, otherwise rejection
// sampling; nullopt when the attempt budget runs out.
std::optional<Point> cell_sample(const Cell& cell, std::size_t nparams,
                                 std::mt19937& rng, int attempts = 200);

// Indices of the cells whose specification the point satisfies.
std::vector<std::size_t> matching_cells(const std::vector<Cell>& cells,
                                        const Point& point);

// Everything checked about one parameter point against a computed system.
struct PointAudit {
  std::vector<std::size_t> matches;
  bool partition_ok = false;  // exactly one cell claims the point
  bool sound_ok = false;      // closure test passes, ideal matches the input
  bool minimal_ok = false;    // autoreduced and no element droppable
  bool ok() const { return partition_ok && sound_ok && minimal_ok; }
};

PointAudit audit_point(const std::vector<ParamPoly>& F,
                       const std::vector<Cell>& cells, const DivisionSpec& d,
                       const Point& point);

}  // namespace cis
