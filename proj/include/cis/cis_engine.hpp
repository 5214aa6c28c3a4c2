#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cis/cells.hpp"
#include "cis/involution.hpp"
#include "cis/paramring.hpp"

namespace cis {

// Basis element with completion bookkeeping: the generator it descends from
// and the nonmultiplicative variables already expanded. seq breaks selection
// ties so runs are reproducible. root is the seq of the triple whose poly is
// this one's ancestor (0 while the triple is its own ancestor); value-equal
// copies of one polynomial can coexist in the queue, so lineage is tracked
// by identity, not by comparing ancestor polynomials.
struct Triple {
  ParamPoly poly;
  ParamPoly anc;
  VarSet nm_used;
  long seq = 0;
  long root = 0;
};

inline long root_of(const Triple& t) { return t.root ? t.root : t.seq; }

// One line of the exploration log: call depth, subroutine name, whether the
// line is the call or its result, and the rendered payload.
struct TraceEvent {
  int depth = 0;
  std::string name;
  bool entry = true;
  std::string text;
};
using TraceSink = std::function<void(const TraceEvent&)>;

struct EngineStats {
  long branches = 0;
  long reductions = 0;
  long criteria_hits = 0;
};

// Knobs and observers threaded through every subroutine. The parameter
// ordering is needed to build condition polynomials when all the input
// lists are empty. Name vectors feed the trace renderer; when they do not
// match the ring dimensions, x1../a1.. placeholders are generated.
struct EngineContext {
  MonomialOrdering ord_params = MonomialOrdering::lex(0);
  std::vector<std::string> var_names;
  std::vector<std::string> param_names;
  bool use_criteria = true;
  TraceSink sink;
  EngineStats stats;
  int depth = 0;
};

// Consistency check and normalization of a specification: the null part is
// replaced by its reduced Groebner basis, made square-free, and stripped of
// factors known to be nonnull; the nonnull part becomes a gcd-free family.
// compatible=false means no parameter point satisfies the specification, in
// which case the null part degenerates to {1}.
struct CanSpecResult {
  bool compatible = true;
  Specification spec;
};
CanSpecResult canspec(const Specification& in, EngineContext& ctx);

// Decides the leading coefficient of f under the specification. Heads whose
// coefficient vanishes on the whole region are stripped (each such
// coefficient joins the null conditions); the survivor is reduced and its
// leading coefficient factored. cd comes back empty when every factor is
// already known nonnull, else it holds the single smallest undecided factor
// the caller must branch on.
struct NewCondResult {
  std::vector<RatPoly> cd;
  ParamPoly poly;
  Specification spec;
};
NewCondResult newcond(const ParamPoly& f, const Specification& in,
                      EngineContext& ctx);

// Restricted-division head normal form of poly(p) against the basis B, with
// coefficient arithmetic kept exact by cross-multiplying leading
// coefficients. Prolongations whose head differs from their ancestor's may
// be discarded outright when the pairwise criteria apply. Every reduction
// step re-decides the new head; decided=false surfaces the partially
// reduced polynomial whose head coefficient needs a case split.
struct HeadNormalFormResult {
  bool decided = true;
  ParamPoly h;
  Specification spec;
};
HeadNormalFormResult head_normal_form(const Triple& p,
                                      const std::vector<Triple>& B,
                                      const Specification& spec,
                                      const DivisionSpec& d,
                                      EngineContext& ctx);

// Head normal form of every queue element against T, front to back.
// Unchanged heads keep their triple, moved nonzero heads restart as their
// own ancestor, vanished originals purge their queued prolongations.
// decided=false hands the offending triple and the untouched remainder of
// the queue upward so the exploration can branch and resume.
struct HeadReduceResult {
  bool decided = true;
  Triple offender;
  Specification spec;
  std::vector<Triple> queue;
};
HeadReduceResult head_reduce(const std::vector<Triple>& T,
                             const Specification& spec,
                             std::vector<Triple> Q, const DivisionSpec& d,
                             EngineContext& ctx, long& seq);

// Completion of the generators B (plus resumed queue P) into a minimal
// involutive basis valid on the whole region described by spec. done=false
// reports the triple whose head coefficient is undecided together with the
// exact state (basis, spec, pending queue) needed to resume after the case
// split.
struct GbiResult {
  bool done = true;
  Triple offender;
  std::vector<Triple> basis;
  Specification spec;
  std::vector<Triple> pending;
};
GbiResult gbi_param(std::vector<Triple> B, Specification spec,
                    std::vector<Triple> P, const DivisionSpec& d,
                    EngineContext& ctx, long& seq);

// One node of the exploration: the triple under examination, the current
// generators, the region constraints, and work resumed from an interrupted
// completion.
struct BranchState {
  Triple pending_triple;
  std::vector<Triple> basis;
  Specification spec;
  std::vector<Triple> queue;
};

// Partitions the parameter space into finitely many cells and returns, for
// each cell, a basis whose specialization at every point of the cell is a
// minimal involutive basis of the specialized input ideal. Cells come out
// in depth-first order, nonnull branch first. Zero generators are ignored;
// an effectively empty input yields the single unconstrained cell with an
// empty basis.
std::vector<Cell> cominvsys(const std::vector<ParamPoly>& F,
                            const DivisionSpec& d,
                            const MonomialOrdering& ord_x,
                            const MonomialOrdering& ord_a,
                            EngineContext& ctx);

}  // namespace cis
