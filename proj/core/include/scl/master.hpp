#pragma once

#include <utility>
#include <vector>

#include "scl/cones.hpp"
#include "scl/discs.hpp"
#include "scl/edges.hpp"
#include "scl/presentation.hpp"
#include "scl/ratlp.hpp"

namespace scl {

struct SclOptions {
  // Starting radius for disc vector enumeration (doubled internally until the
  // hull stabilizes).
  int bound = 4;

  // Epigraph: one variable z_i per factor with a row per Klein functional.
  // Columns: one variable per disc vector instead (no functional computation);
  // Auto picks Columns when some factor has a large disc set.
  enum class Form { Auto, Epigraph, Columns };
  Form form = Form::Auto;
};

// The scl linear program for a normalized chain: per factor a vector over its
// sigma coordinates constrained to the factor cone, glued by compatibility
// equalities, with every tau edge starting sigma mass equal to its word's
// multiplicity. The objective minimizes total genuine mass / 2 plus subgroup
// dummy mass minus the Klein values.
struct SclProblem {
  GroupSpec group;
  Chain chain;  // normalized; chain.scale relates it to the input chain
  TauEdges taus;
  SigmaBasis basis;
  std::vector<std::pair<int, int>> compat;
  std::vector<ConeSystem> cones;
  std::vector<DiscVectorSet> discs;
  std::vector<KleinFunctionals> funcs;

  LinearProgram lp;
  std::vector<int> var_base;  // first LP variable of each factor's sigma block
  std::vector<int> z_var;     // epigraph variable per factor, -1 in column form
  std::vector<int> t_base;    // first disc weight variable per factor, column form
  bool epigraph = true;
};

struct SclSolution {
  Rat value;  // max(raw, 0)
  Rat raw;    // half the LP minimum, rescaled to the input chain
  bool clamped = false;
  std::vector<VecQ> vectors;  // optimal sigma vector per factor
  VecQ duals;                 // LP row duals
};

// Rebuilds problem.lp and the variable maps from the stored cones, discs, and
// functionals. Form::Auto switches to columns when a disc set is large;
// Form::Epigraph computes missing Klein functionals on demand.
void assemble_lp(SclProblem& p, SclOptions::Form form);

// Normalizes the chain, extracts edges and cones, enumerates disc vectors,
// and assembles the LP. Throws std::invalid_argument when the chain is not
// null-homologous.
SclProblem build_problem(const GroupSpec& g, const Chain& c, const SclOptions& opts = {});

// Solves the assembled LP. Throws std::runtime_error when the LP is
// infeasible or unbounded, since boundary chains always admit surfaces.
SclSolution solve_problem(const SclProblem& p);

// Stable commutator length of the chain: max(half the LP minimum, 0), exact.
// The raw value is kept (and the clamp flagged) since a negative raw value
// signals a chain trivial in the group.
SclSolution scl(const GroupSpec& g, const Chain& c, const SclOptions& opts = {});

// Same program over any number of factors; compatibility pairs only couple
// cyclically adjacent factor occurrences, so unused factors contribute zero.
SclSolution scl_multi(const GroupSpec& g, const Chain& c, const SclOptions& opts = {});

// The amalgam of rank one factors a_i with a_1^{p_1} = ... = a_s^{p_s},
// which maps onto the free product of cyclic groups Z/p_i by killing the
// center. Order 0 stands for an infinite cyclic factor; orders must then be
// infinite across the board, giving a plain free product.
GroupSpec cyclic_lift_group(const std::vector<Int>& orders);

// scl of the word's image in the free product of cyclic groups Z/p_i,
// computed in the central extension cyclic_lift_group(orders) where it
// agrees. The lift appends a central correction term a_1^{p_1 m} making the
// chain null-homologous upstairs; downstairs the correction is trivial.
// Throws std::invalid_argument when the word is not a boundary (some
// generator total is not divisible by its order) or orders are invalid.
SclSolution scl_cyclic(const std::vector<Int>& orders, const Word& w, const SclOptions& opts = {});

}  // namespace scl
