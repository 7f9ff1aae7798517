#pragma once

#include <vector>

#include "scl/presentation.hpp"

namespace scl {

// One maximal single-factor subword occurrence in a chain term. Trivial
// edges carry an empty class and are inserted at intermediate factors when
// consecutive blocks jump more than one factor apart, so that succ/pred
// always step between adjacent factors. A word lying in a single factor is
// an abelian loop: its only tau is its own successor.
struct TauEdge {
  int id = 0;
  int term = 0;
  int pos = 0;
  int factor = 0;
  VecZ cls;  // exponent vector over the factor's generators
  bool trivial = false;
  bool loop = false;
};

struct TauEdges {
  std::vector<TauEdge> taus;
  std::vector<std::vector<int>> by_term;  // cyclic sequence of tau ids per term

  int succ(int id) const;
  int pred(int id) const;
};

TauEdges extract_tau_edges(const Chain& c, const GroupSpec& g);

// Ordered pair of taus bounding one junction of a surface piece in a factor:
// the boundary finishes tau x, leaves through a cylinder, returns through the
// same cylinder, and starts tau y. Valid when the cylinder the word exits
// after x equals the one it enters before y. An abelian loop contributes a
// dummy pair (lambda, lambda) that never crosses a cylinder.
struct SigmaEdge {
  int id = 0;
  int factor = 0;
  int x = 0;
  int y = 0;
  bool dummy = false;
  int cylinder = -1;  // c means between factors c and c+1; -1 for dummies
};

struct SigmaBasis {
  std::vector<SigmaEdge> sigmas;
  std::vector<std::vector<int>> by_factor;  // coordinate order per factor

  int coord_of(int sigma_id) const;  // position within its factor's order
  int find(int factor, int x, int y) const;
};

SigmaBasis build_sigma_basis(const TauEdges& t, const GroupSpec& g);

// Each genuine sigma (x, y) glues to the unique sigma (pred y, succ x) on
// the far side of its cylinder. Returned as sigma id pairs, each listed once.
std::vector<std::pair<int, int>> compatibility_pairs(const SigmaBasis& basis, const TauEdges& t);

// A vector over one factor's sigma coordinates, in by_factor order.
struct EdgeVector {
  int factor = 0;
  VecQ v;
};

// Vertices are the taus of a factor, edges its sigmas (a dummy is a vertex
// with a self-edge). count_components restricts to the edges with positive
// weight in v and counts connected components of the touched subgraph.
struct GammaGraph {
  int factor = 0;
  std::vector<SigmaEdge> edges;  // in by_factor coordinate order
};

GammaGraph build_gamma(const SigmaBasis& basis, int factor);
int count_components(const GammaGraph& gamma, const VecQ& v);

}  // namespace scl
