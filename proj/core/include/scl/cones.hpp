#pragma once

#include "scl/edges.hpp"
#include "scl/polyhedra.hpp"

namespace scl {

// Sigma-column boundary map for one factor: row tau gets +1 for each sigma
// leaving it and -1 for each sigma arriving, so dummies contribute zero.
MatQ boundary_map(const SigmaBasis& basis, const TauEdges& taus, int factor);

// Sigma-column homology map: row for each factor generator, column sigma
// (x, y) carrying half the sum of the two tau classes.
MatQ homology_map(const SigmaBasis& basis, const TauEdges& taus, const GroupSpec& g, int factor);

enum class ConeKind {
  Full,         // sigma coords >= 0, one free winding column per finite coordinate
  NoWinding,    // sigma coords only
  ZeroWinding,  // winding columns present but pinned to zero
};

struct ConeSystem {
  int factor = 0;
  ConeKind kind = ConeKind::Full;
  int num_sigma = 0;
  int num_winding = 0;
  MatQ boundary;                    // taus of the factor x dim()
  MatQ homology;                    // factor generators x dim()
  std::vector<int> sigma_ids;       // basis sigma id per sigma column
  std::vector<int> tau_rows;        // tau id per boundary row
  std::vector<int> winding_coord;   // amalg coordinate per winding column
  std::vector<bool> sigma_dummy;    // per sigma column
  std::vector<bool> sigma_subgroup; // dummy whose loop lies in the subgroup

  int dim() const { return num_sigma + num_winding; }
};

// Whether a class vector over one factor's generators is a power of the
// amalgamating subgroup: zero outside the finite coordinates' generators and
// divisible by the coordinate exponent on them.
bool subgroup_loop_class(const VecZ& cls, const GroupSpec& g, int factor);

// The cone of closed, null-homologous nonnegative sigma vectors for one
// factor. A winding column for amalgamation coordinate j carries -r_{f,j}
// in the row of that coordinate's generator and absorbs class in units of
// the subgroup, so Full describes vectors closing up to subgroup loops.
ConeSystem build_cone(const SigmaBasis& basis, const TauEdges& taus, const GroupSpec& g,
                      int factor, ConeKind kind);

// Primitive generators of the cone's extreme rays, lexicographically sorted.
// Winding entries may be negative; sigma entries never are.
std::vector<VecZ> extremal_rays(const ConeSystem& cone);

}  // namespace scl
