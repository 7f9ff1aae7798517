#pragma once

#include "scl/cones.hpp"
#include "scl/ratlp.hpp"

namespace scl {

// Integral cone vectors with connected support: the candidates a disc can
// bound. Vectors carry the full cone dimension, winding block included, and
// are reduced to the vertices of their convex hull plus the cone.
struct DiscVectorSet {
  int factor = 0;
  std::vector<VecZ> vectors;
  int bound = 0;               // sigma-mass radius the enumeration reached
  bool complete_hint = false;  // vertex set repeated under two bound doublings
};

// Walks balanced integral flows on the sigma digraph (multisets of simple
// cycles), keeps those with connected support and integral winding, prunes
// everything above an accepted vector, and doubles the radius until the hull
// vertex set repeats twice. cs must be a Full cone for the winding block to
// make sense; gr supplies the sigma endpoints.
DiscVectorSet enumerate_disc_vectors(const ConeSystem& cs, const GammaGraph& gr, int bound);

// Maximal total disc mass over representations v = sum t_i d_i + residual
// with the residual in the cone: the packing program max sum t, D t <= v on
// sigma coordinates. v may be given with or without its winding block.
// Throws std::invalid_argument when v lies outside the cone.
Rat klein(const VecQ& v, const DiscVectorSet& d, const ConeSystem& cs);

// The finitely many linear functionals whose minimum computes klein on the
// whole cone: vertices of {y >= 0 : <d_i, y> >= 1 for all disc vectors}.
struct KleinFunctionals {
  int factor = 0;
  std::vector<VecQ> funcs;  // over sigma coordinates
};

KleinFunctionals klein_functionals(const DiscVectorSet& d, const ConeSystem& cs);

// min over the functionals; 0 when the disc set is empty.
Rat klein_value(const KleinFunctionals& kf, const VecQ& v);

// Orbifold Euler characteristic of a vector: klein(v) - |v|/2 - v_ab, where
// |v| sums the genuine sigma coordinates and v_ab the dummy coordinates whose
// loop lies in the amalgamating subgroup.
Rat chi_o_vec(const VecQ& v, const DiscVectorSet& d, const ConeSystem& cs);

}  // namespace scl
