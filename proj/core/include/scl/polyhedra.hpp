#pragma once

#include <vector>

#include "scl/linalg.hpp"

namespace scl {

// Extreme rays of {x >= 0 : e.x = 0 for e in eq, c.x >= 0 for c in ineq},
// as primitive integer vectors in lexicographic order. The implicit x >= 0
// keeps the cone pointed, which the double description step relies on.
std::vector<VecZ> cone_extreme_rays(int dim, const std::vector<VecQ>& eq,
                                    const std::vector<VecQ>& ineq);

struct VertexSet {
  std::vector<VecQ> vertices;
  std::vector<VecZ> rays;  // recession directions
};

// Vertices and recession rays of {y >= 0 : rows[i].y >= rhs[i]}, computed by
// running the cone enumeration on the homogenization.
VertexSet polyhedron_vertices(int dim, const std::vector<VecQ>& rows, const VecQ& rhs);

}  // namespace scl
