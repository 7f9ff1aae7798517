#include "scl/polyhedra.hpp"

#include <algorithm>
#include <stdexcept>

namespace scl {

namespace {

VecQ to_rat(const VecZ& v) {
  VecQ out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

struct DoubleDescription {
  int dim;
  std::vector<VecQ> halfspaces;  // processed so far, orthant rows included
  std::vector<VecQ> rays;

  explicit DoubleDescription(int d) : dim(d) {
    for (int i = 0; i < d; ++i) {
      VecQ e(d, Rat(0));
      e[i] = 1;
      halfspaces.push_back(e);
      rays.push_back(e);
    }
  }

  std::vector<bool> zero_set(const VecQ& r) const {
    std::vector<bool> z(halfspaces.size());
    for (size_t k = 0; k < halfspaces.size(); ++k) z[k] = dot(halfspaces[k], r) == 0;
    return z;
  }

  // Combinatorial adjacency: a, b are adjacent iff no third ray is tight on
  // every halfspace both are tight on. Requires the current cone pointed.
  bool adjacent(size_t ia, size_t ib, const std::vector<std::vector<bool>>& zs) const {
    for (size_t ic = 0; ic < rays.size(); ++ic) {
      if (ic == ia || ic == ib) continue;
      bool contains = true;
      for (size_t k = 0; k < halfspaces.size(); ++k) {
        if (zs[ia][k] && zs[ib][k] && !zs[ic][k]) {
          contains = false;
          break;
        }
      }
      if (contains) return false;
    }
    return true;
  }

  void insert(const VecQ& c) {
    std::vector<Rat> val(rays.size());
    for (size_t i = 0; i < rays.size(); ++i) val[i] = dot(c, rays[i]);
    bool any_neg = false;
    for (const Rat& v : val)
      if (v < 0) any_neg = true;
    if (!any_neg) {
      halfspaces.push_back(c);
      return;
    }
    std::vector<std::vector<bool>> zs(rays.size());
    for (size_t i = 0; i < rays.size(); ++i) zs[i] = zero_set(rays[i]);

    std::vector<VecQ> next;
    for (size_t i = 0; i < rays.size(); ++i)
      if (val[i] >= 0) next.push_back(rays[i]);
    for (size_t ip = 0; ip < rays.size(); ++ip) {
      if (val[ip] <= 0) continue;
      for (size_t im = 0; im < rays.size(); ++im) {
        if (val[im] >= 0) continue;
        if (!adjacent(ip, im, zs)) continue;
        VecQ mixed = vec_sub(vec_scale(val[ip], rays[im]), vec_scale(val[im], rays[ip]));
        next.push_back(to_rat(primitive(mixed)));
      }
    }
    rays = std::move(next);
    halfspaces.push_back(c);
  }
};

}  // namespace

std::vector<VecZ> cone_extreme_rays(int dim, const std::vector<VecQ>& eq,
                                    const std::vector<VecQ>& ineq) {
  for (const VecQ& c : eq)
    if (static_cast<int>(c.size()) != dim) throw std::invalid_argument("cone: bad eq size");
  for (const VecQ& c : ineq)
    if (static_cast<int>(c.size()) != dim) throw std::invalid_argument("cone: bad ineq size");
  if (dim == 0) return {};

  DoubleDescription dd(dim);
  for (const VecQ& c : eq) {
    dd.insert(c);
    VecQ neg = vec_scale(Rat(-1), c);
    dd.insert(neg);
  }
  for (const VecQ& c : ineq) dd.insert(c);

  std::vector<VecZ> out;
  out.reserve(dd.rays.size());
  for (const VecQ& r : dd.rays) out.push_back(primitive(r));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

VertexSet polyhedron_vertices(int dim, const std::vector<VecQ>& rows, const VecQ& rhs) {
  if (rows.size() != rhs.size()) throw std::invalid_argument("polyhedron: row/rhs mismatch");
  std::vector<VecQ> homog;
  homog.reserve(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != dim)
      throw std::invalid_argument("polyhedron: bad row size");
    VecQ h = rows[i];
    h.push_back(-rhs[i]);
    homog.push_back(std::move(h));
  }
  std::vector<VecZ> cone_rays = cone_extreme_rays(dim + 1, {}, homog);
  VertexSet out;
  for (const VecZ& r : cone_rays) {
    if (r[dim] == 0) {
      VecZ dir(r.begin(), r.begin() + dim);
      if (!std::all_of(dir.begin(), dir.end(), [](const Int& x) { return x == 0; }))
        out.rays.push_back(std::move(dir));
    } else {
      VecQ v(dim);
      for (int j = 0; j < dim; ++j) {
        v[j] = Rat(r[j], r[dim]);
        v[j].canonicalize();
      }
      out.vertices.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace scl
