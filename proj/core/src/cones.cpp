#include "scl/cones.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace scl {

namespace {

// Trivial taus carry an empty class vector; read them as zero.
Rat cls_at(const TauEdge& t, int local) {
  if (t.cls.empty()) return Rat(0);
  return Rat(t.cls[local]);
}

std::map<int, int> tau_row_index(const TauEdges& taus, int factor, std::vector<int>* order) {
  std::map<int, int> row;
  for (const TauEdge& t : taus.taus) {
    if (t.factor != factor) continue;
    row[t.id] = static_cast<int>(row.size());
    if (order) order->push_back(t.id);
  }
  return row;
}

}  // namespace

bool subgroup_loop_class(const VecZ& cls, const GroupSpec& g, int factor) {
  for (int l = 0; l < static_cast<int>(cls.size()); ++l) {
    std::optional<int> j = g.coord_of(factor, l);
    if (j && g.coords[*j].finite) {
      if (cls[l] % g.coords[*j].exp[factor] != 0) return false;
    } else if (cls[l] != 0) {
      return false;
    }
  }
  return true;
}

MatQ boundary_map(const SigmaBasis& basis, const TauEdges& taus, int factor) {
  std::map<int, int> row = tau_row_index(taus, factor, nullptr);
  const std::vector<int>& cols = basis.by_factor[factor];
  MatQ m(static_cast<int>(row.size()), static_cast<int>(cols.size()));
  for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
    const SigmaEdge& s = basis.sigmas[cols[c]];
    m.at(row.at(s.x), c) += 1;
    m.at(row.at(s.y), c) -= 1;
  }
  return m;
}

MatQ homology_map(const SigmaBasis& basis, const TauEdges& taus, const GroupSpec& g, int factor) {
  int ngen = static_cast<int>(g.factors[factor].gens.size());
  const std::vector<int>& cols = basis.by_factor[factor];
  MatQ m(ngen, static_cast<int>(cols.size()));
  Rat half = make_rat(1, 2);
  for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
    const SigmaEdge& s = basis.sigmas[cols[c]];
    const TauEdge& x = taus.taus[s.x];
    const TauEdge& y = taus.taus[s.y];
    for (int l = 0; l < ngen; ++l) m.at(l, c) = half * (cls_at(x, l) + cls_at(y, l));
  }
  return m;
}

ConeSystem build_cone(const SigmaBasis& basis, const TauEdges& taus, const GroupSpec& g,
                      int factor, ConeKind kind) {
  ConeSystem cone;
  cone.factor = factor;
  cone.kind = kind;
  cone.sigma_ids = basis.by_factor[factor];
  cone.num_sigma = static_cast<int>(cone.sigma_ids.size());
  tau_row_index(taus, factor, &cone.tau_rows);
  for (int id : cone.sigma_ids) {
    const SigmaEdge& s = basis.sigmas[id];
    cone.sigma_dummy.push_back(s.dummy);
    cone.sigma_subgroup.push_back(s.dummy &&
                                  subgroup_loop_class(taus.taus[s.x].cls, g, factor));
  }

  if (kind != ConeKind::NoWinding) {
    for (int j = 0; j < static_cast<int>(g.coords.size()); ++j) {
      if (g.coords[j].finite) cone.winding_coord.push_back(j);
    }
  }
  cone.num_winding = static_cast<int>(cone.winding_coord.size());

  MatQ bnd = boundary_map(basis, taus, factor);
  MatQ hom = homology_map(basis, taus, g, factor);
  cone.boundary = MatQ(bnd.rows, cone.dim());
  cone.homology = MatQ(hom.rows, cone.dim());
  for (int i = 0; i < bnd.rows; ++i)
    for (int c = 0; c < cone.num_sigma; ++c) cone.boundary.at(i, c) = bnd.at(i, c);
  for (int i = 0; i < hom.rows; ++i)
    for (int c = 0; c < cone.num_sigma; ++c) cone.homology.at(i, c) = hom.at(i, c);
  for (int t = 0; t < cone.num_winding; ++t) {
    const AmalgCoord& coord = g.coords[cone.winding_coord[t]];
    cone.homology.at(coord.gen[factor], cone.num_sigma + t) = Rat(-coord.exp[factor]);
  }
  return cone;
}

std::vector<VecZ> extremal_rays(const ConeSystem& cone) {
  int d = cone.dim();
  if (d == 0) return {};

  std::vector<VecQ> eqs;
  auto push_rows = [&](const MatQ& m) {
    for (int i = 0; i < m.rows; ++i) {
      VecQ row(d);
      for (int j = 0; j < d; ++j) row[j] = m.at(i, j);
      if (!is_zero(row)) eqs.push_back(std::move(row));
    }
  };
  push_rows(cone.boundary);
  push_rows(cone.homology);
  if (cone.kind == ConeKind::ZeroWinding) {
    for (int t = 0; t < cone.num_winding; ++t) {
      VecQ row(d);
      row[cone.num_sigma + t] = 1;
      eqs.push_back(std::move(row));
    }
  }

  if (cone.num_winding == 0 || cone.kind == ConeKind::ZeroWinding) {
    std::vector<VecZ> rays = cone_extreme_rays(d, eqs, {});
    // ZeroWinding rays keep their pinned columns, which are zero already.
    return rays;
  }

  // Free winding columns: split each as w = w+ - w- so the double description
  // runs in the nonnegative orthant, then fold back and keep only the rays
  // whose tight constraints have rank dim - 1.
  int dd = cone.num_sigma + 2 * cone.num_winding;
  std::vector<VecQ> split_eqs;
  split_eqs.reserve(eqs.size());
  for (const VecQ& row : eqs) {
    VecQ s(dd);
    for (int j = 0; j < cone.num_sigma; ++j) s[j] = row[j];
    for (int t = 0; t < cone.num_winding; ++t) {
      s[cone.num_sigma + 2 * t] = row[cone.num_sigma + t];
      s[cone.num_sigma + 2 * t + 1] = -row[cone.num_sigma + t];
    }
    split_eqs.push_back(std::move(s));
  }

  std::vector<VecZ> folded;
  for (const VecZ& r : cone_extreme_rays(dd, split_eqs, {})) {
    VecQ v(d);
    for (int j = 0; j < cone.num_sigma; ++j) v[j] = Rat(r[j]);
    for (int t = 0; t < cone.num_winding; ++t)
      v[cone.num_sigma + t] = Rat(r[cone.num_sigma + 2 * t] - r[cone.num_sigma + 2 * t + 1]);
    if (is_zero(v)) continue;
    folded.push_back(primitive(v));
  }
  std::sort(folded.begin(), folded.end());
  folded.erase(std::unique(folded.begin(), folded.end()), folded.end());

  std::vector<VecZ> rays;
  for (const VecZ& r : folded) {
    MatQ tight(0, d);
    tight.rows = static_cast<int>(eqs.size());
    for (const VecQ& row : eqs) tight.data.insert(tight.data.end(), row.begin(), row.end());
    for (int j = 0; j < cone.num_sigma; ++j) {
      if (r[j] != 0) continue;
      VecQ unit(d);
      unit[j] = 1;
      tight.data.insert(tight.data.end(), unit.begin(), unit.end());
      ++tight.rows;
    }
    if (rank(tight) == d - 1) rays.push_back(r);
  }
  return rays;
}

}  // namespace scl
