#include "scl/discs.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace scl {

namespace {

struct Cycle {
  VecZ v;  // sigma-column indicator
  int size = 0;
};

// All simple cycles of the sigma digraph, as column indicators. Vertices are
// the taus touched by the factor's sigmas; self-loops are one-edge cycles.
std::vector<Cycle> simple_cycles(const GammaGraph& gr, int num_sigma) {
  std::map<int, int> vid;
  for (const SigmaEdge& e : gr.edges) {
    vid.try_emplace(e.x, static_cast<int>(vid.size()));
    vid.try_emplace(e.y, static_cast<int>(vid.size()));
  }
  int nv = static_cast<int>(vid.size());
  std::vector<std::vector<std::pair<int, int>>> adj(nv);  // (target, column)
  for (int c = 0; c < static_cast<int>(gr.edges.size()); ++c)
    adj[vid.at(gr.edges[c].x)].push_back({vid.at(gr.edges[c].y), c});

  std::vector<Cycle> cycles;
  std::vector<int> path;
  std::vector<bool> on(nv, false);
  // Cycles are rooted at their smallest vertex to appear exactly once.
  auto dfs = [&](auto&& self, int start, int u) -> void {
    for (auto [to, col] : adj[u]) {
      if (to == start) {
        Cycle cy;
        cy.v.assign(num_sigma, 0);
        for (int pc : path) cy.v[pc] = 1;
        cy.v[col] = 1;
        cy.size = static_cast<int>(path.size()) + 1;
        cycles.push_back(std::move(cy));
      } else if (to > start && !on[to]) {
        on[to] = true;
        path.push_back(col);
        self(self, start, to);
        path.pop_back();
        on[to] = false;
      }
    }
  };
  for (int s = 0; s < nv; ++s) dfs(dfs, s, s);
  return cycles;
}

struct WindingRow {
  int row = 0;
  int col = 0;     // winding column within the full dimension
  int64_t r = 0;   // scaled coordinate exponent, nonzero
};

using SmallVec = std::vector<int32_t>;

struct Walker {
  const ConeSystem& cs;
  std::vector<Cycle> cycles;
  std::vector<SmallVec> cycle_v;  // cycle indicators in machine integers
  std::vector<WindingRow> winding_rows;
  std::vector<int> plain_rows;                   // homology rows without a winding column
  std::vector<std::vector<int64_t>> cycle_rows;  // scaled homology row values per cycle
  std::vector<int64_t> row_vals;                 // row values of the current partial
  std::vector<std::pair<int, int>> ends;         // gamma edge endpoints, compacted
  int num_verts = 0;
  std::vector<int> uf;  // union-find scratch

  // Accepted vectors persist across walks: a walk at a doubled radius only
  // explores what earlier radii have not already closed off.
  std::vector<SmallVec> accepted;  // sigma block
  std::vector<uint64_t> masks;     // support of accepted on the first 64 coords
  std::vector<VecZ> full;          // with winding block appended
  bool dirty = true;               // new acceptances since the last hull computation
  long nodes = 0;
  bool aborted = false;
  static constexpr long kNodeLimit = 5000000;

  Walker(const ConeSystem& c, const GammaGraph& g) : cs(c) {
    cycles = simple_cycles(g, cs.num_sigma);
    for (const Cycle& cy : cycles) {
      SmallVec v(cs.num_sigma);
      for (int i = 0; i < cs.num_sigma; ++i) v[i] = static_cast<int32_t>(cy.v[i].get_si());
      cycle_v.push_back(std::move(v));
    }

    std::map<int, int> vid;
    for (const SigmaEdge& e : g.edges) {
      vid.try_emplace(e.x, static_cast<int>(vid.size()));
      vid.try_emplace(e.y, static_cast<int>(vid.size()));
    }
    num_verts = static_cast<int>(vid.size());
    for (const SigmaEdge& e : g.edges) ends.emplace_back(vid.at(e.x), vid.at(e.y));

    // Scale each homology row to integers so the walk stays in int64.
    MatZ hom(cs.homology.rows, cs.homology.cols);
    for (int i = 0; i < cs.homology.rows; ++i) {
      Int den = 1;
      for (int j = 0; j < cs.homology.cols; ++j)
        den = int_lcm(den, cs.homology.at(i, j).get_den());
      for (int j = 0; j < cs.homology.cols; ++j) {
        Rat scaled = cs.homology.at(i, j) * Rat(den);
        hom.at(i, j) = scaled.get_num();
      }
    }

    std::vector<bool> has_winding(cs.homology.rows, false);
    for (int t = 0; t < cs.num_winding; ++t) {
      int col = cs.num_sigma + t;
      for (int i = 0; i < cs.homology.rows; ++i) {
        if (hom.at(i, col) != 0) {
          winding_rows.push_back({i, col, -hom.at(i, col).get_si()});
          has_winding[i] = true;
        }
      }
    }
    for (int i = 0; i < cs.homology.rows; ++i)
      if (!has_winding[i]) plain_rows.push_back(i);

    cycle_rows.resize(cycles.size());
    for (size_t k = 0; k < cycles.size(); ++k) {
      cycle_rows[k].assign(cs.homology.rows, 0);
      for (int i = 0; i < cs.homology.rows; ++i)
        for (int c = 0; c < cs.num_sigma; ++c)
          if (cycle_v[k][c] != 0) cycle_rows[k][i] += hom.at(i, c).get_si() * cycle_v[k][c];
    }
  }

  static uint64_t support_mask(const SmallVec& v) {
    uint64_t m = 0;
    int n = std::min<int>(static_cast<int>(v.size()), 64);
    for (int c = 0; c < n; ++c)
      if (v[c] != 0) m |= uint64_t{1} << c;
    return m;
  }

  bool dominated(const SmallVec& v) {
    // Domination needs support containment, so a mask test skips most rows;
    // hits migrate toward the front since dominators repeat along branches.
    uint64_t vm = support_mask(v);
    for (size_t i = 0; i < accepted.size(); ++i) {
      if (masks[i] & ~vm) continue;
      const SmallVec& u = accepted[i];
      bool ge = true;
      for (int c = 0; c < cs.num_sigma && ge; ++c) ge = v[c] >= u[c];
      if (ge) {
        if (i > 0) {
          size_t j = i / 2;
          std::swap(accepted[i], accepted[j]);
          std::swap(masks[i], masks[j]);
          std::swap(full[i], full[j]);
        }
        return true;
      }
    }
    return false;
  }

  bool connected(const SmallVec& v) {
    uf.assign(num_verts, -1);
    auto find = [&](int a) {
      while (uf[a] != a) a = uf[a] = uf[uf[a]];
      return a;
    };
    int comps = 0;
    for (size_t e = 0; e < ends.size(); ++e) {
      if (v[e] <= 0) continue;
      auto [x, y] = ends[e];
      if (uf[x] < 0) uf[x] = x, ++comps;
      if (uf[y] < 0) uf[y] = y, ++comps;
      int rx = find(x), ry = find(y);
      if (rx != ry) uf[rx] = ry, --comps;
    }
    return comps == 1;
  }

  bool try_accept(const SmallVec& v) {
    for (int i : plain_rows)
      if (row_vals[i] != 0) return false;
    for (const WindingRow& wr : winding_rows) {
      if (cs.kind == ConeKind::ZeroWinding) {
        if (row_vals[wr.row] != 0) return false;
      } else if (row_vals[wr.row] % wr.r != 0) {
        return false;
      }
    }
    if (!connected(v)) return false;
    VecZ winding(cs.num_winding, 0);
    for (const WindingRow& wr : winding_rows)
      if (cs.kind != ConeKind::ZeroWinding)
        winding[wr.col - cs.num_sigma] = Int(static_cast<long>(row_vals[wr.row] / wr.r));
    // Entries the new vector dominates are redundant; keeping the accepted
    // set an antichain keeps the scan in dominated() short.
    size_t keep = 0;
    for (size_t i = 0; i < accepted.size(); ++i) {
      bool ge = true;
      for (int c = 0; c < cs.num_sigma && ge; ++c) ge = accepted[i][c] >= v[c];
      if (ge) continue;
      if (keep != i) {
        accepted[keep] = std::move(accepted[i]);
        masks[keep] = masks[i];
        full[keep] = std::move(full[i]);
      }
      ++keep;
    }
    accepted.resize(keep);
    masks.resize(keep);
    full.resize(keep);
    accepted.push_back(v);
    masks.push_back(support_mask(v));
    VecZ f(cs.num_sigma);
    for (int c = 0; c < cs.num_sigma; ++c) f[c] = v[c];
    f.insert(f.end(), winding.begin(), winding.end());
    full.push_back(std::move(f));
    dirty = true;
    return true;
  }

  // Pre-order walk over cycle multisets, so every multiset is reached after
  // all of its sub-multisets. A feasible vector closes its whole subtree
  // (supersets decompose through it), and domination pruning discards the
  // redundant branches; non-minimal survivors are cleaned up by the hull
  // computation afterwards.
  void dfs(size_t k, int rem, SmallVec& partial) {
    if (aborted || ++nodes > kNodeLimit) {
      aborted = true;
      return;
    }
    if (dominated(partial)) return;
    if (try_accept(partial)) return;
    if (k == cycles.size() || rem == 0) return;
    dfs(k + 1, rem, partial);
    int n = 0;
    while (!aborted && (n + 1) * cycles[k].size <= rem) {
      ++n;
      for (int c = 0; c < cs.num_sigma; ++c) partial[c] += cycle_v[k][c];
      for (int i = 0; i < cs.homology.rows; ++i) row_vals[i] += cycle_rows[k][i];
      dfs(k + 1, rem - n * cycles[k].size, partial);
    }
    for (int c = 0; c < cs.num_sigma; ++c) partial[c] -= n * cycle_v[k][c];
    for (int i = 0; i < cs.homology.rows; ++i) row_vals[i] -= n * cycle_rows[k][i];
  }

  void walk(int radius) {
    nodes = 0;
    aborted = false;
    row_vals.assign(cs.homology.rows, 0);
    SmallVec partial(cs.num_sigma, 0);
    dfs(0, radius, partial);
  }
};

Rat packing_value(const std::vector<VecZ>& discs, const VecQ& v, int num_sigma,
                  int skip = -1) {
  // A disc with mass where v has none can never enter a packing, so both the
  // columns and the zero coordinates drop out of the program.
  std::vector<int> used;
  for (int j = 0; j < static_cast<int>(discs.size()); ++j) {
    if (j == skip) continue;
    bool fits = true;
    for (int c = 0; c < num_sigma && fits; ++c)
      if (discs[j][c] != 0 && v[c] == 0) fits = false;
    if (fits) used.push_back(j);
  }
  if (used.empty()) return Rat(0);
  LinearProgram lp;
  lp.maximize = true;
  for (size_t i = 0; i < used.size(); ++i) lp.add_var(Rat(1));
  for (int c = 0; c < num_sigma; ++c) {
    if (v[c] == 0) continue;
    VecQ coeffs(used.size());
    for (size_t i = 0; i < used.size(); ++i) coeffs[i] = Rat(discs[used[i]][c]);
    lp.add_row(std::move(coeffs), Rel::Le, v[c]);
  }
  return lp_solve(lp).value;
}

std::vector<VecZ> hull_vertices(const std::vector<VecZ>& minimal, int num_sigma) {
  auto covered = [&](int i, int j) {
    if (j == i) return false;
    for (int c = 0; c < num_sigma; ++c)
      if (minimal[j][c] > minimal[i][c]) return false;
    return true;
  };
  std::vector<VecZ> out;
  for (int i = 0; i < static_cast<int>(minimal.size()); ++i) {
    bool redundant = false;
    for (int j = 0; j < static_cast<int>(minimal.size()) && !redundant; ++j)
      redundant = covered(i, j);
    if (redundant) continue;
    VecQ v(num_sigma);
    for (int c = 0; c < num_sigma; ++c) v[c] = Rat(minimal[i][c]);
    if (packing_value(minimal, v, num_sigma, i) < 1) out.push_back(minimal[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

VecQ sigma_block(const VecQ& v, const ConeSystem& cs, const char* who) {
  if (static_cast<int>(v.size()) == cs.dim() || static_cast<int>(v.size()) == cs.num_sigma)
    return VecQ(v.begin(), v.begin() + cs.num_sigma);
  throw std::invalid_argument(std::string(who) + ": vector has the wrong dimension");
}

void require_in_cone(const VecQ& v, const ConeSystem& cs) {
  VecQ s = sigma_block(v, cs, "klein");
  for (const Rat& x : s)
    if (x < 0) throw std::invalid_argument("vector outside the cone");
  bool with_winding = static_cast<int>(v.size()) == cs.dim() && cs.num_winding > 0;
  for (int i = 0; i < cs.boundary.rows; ++i) {
    Rat val;
    for (int c = 0; c < cs.num_sigma; ++c) val += cs.boundary.at(i, c) * s[c];
    if (val != 0) throw std::invalid_argument("vector outside the cone");
  }
  for (int i = 0; i < cs.homology.rows; ++i) {
    Rat val;
    for (int c = 0; c < cs.num_sigma; ++c) val += cs.homology.at(i, c) * s[c];
    bool winding_row = false;
    for (int t = 0; t < cs.num_winding; ++t) {
      if (cs.homology.at(i, cs.num_sigma + t) == 0) continue;
      winding_row = true;
      if (with_winding)
        val += cs.homology.at(i, cs.num_sigma + t) * v[cs.num_sigma + t];
    }
    // A free winding row without an explicit winding entry determines the
    // winding rationally, so it cannot fail on a sigma-only vector. Pinned
    // winding keeps the row as a hard zero.
    if (winding_row && !with_winding && cs.kind != ConeKind::ZeroWinding) continue;
    if (val != 0) throw std::invalid_argument("vector outside the cone");
  }
}

}  // namespace

DiscVectorSet enumerate_disc_vectors(const ConeSystem& cs, const GammaGraph& gr, int bound) {
  if (bound <= 0) throw std::invalid_argument("enumeration bound must be positive");
  Walker walker(cs, gr);
  std::vector<VecZ> cached;
  auto hull_at = [&](int radius) {
    walker.walk(radius);
    if (std::getenv("SCL_DISC_STATS"))
      std::fprintf(stderr, "walk r=%d nodes=%ld accepted=%zu dirty=%d\n", radius, walker.nodes,
                   walker.accepted.size(), walker.dirty ? 1 : 0);
    if (walker.dirty) {
      cached = hull_vertices(walker.full, cs.num_sigma);
      walker.dirty = false;
    }
    return cached;
  };

  int radius = bound;
  std::vector<VecZ> hull = hull_at(radius);
  int stable = 0;
  for (int round = 0; stable < 2 && round < 6 && !walker.aborted; ++round) {
    std::vector<VecZ> next = hull_at(2 * radius);
    radius *= 2;
    stable = (next == hull) ? stable + 1 : 0;
    hull = std::move(next);
  }

  DiscVectorSet out;
  out.factor = cs.factor;
  out.vectors = std::move(hull);
  out.bound = radius;
  out.complete_hint = stable >= 2 && !walker.aborted;
  return out;
}

Rat klein(const VecQ& v, const DiscVectorSet& d, const ConeSystem& cs) {
  require_in_cone(v, cs);
  if (d.vectors.empty()) return Rat(0);
  VecQ s = sigma_block(v, cs, "klein");
  return packing_value(d.vectors, s, cs.num_sigma);
}

KleinFunctionals klein_functionals(const DiscVectorSet& d, const ConeSystem& cs) {
  KleinFunctionals kf;
  kf.factor = cs.factor;
  if (d.vectors.empty()) return kf;
  std::vector<VecQ> rows;
  VecQ rhs;
  for (const VecZ& disc : d.vectors) {
    VecQ row(cs.num_sigma);
    for (int c = 0; c < cs.num_sigma; ++c) row[c] = Rat(disc[c]);
    rows.push_back(std::move(row));
    rhs.push_back(Rat(1));
  }
  kf.funcs = polyhedron_vertices(cs.num_sigma, rows, rhs).vertices;
  return kf;
}

Rat klein_value(const KleinFunctionals& kf, const VecQ& v) {
  if (kf.funcs.empty()) return Rat(0);
  VecQ s(v.begin(), v.begin() + kf.funcs[0].size());
  Rat best = dot(kf.funcs[0], s);
  for (size_t i = 1; i < kf.funcs.size(); ++i) best = std::min(best, dot(kf.funcs[i], s));
  return best;
}

Rat chi_o_vec(const VecQ& v, const DiscVectorSet& d, const ConeSystem& cs) {
  Rat kappa = klein(v, d, cs);
  Rat genuine, ab;
  for (int c = 0; c < cs.num_sigma; ++c) {
    if (!cs.sigma_dummy[c]) genuine += v[c];
    else if (cs.sigma_subgroup[c]) ab += v[c];
  }
  return kappa - genuine / 2 - ab;
}

}  // namespace scl
