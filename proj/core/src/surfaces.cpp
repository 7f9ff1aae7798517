#include "scl/surfaces.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace scl {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[b] = a;
  }
};

void check_system(const GluingSystem& gs) {
  int nf = static_cast<int>(gs.blocks.size());
  if (static_cast<int>(gs.rhs.size()) != nf)
    throw std::invalid_argument("gluing system: blocks and rhs disagree");
  if (static_cast<int>(gs.col_factors.size()) != gs.num_cols)
    throw std::invalid_argument("gluing system: column factors missing");
  for (int c = 0; c < gs.num_cols; ++c) {
    auto [lo, hi] = gs.col_factors[c];
    if (lo < 0 || hi < 0 || lo >= nf || hi >= nf || lo == hi)
      throw std::invalid_argument("gluing system: bad column factors");
  }
  std::vector<int> in_lower(gs.num_cols, 0), in_upper(gs.num_cols, 0);
  VecZ total(gs.k, 0);
  for (int f = 0; f < nf; ++f) {
    const MatZ& b = gs.blocks[f];
    if (b.rows > 0 && b.cols != gs.num_cols)
      throw std::invalid_argument("gluing system: block width mismatch");
    if (static_cast<int>(gs.rhs[f].size()) != b.rows)
      throw std::invalid_argument("gluing system: rhs length mismatch");
    for (const VecZ& r : gs.rhs[f]) {
      if (static_cast<int>(r.size()) != gs.k)
        throw std::invalid_argument("gluing system: rhs dimension mismatch");
      for (int u = 0; u < gs.k; ++u) total[u] += r[u];
    }
    for (int i = 0; i < b.rows; ++i) {
      for (int c = 0; c < b.cols; ++c) {
        const Int& e = b.at(i, c);
        if (e == 0) continue;
        if (e != 1)
          throw std::invalid_argument("gluing system: incidence entries must be 0 or 1");
        if (gs.col_factors[c].first == f)
          ++in_lower[c];
        else if (gs.col_factors[c].second == f)
          ++in_upper[c];
        else
          throw std::invalid_argument("gluing system: column used outside its factors");
      }
    }
  }
  for (int c = 0; c < gs.num_cols; ++c)
    if (in_lower[c] != 1 || in_upper[c] != 1)
      throw std::invalid_argument("gluing system: every column must touch one row per factor");
  if (!is_zero(total))
    throw std::invalid_argument("gluing system: rhs vectors must sum to zero");
}

// Maximum-cardinality partition of the vectors into zero-sum groups. The
// total must vanish. Exponential in the input size, so beyond 12 vectors
// everything lands in a single group.
std::vector<std::vector<int>> zero_sum_families(const std::vector<VecZ>& sums, int k) {
  int n = static_cast<int>(sums.size());
  std::vector<std::vector<int>> fams;
  if (n == 0) return fams;
  VecZ total(k, 0);
  for (const VecZ& s : sums)
    for (int u = 0; u < k; ++u) total[u] += s[u];
  if (!is_zero(total)) throw std::logic_error("piece deficits do not balance");
  if (n > 12) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    fams.push_back(all);
    return fams;
  }
  int full = (1 << n) - 1;
  std::vector<char> zero(full + 1, 0);
  {
    std::vector<VecZ> ms(full + 1, VecZ(k, 0));
    for (int m = 1; m <= full; ++m) {
      int b = 0;
      while (!(m & (1 << b))) ++b;
      ms[m] = ms[m ^ (1 << b)];
      for (int u = 0; u < k; ++u) ms[m][u] += sums[b][u];
      zero[m] = is_zero(ms[m]) ? 1 : 0;
    }
  }
  std::vector<int> best(full + 1, -1), pick(full + 1, 0);
  best[0] = 0;
  for (int m = 1; m <= full; ++m) {
    if (!zero[m]) continue;
    int lb = m & -m;
    for (int t = m; t; t = (t - 1) & m) {
      if (!(t & lb) || !zero[t] || best[m ^ t] < 0) continue;
      if (best[m ^ t] + 1 > best[m]) {
        best[m] = best[m ^ t] + 1;
        pick[m] = t;
      }
    }
  }
  int m = full;
  while (m) {
    int t = pick[m];
    std::vector<int> fam;
    for (int i = 0; i < n; ++i)
      if (t & (1 << i)) fam.push_back(i);
    fams.push_back(fam);
    m ^= t;
  }
  return fams;
}

Int surface_chi(const SurfaceCertificate& c) {
  std::vector<Int> ends(c.pieces.size(), 0);
  for (const LoopGluing& l : c.loops) {
    ++ends[l.piece_a];
    ++ends[l.piece_b];
  }
  Int chi = 0;
  for (size_t i = 0; i < c.pieces.size(); ++i) {
    const SurfacePiece& sp = c.pieces[i];
    chi += sp.copies * (Int(2) - sp.circles - sp.dummy_circles - ends[i]);
  }
  for (const ArcGluing& a : c.arcs) chi -= a.count;
  return chi;
}

// What the junction labels of a piece must sum to, coordinate by coordinate,
// for its boundary class to close into the amalgamating subgroup; nullopt
// when the class leaves the subgroup's span.
std::optional<VecZ> span_deficit(const VecZ& cls, const GroupSpec& g, int factor) {
  VecZ delta(g.coords.size(), 0);
  for (int l = 0; l < static_cast<int>(cls.size()); ++l) {
    if (cls[l] == 0) continue;
    auto j = g.coord_of(factor, l);
    if (!j) return std::nullopt;
    const AmalgCoord& co = g.coords[*j];
    if (!co.finite) return std::nullopt;
    const Int& r = co.exp[factor];
    if (cls[l] % r != 0) return std::nullopt;
    delta[*j] -= cls[l] / r;
  }
  return delta;
}

}  // namespace

int GluingSystem::num_rows() const {
  int n = 0;
  for (const MatZ& b : blocks) n += b.rows;
  return n;
}

void GluingSystem::add_col(int lower, int upper, int row_lower, int row_upper) {
  for (MatZ& b : blocks) {
    MatZ wide(b.rows, num_cols + 1);
    for (int i = 0; i < b.rows; ++i)
      for (int c = 0; c < b.cols; ++c) wide.at(i, c) = b.at(i, c);
    b = std::move(wide);
  }
  blocks[lower].at(row_lower, num_cols) = 1;
  blocks[upper].at(row_upper, num_cols) = 1;
  col_factors.push_back({lower, upper});
  ++num_cols;
}

GluingReduction reduce_gluing(const GluingSystem& gs) {
  check_system(gs);
  GluingReduction red;
  int nf = static_cast<int>(gs.blocks.size());
  for (int f = 0; f < nf; ++f) {
    for (int i = 0; i < gs.blocks[f].rows; ++i) {
      VecZ row(gs.num_cols, 0);
      for (int c = 0; c < gs.num_cols; ++c) {
        if (gs.blocks[f].at(i, c) == 0) continue;
        row[c] = gs.col_factors[c].first == f ? 1 : -1;
      }
      VecZ rhs = gs.rhs[f][i];
      for (;;) {
        int l = -1;
        for (int c = 0; c < gs.num_cols; ++c)
          if (row[c] != 0) {
            l = c;
            break;
          }
        if (l < 0) {
          if (!is_zero(rhs)) throw std::invalid_argument("gluing system is inconsistent");
          break;
        }
        int j = -1;
        for (int t = 0; t < static_cast<int>(red.rows.size()); ++t)
          if (red.lead[t] == l) {
            j = t;
            break;
          }
        if (j < 0) {
          for (const Int& e : row)
            if (e < -1 || e > 1) throw std::logic_error("gluing reduction left the unit range");
          red.rows.push_back(row);
          red.rhs.push_back(rhs);
          red.lead.push_back(l);
          red.factor.push_back(f);
          red.uses.push_back(0);
          break;
        }
        Int q = row[l] * red.rows[j][l];
        for (int c = 0; c < gs.num_cols; ++c) row[c] -= q * red.rows[j][c];
        for (int u = 0; u < gs.k; ++u) rhs[u] -= q * red.rhs[j][u];
        ++red.uses[j];
      }
    }
  }
  return red;
}

std::vector<VecZ> solve_gluing(const GluingSystem& gs) {
  GluingReduction red = reduce_gluing(gs);
  std::vector<VecZ> x(gs.num_cols, VecZ(gs.k, 0));
  // Non-lead entries of a finalized row sit in columns that became leads of
  // later rows or stayed free, so reverse finalization order substitutes.
  for (int j = static_cast<int>(red.rows.size()) - 1; j >= 0; --j) {
    VecZ acc = red.rhs[j];
    for (int c = 0; c < gs.num_cols; ++c) {
      if (c == red.lead[j] || red.rows[j][c] == 0) continue;
      for (int u = 0; u < gs.k; ++u) acc[u] -= red.rows[j][c] * x[c][u];
    }
    if (red.rows[j][red.lead[j]] < 0)
      for (int u = 0; u < gs.k; ++u) acc[u] = -acc[u];
    x[red.lead[j]] = std::move(acc);
  }
  return x;
}

MinimizedGluing minimize_loops(const GluingSystem& gs) {
  check_system(gs);
  int nf = static_cast<int>(gs.blocks.size());
  std::vector<std::pair<int, int>> row_at;  // global row -> (factor, local)
  std::vector<int> base(nf, 0);
  for (int f = 0; f < nf; ++f) {
    base[f] = static_cast<int>(row_at.size());
    for (int i = 0; i < gs.blocks[f].rows; ++i) row_at.push_back({f, i});
  }
  int nr = static_cast<int>(row_at.size());

  UnionFind uf(nr);
  for (int c = 0; c < gs.num_cols; ++c) {
    auto [lo, hi] = gs.col_factors[c];
    int ra = -1, rb = -1;
    for (int i = 0; i < gs.blocks[lo].rows; ++i)
      if (gs.blocks[lo].at(i, c) == 1) ra = base[lo] + i;
    for (int i = 0; i < gs.blocks[hi].rows; ++i)
      if (gs.blocks[hi].at(i, c) == 1) rb = base[hi] + i;
    uf.unite(ra, rb);
  }

  std::map<int, int> of_root;
  std::vector<std::vector<int>> cl_rows;
  std::vector<VecZ> cl_sum;
  std::vector<std::set<int>> cl_factors;
  for (int r = 0; r < nr; ++r) {
    int root = uf.find(r);
    auto it = of_root.find(root);
    if (it == of_root.end()) {
      it = of_root.insert({root, static_cast<int>(cl_rows.size())}).first;
      cl_rows.push_back({});
      cl_sum.push_back(VecZ(gs.k, 0));
      cl_factors.push_back({});
    }
    int id = it->second;
    cl_rows[id].push_back(r);
    cl_factors[id].insert(row_at[r].first);
    for (int u = 0; u < gs.k; ++u) cl_sum[id][u] += gs.rhs[row_at[r].first][row_at[r].second][u];
  }
  int ncl = static_cast<int>(cl_rows.size());

  std::vector<int> nz;
  for (int id = 0; id < ncl; ++id)
    if (!is_zero(cl_sum[id])) nz.push_back(id);
  std::vector<VecZ> nz_sums;
  for (int id : nz) nz_sums.push_back(cl_sum[id]);

  MinimizedGluing out;
  std::vector<std::pair<int, VecZ>> seen;  // (global row, loop label it sees)
  std::vector<char> host_used(ncl, 0);

  auto row_of_factor = [&](int cl, int f) {
    for (int r : cl_rows[cl])
      if (row_at[r].first == f) return r;
    throw std::logic_error("cluster lost its factor row");
  };
  auto negated = [](const VecZ& v) {
    VecZ w(v.size());
    for (size_t u = 0; u < v.size(); ++u) w[u] = -v[u];
    return w;
  };
  auto emit = [&](int f_a, int r_a, int f_b, int r_b, const VecZ& lam) {
    out.loops.push_back({f_a, row_at[r_a].second, f_b, row_at[r_b].second, lam});
    seen.push_back({r_a, lam});
    seen.push_back({r_b, negated(lam)});
  };

  for (const std::vector<int>& fam : zero_sum_families(nz_sums, gs.k)) {
    std::vector<int> ids;
    for (int pos : fam) ids.push_back(nz[pos]);
    int n = static_cast<int>(ids.size());
    std::vector<char> used(n, 0);
    std::set<int> in_fam(ids.begin(), ids.end());
    int cur = -1, done = 0;
    VecZ lam(gs.k, 0);
    while (done < n) {
      if (cur < 0) {
        for (int i = 0; i < n; ++i)
          if (!used[i]) {
            cur = i;
            break;
          }
        used[cur] = 1;
        ++done;
        lam = cl_sum[ids[cur]];
        continue;
      }
      if (is_zero(lam)) {
        cur = -1;
        continue;
      }
      int nxt = -1, fa = -1, fb = -1;
      for (int j = 0; j < n && nxt < 0; ++j) {
        if (used[j]) continue;
        for (int f1 : cl_factors[ids[cur]]) {
          if (nxt >= 0) break;
          for (int f2 : cl_factors[ids[j]])
            if (f1 != f2) {
              nxt = j;
              fa = f1;
              fb = f2;
              break;
            }
        }
      }
      if (nxt >= 0) {
        emit(fa, row_of_factor(ids[cur], fa), fb, row_of_factor(ids[nxt], fb), lam);
        cur = nxt;
        used[cur] = 1;
        ++done;
        for (int u = 0; u < gs.k; ++u) lam[u] += cl_sum[ids[cur]][u];
        continue;
      }
      // Everything left shares the current cluster's single factor; detour
      // through a balanced host row of another factor, one detour per host
      // so every loop stays separating.
      int f = *cl_factors[ids[cur]].begin();
      int host = -1, rh = -1, fh = -1;
      for (int h = 0; h < ncl && host < 0; ++h) {
        if (host_used[h] || in_fam.count(h)) continue;
        for (int r : cl_rows[h])
          if (row_at[r].first != f) {
            host = h;
            rh = r;
            fh = row_at[r].first;
            break;
          }
      }
      if (host < 0) throw std::runtime_error("cannot thread sigma loops through the clusters");
      host_used[host] = 1;
      int j = -1;
      for (int i = 0; i < n; ++i)
        if (!used[i]) {
          j = i;
          break;
        }
      emit(f, row_of_factor(ids[cur], f), fh, rh, lam);
      emit(fh, rh, f, row_of_factor(ids[j], f), lam);
      cur = j;
      used[cur] = 1;
      ++done;
      for (int u = 0; u < gs.k; ++u) lam[u] += cl_sum[ids[cur]][u];
    }
    if (!is_zero(lam)) throw std::logic_error("family threading did not balance");
  }

  GluingSystem adj = gs;
  for (const auto& [r, lab] : seen) {
    for (int u = 0; u < gs.k; ++u) adj.rhs[row_at[r].first][row_at[r].second][u] -= lab[u];
  }
  out.labels = solve_gluing(adj);
  return out;
}

std::vector<UnitLoop> insert_sigma_loops(const std::vector<VecZ>& deficits_a,
                                         const std::vector<VecZ>& deficits_b, int k) {
  struct Unit {
    int comp;
    int coord;
    int sign;
  };
  auto expand = [&](const std::vector<VecZ>& ds) {
    std::vector<Unit> us;
    for (int i = 0; i < static_cast<int>(ds.size()); ++i) {
      if (static_cast<int>(ds[i].size()) != k)
        throw std::invalid_argument("component deficit has the wrong dimension");
      for (int j = 0; j < k; ++j) {
        const Int& m = ds[i][j];
        int s = m > 0 ? 1 : -1;
        for (Int t = 0; t < abs(m); ++t) us.push_back({i, j, s});
      }
    }
    return us;
  };
  auto label_of = [&](int coord, int sign) {
    VecZ l(k, 0);
    l[coord] = sign;
    return l;
  };
  std::vector<Unit> ua = expand(deficits_a), ub = expand(deficits_b);
  std::vector<char> pa(ua.size(), 0), pb(ub.size(), 0);
  std::vector<UnitLoop> loops;
  for (size_t i = 0; i < ua.size(); ++i) {
    for (size_t j = 0; j < ub.size(); ++j) {
      if (pb[j] || ub[j].coord != ua[i].coord || ub[j].sign != -ua[i].sign) continue;
      pa[i] = pb[j] = 1;
      loops.push_back({ua[i].comp, ub[j].comp, label_of(ua[i].coord, ua[i].sign)});
      break;
    }
  }
  for (size_t i = 0; i < ua.size(); ++i) {
    if (pa[i]) continue;
    if (deficits_b.empty()) throw std::invalid_argument("no component to carry the surplus loops");
    loops.push_back({ua[i].comp, 0, label_of(ua[i].coord, ua[i].sign)});
  }
  for (size_t j = 0; j < ub.size(); ++j) {
    if (pb[j]) continue;
    if (deficits_a.empty()) throw std::invalid_argument("no component to carry the surplus loops");
    loops.push_back({0, ub[j].comp, label_of(ub[j].coord, -ub[j].sign)});
  }
  return loops;
}

namespace {

struct Draft {
  int factor = 0;
  VecZ counts;  // per sigma coordinate of the factor's cone
  bool dead = false;
};

VecZ draft_class(const Draft& d, const SclProblem& p) {
  const ConeSystem& cone = p.cones[d.factor];
  VecZ cls(p.group.factors[d.factor].gens.size(), 0);
  for (int c = 0; c < cone.num_sigma; ++c) {
    if (d.counts[c] == 0) continue;
    const TauEdge& t = p.taus.taus[p.basis.sigmas[cone.sigma_ids[c]].x];
    for (int l = 0; l < static_cast<int>(t.cls.size()) && l < static_cast<int>(cls.size()); ++l)
      cls[l] += d.counts[c] * t.cls[l];
  }
  return cls;
}

SurfaceCertificate build_at(const SclProblem& p, const SclSolution& s, int doublings) {
  const GroupSpec& g = p.group;
  int nf = g.num_factors();
  int k = static_cast<int>(g.coords.size());

  SurfaceCertificate cert;
  cert.group = g;
  cert.chain.scale = 1;
  for (const ChainTerm& t : p.chain.terms)
    cert.chain.terms.push_back({t.coeff / Rat(p.chain.scale), t.word});

  Int big_n = 1;
  for (int f = 0; f < nf && f < static_cast<int>(s.vectors.size()); ++f)
    big_n = int_lcm(big_n, common_denominator(s.vectors[f]));
  for (int d = 0; d < doublings; ++d) big_n *= 2;
  cert.degree = big_n * p.chain.scale;

  std::vector<GammaGraph> gammas;
  std::vector<std::map<int, int>> col_of(nf);
  for (int f = 0; f < nf; ++f) {
    gammas.push_back(build_gamma(p.basis, f));
    for (int c = 0; c < p.cones[f].num_sigma; ++c) col_of[f][p.cones[f].sigma_ids[c]] = c;
  }

  std::vector<Draft> drafts;
  for (int f = 0; f < nf; ++f) {
    const ConeSystem& cone = p.cones[f];
    int ns = cone.num_sigma;
    if (f >= static_cast<int>(s.vectors.size()) || static_cast<int>(s.vectors[f].size()) < ns)
      throw std::invalid_argument("solution vectors do not match the problem");
    VecZ want(ns, 0);
    bool any = false;
    for (int c = 0; c < ns; ++c) {
      Rat w = Rat(big_n) * s.vectors[f][c];
      if (!is_integer(w)) throw std::logic_error("degree does not clear the solution denominators");
      if (w < 0) throw std::invalid_argument("solution vector has a negative coordinate");
      want[c] = w.get_num();
      any = any || want[c] != 0;
    }
    if (!any) continue;

    // Carve out genuine discs by a packing program; abelian-loop mass stays
    // in the residual, where each dummy coordinate becomes its own wrapped
    // circle.
    std::vector<int> dvs;
    for (int i = 0; i < static_cast<int>(p.discs[f].vectors.size()); ++i) {
      const VecZ& dv = p.discs[f].vectors[i];
      bool genuine = true, mass = false;
      for (int c = 0; c < ns; ++c) {
        if (dv[c] == 0) continue;
        mass = true;
        if (cone.sigma_dummy[c]) genuine = false;
      }
      if (genuine && mass) dvs.push_back(i);
    }
    VecZ rest = want;
    if (!dvs.empty()) {
      LinearProgram lp;
      lp.maximize = true;
      for (size_t i = 0; i < dvs.size(); ++i) lp.add_var(Rat(1));
      for (int c = 0; c < ns; ++c) {
        VecQ row(dvs.size());
        for (size_t i = 0; i < dvs.size(); ++i) row[i] = Rat(p.discs[f].vectors[dvs[i]][c]);
        lp.add_row(std::move(row), Rel::Le, Rat(want[c]));
      }
      LpResult res = lp_solve(lp);
      if (res.status != LpStatus::Optimal) throw std::logic_error("disc packing failed");
      for (size_t i = 0; i < dvs.size(); ++i) {
        Int n = rat_floor(res.primal[i]);
        if (n <= 0) continue;
        const VecZ& dv = p.discs[f].vectors[dvs[i]];
        for (int c = 0; c < ns; ++c) rest[c] -= n * dv[c];
        if (Int(drafts.size()) + n > 200000)
          throw std::runtime_error("certificate needs too many pieces at this degree");
        for (Int rep = 0; rep < n; ++rep) {
          Draft d;
          d.factor = f;
          d.counts.assign(dv.begin(), dv.begin() + ns);
          drafts.push_back(std::move(d));
        }
      }
    }

    UnionFind tuf(static_cast<int>(p.taus.taus.size()));
    for (int c = 0; c < ns; ++c) {
      if (rest[c] == 0 || cone.sigma_dummy[c]) continue;
      const SigmaEdge& e = p.basis.sigmas[cone.sigma_ids[c]];
      tuf.unite(e.x, e.y);
    }
    std::map<int, int> comp;
    for (int c = 0; c < ns; ++c) {
      if (rest[c] == 0 || cone.sigma_dummy[c]) continue;
      int root = tuf.find(p.basis.sigmas[cone.sigma_ids[c]].x);
      auto it = comp.find(root);
      if (it == comp.end()) {
        Draft d;
        d.factor = f;
        d.counts.assign(ns, 0);
        it = comp.insert({root, static_cast<int>(drafts.size())}).first;
        drafts.push_back(std::move(d));
      }
      drafts[it->second].counts[c] = rest[c];
    }
    for (int c = 0; c < ns; ++c) {
      if (rest[c] == 0 || !cone.sigma_dummy[c]) continue;
      Draft d;
      d.factor = f;
      d.counts.assign(ns, 0);
      d.counts[c] = rest[c];
      drafts.push_back(std::move(d));
    }
  }

  auto delta_of = [&](const Draft& d) { return span_deficit(draft_class(d, p), g, d.factor); };

  // Pieces whose class leaves the subgroup span merge within their factor
  // until every class divides; the factor totals vanish, so this closes.
  for (int f = 0; f < nf; ++f) {
    int acc = -1;
    for (int i = 0; i < static_cast<int>(drafts.size()); ++i) {
      if (drafts[i].dead || drafts[i].factor != f || delta_of(drafts[i])) continue;
      if (acc < 0) {
        acc = i;
        continue;
      }
      for (int c = 0; c < static_cast<int>(drafts[i].counts.size()); ++c)
        drafts[acc].counts[c] += drafts[i].counts[c];
      drafts[i].dead = true;
      if (delta_of(drafts[acc])) acc = -1;
    }
    if (acc >= 0) throw std::logic_error("factor pieces cannot absorb the boundary class");
  }

  std::vector<int> live;
  for (int i = 0; i < static_cast<int>(drafts.size()); ++i)
    if (!drafts[i].dead) live.push_back(i);
  int np = static_cast<int>(live.size());

  std::vector<VecZ> delta(np);
  for (int i = 0; i < np; ++i) delta[i] = *delta_of(drafts[live[i]]);

  struct Bucket {
    int pa, pb;
    int sig_a, sig_b;
    Int count;
  };
  std::vector<Bucket> buckets;
  for (const auto& [x, y] : p.compat) {
    int fx = p.basis.sigmas[x].factor, fy = p.basis.sigmas[y].factor;
    int cx = col_of[fx].at(x), cy = col_of[fy].at(y);
    std::vector<std::pair<int, Int>> sa, sb;
    for (int i = 0; i < np; ++i) {
      const Draft& d = drafts[live[i]];
      if (d.factor == fx && d.counts[cx] > 0) sa.push_back({i, d.counts[cx]});
      if (d.factor == fy && d.counts[cy] > 0) sb.push_back({i, d.counts[cy]});
    }
    size_t ia = 0, ib = 0;
    Int ra = sa.empty() ? Int(0) : sa[0].second;
    Int rb = sb.empty() ? Int(0) : sb[0].second;
    while (ia < sa.size() && ib < sb.size()) {
      Int m = ra < rb ? ra : rb;
      buckets.push_back({sa[ia].first, sb[ib].first, x, y, m});
      ra -= m;
      rb -= m;
      if (ra == 0 && ++ia < sa.size()) ra = sa[ia].second;
      if (rb == 0 && ++ib < sb.size()) rb = sb[ib].second;
    }
    if (ia < sa.size() || ib < sb.size())
      throw std::logic_error("sigma totals do not pair across the cylinder");
  }

  UnionFind cuf(np);
  for (const Bucket& b : buckets) cuf.unite(b.pa, b.pb);
  std::map<int, int> of_root;
  std::vector<std::vector<int>> cl_pieces;
  std::vector<VecZ> cl_sum;
  for (int i = 0; i < np; ++i) {
    int root = cuf.find(i);
    auto it = of_root.find(root);
    if (it == of_root.end()) {
      it = of_root.insert({root, static_cast<int>(cl_pieces.size())}).first;
      cl_pieces.push_back({});
      cl_sum.push_back(VecZ(k, 0));
    }
    cl_pieces[it->second].push_back(i);
    for (int u = 0; u < k; ++u) cl_sum[it->second][u] += delta[i][u];
  }

  std::vector<int> nz;
  for (int id = 0; id < static_cast<int>(cl_pieces.size()); ++id)
    if (!is_zero(cl_sum[id])) nz.push_back(id);
  std::vector<VecZ> nz_sums;
  for (int id : nz) nz_sums.push_back(cl_sum[id]);

  auto negated = [](const VecZ& v) {
    VecZ w(v.size());
    for (size_t u = 0; u < v.size(); ++u) w[u] = -v[u];
    return w;
  };
  auto merge_into = [&](int tgt, int src) {
    Draft& a = drafts[live[tgt]];
    const Draft& b = drafts[live[src]];
    if (a.factor != b.factor) throw std::logic_error("cannot merge pieces across factors");
    for (int c = 0; c < static_cast<int>(a.counts.size()); ++c) a.counts[c] += b.counts[c];
    drafts[live[src]].dead = true;
  };

  std::vector<LoopGluing> raw_loops;  // piece fields index `live`
  for (const std::vector<int>& fam : zero_sum_families(nz_sums, k)) {
    std::vector<int> ids;
    for (int pos : fam) ids.push_back(nz[pos]);
    int n = static_cast<int>(ids.size());

    std::set<int> fs;
    for (int id : ids)
      for (int i : cl_pieces[id]) fs.insert(drafts[live[i]].factor);
    if (fs.size() == 1) {
      // Single-factor clusters are lone abelian-loop pieces; one merged
      // piece carries all their circles and a vanishing deficit.
      int tgt = cl_pieces[ids[0]][0];
      for (int j = 1; j < n; ++j) merge_into(tgt, cl_pieces[ids[j]][0]);
      continue;
    }

    std::vector<char> used(n, 0);
    int cur = -1, done = 0;
    VecZ lam(k, 0);
    while (done < n) {
      if (cur < 0) {
        for (int i = 0; i < n; ++i)
          if (!used[i]) {
            cur = i;
            break;
          }
        used[cur] = 1;
        ++done;
        lam = cl_sum[ids[cur]];
        continue;
      }
      if (is_zero(lam)) {
        cur = -1;
        continue;
      }
      int nxt = -1, pa = -1, pb = -1;
      for (int j = 0; j < n && nxt < 0; ++j) {
        if (used[j]) continue;
        for (int ca : cl_pieces[ids[cur]]) {
          if (nxt >= 0) break;
          for (int cb : cl_pieces[ids[j]])
            if (drafts[live[ca]].factor != drafts[live[cb]].factor) {
              nxt = j;
              pa = ca;
              pb = cb;
              break;
            }
        }
      }
      if (nxt < 0) {
        // The rest of the family shares the current factor, so those lone
        // pieces merge into the current one instead of looping.
        int j = -1;
        for (int i = 0; i < n; ++i)
          if (!used[i]) {
            j = i;
            break;
          }
        if (cl_pieces[ids[cur]].size() != 1 || cl_pieces[ids[j]].size() != 1)
          throw std::logic_error("stuck threading on a multi-piece cluster");
        merge_into(cl_pieces[ids[cur]][0], cl_pieces[ids[j]][0]);
        used[j] = 1;
        ++done;
        for (int u = 0; u < k; ++u) lam[u] += cl_sum[ids[j]][u];
        continue;
      }
      raw_loops.push_back({pa, pb, lam, negated(lam)});
      cur = nxt;
      used[cur] = 1;
      ++done;
      for (int u = 0; u < k; ++u) lam[u] += cl_sum[ids[cur]][u];
    }
    if (!is_zero(lam)) throw std::logic_error("family threading did not balance");
  }

  std::vector<int> live2, remap(np, -1);
  for (int i = 0; i < np; ++i)
    if (!drafts[live[i]].dead) {
      remap[i] = static_cast<int>(live2.size());
      live2.push_back(live[i]);
    }
  int np2 = static_cast<int>(live2.size());

  std::vector<VecZ> effective(np2);
  for (int i = 0; i < np2; ++i) effective[i] = *delta_of(drafts[live2[i]]);
  for (LoopGluing& l : raw_loops) {
    l.piece_a = remap[l.piece_a];
    l.piece_b = remap[l.piece_b];
    for (int u = 0; u < k; ++u) {
      effective[l.piece_a][u] -= l.label_a[u];
      effective[l.piece_b][u] -= l.label_b[u];
    }
  }

  // Spanning-tree flow: each non-root piece sends its accumulated deficit
  // through the bucket to its parent, so every piece's labels sum right.
  std::vector<std::vector<int>> adj(np2);
  for (int b = 0; b < static_cast<int>(buckets.size()); ++b) {
    buckets[b].pa = remap[buckets[b].pa];
    buckets[b].pb = remap[buckets[b].pb];
    adj[buckets[b].pa].push_back(b);
    adj[buckets[b].pb].push_back(b);
  }
  std::vector<int> par_bucket(np2, -1), par_piece(np2, -1), order;
  std::vector<char> vis(np2, 0);
  for (int root = 0; root < np2; ++root) {
    if (vis[root]) continue;
    vis[root] = 1;
    std::vector<int> queue = {root};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int i = queue[qi];
      order.push_back(i);
      for (int b : adj[i]) {
        int o = buckets[b].pa == i ? buckets[b].pb : buckets[b].pa;
        if (vis[o]) continue;
        vis[o] = 1;
        par_bucket[o] = b;
        par_piece[o] = i;
        queue.push_back(o);
      }
    }
  }
  std::vector<VecZ> need = effective;
  std::vector<VecZ> tree_label(buckets.size());  // seen from the child side
  std::vector<int> tree_child(buckets.size(), -1);
  for (int idx = np2 - 1; idx >= 0; --idx) {
    int i = order[idx];
    if (par_bucket[i] < 0) {
      if (!is_zero(need[i])) throw std::logic_error("piece deficits do not close");
      continue;
    }
    if (!is_zero(need[i])) {
      tree_label[par_bucket[i]] = need[i];
      tree_child[par_bucket[i]] = i;
      for (int u = 0; u < k; ++u) need[par_piece[i]][u] += need[i][u];
    }
  }

  VecZ zero_label(k, 0);
  for (int b = 0; b < static_cast<int>(buckets.size()); ++b) {
    const Bucket& bk = buckets[b];
    if (tree_child[b] >= 0) {
      ArcGluing flow;
      flow.piece_a = bk.pa;
      flow.piece_b = bk.pb;
      flow.sigma_a = bk.sig_a;
      flow.sigma_b = bk.sig_b;
      flow.count = 1;
      if (tree_child[b] == bk.pa) {
        flow.label_a = tree_label[b];
        flow.label_b = negated(tree_label[b]);
      } else {
        flow.label_b = tree_label[b];
        flow.label_a = negated(tree_label[b]);
      }
      cert.arcs.push_back(std::move(flow));
      if (bk.count > 1)
        cert.arcs.push_back(
            {bk.pa, bk.pb, bk.sig_a, bk.sig_b, zero_label, zero_label, bk.count - 1});
    } else {
      cert.arcs.push_back({bk.pa, bk.pb, bk.sig_a, bk.sig_b, zero_label, zero_label, bk.count});
    }
  }
  cert.loops = std::move(raw_loops);

  std::vector<Int> ends(np2, 0);
  for (const LoopGluing& l : cert.loops) {
    ++ends[l.piece_a];
    ++ends[l.piece_b];
  }
  for (int i = 0; i < np2; ++i) {
    const Draft& d = drafts[live2[i]];
    const ConeSystem& cone = p.cones[d.factor];
    SurfacePiece sp;
    sp.factor = d.factor;
    sp.copies = 1;
    VecQ genuine(cone.num_sigma, Rat(0));
    bool any_gen = false;
    Int dummy_ids = 0;
    for (int c = 0; c < cone.num_sigma; ++c) {
      if (d.counts[c] == 0) continue;
      if (cone.sigma_dummy[c]) {
        ++dummy_ids;
      } else {
        genuine[c] = 1;
        any_gen = true;
      }
      sp.sigmas.push_back({cone.sigma_ids[c], d.counts[c]});
    }
    sp.circles = any_gen ? Int(count_components(gammas[d.factor], genuine)) : Int(0);
    sp.dummy_circles = dummy_ids;
    std::map<int, Int> out;
    for (int c = 0; c < cone.num_sigma; ++c)
      if (d.counts[c] != 0) out[p.basis.sigmas[cone.sigma_ids[c]].x] += d.counts[c];
    sp.taus.assign(out.begin(), out.end());
    Int chi_piece = Int(2) - sp.circles - sp.dummy_circles - ends[i];
    sp.in_place = chi_piece <= 0;
    cert.pieces.push_back(std::move(sp));
  }

  cert.chi = surface_chi(cert);
  cert.bound = make_rat(-cert.chi, 2 * cert.degree);
  return cert;
}

}  // namespace

SurfaceCertificate build_certificate(const SclProblem& p, const SclSolution& s) {
  return build_at(p, s, 0);
}

SurfaceCertificate double_surface(const SurfaceCertificate& c) {
  SurfaceCertificate d = c;
  d.degree = c.degree * 2;
  for (SurfacePiece& sp : d.pieces) {
    if (sp.in_place) {
      for (auto& t : sp.taus) t.second *= 2;
      for (auto& s : sp.sigmas) s.second *= 2;
    } else {
      sp.copies *= 2;
    }
  }
  for (ArcGluing& a : d.arcs) a.count *= 2;
  for (LoopGluing& l : d.loops) {
    for (Int& u : l.label_a) u *= 2;
    for (Int& u : l.label_b) u *= 2;
  }
  d.chi = surface_chi(d);
  d.bound = make_rat(-d.chi, 2 * d.degree);
  return d;
}

SurfaceCertificate certificate_within(const SclProblem& p, const SclSolution& s, const Rat& eps,
                                      int max_doublings) {
  // Rebuilding at the doubled degree refines the packing floors, which a
  // plain doubling of all counts would freeze.
  SurfaceCertificate c = build_at(p, s, 0);
  for (int d = 1; d <= max_doublings && c.bound - s.raw > eps; ++d) {
    SurfaceCertificate n = build_at(p, s, d);
    if (n.bound < c.bound) c = std::move(n);
  }
  return c;
}

CertifyReport certify(const SurfaceCertificate& c, const Rat& eps) {
  CertifyReport rep;
  rep.bound = c.bound;
  auto fail = [&rep](const std::string& m) {
    if (std::find(rep.errors.begin(), rep.errors.end(), m) == rep.errors.end())
      rep.errors.push_back(m);
  };

  if (c.degree <= 0) {
    fail("invalid degree");
    return rep;
  }
  Chain nc;
  try {
    nc = normalize(c.chain, c.group);
  } catch (const std::exception&) {
    fail("chain is not null-homologous");
    return rep;
  }
  TauEdges taus = extract_tau_edges(nc, c.group);
  SigmaBasis basis = build_sigma_basis(taus, c.group);
  int nf = c.group.num_factors();
  int k = static_cast<int>(c.group.coords.size());
  int nt = static_cast<int>(taus.taus.size());
  int nsig = static_cast<int>(basis.sigmas.size());
  int npc = static_cast<int>(c.pieces.size());

  bool malformed = false;
  for (const SurfacePiece& sp : c.pieces) {
    if (sp.factor < 0 || sp.factor >= nf || sp.copies < 1 || sp.circles < 0 ||
        sp.dummy_circles < 0)
      malformed = true;
    if (malformed) break;
    for (const auto& [t, n] : sp.taus)
      if (t < 0 || t >= nt || n < 0 || taus.taus[t].factor != sp.factor) malformed = true;
    for (const auto& [sg, n] : sp.sigmas)
      if (sg < 0 || sg >= nsig || n < 0 || basis.sigmas[sg].factor != sp.factor) malformed = true;
    if (malformed) break;
  }
  for (const ArcGluing& a : c.arcs)
    if (a.piece_a < 0 || a.piece_a >= npc || a.piece_b < 0 || a.piece_b >= npc || a.sigma_a < 0 ||
        a.sigma_a >= nsig || a.sigma_b < 0 || a.sigma_b >= nsig || a.count < 1 ||
        static_cast<int>(a.label_a.size()) != k || static_cast<int>(a.label_b.size()) != k)
      malformed = true;
  for (const LoopGluing& l : c.loops)
    if (l.piece_a < 0 || l.piece_a >= npc || l.piece_b < 0 || l.piece_b >= npc ||
        static_cast<int>(l.label_a.size()) != k || static_cast<int>(l.label_b.size()) != k)
      malformed = true;
  if (malformed) {
    fail("malformed certificate");
    return rep;
  }

  // Boundary: tau totals cover degree times the chain, and every piece's
  // sigma junctions consume its tau endpoints exactly.
  {
    std::vector<Rat> total(nt, Rat(0));
    for (const SurfacePiece& sp : c.pieces)
      for (const auto& [t, n] : sp.taus) total[t] += Rat(sp.copies * n);
    for (int t = 0; t < nt; ++t) {
      Rat want = Rat(c.degree) * nc.terms[taus.taus[t].term].coeff / Rat(nc.scale);
      if (total[t] != want) {
        fail("boundary mismatch");
        break;
      }
    }
    for (const SurfacePiece& sp : c.pieces) {
      std::map<int, Int> out, in, cnt;
      for (const auto& [sg, n] : sp.sigmas) {
        if (n == 0) continue;
        out[basis.sigmas[sg].x] += n;
        in[basis.sigmas[sg].y] += n;
      }
      for (const auto& [t, n] : sp.taus)
        if (n != 0) cnt[t] += n;
      if (out != cnt || in != cnt) fail("boundary mismatch");
    }
  }

  // Labels: arcs balance their two sides, spread evenly over copies, and
  // consume each declared genuine sigma instance exactly once; loops sit on
  // single-copy pieces.
  {
    std::vector<std::map<int, Int>> consumed(npc);
    for (const ArcGluing& a : c.arcs) {
      for (int u = 0; u < k; ++u)
        if (a.label_a[u] + a.label_b[u] != 0) {
          fail("label imbalance");
          break;
        }
      if (a.count % c.pieces[a.piece_a].copies != 0 || a.count % c.pieces[a.piece_b].copies != 0)
        fail("label imbalance");
      consumed[a.piece_a][a.sigma_a] += a.count;
      consumed[a.piece_b][a.sigma_b] += a.count;
    }
    for (int i = 0; i < npc; ++i) {
      std::map<int, Int> declared;
      for (const auto& [sg, n] : c.pieces[i].sigmas)
        if (n != 0 && !basis.sigmas[sg].dummy) declared[sg] += c.pieces[i].copies * n;
      if (declared != consumed[i]) fail("label imbalance");
    }
    for (const LoopGluing& l : c.loops)
      if (c.pieces[l.piece_a].copies != 1 || c.pieces[l.piece_b].copies != 1)
        fail("label imbalance");
  }

  // Pairing: arcs glue compatible sigma edges across a cylinder, never a
  // dummy; loops join pieces of distinct factors.
  {
    std::set<std::pair<int, int>> ok;
    for (const auto& [x, y] : compatibility_pairs(basis, taus)) {
      ok.insert({x, y});
      ok.insert({y, x});
    }
    for (const ArcGluing& a : c.arcs) {
      if (basis.sigmas[a.sigma_a].dummy || basis.sigmas[a.sigma_b].dummy)
        fail("incompatible pairing");
      else if (!ok.count({a.sigma_a, a.sigma_b}))
        fail("incompatible pairing");
      if (basis.sigmas[a.sigma_a].factor != c.pieces[a.piece_a].factor ||
          basis.sigmas[a.sigma_b].factor != c.pieces[a.piece_b].factor)
        fail("incompatible pairing");
    }
    for (const LoopGluing& l : c.loops)
      if (c.pieces[l.piece_a].factor == c.pieces[l.piece_b].factor)
        fail("incompatible pairing");
  }

  // Homology: per copy, the boundary class plus the labelled subgroup powers
  // must vanish, and nothing may wind along an infinite coordinate.
  {
    std::vector<VecQ> seen(npc, VecQ(k, Rat(0)));
    for (const ArcGluing& a : c.arcs)
      for (int u = 0; u < k; ++u) {
        seen[a.piece_a][u] += Rat(a.label_a[u]) * Rat(a.count) / Rat(c.pieces[a.piece_a].copies);
        seen[a.piece_b][u] += Rat(a.label_b[u]) * Rat(a.count) / Rat(c.pieces[a.piece_b].copies);
      }
    for (const LoopGluing& l : c.loops)
      for (int u = 0; u < k; ++u) {
        seen[l.piece_a][u] += Rat(l.label_a[u]);
        seen[l.piece_b][u] += Rat(l.label_b[u]);
      }
    for (int i = 0; i < npc; ++i) {
      const SurfacePiece& sp = c.pieces[i];
      int gens = static_cast<int>(c.group.factors[sp.factor].gens.size());
      VecQ residual(gens, Rat(0));
      for (const auto& [t, n] : sp.taus) {
        const VecZ& cls = taus.taus[t].cls;
        for (int l = 0; l < static_cast<int>(cls.size()) && l < gens; ++l)
          residual[l] += Rat(n * cls[l]);
      }
      bool bad = false;
      for (int j = 0; j < k; ++j) {
        if (!c.group.coords[j].finite) {
          if (seen[i][j] != 0) bad = true;
          continue;
        }
        residual[c.group.coords[j].gen[sp.factor]] +=
            seen[i][j] * Rat(c.group.coords[j].exp[sp.factor]);
      }
      if (bad || !is_zero(residual)) fail("homology imbalance");
    }
  }

  // Euler characteristic: circle counts follow the sigma support, chi and
  // bound follow the pieces and gluings.
  {
    std::vector<GammaGraph> gammas;
    std::vector<std::map<int, int>> col_of(nf);
    for (int f = 0; f < nf; ++f) {
      gammas.push_back(build_gamma(basis, f));
      for (int cidx = 0; cidx < static_cast<int>(gammas[f].edges.size()); ++cidx)
        col_of[f][gammas[f].edges[cidx].id] = cidx;
    }
    for (const SurfacePiece& sp : c.pieces) {
      VecQ genuine(gammas[sp.factor].edges.size(), Rat(0));
      bool any_gen = false;
      std::set<int> dummy_ids;
      Int dummy_total = 0;
      for (const auto& [sg, n] : sp.sigmas) {
        if (n == 0) continue;
        if (basis.sigmas[sg].dummy) {
          dummy_ids.insert(sg);
          dummy_total += n;
        } else {
          genuine[col_of[sp.factor].at(sg)] = 1;
          any_gen = true;
        }
      }
      Int circ = any_gen ? Int(count_components(gammas[sp.factor], genuine)) : Int(0);
      if (sp.circles != circ) fail("Euler characteristic miscount");
      Int lo = Int(static_cast<long>(dummy_ids.size()));
      if (sp.dummy_circles < lo || sp.dummy_circles > dummy_total)
        fail("Euler characteristic miscount");
    }
    if (c.chi != surface_chi(c)) fail("Euler characteristic miscount");
    if (c.bound != make_rat(-c.chi, 2 * c.degree)) fail("Euler characteristic miscount");
  }

  // Every sigma loop must separate the surface: with the loop removed, its
  // two pieces fall into different connected components.
  for (size_t skip = 0; skip < c.loops.size(); ++skip) {
    UnionFind uf(npc);
    for (const ArcGluing& a : c.arcs) uf.unite(a.piece_a, a.piece_b);
    for (size_t j = 0; j < c.loops.size(); ++j)
      if (j != skip) uf.unite(c.loops[j].piece_a, c.loops[j].piece_b);
    if (uf.find(c.loops[skip].piece_a) == uf.find(c.loops[skip].piece_b))
      fail("non-separating loop");
  }

  if (rep.errors.empty()) {
    SclSolution sol = scl(c.group, c.chain);
    rep.computed = sol.raw;
    Rat diff = c.bound - sol.raw;
    if (diff < 0) diff = -diff;
    if (diff > eps) fail("bound out of tolerance");
  }
  rep.pass = rep.errors.empty();
  return rep;
}

std::string certificate_text(const SurfaceCertificate& c) {
  std::ostringstream os;
  os << "sclcert 1\n";
  os << "group " << group_str(c.group) << "\n";
  os << "chain " << chain_str(c.chain, c.group) << "\n";
  os << "degree " << c.degree.get_str() << "\n";
  os << "chi " << c.chi.get_str() << "\n";
  os << "bound " << rat_str(c.bound) << "\n";
  for (const SurfacePiece& sp : c.pieces) {
    os << "piece " << sp.factor << " " << sp.copies.get_str() << " " << (sp.in_place ? 1 : 0)
       << " " << sp.circles.get_str() << " " << sp.dummy_circles.get_str() << "\n";
    if (!sp.taus.empty()) {
      os << "taus";
      for (const auto& [t, n] : sp.taus) os << " " << t << ":" << n.get_str();
      os << "\n";
    }
    if (!sp.sigmas.empty()) {
      os << "sigmas";
      for (const auto& [sg, n] : sp.sigmas) os << " " << sg << ":" << n.get_str();
      os << "\n";
    }
  }
  for (const ArcGluing& a : c.arcs) {
    os << "arc " << a.piece_a << " " << a.piece_b << " " << a.sigma_a << " " << a.sigma_b << " "
       << a.count.get_str();
    for (const Int& u : a.label_a) os << " " << u.get_str();
    for (const Int& u : a.label_b) os << " " << u.get_str();
    os << "\n";
  }
  for (const LoopGluing& l : c.loops) {
    os << "loop " << l.piece_a << " " << l.piece_b;
    for (const Int& u : l.label_a) os << " " << u.get_str();
    for (const Int& u : l.label_b) os << " " << u.get_str();
    os << "\n";
  }
  os << "end\n";
  return os.str();
}

SurfaceCertificate parse_certificate(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto next_line = [&]() {
    while (std::getline(is, line)) {
      size_t b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      size_t e = line.find_last_not_of(" \t\r");
      line = line.substr(b, e - b + 1);
      return true;
    }
    return false;
  };
  auto expect = [&](const std::string& head) {
    if (!next_line() || line.rfind(head, 0) != 0 || line.size() <= head.size())
      throw std::invalid_argument("certificate text: expected " + head);
    return line.substr(head.size() + 1);
  };

  if (!next_line() || line != "sclcert 1")
    throw std::invalid_argument("certificate text: missing sclcert header");
  SurfaceCertificate c;
  c.group = parse_group(expect("group"));
  c.chain = parse_chain(expect("chain"), c.group);
  c.degree = Int(expect("degree"));
  c.chi = Int(expect("chi"));
  c.bound = parse_rat(expect("bound"));
  int k = static_cast<int>(c.group.coords.size());

  auto parse_counts = [&](const std::string& rest, std::vector<std::pair<int, Int>>& into) {
    std::istringstream ts(rest);
    std::string tok;
    while (ts >> tok) {
      size_t colon = tok.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("certificate text: bad count token " + tok);
      into.push_back({std::stoi(tok.substr(0, colon)), Int(tok.substr(colon + 1))});
    }
  };
  auto read_labels = [&](std::istringstream& ts, VecZ& a, VecZ& b) {
    a.assign(k, 0);
    b.assign(k, 0);
    std::string tok;
    for (int u = 0; u < k; ++u) {
      if (!(ts >> tok)) throw std::invalid_argument("certificate text: truncated labels");
      a[u] = Int(tok);
    }
    for (int u = 0; u < k; ++u) {
      if (!(ts >> tok)) throw std::invalid_argument("certificate text: truncated labels");
      b[u] = Int(tok);
    }
  };

  while (next_line()) {
    if (line == "end") return c;
    std::istringstream ts(line);
    std::string head;
    ts >> head;
    if (head == "piece") {
      SurfacePiece sp;
      std::string copies, circles, dummies;
      int in_place = 0;
      if (!(ts >> sp.factor >> copies >> in_place >> circles >> dummies))
        throw std::invalid_argument("certificate text: bad piece line");
      sp.copies = Int(copies);
      sp.in_place = in_place != 0;
      sp.circles = Int(circles);
      sp.dummy_circles = Int(dummies);
      c.pieces.push_back(std::move(sp));
    } else if (head == "taus" || head == "sigmas") {
      if (c.pieces.empty()) throw std::invalid_argument("certificate text: counts before piece");
      std::string rest;
      std::getline(ts, rest);
      parse_counts(rest, head == "taus" ? c.pieces.back().taus : c.pieces.back().sigmas);
    } else if (head == "arc") {
      ArcGluing a;
      std::string count;
      if (!(ts >> a.piece_a >> a.piece_b >> a.sigma_a >> a.sigma_b >> count))
        throw std::invalid_argument("certificate text: bad arc line");
      a.count = Int(count);
      read_labels(ts, a.label_a, a.label_b);
      c.arcs.push_back(std::move(a));
    } else if (head == "loop") {
      LoopGluing l;
      if (!(ts >> l.piece_a >> l.piece_b))
        throw std::invalid_argument("certificate text: bad loop line");
      read_labels(ts, l.label_a, l.label_b);
      c.loops.push_back(std::move(l));
    } else {
      throw std::invalid_argument("certificate text: unknown line " + head);
    }
  }
  throw std::invalid_argument("certificate text: missing end");
}

}  // namespace scl
