#include "scl/edges.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace scl {

int TauEdges::succ(int id) const {
  const TauEdge& t = taus[id];
  const auto& seq = by_term[t.term];
  return seq[(t.pos + 1) % seq.size()];
}

int TauEdges::pred(int id) const {
  const TauEdge& t = taus[id];
  const auto& seq = by_term[t.term];
  return seq[(t.pos + seq.size() - 1) % seq.size()];
}

TauEdges extract_tau_edges(const Chain& c, const GroupSpec& g) {
  TauEdges out;
  out.by_term.resize(c.terms.size());
  for (size_t ti = 0; ti < c.terms.size(); ++ti) {
    const Word& w = c.terms[ti].word;
    if (w.blocks.empty()) continue;
    auto add = [&](int factor, VecZ cls, bool trivial, bool loop) {
      TauEdge t;
      t.id = static_cast<int>(out.taus.size());
      t.term = static_cast<int>(ti);
      t.pos = static_cast<int>(out.by_term[ti].size());
      t.factor = factor;
      t.cls = std::move(cls);
      t.trivial = trivial;
      t.loop = loop;
      out.by_term[ti].push_back(t.id);
      out.taus.push_back(std::move(t));
    };
    if (w.blocks.size() == 1) {
      const Word::Block& b = w.blocks[0];
      add(b.factor, b.exps, false, true);
      continue;
    }
    for (size_t bi = 0; bi < w.blocks.size(); ++bi) {
      const Word::Block& b = w.blocks[bi];
      add(b.factor, b.exps, false, false);
      int next = w.blocks[(bi + 1) % w.blocks.size()].factor;
      if (next == b.factor) throw std::logic_error("tau edges: adjacent blocks share a factor");
      int step = next > b.factor ? 1 : -1;
      for (int f = b.factor + step; f != next; f += step)
        add(f, VecZ(g.factors[f].gens.size(), Int(0)), true, false);
    }
  }
  return out;
}

int SigmaBasis::coord_of(int sigma_id) const {
  const auto& order = by_factor[sigmas[sigma_id].factor];
  auto it = std::find(order.begin(), order.end(), sigma_id);
  return static_cast<int>(it - order.begin());
}

int SigmaBasis::find(int factor, int x, int y) const {
  for (int id : by_factor[factor])
    if (sigmas[id].x == x && sigmas[id].y == y && !sigmas[id].dummy) return id;
  return -1;
}

namespace {

int out_cylinder(const TauEdges& t, int id) {
  return std::min(t.taus[id].factor, t.taus[t.succ(id)].factor);
}

int in_cylinder(const TauEdges& t, int id) {
  return std::min(t.taus[t.pred(id)].factor, t.taus[id].factor);
}

}  // namespace

SigmaBasis build_sigma_basis(const TauEdges& t, const GroupSpec& g) {
  SigmaBasis out;
  out.by_factor.resize(g.num_factors());
  for (int f = 0; f < g.num_factors(); ++f) {
    std::vector<int> plain, loops;
    for (const TauEdge& tau : t.taus) {
      if (tau.factor != f) continue;
      (tau.loop ? loops : plain).push_back(tau.id);
    }
    for (int x : plain) {
      for (int y : plain) {
        if (out_cylinder(t, x) != in_cylinder(t, y)) continue;
        SigmaEdge s;
        s.id = static_cast<int>(out.sigmas.size());
        s.factor = f;
        s.x = x;
        s.y = y;
        s.cylinder = out_cylinder(t, x);
        out.by_factor[f].push_back(s.id);
        out.sigmas.push_back(s);
      }
    }
    for (int lam : loops) {
      SigmaEdge s;
      s.id = static_cast<int>(out.sigmas.size());
      s.factor = f;
      s.x = lam;
      s.y = lam;
      s.dummy = true;
      out.by_factor[f].push_back(s.id);
      out.sigmas.push_back(s);
    }
  }
  return out;
}

std::vector<std::pair<int, int>> compatibility_pairs(const SigmaBasis& basis, const TauEdges& t) {
  std::vector<std::pair<int, int>> pairs;
  for (const SigmaEdge& s : basis.sigmas) {
    if (s.dummy) continue;
    int px = t.pred(s.y);
    int py = t.succ(s.x);
    int partner = basis.find(t.taus[px].factor, px, py);
    if (partner < 0) throw std::logic_error("compatibility: missing partner sigma");
    if (basis.sigmas[partner].factor == s.factor)
      throw std::logic_error("compatibility: partner landed in the same factor");
    if (s.id < partner) pairs.emplace_back(s.id, partner);
  }
  return pairs;
}

GammaGraph build_gamma(const SigmaBasis& basis, int factor) {
  GammaGraph g;
  g.factor = factor;
  for (int id : basis.by_factor[factor]) g.edges.push_back(basis.sigmas[id]);
  return g;
}

int count_components(const GammaGraph& gamma, const VecQ& v) {
  if (v.size() != gamma.edges.size())
    throw std::invalid_argument("count_components: vector size mismatch");
  std::map<int, int> parent;  // tau id -> representative
  std::vector<std::pair<int, int>> links;
  for (size_t i = 0; i < gamma.edges.size(); ++i) {
    if (v[i] <= 0) continue;
    parent.emplace(gamma.edges[i].x, gamma.edges[i].x);
    parent.emplace(gamma.edges[i].y, gamma.edges[i].y);
    links.emplace_back(gamma.edges[i].x, gamma.edges[i].y);
  }
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (auto [a, b] : links) parent[find(a)] = find(b);
  int components = 0;
  for (auto& [tau, rep] : parent)
    if (find(tau) == tau) ++components;
  return components;
}

}  // namespace scl
