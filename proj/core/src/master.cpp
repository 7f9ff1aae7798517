#include "scl/master.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace scl {

namespace {

// Beyond this many disc vectors the functional polytope gets expensive, so
// Auto falls back to explicit disc weight variables.
constexpr size_t kColumnFormThreshold = 48;

int sigma_position(const SclProblem& p, int sigma_id) {
  int factor = p.basis.sigmas[sigma_id].factor;
  return p.var_base[factor] + p.basis.coord_of(sigma_id);
}

}  // namespace

void assemble_lp(SclProblem& p, SclOptions::Form form) {
  int s = p.group.num_factors();
  if (form == SclOptions::Form::Auto) {
    form = SclOptions::Form::Epigraph;
    for (const DiscVectorSet& d : p.discs)
      if (d.vectors.size() > kColumnFormThreshold) form = SclOptions::Form::Columns;
  }
  p.epigraph = form == SclOptions::Form::Epigraph;

  p.funcs.assign(s, KleinFunctionals{});
  for (int f = 0; f < s; ++f) {
    p.funcs[f].factor = f;
    if (p.epigraph) p.funcs[f] = klein_functionals(p.discs[f], p.cones[f]);
  }

  p.lp = LinearProgram{};
  p.lp.maximize = false;
  p.var_base.assign(s, 0);
  p.z_var.assign(s, -1);
  p.t_base.assign(s, -1);

  for (int f = 0; f < s; ++f) {
    const ConeSystem& cone = p.cones[f];
    p.var_base[f] = p.lp.num_vars;
    for (int c = 0; c < cone.num_sigma; ++c) {
      Rat w(0);
      if (!cone.sigma_dummy[c]) w = Rat(1, 2);
      if (cone.sigma_subgroup[c]) w = Rat(1);
      p.lp.add_var(w);
    }
  }
  for (int f = 0; f < s; ++f) {
    if (p.epigraph) {
      p.z_var[f] = p.lp.add_var(Rat(-1));
    } else {
      p.t_base[f] = p.lp.num_vars;
      for (size_t d = 0; d < p.discs[f].vectors.size(); ++d) p.lp.add_var(Rat(-1));
    }
  }
  int n = p.lp.num_vars;

  // Factor cone rows: closed boundaries with trivial homology class. The
  // winding columns are pinned to zero here, which drops them entirely.
  for (int f = 0; f < s; ++f) {
    const ConeSystem& cone = p.cones[f];
    auto add_zero_rows = [&](const MatQ& m) {
      for (int i = 0; i < m.rows; ++i) {
        VecQ row(n);
        bool any = false;
        for (int c = 0; c < cone.num_sigma; ++c) {
          row[p.var_base[f] + c] = m.at(i, c);
          any = any || m.at(i, c) != 0;
        }
        if (any) p.lp.add_row(std::move(row), Rel::Eq, Rat(0));
      }
    };
    add_zero_rows(cone.boundary);
    add_zero_rows(cone.homology);
  }

  // Glued sigma edges carry equal mass on both sides of their cylinder.
  for (auto [x, y] : p.compat) {
    VecQ row(n);
    row[sigma_position(p, x)] += 1;
    row[sigma_position(p, y)] -= 1;
    p.lp.add_row(std::move(row), Rel::Eq, Rat(0));
  }

  // Boundary usage: every tau edge starts sigma mass equal to its word's
  // multiplicity in the chain (the global scalar t fixed to 1).
  for (const TauEdge& t : p.taus.taus) {
    const ConeSystem& cone = p.cones[t.factor];
    VecQ row(n);
    for (int c = 0; c < cone.num_sigma; ++c)
      if (p.basis.sigmas[cone.sigma_ids[c]].x == t.id) row[p.var_base[t.factor] + c] = 1;
    p.lp.add_row(std::move(row), Rel::Eq, p.chain.terms[t.term].coeff);
  }

  for (int f = 0; f < s; ++f) {
    if (p.epigraph) {
      // z_f at most every functional value bounds it by the Klein function.
      if (p.funcs[f].funcs.empty()) {
        VecQ row(n);
        row[p.z_var[f]] = 1;
        p.lp.add_row(std::move(row), Rel::Le, Rat(0));
      }
      for (const VecQ& fn : p.funcs[f].funcs) {
        VecQ row(n);
        row[p.z_var[f]] = 1;
        for (int c = 0; c < p.cones[f].num_sigma; ++c) row[p.var_base[f] + c] = -fn[c];
        p.lp.add_row(std::move(row), Rel::Le, Rat(0));
      }
    } else {
      // Explicit packing: disc weights bounded by the available sigma mass.
      for (int c = 0; c < p.cones[f].num_sigma; ++c) {
        VecQ row(n);
        bool any = false;
        for (size_t d = 0; d < p.discs[f].vectors.size(); ++d) {
          const Int& coeff = p.discs[f].vectors[d][c];
          row[p.t_base[f] + static_cast<int>(d)] = Rat(coeff);
          any = any || coeff != 0;
        }
        if (!any) continue;
        row[p.var_base[f] + c] = -1;
        p.lp.add_row(std::move(row), Rel::Le, Rat(0));
      }
    }
  }
}

SclProblem build_problem(const GroupSpec& g, const Chain& c, const SclOptions& opts) {
  if (opts.bound <= 0) throw std::invalid_argument("disc enumeration bound must be positive");
  SclProblem p;
  p.group = g;
  p.chain = normalize(c, g);
  p.taus = extract_tau_edges(p.chain, g);
  p.basis = build_sigma_basis(p.taus, g);
  p.compat = compatibility_pairs(p.basis, p.taus);

  int s = g.num_factors();
  for (int f = 0; f < s; ++f) {
    p.cones.push_back(build_cone(p.basis, p.taus, g, f, ConeKind::Full));
    GammaGraph gamma = build_gamma(p.basis, f);
    p.discs.push_back(enumerate_disc_vectors(p.cones[f], gamma, opts.bound));
  }
  assemble_lp(p, opts.form);
  return p;
}

SclSolution solve_problem(const SclProblem& p) {
  SclSolution sol;
  sol.vectors.assign(p.group.num_factors(), VecQ{});

  LpResult res;
  if (p.lp.num_vars == 0) {
    res.status = LpStatus::Optimal;
    res.value = 0;
  } else {
    res = lp_solve(p.lp);
  }
  if (res.status == LpStatus::Infeasible)
    throw std::runtime_error("scl program infeasible; the normalized chain lost its boundary");
  if (res.status == LpStatus::Unbounded)
    throw std::runtime_error("scl program unbounded; the objective lost a Klein bound");

  sol.raw = res.value / 2 / Rat(p.chain.scale);
  sol.clamped = sol.raw < 0;
  sol.value = std::max(sol.raw, Rat(0));
  for (int f = 0; f < p.group.num_factors(); ++f) {
    VecQ v(p.cones[f].num_sigma);
    for (int c = 0; c < p.cones[f].num_sigma; ++c) v[c] = res.primal[p.var_base[f] + c];
    sol.vectors[f] = std::move(v);
  }
  sol.duals = res.dual;
  return sol;
}

SclSolution scl(const GroupSpec& g, const Chain& c, const SclOptions& opts) {
  return solve_problem(build_problem(g, c, opts));
}

SclSolution scl_multi(const GroupSpec& g, const Chain& c, const SclOptions& opts) {
  return solve_problem(build_problem(g, c, opts));
}

GroupSpec cyclic_lift_group(const std::vector<Int>& orders) {
  int s = static_cast<int>(orders.size());
  if (s < 1) throw std::invalid_argument("need at least one cyclic factor");
  if (s > 26) throw std::invalid_argument("at most 26 cyclic factors are supported");
  bool any_zero = false;
  bool any_finite = false;
  for (const Int& p : orders) {
    if (p == 0)
      any_zero = true;
    else if (p >= 1)
      any_finite = true;
    else
      throw std::invalid_argument("cyclic orders must be positive (0 for infinite)");
  }
  if (any_zero && any_finite)
    throw std::invalid_argument("mixed finite and infinite orders are not supported");

  std::string text;
  for (int i = 0; i < s; ++i) {
    text += "abelian F" + std::to_string(i + 1) + " = ";
    text += static_cast<char>('a' + i);
    text += "; ";
  }
  if (s >= 2) {
    text += "amalg ";
    for (int i = 0; i < s; ++i) {
      if (i) text += " = ";
      text += static_cast<char>('a' + i);
      text += any_finite ? "^" + orders[i].get_str() : "^inf";
    }
  }
  return parse_group(text);
}

SclSolution scl_cyclic(const std::vector<Int>& orders, const Word& w, const SclOptions& opts) {
  GroupSpec g = cyclic_lift_group(orders);
  int s = g.num_factors();

  std::vector<Int> total(s, 0);
  for (const Word::Block& b : w.blocks) {
    if (b.factor < 0 || b.factor >= s || b.exps.size() != 1)
      throw std::invalid_argument("word does not fit the cyclic factors");
    total[b.factor] += b.exps[0];
  }

  Int correction = 0;
  int lead = -1;
  for (int i = 0; i < s; ++i) {
    if (orders[i] == 0) {
      if (total[i] != 0)
        throw std::invalid_argument("word is not a boundary: infinite order generator survives");
      continue;
    }
    if (total[i] % orders[i] != 0)
      throw std::invalid_argument("word is not a boundary in the cyclic free product");
    correction -= total[i] / orders[i];
    if (lead < 0) lead = i;
  }

  Chain c;
  c.terms.push_back({Rat(1), w});
  if (correction != 0) {
    Word unit;
    unit.blocks.push_back({lead, VecZ{orders[lead]}});
    c.terms.push_back({Rat(correction), unit});
  }
  return scl_multi(g, c, opts);
}

}  // namespace scl
