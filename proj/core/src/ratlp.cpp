#include "scl/ratlp.hpp"

#include <sstream>
#include <stdexcept>

namespace scl {

int LinearProgram::add_var(const Rat& obj_coeff) {
  objective.push_back(obj_coeff);
  for (Row& r : rows) r.coeffs.push_back(Rat(0));
  return num_vars++;
}

void LinearProgram::add_row(VecQ coeffs, Rel rel, Rat rhs) {
  if (static_cast<int>(coeffs.size()) != num_vars)
    throw std::invalid_argument("add_row: coefficient count mismatch");
  rows.push_back(Row{std::move(coeffs), rel, std::move(rhs)});
}

namespace {

// Standard-form working problem: min c.x, Ax = b, x >= 0, b >= 0.
struct Tableau {
  int m = 0;
  int n = 0;  // columns excluding rhs
  std::vector<VecQ> t;  // m+1 rows of n+1 entries; last row = reduced costs
  std::vector<int> basis;     // basic variable per row
  std::vector<bool> banned;   // columns barred from entering (artificials)

  Rat& at(int i, int j) { return t[i][j]; }

  void pivot(int row, int col) {
    Rat p = t[row][col];
    for (int j = 0; j <= n; ++j) t[row][j] /= p;
    for (int i = 0; i <= m; ++i) {
      if (i == row || t[i][col] == 0) continue;
      Rat f = t[i][col];
      for (int j = 0; j <= n; ++j) t[i][j] -= f * t[row][j];
    }
    basis[row] = col;
  }

  // Bland's rule; returns false at optimum, throws on unbounded.
  bool step() {
    int enter = -1;
    for (int j = 0; j < n; ++j) {
      if (banned[j]) continue;
      if (t[m][j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return false;
    int leave = -1;
    Rat best;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][n] / t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) throw LpStatus::Unbounded;
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

LpResult lp_solve(const LinearProgram& lp) {
  int nv = lp.num_vars;
  if (static_cast<int>(lp.objective.size()) != nv)
    throw std::invalid_argument("lp_solve: objective size mismatch");

  // Shift away lower bounds and turn upper bounds into rows, so the working
  // problem has plain x >= 0 variables.
  VecQ lower(nv, Rat(0));
  if (!lp.lower.empty()) {
    if (static_cast<int>(lp.lower.size()) != nv)
      throw std::invalid_argument("lp_solve: lower bound size mismatch");
    lower = lp.lower;
  }
  struct WorkRow {
    VecQ a;
    Rel rel;
    Rat b;
    int orig;  // index into lp.rows, or -1 for a bound row
  };
  std::vector<WorkRow> work;
  for (size_t r = 0; r < lp.rows.size(); ++r) {
    const auto& row = lp.rows[r];
    Rat shift = 0;
    for (int j = 0; j < nv; ++j)
      if (lower[j] != 0) shift += row.coeffs[j] * lower[j];
    work.push_back(WorkRow{row.coeffs, row.rel, row.rhs - shift, static_cast<int>(r)});
  }
  if (!lp.upper.empty()) {
    if (static_cast<int>(lp.upper.size()) != nv)
      throw std::invalid_argument("lp_solve: upper bound size mismatch");
    for (int j = 0; j < nv; ++j) {
      if (!lp.upper[j]) continue;
      VecQ a(nv, Rat(0));
      a[j] = 1;
      work.push_back(WorkRow{std::move(a), Rel::Le, *lp.upper[j] - lower[j], -1});
    }
  }

  VecQ cost = lp.objective;
  if (lp.maximize)
    for (Rat& c : cost) c = -c;
  Rat const_term = 0;
  for (int j = 0; j < nv; ++j)
    if (lower[j] != 0) const_term += cost[j] * lower[j];

  int m = static_cast<int>(work.size());
  std::vector<int> row_sign(m, 1);
  for (int i = 0; i < m; ++i) {
    if (work[i].b < 0) {
      row_sign[i] = -1;
      for (Rat& a : work[i].a) a = -a;
      work[i].b = -work[i].b;
      if (work[i].rel == Rel::Le)
        work[i].rel = Rel::Ge;
      else if (work[i].rel == Rel::Ge)
        work[i].rel = Rel::Le;
    }
  }

  // Column layout: structurals, then one slack/surplus per inequality row,
  // then one artificial per row (identity start basis, duals read there).
  int n_slack = 0;
  for (const auto& w : work)
    if (w.rel != Rel::Eq) ++n_slack;
  int n = nv + n_slack + m;
  int art0 = nv + n_slack;

  Tableau tab;
  tab.m = m;
  tab.n = n;
  tab.t.assign(m + 1, VecQ(n + 1, Rat(0)));
  tab.basis.assign(m, -1);
  tab.banned.assign(n, false);

  int slack = nv;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < nv; ++j) tab.at(i, j) = work[i].a[j];
    if (work[i].rel == Rel::Le)
      tab.at(i, slack++) = 1;
    else if (work[i].rel == Rel::Ge)
      tab.at(i, slack++) = -1;
    tab.at(i, art0 + i) = 1;
    tab.at(i, n) = work[i].b;
    tab.basis[i] = art0 + i;
  }

  LpResult res;

  // Phase 1: minimize the artificial sum.
  for (int j = 0; j < n; ++j) {
    Rat r = 0;
    for (int i = 0; i < m; ++i)
      if (j < art0) r -= tab.at(i, j);
    tab.at(m, j) = (j >= art0) ? Rat(0) : r;
  }
  {
    Rat r = 0;
    for (int i = 0; i < m; ++i) r -= tab.at(i, n);
    tab.at(m, n) = r;
  }
  try {
    while (tab.step()) {
    }
  } catch (LpStatus) {
    throw std::logic_error("phase 1 unbounded");
  }
  if (tab.at(m, n) != 0) {
    res.status = LpStatus::Infeasible;
    return res;
  }
  // Drive basic artificials out where possible; ban all artificials.
  for (int i = 0; i < m; ++i) {
    if (tab.basis[i] < art0) continue;
    for (int j = 0; j < art0; ++j) {
      if (tab.at(i, j) != 0) {
        tab.pivot(i, j);
        break;
      }
    }
  }
  for (int j = art0; j < n; ++j) tab.banned[j] = true;

  // Phase 2 objective row.
  for (int j = 0; j <= n; ++j) tab.at(m, j) = 0;
  for (int j = 0; j < nv; ++j) tab.at(m, j) = cost[j];
  for (int i = 0; i < m; ++i) {
    int bj = tab.basis[i];
    Rat cb = (bj < nv) ? cost[bj] : Rat(0);
    if (cb == 0) continue;
    for (int j = 0; j <= n; ++j) tab.at(m, j) -= cb * tab.t[i][j];
  }
  try {
    while (tab.step()) {
    }
  } catch (LpStatus s) {
    res.status = s;
    return res;
  }

  res.status = LpStatus::Optimal;
  VecQ x(nv, Rat(0));
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < nv) x[tab.basis[i]] = tab.at(i, n);
  res.primal.resize(nv);
  for (int j = 0; j < nv; ++j) res.primal[j] = x[j] + lower[j];
  Rat min_value = -tab.at(m, n) + const_term;
  res.value = lp.maximize ? -min_value : min_value;

  res.dual.assign(lp.rows.size(), Rat(0));
  for (int i = 0; i < m; ++i) {
    if (work[i].orig < 0) continue;
    Rat y = -tab.at(m, art0 + i);
    y *= row_sign[i];
    if (lp.maximize) y = -y;
    res.dual[work[i].orig] = y;
  }
  return res;
}

bool lp_certificate_ok(const LinearProgram& lp, const LpResult& res) {
  if (res.status != LpStatus::Optimal) return false;
  int nv = lp.num_vars;
  const VecQ& x = res.primal;
  if (static_cast<int>(x.size()) != nv) return false;

  VecQ lower(nv, Rat(0));
  if (!lp.lower.empty()) lower = lp.lower;
  for (int j = 0; j < nv; ++j) {
    if (x[j] < lower[j]) return false;
    if (!lp.upper.empty() && lp.upper[j] && x[j] > *lp.upper[j]) return false;
  }
  Rat obj = dot(lp.objective, x);
  if (obj != res.value) return false;

  // Row feasibility and the dual sign pattern (stated for min; flipped for max).
  VecQ slackness(lp.rows.size());
  for (size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& row = lp.rows[i];
    Rat lhs = dot(row.coeffs, x);
    slackness[i] = lhs - row.rhs;
    if (row.rel == Rel::Le && lhs > row.rhs) return false;
    if (row.rel == Rel::Ge && lhs < row.rhs) return false;
    if (row.rel == Rel::Eq && lhs != row.rhs) return false;
    Rat y = res.dual[i];
    Rat y_min = lp.maximize ? -y : y;
    if (row.rel == Rel::Le && y_min > 0) return false;
    if (row.rel == Rel::Ge && y_min < 0) return false;
    if (y != 0 && slackness[i] != 0) return false;  // complementary slackness
  }

  // Reduced costs: for min, c - y^T A >= 0 on every variable at its lower
  // bound, and zero where x sits strictly inside its bounds. Upper-bounded
  // variables pinned at the top may have negative reduced cost.
  for (int j = 0; j < nv; ++j) {
    Rat red = lp.maximize ? -lp.objective[j] : lp.objective[j];
    for (size_t i = 0; i < lp.rows.size(); ++i) {
      Rat y_min = lp.maximize ? -res.dual[i] : res.dual[i];
      if (y_min != 0 && lp.rows[i].coeffs[j] != 0) red -= y_min * lp.rows[i].coeffs[j];
    }
    bool at_upper = !lp.upper.empty() && lp.upper[j] && x[j] == *lp.upper[j];
    if (red < 0 && !at_upper) return false;
    if (red > 0 && x[j] != lower[j]) return false;
  }
  return true;
}

std::string lp_to_text(const LinearProgram& lp) {
  std::ostringstream out;
  out << (lp.maximize ? "maximize" : "minimize") << "\n";
  out << "vars " << lp.num_vars << "\n";
  out << "obj";
  for (const Rat& c : lp.objective) out << ' ' << rat_str(c);
  out << "\n";
  for (const auto& row : lp.rows) {
    out << "row " << (row.rel == Rel::Le ? "le" : row.rel == Rel::Ge ? "ge" : "eq") << ' '
        << rat_str(row.rhs) << " :";
    for (const Rat& a : row.coeffs) out << ' ' << rat_str(a);
    out << "\n";
  }
  return out.str();
}

LinearProgram lp_from_text(const std::string& text) {
  std::istringstream in(text);
  LinearProgram lp;
  std::string tok;
  if (!(in >> tok)) throw std::invalid_argument("lp text: empty");
  if (tok == "maximize")
    lp.maximize = true;
  else if (tok != "minimize")
    throw std::invalid_argument("lp text: expected minimize/maximize");
  if (!(in >> tok) || tok != "vars") throw std::invalid_argument("lp text: expected vars");
  int nv;
  in >> nv;
  lp.num_vars = nv;
  if (!(in >> tok) || tok != "obj") throw std::invalid_argument("lp text: expected obj");
  lp.objective.resize(nv);
  for (int j = 0; j < nv; ++j) {
    in >> tok;
    lp.objective[j] = parse_rat(tok);
  }
  while (in >> tok) {
    if (tok != "row") throw std::invalid_argument("lp text: expected row");
    std::string rel_s, rhs_s, colon;
    in >> rel_s >> rhs_s >> colon;
    if (colon != ":") throw std::invalid_argument("lp text: expected ':'");
    Rel rel = rel_s == "le" ? Rel::Le : rel_s == "ge" ? Rel::Ge : Rel::Eq;
    if (rel_s != "le" && rel_s != "ge" && rel_s != "eq")
      throw std::invalid_argument("lp text: bad relation " + rel_s);
    VecQ coeffs(nv);
    for (int j = 0; j < nv; ++j) {
      in >> tok;
      coeffs[j] = parse_rat(tok);
    }
    lp.add_row(std::move(coeffs), rel, parse_rat(rhs_s));
  }
  return lp;
}

}  // namespace scl
