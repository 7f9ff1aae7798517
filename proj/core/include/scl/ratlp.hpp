#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scl/linalg.hpp"

namespace scl {

enum class Rel { Le, Ge, Eq };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LinearProgram {
  bool maximize = false;
  int num_vars = 0;
  VecQ objective;

  struct Row {
    VecQ coeffs;
    Rel rel;
    Rat rhs;
  };
  std::vector<Row> rows;

  // Per-variable bounds; defaults are [0, +inf).
  VecQ lower;
  std::vector<std::optional<Rat>> upper;

  int add_var(const Rat& obj_coeff = Rat(0));
  void add_row(VecQ coeffs, Rel rel, Rat rhs);
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  VecQ primal;  // one entry per variable
  VecQ dual;    // one entry per row; min: y<=0 on Le rows, y>=0 on Ge rows
};

// Dense exact simplex, two phases, Bland's rule. Deterministic.
LpResult lp_solve(const LinearProgram& lp);

// Independent optimality check: primal/dual feasibility, complementary
// slackness, and matching objectives, all by exact substitution.
bool lp_certificate_ok(const LinearProgram& lp, const LpResult& res);

// Plain-text round trip (rational literals only).
std::string lp_to_text(const LinearProgram& lp);
LinearProgram lp_from_text(const std::string& text);

}  // namespace scl
