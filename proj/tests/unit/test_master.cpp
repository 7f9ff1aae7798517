#include "scl/master.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "scl/discs.hpp"
#include "scl/ratlp.hpp"

using namespace scl;

namespace {

SclSolution solve_text(const std::string& group, const std::string& chain,
                       const SclOptions& opts = {}) {
  GroupSpec g = parse_group(group);
  return scl::scl(g, parse_chain(chain, g), opts);
}

// ½ − m/lcm(m,p), the per-side slope for [a^m, b^n] with relation a^p = b^q;
// p == 0 stands for a free factor (no relation, slope ½).
Rat side_slope(long m, long p) {
  if (p == 0) return Rat(1, 2);
  Int l = int_lcm(Int(m), Int(p));
  return Rat(1, 2) - make_rat(Int(m), l);
}

Rat commutator_value(long m, long n, long p, long q) {
  Rat lo = std::min(side_slope(m, p), side_slope(n, q));
  return std::max(lo, Rat(0));
}

Word parse_word(const std::string& text, const GroupSpec& g) {
  Chain c = parse_chain(text, g);
  REQUIRE(c.terms.size() == 1);
  REQUIRE(c.terms[0].coeff == Rat(1));
  return c.terms[0].word;
}

}  // namespace

TEST_CASE("free group commutator has scl one half") {
  for (const char* grp : {"abelian A = a; abelian B = b",
                          "abelian A = a; abelian B = b; amalg a^inf = b^inf"}) {
    SclSolution s = solve_text(grp, "[a,b]");
    CHECK(s.value == Rat(1, 2));
    CHECK(s.raw == Rat(1, 2));
    CHECK(!s.clamped);
  }
  CHECK(solve_text("abelian A = a; abelian B = b", "[a,b^2]").value == Rat(1, 2));
}

TEST_CASE("trefoil group commutator has vanishing scl") {
  SclSolution s = solve_text("abelian A = a; abelian B = b; amalg a^2 = b^3", "[a,b]");
  CHECK(s.value == Rat(0));
  CHECK(s.raw == Rat(0));
  CHECK(!s.clamped);
}

TEST_CASE("commutator with a central entry yields raw value minus one half") {
  SclSolution s = solve_text("abelian A = a; abelian B = b; amalg a^2 = b^3", "[a^2,b]");
  CHECK(s.raw == Rat(-1, 2));
  CHECK(s.value == Rat(0));
  CHECK(s.clamped);
}

TEST_CASE("identified generators make bdBD trivial") {
  SclSolution s = solve_text("abelian A = a, b; abelian B = c, d; amalg b^1 = c^1", "[b,d]");
  CHECK(s.raw == Rat(-1, 2));
  CHECK(s.value == Rat(0));
  CHECK(s.clamped);
}

TEST_CASE("five seven torus knot commutator") {
  SclSolution s = solve_text("abelian A = a; abelian B = b; amalg a^5 = b^7", "[a,b]");
  CHECK(s.value == Rat(3, 10));
  CHECK(s.raw == Rat(3, 10));
  CHECK(!s.clamped);
}

TEST_CASE("power commutators match the closed formula on a grid") {
  const long pqs[][2] = {{2, 3}, {3, 5}, {5, 7}, {4, 6}, {2, 12}};
  for (long m = 1; m <= 3; ++m) {
    for (long n = 1; n <= 2; ++n) {
      for (auto [p, q] : pqs) {
        CAPTURE(m);
        CAPTURE(n);
        CAPTURE(p);
        CAPTURE(q);
        std::string grp = "abelian A = a; abelian B = b; amalg a^" + std::to_string(p) +
                          " = b^" + std::to_string(q);
        std::string ch = "[a^" + std::to_string(m) + ",b^" + std::to_string(n) + "]";
        SclSolution s = solve_text(grp, ch);
        Rat lo = std::min(side_slope(m, p), side_slope(n, q));
        CHECK(s.raw == lo);
        CHECK(s.value == commutator_value(m, n, p, q));
        CHECK(s.clamped == (lo < 0));
      }
    }
  }
}

TEST_CASE("rational coefficients and powers scale linearly") {
  const std::string grp = "abelian A = a; abelian B = b; amalg a^5 = b^7";
  CHECK(solve_text(grp, "2*[a,b]").value == Rat(3, 5));
  CHECK(solve_text(grp, "1/2*[a,b]").value == Rat(3, 20));
  // The square of the commutator as a single word.
  CHECK(solve_text(grp, "abABabAB").value == Rat(3, 5));
}

TEST_CASE("problem structure for the trefoil commutator") {
  GroupSpec g = parse_group("abelian A = a; abelian B = b; amalg a^2 = b^3");
  SclProblem p = build_problem(g, parse_chain("[a,b]", g));

  REQUIRE(p.cones.size() == 2);
  CHECK(p.cones[0].num_sigma == 4);
  CHECK(p.cones[1].num_sigma == 4);
  CHECK(p.compat.size() == 4);
  CHECK(p.epigraph);
  // 8 sigma variables plus one epigraph variable per factor.
  CHECK(p.lp.num_vars == 10);
  CHECK(p.z_var[0] == 8);
  CHECK(p.z_var[1] == 9);

  // Every genuine sigma coordinate appears in exactly one compatibility pair.
  std::vector<int> seen(p.basis.sigmas.size(), 0);
  for (auto [x, y] : p.compat) {
    seen[x] += 1;
    seen[y] += 1;
  }
  for (const SigmaEdge& e : p.basis.sigmas) CHECK(seen[e.id] == (e.dummy ? 0 : 1));

  SclSolution s = solve_problem(p);
  CHECK(s.value == Rat(0));
  CHECK(s.vectors.size() == 2);
  REQUIRE(s.vectors[0].size() == 4);
  // Boundary normalization: each tau starts one unit of sigma mass.
  CHECK(s.vectors[0][0] + s.vectors[0][1] == Rat(1));
  CHECK(s.vectors[0][2] + s.vectors[0][3] == Rat(1));
  CHECK(s.duals.size() == p.lp.rows.size());
}

TEST_CASE("single factor chains have no compatibility rows and vanishing scl") {
  GroupSpec g = parse_group("abelian A = a; abelian B = b; amalg a^2 = b^3");
  SclProblem p = build_problem(g, parse_chain("a^2 + A^2", g));
  CHECK(p.compat.empty());
  SclSolution s = solve_problem(p);
  CHECK(s.raw == Rat(0));
  CHECK(s.value == Rat(0));

  GroupSpec flat = parse_group("abelian A = a, x");
  SclSolution t = scl::scl(flat, parse_chain("x + X", flat));
  CHECK(t.value == Rat(0));
}

TEST_CASE("non boundary chains are rejected") {
  GroupSpec g = parse_group("abelian A = a; abelian B = b; amalg a^2 = b^3");
  CHECK_THROWS_AS(scl::scl(g, parse_chain("a", g)), std::invalid_argument);
  CHECK_THROWS_AS(scl::scl(g, parse_chain("[a,b] + b", g)), std::invalid_argument);
}

TEST_CASE("chains that normalize away have scl zero") {
  GroupSpec g = parse_group("abelian A = a; abelian B = b; amalg a^2 = b^3");
  SclSolution s = scl::scl(g, parse_chain("a^2 + B^3", g));
  CHECK(s.value == Rat(0));
  CHECK(!s.clamped);
}

TEST_CASE("epigraph and column forms agree") {
  const char* cases[][2] = {
      {"abelian A = a; abelian B = b; amalg a^2 = b^3", "[a,b]"},
      {"abelian A = a; abelian B = b; amalg a^5 = b^7", "[a,b]"},
      {"abelian A = a, b; abelian B = c, d; amalg b^1 = c^1", "[b,d]"},
  };
  for (auto [grp, ch] : cases) {
    CAPTURE(grp);
    SclOptions epi;
    epi.form = SclOptions::Form::Epigraph;
    SclOptions col;
    col.form = SclOptions::Form::Columns;
    SclSolution a = solve_text(grp, ch, epi);
    SclSolution b = solve_text(grp, ch, col);
    CHECK(a.raw == b.raw);
    CHECK(a.value == b.value);
  }
}

TEST_CASE("smaller disc sets never lower the computed value") {
  GroupSpec g = parse_group("abelian A = a; abelian B = b; amalg a^5 = b^7");
  SclOptions col;
  col.form = SclOptions::Form::Columns;
  SclProblem full = build_problem(g, parse_chain("[a^2,b^3]", g), col);
  SclSolution best = solve_problem(full);

  for (int factor = 0; factor < 2; ++factor) {
    for (size_t keep = 0; keep <= full.discs[factor].vectors.size(); ++keep) {
      SclProblem cut = full;
      cut.discs[factor].vectors.resize(keep);
      assemble_lp(cut, SclOptions::Form::Columns);
      SclSolution s = solve_problem(cut);
      CHECK(s.value >= best.value);
    }
  }
}

TEST_CASE("three factor amalgam with an unused factor") {
  SclSolution two = solve_text("abelian A = a; abelian B = b; amalg a^5 = b^7", "[a,b]");
  GroupSpec g = parse_group("abelian A = a; abelian B = b; abelian C = c; amalg a^5 = b^7 = c^2");
  SclSolution three = scl_multi(g, parse_chain("[a,b]", g));
  CHECK(three.value == two.value);
  CHECK(three.raw == two.raw);
  CHECK(three.vectors.size() == 3);
  CHECK(three.vectors[2].empty());
}

TEST_CASE("chain spanning three factors matches the cyclic quotient") {
  GroupSpec g = parse_group("abelian A = a; abelian B = b; abelian C = c; amalg a^2 = b^3 = c^5");
  SclSolution direct = scl_multi(g, parse_chain("[a,b][b,c]", g));
  SclSolution cyclic = scl_cyclic({2, 3, 5}, parse_word("[a,b][b,c]", g));
  CHECK(direct.value == cyclic.value);
  CHECK(direct.raw == cyclic.raw);
  CHECK(direct.value >= Rat(0));
  CHECK(direct.value <= Rat(1));
}

TEST_CASE("cyclic front end reproduces the torus knot values") {
  GroupSpec f2 = cyclic_lift_group({0, 0});
  Word com = parse_word("[a,b]", f2);

  CHECK(scl_cyclic({2, 3}, com).value == Rat(0));
  CHECK(scl_cyclic({3, 5}, com).value == Rat(1, 6));
  CHECK(scl_cyclic({5, 7}, com).value == Rat(3, 10));
  CHECK(scl_cyclic({4, 6}, com).value == Rat(1, 4));
  // All-infinite orders give the free group value.
  CHECK(scl_cyclic({0, 0}, com).value == Rat(1, 2));
  // p, q >= 3 gives ½ − 1/min(p,q).
  for (long p = 3; p <= 6; ++p)
    for (long q = p; q <= 7; ++q) {
      CAPTURE(p);
      CAPTURE(q);
      CHECK(scl_cyclic({p, q}, com).value == Rat(1, 2) - make_rat(1, p));
    }
}

TEST_CASE("cyclic front end lifts homology across the correction term") {
  GroupSpec g = cyclic_lift_group({2, 3});
  // a^2 is trivial in Z/2 * Z/3; its lift needs a balancing subgroup term.
  SclSolution s = scl_cyclic({2, 3}, parse_word("a^2", g));
  CHECK(s.value == Rat(0));
  // a^3 b^4 is trivial in Z/3 * Z/4.
  GroupSpec h = cyclic_lift_group({3, 4});
  SclSolution t = scl_cyclic({3, 4}, parse_word("a^3 b^4", h));
  CHECK(t.value == Rat(0));
}

TEST_CASE("cyclic front end rejects non boundaries and mixed orders") {
  GroupSpec g = cyclic_lift_group({2, 3});
  Word w = parse_word("a b", g);
  CHECK_THROWS_AS(scl_cyclic({2, 3}, w), std::invalid_argument);
  CHECK_THROWS_AS(scl_cyclic({2, 0}, parse_word("[a,b]", g)), std::invalid_argument);
  CHECK_THROWS_AS(scl_cyclic({-2, 3}, parse_word("[a,b]", g)), std::invalid_argument);
}

TEST_CASE("solutions carry a feasible certified basis") {
  GroupSpec g = parse_group("abelian A = a; abelian B = b; amalg a^5 = b^7");
  SclProblem p = build_problem(g, parse_chain("[a,b]", g));
  LpResult res = lp_solve(p.lp);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(lp_certificate_ok(p.lp, res));

  // The optimal vectors lie in their factor cones: klein accepts them.
  SclSolution s = solve_problem(p);
  for (int f = 0; f < 2; ++f) {
    Rat k = klein(s.vectors[f], p.discs[f], p.cones[f]);
    CHECK(k >= Rat(0));
  }
}
