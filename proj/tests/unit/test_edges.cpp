#include "scl/edges.hpp"

#include <set>

#include "doctest.h"

using namespace scl;

namespace {

GroupSpec free2() { return parse_group("abelian A = a; abelian B = b; amalg a^inf = b^inf"); }

}  // namespace

TEST_CASE("commutator tau edges alternate factors") {
  GroupSpec g = free2();
  Chain c = normalize(parse_chain("[a,b]", g), g);
  TauEdges t = extract_tau_edges(c, g);
  REQUIRE(t.taus.size() == 4);
  CHECK(t.taus[0].factor == 0);
  CHECK(t.taus[1].factor == 1);
  CHECK(t.taus[2].factor == 0);
  CHECK(t.taus[3].factor == 1);
  CHECK(t.taus[0].cls == VecZ{-1});
  CHECK(t.taus[2].cls == VecZ{1});
  for (int i = 0; i < 4; ++i) {
    CHECK(!t.taus[i].trivial);
    CHECK(!t.taus[i].loop);
    CHECK(t.succ(i) == (i + 1) % 4);
    CHECK(t.pred(t.succ(i)) == i);
  }
}

TEST_CASE("commutator sigma basis and compatibility matching") {
  GroupSpec g = free2();
  Chain c = normalize(parse_chain("[a,b]", g), g);
  TauEdges t = extract_tau_edges(c, g);
  SigmaBasis basis = build_sigma_basis(t, g);
  REQUIRE(basis.sigmas.size() == 8);
  CHECK(basis.by_factor[0] == std::vector<int>{0, 1, 2, 3});
  CHECK(basis.by_factor[1] == std::vector<int>{4, 5, 6, 7});
  // Factor A pairs in (x, y) order over taus {0, 2}.
  CHECK(basis.sigmas[0].x == 0);
  CHECK(basis.sigmas[0].y == 0);
  CHECK(basis.sigmas[1].y == 2);
  CHECK(basis.sigmas[3].x == 2);
  for (const SigmaEdge& s : basis.sigmas) {
    CHECK(!s.dummy);
    CHECK(s.cylinder == 0);
  }

  auto pairs = compatibility_pairs(basis, t);
  std::vector<std::pair<int, int>> want{{0, 6}, {1, 4}, {2, 7}, {3, 5}};
  CHECK(pairs == want);
}

TEST_CASE("abelian loops become dummy sigmas") {
  GroupSpec g = parse_group("abelian A = a; abelian B = b; amalg a^2 = b^3");
  Chain c = canonical_chain(parse_chain("a^2 + A^2", g));
  TauEdges t = extract_tau_edges(c, g);
  REQUIRE(t.taus.size() == 2);
  CHECK(t.taus[0].loop);
  CHECK(t.taus[1].loop);
  CHECK(t.succ(0) == 0);
  CHECK(t.pred(0) == 0);

  SigmaBasis basis = build_sigma_basis(t, g);
  REQUIRE(basis.sigmas.size() == 2);
  for (const SigmaEdge& s : basis.sigmas) {
    CHECK(s.dummy);
    CHECK(s.factor == 0);
    CHECK(s.x == s.y);
    CHECK(s.cylinder == -1);
  }
  CHECK(compatibility_pairs(basis, t).empty());

  GammaGraph gamma = build_gamma(basis, 0);
  CHECK(count_components(gamma, {Rat(1), Rat(1)}) == 2);
  CHECK(count_components(gamma, {Rat(1), Rat(0)}) == 1);
  CHECK(count_components(gamma, {Rat(0), Rat(0)}) == 0);
}

TEST_CASE("factor jumps insert trivial taus") {
  GroupSpec g = parse_group(
      "abelian A = a; abelian B = b; abelian C = c; amalg a^2 = b^3 = c^4");
  Chain c = canonical_chain(parse_chain("[a,c]", g));
  TauEdges t = extract_tau_edges(c, g);
  REQUIRE(t.taus.size() == 8);
  int trivial = 0;
  for (const TauEdge& tau : t.taus) {
    if (tau.trivial) {
      ++trivial;
      CHECK(tau.factor == 1);
      CHECK(is_zero(tau.cls));
    }
  }
  CHECK(trivial == 4);
  // succ always steps to an adjacent factor.
  for (const TauEdge& tau : t.taus)
    CHECK(std::abs(t.taus[t.succ(tau.id)].factor - tau.factor) == 1);

  SigmaBasis basis = build_sigma_basis(t, g);
  int middle = 0;
  for (const SigmaEdge& s : basis.sigmas) {
    CHECK(!s.dummy);
    if (s.factor == 1) {
      ++middle;
      CHECK((s.cylinder == 0 || s.cylinder == 1));
    } else {
      CHECK(s.cylinder == (s.factor == 0 ? 0 : 1));
    }
  }
  CHECK(middle == 8);
  CHECK(basis.sigmas.size() == 16);
  CHECK(compatibility_pairs(basis, t).size() == 8);
}

TEST_CASE("gamma components on the commutator") {
  GroupSpec g = free2();
  Chain c = normalize(parse_chain("[a,b]", g), g);
  TauEdges t = extract_tau_edges(c, g);
  SigmaBasis basis = build_sigma_basis(t, g);
  GammaGraph gamma = build_gamma(basis, 0);
  REQUIRE(gamma.edges.size() == 4);
  // sigma(0,2) and sigma(2,0) connect both taus into one component.
  CHECK(count_components(gamma, {Rat(0), Rat(1), Rat(1), Rat(0)}) == 1);
  // the two self-pairs leave two separate vertices.
  CHECK(count_components(gamma, {Rat(1), Rat(0), Rat(0), Rat(1)}) == 2);
  CHECK(count_components(gamma, {Rat(1), Rat(1), Rat(0), Rat(0)}) == 1);
  CHECK(count_components(gamma, VecQ(4, Rat(0))) == 0);
  // negative weights are not support.
  CHECK(count_components(gamma, {Rat(-1), Rat(1), Rat(0), Rat(0)}) == 1);
}

TEST_CASE("compatibility is a cross-factor involution on random chains") {
  GroupSpec g = parse_group(
      "abelian A = a, x; abelian B = b; abelian C = c; amalg a^2 = b^3 = c^4");
  const char* texts[] = {"[a,b] + [b,c]", "[a,c^2]", "[x,b] + a^2 B^3", "[a,[b,c]]",
                         "b^3 C^4 + [x,c]"};
  for (const char* text : texts) {
    Chain c = canonical_chain(parse_chain(text, g));
    TauEdges t = extract_tau_edges(c, g);
    SigmaBasis basis = build_sigma_basis(t, g);
    auto pairs = compatibility_pairs(basis, t);
    std::set<int> seen;
    for (auto [a, b] : pairs) {
      CHECK(basis.sigmas[a].factor != basis.sigmas[b].factor);
      CHECK(basis.sigmas[a].cylinder == basis.sigmas[b].cylinder);
      CHECK(seen.insert(a).second);
      CHECK(seen.insert(b).second);
    }
    int genuine = 0;
    for (const SigmaEdge& s : basis.sigmas)
      if (!s.dummy) ++genuine;
    CHECK(static_cast<int>(seen.size()) == genuine);

    // Determinism.
    TauEdges t2 = extract_tau_edges(c, g);
    CHECK(t2.taus.size() == t.taus.size());
    SigmaBasis basis2 = build_sigma_basis(t2, g);
    CHECK(basis2.sigmas.size() == basis.sigmas.size());
    CHECK(compatibility_pairs(basis2, t2) == pairs);
  }
}
