#include "scl/discs.hpp"

#include <random>
#include <set>

#include "doctest.h"

using namespace scl;

namespace {

struct Setup {
  GroupSpec g;
  Chain c;
  TauEdges t;
  SigmaBasis basis;
  ConeSystem cone;
  GammaGraph gamma;

  Setup(const std::string& group, const std::string& chain, int factor,
        ConeKind kind = ConeKind::Full, bool norm = true)
      : g(parse_group(group)) {
    Chain parsed = parse_chain(chain, g);
    c = norm ? normalize(parsed, g) : canonical_chain(parsed);
    t = extract_tau_edges(c, g);
    basis = build_sigma_basis(t, g);
    cone = build_cone(basis, t, g, factor, kind);
    gamma = build_gamma(basis, factor);
  }
};

VecQ to_q(const VecZ& v) {
  VecQ q(v.size());
  for (size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
  return q;
}

// Lattice scan: every integral sigma vector within the radius, kept when the
// boundary rows vanish, the winding rows divide out, and the support is one
// component; then reduced to hull vertices with the packing program itself.
std::vector<VecZ> brute_discs(const Setup& s, int radius) {
  const ConeSystem& cs = s.cone;
  std::vector<VecZ> feasible;
  VecZ v(cs.num_sigma, 0);
  auto scan = [&](auto&& self, int c, int rem) -> void {
    if (c == cs.num_sigma) {
      if (count_components(s.gamma, to_q(v)) != 1) return;
      for (int i = 0; i < cs.boundary.rows; ++i) {
        Rat val;
        for (int j = 0; j < cs.num_sigma; ++j) val += cs.boundary.at(i, j) * Rat(v[j]);
        if (val != 0) return;
      }
      VecZ winding(cs.num_winding, 0);
      for (int i = 0; i < cs.homology.rows; ++i) {
        Rat val;
        for (int j = 0; j < cs.num_sigma; ++j) val += cs.homology.at(i, j) * Rat(v[j]);
        int wcol = -1;
        for (int t = 0; t < cs.num_winding; ++t)
          if (cs.homology.at(i, cs.num_sigma + t) != 0) wcol = t;
        if (wcol < 0) {
          if (val != 0) return;
        } else {
          Rat w = val / -cs.homology.at(i, cs.num_sigma + wcol);
          if (w.get_den() != 1) return;
          winding[wcol] = w.get_num();
        }
      }
      VecZ f = v;
      f.insert(f.end(), winding.begin(), winding.end());
      feasible.push_back(std::move(f));
      return;
    }
    for (int n = 0; n <= rem; ++n) {
      v[c] = n;
      self(self, c + 1, rem - n);
    }
    v[c] = 0;
  };
  scan(scan, 0, radius);

  std::vector<VecZ> hull;
  for (size_t i = 0; i < feasible.size(); ++i) {
    DiscVectorSet others;
    others.factor = cs.factor;
    for (size_t j = 0; j < feasible.size(); ++j)
      if (j != i) others.vectors.push_back(feasible[j]);
    if (klein(to_q(feasible[i]), others, cs) < 1) hull.push_back(feasible[i]);
  }
  std::sort(hull.begin(), hull.end());
  return hull;
}

}  // namespace

TEST_CASE("free product commutator has a single cross disc") {
  Setup s("abelian A = a; abelian B = b; amalg a^inf = b^inf", "[a,b]", 0);
  DiscVectorSet d = enumerate_disc_vectors(s.cone, s.gamma, 4);
  CHECK(d.complete_hint);
  REQUIRE(d.vectors == std::vector<VecZ>{{0, 1, 1, 0}});
  CHECK(klein(VecQ{Rat(0), Rat(1), Rat(1), Rat(0)}, d, s.cone) == 1);
  CHECK(chi_o_vec(VecQ{Rat(0), Rat(1), Rat(1), Rat(0)}, d, s.cone) == 0);
  CHECK(klein(VecQ(4, Rat(0)), d, s.cone) == 0);
  CHECK(chi_o_vec(VecQ(4, Rat(0)), d, s.cone) == 0);
}

TEST_CASE("winding discs appear at the subgroup exponent") {
  Setup s("abelian A = a; abelian B = b; amalg a^2 = b^3", "[a,b]", 0);
  DiscVectorSet d = enumerate_disc_vectors(s.cone, s.gamma, 2);
  CHECK(d.complete_hint);
  std::vector<VecZ> want{{0, 0, 0, 2, 1}, {0, 1, 1, 0, 0}, {2, 0, 0, 0, -1}};
  CHECK(d.vectors == want);
  CHECK(brute_discs(s, 6) == want);

  // Klein on the cone: sigma parts are (x, y, y, z).
  for (int x = 0; x <= 3; ++x)
    for (int y = 0; y <= 3; ++y)
      for (int z = 0; z <= 3; ++z) {
        VecQ v{Rat(x), Rat(y), Rat(y), Rat(z)};
        CHECK(klein(v, d, s.cone) == make_rat(x + z, 2) + Rat(y));
      }
}

TEST_CASE("disc vectors for a power commutator match the closed form") {
  // lcm(2,3)/2 = 3 copies of the self-pair close up with winding 2.
  Setup s("abelian A = a; abelian B = b; amalg a^3 = b^5", "[a^2,b^4]", 0);
  DiscVectorSet d = enumerate_disc_vectors(s.cone, s.gamma, 2);
  CHECK(d.complete_hint);
  std::vector<VecZ> want{{0, 0, 0, 3, 2}, {0, 1, 1, 0, 0}, {3, 0, 0, 0, -2}};
  CHECK(d.vectors == want);
  CHECK(brute_discs(s, 7) == want);

  // kappa = (m/lcm)(v1+v4) + (v2+v3)/2 on the cone, here m/lcm = 1/3.
  KleinFunctionals kf = klein_functionals(d, s.cone);
  for (int x = 0; x <= 2; ++x)
    for (int y = 0; y <= 2; ++y)
      for (int z = 0; z <= 2; ++z) {
        VecQ v{Rat(x), Rat(y), Rat(y), Rat(z)};
        Rat expect = make_rat(x + z, 3) + Rat(y);
        CHECK(klein(v, d, s.cone) == expect);
        CHECK(klein_value(kf, v) == expect);
      }

  // chi_o of the winding disc: 1 - lcm(m,p)/(2m) = 1 - 3/2.
  CHECK(chi_o_vec(to_q(d.vectors[0]), d, s.cone) == make_rat(-1, 2));
  CHECK(chi_o_vec(to_q(d.vectors[2]), d, s.cone) == make_rat(-1, 2));
  CHECK(chi_o_vec(to_q(d.vectors[1]), d, s.cone) == 0);
}

TEST_CASE("subgroup loops are discs with unit winding") {
  Setup s("abelian A = a, b; abelian B = c, d; amalg b^1 = c^1", "b + B", 0,
          ConeKind::Full, false);
  REQUIRE(s.cone.num_sigma == 2);
  CHECK(s.cone.sigma_dummy == std::vector<bool>{true, true});
  CHECK(s.cone.sigma_subgroup == std::vector<bool>{true, true});

  DiscVectorSet d = enumerate_disc_vectors(s.cone, s.gamma, 2);
  CHECK(d.complete_hint);
  std::vector<VecZ> want{{0, 1, 1}, {1, 0, -1}};
  CHECK(d.vectors == want);
  CHECK(brute_discs(s, 6) == want);

  // Two self-loops pack as two discs, but both are fictional subgroup mass.
  CHECK(klein(VecQ{Rat(1), Rat(1)}, d, s.cone) == 2);
  CHECK(chi_o_vec(VecQ{Rat(1), Rat(1)}, d, s.cone) == 0);
}

TEST_CASE("loops outside the subgroup are not fictional discs") {
  Setup s("abelian A = a; abelian B = b; amalg a^2 = b^3", "a^3 + A^3 + [a,b]", 0,
          ConeKind::Full, false);
  int dummies = 0;
  for (int c = 0; c < s.cone.num_sigma; ++c) {
    if (!s.cone.sigma_dummy[c]) continue;
    ++dummies;
    CHECK(!s.cone.sigma_subgroup[c]);
  }
  CHECK(dummies == 2);

  Setup mixed("abelian A = a, x; abelian B = b; amalg a^2 = b^3", "x a^2 + [a,b]", 0,
              ConeKind::Full, false);
  for (int c = 0; c < mixed.cone.num_sigma; ++c)
    if (mixed.cone.sigma_dummy[c]) CHECK(!mixed.cone.sigma_subgroup[c]);
}

TEST_CASE("pinned winding removes the winding discs") {
  Setup s("abelian A = a; abelian B = b; amalg a^2 = b^3", "[a,b]", 0, ConeKind::ZeroWinding);
  DiscVectorSet d = enumerate_disc_vectors(s.cone, s.gamma, 4);
  CHECK(d.complete_hint);
  CHECK(d.vectors == std::vector<VecZ>{{0, 1, 1, 0, 0}});

  Setup bare("abelian A = a; abelian B = b; amalg a^2 = b^3", "[a,b]", 0, ConeKind::NoWinding);
  DiscVectorSet db = enumerate_disc_vectors(bare.cone, bare.gamma, 4);
  CHECK(db.vectors == std::vector<VecZ>{{0, 1, 1, 0}});
}

TEST_CASE("empty disc set gives zero klein") {
  Setup s("abelian A = a; abelian B = b; amalg a^inf = b^inf", "a b", 0,
          ConeKind::Full, false);
  DiscVectorSet d = enumerate_disc_vectors(s.cone, s.gamma, 4);
  CHECK(d.vectors.empty());
  CHECK(d.complete_hint);
  KleinFunctionals kf = klein_functionals(d, s.cone);
  CHECK(kf.funcs.empty());
  CHECK(klein_value(kf, VecQ{Rat(0)}) == 0);
  CHECK(klein(VecQ{Rat(0)}, d, s.cone) == 0);
}

TEST_CASE("klein rejects vectors outside the cone") {
  Setup s("abelian A = a; abelian B = b; amalg a^2 = b^3", "[a,b]", 0);
  DiscVectorSet d = enumerate_disc_vectors(s.cone, s.gamma, 2);
  CHECK_THROWS_AS(klein(VecQ{Rat(-1), Rat(0), Rat(0), Rat(0)}, d, s.cone),
                  std::invalid_argument);
  // Unbalanced: the two cross coordinates must agree.
  CHECK_THROWS_AS(klein(VecQ{Rat(0), Rat(1), Rat(0), Rat(0)}, d, s.cone),
                  std::invalid_argument);
  // Full-dimension vector whose winding entry contradicts the homology row.
  CHECK_THROWS_AS(klein(VecQ{Rat(2), Rat(0), Rat(0), Rat(0), Rat(5)}, d, s.cone),
                  std::invalid_argument);
  CHECK_THROWS_AS(enumerate_disc_vectors(s.cone, s.gamma, 0), std::invalid_argument);
}

TEST_CASE("functional invariants and klein properties on random cone points") {
  const char* groups[] = {"abelian A = a; abelian B = b; amalg a^2 = b^3",
                          "abelian A = a; abelian B = b; amalg a^4 = b^6",
                          "abelian A = a, b; abelian B = c, d; amalg b^1 = c^1"};
  const char* chains[] = {"[a,b]", "[a^2,b]", "[b,d] + b + B"};
  std::mt19937 rng(77);
  for (int fix = 0; fix < 3; ++fix) {
    for (int factor = 0; factor < 2; ++factor) {
      CAPTURE(fix);
      CAPTURE(factor);
      bool norm = fix != 2;
      Setup s(groups[fix], chains[fix], factor, ConeKind::Full, norm);
      DiscVectorSet d = enumerate_disc_vectors(s.cone, s.gamma, 4);
      CHECK(d.complete_hint);
      KleinFunctionals kf = klein_functionals(d, s.cone);
      if (d.vectors.empty()) continue;

      // Each functional supports a facet: >= 1 everywhere, tight somewhere.
      for (const VecQ& f : kf.funcs) {
        bool tight = false;
        for (const VecZ& disc : d.vectors) {
          VecQ dq = to_q(disc);
          Rat val = dot(f, VecQ(dq.begin(), dq.begin() + s.cone.num_sigma));
          CHECK(val >= 1);
          if (val == 1) tight = true;
        }
        CHECK(tight);
      }

      // No stored disc dominates another.
      for (const VecZ& u : d.vectors)
        for (const VecZ& w : d.vectors) {
          if (u == w) continue;
          bool ge = true;
          for (int c = 0; c < s.cone.num_sigma && ge; ++c) ge = u[c] >= w[c];
          CHECK(!ge);
        }

      std::vector<VecZ> rays = extremal_rays(s.cone);
      REQUIRE(!rays.empty());
      auto sample = [&]() {
        VecQ v(s.cone.dim(), Rat(0));
        for (const VecZ& r : rays) {
          int k = static_cast<int>(rng() % 4);
          for (int j = 0; j < s.cone.dim(); ++j) v[j] += Rat(k) * Rat(r[j]);
        }
        return v;
      };
      for (int trial = 0; trial < 25; ++trial) {
        VecQ u = sample(), v = sample();
        Rat ku = klein(u, d, s.cone);
        Rat kv = klein(v, d, s.cone);
        CHECK(klein_value(kf, u) == ku);
        CHECK(klein_value(kf, v) == kv);
        CHECK(klein(vec_scale(Rat(3), u), d, s.cone) == Rat(3) * ku);
        CHECK(klein(vec_add(u, v), d, s.cone) >= ku + kv);
      }
    }
  }
}

TEST_CASE("klein grows with the enumeration radius") {
  Setup s("abelian A = a; abelian B = b; amalg a^5 = b^7", "[a^2,b^3]", 0);
  DiscVectorSet small;
  small.factor = 0;
  small.bound = 2;
  // Restrict by hand to the sub-hull without the winding discs.
  DiscVectorSet full = enumerate_disc_vectors(s.cone, s.gamma, 2);
  for (const VecZ& v : full.vectors) {
    Int mass = 0;
    for (int c = 0; c < s.cone.num_sigma; ++c) mass += v[c];
    if (mass <= 2) small.vectors.push_back(v);
  }
  REQUIRE(small.vectors.size() < full.vectors.size());
  std::vector<VecZ> rays = extremal_rays(s.cone);
  for (const VecZ& r : rays) {
    VecQ v = to_q(r);
    CHECK(klein(v, small, s.cone) <= klein(v, full, s.cone));
  }
}
