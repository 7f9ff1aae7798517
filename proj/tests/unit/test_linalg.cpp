#include "scl/linalg.hpp"

#include <random>

#include "doctest.h"

using namespace scl;

namespace {

MatQ make(int rows, int cols, std::initializer_list<int> vals) {
  MatQ m(rows, cols);
  auto it = vals.begin();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = Rat(*it++);
  return m;
}

}  // namespace

TEST_CASE("rref rank") {
  MatQ m = make(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK(rank(m) == 2);
  MatQ id = MatQ::identity(4);
  CHECK(rank(id) == 4);
  MatQ z(2, 5);
  CHECK(rank(z) == 0);
}

TEST_CASE("rref canonical form") {
  MatQ m = make(2, 3, {2, 4, 6, 1, 2, 4});
  std::vector<int> pivots;
  int r = rref(m, &pivots);
  CHECK(r == 2);
  CHECK(pivots == std::vector<int>{0, 2});
  CHECK(m.at(0, 0) == 1);
  CHECK(m.at(0, 1) == 2);
  CHECK(m.at(0, 2) == 0);
  CHECK(m.at(1, 2) == 1);
}

TEST_CASE("nullspace membership and dimension") {
  MatQ m = make(2, 4, {1, 2, 0, 1, 0, 0, 1, 3});
  auto basis = nullspace(m);
  CHECK(basis.size() == 2);
  for (const VecQ& v : basis) {
    VecQ img = mat_vec(m, v);
    CHECK(is_zero(img));
  }
  // The basis vectors are linearly independent by construction (one per free
  // column, with a 1 in that column and 0 in the other free columns).
}

TEST_CASE("solve consistent and inconsistent") {
  MatQ m = make(2, 2, {1, 1, 1, -1});
  auto x = solve(m, {Rat(3), Rat(1)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 1);

  MatQ s = make(2, 2, {1, 2, 2, 4});
  CHECK(!solve(s, {Rat(1), Rat(3)}).has_value());
  CHECK(solve(s, {Rat(1), Rat(2)}).has_value());
}

TEST_CASE("solve_integer diagonal and dense") {
  MatZ d(2, 2);
  d.at(0, 0) = 2;
  d.at(1, 1) = 3;
  auto x = solve_integer(d, {Int(4), Int(9)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 3);
  CHECK(!solve_integer(d, {Int(3), Int(9)}).has_value());

  // det = -2: [1,1] has the integral preimage (-1,1), [1,0] does not.
  MatZ m(2, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 3;
  m.at(1, 1) = 4;
  auto y = solve_integer(m, {Int(1), Int(1)});
  REQUIRE(y.has_value());
  CHECK((*y)[0] == -1);
  CHECK((*y)[1] == 1);
  CHECK(!solve_integer(m, {Int(1), Int(0)}).has_value());
}

TEST_CASE("solve_integer underdetermined") {
  // x + 2y = 5 has integral solutions.
  MatZ m(1, 2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  auto x = solve_integer(m, {Int(5)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] + 2 * (*x)[1] == 5);

  // 2x + 4y = 5 does not.
  MatZ n(1, 2);
  n.at(0, 0) = 2;
  n.at(0, 1) = 4;
  CHECK(!solve_integer(n, {Int(5)}).has_value());
}

TEST_CASE("solve_integer randomized against rational solve") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    int rows = 2 + trial % 3;
    int cols = 2 + (trial / 3) % 3;
    MatZ m(rows, cols);
    MatQ mq(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        int e = entry(rng);
        m.at(i, j) = e;
        mq.at(i, j) = e;
      }
    // Plant an integral solution so the system is consistent.
    VecZ planted(cols);
    for (int j = 0; j < cols; ++j) planted[j] = entry(rng);
    VecZ b(rows, Int(0));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) b[i] += m.at(i, j) * planted[j];
    auto x = solve_integer(m, b);
    REQUIRE(x.has_value());
    for (int i = 0; i < rows; ++i) {
      Int lhs = 0;
      for (int j = 0; j < cols; ++j) lhs += m.at(i, j) * (*x)[j];
      CHECK(lhs == b[i]);
    }
  }
}

TEST_CASE("primitive scaling") {
  VecQ v{Rat(1, 2), Rat(1, 3)};
  VecZ p = primitive(v);
  CHECK(p[0] == 3);
  CHECK(p[1] == 2);

  VecQ w{Rat(2, 4), Rat(4, 4)};
  VecZ q = primitive(w);
  CHECK(q[0] == 1);
  CHECK(q[1] == 2);

  VecQ neg{Rat(-6), Rat(9)};
  VecZ r = primitive(neg);
  CHECK(r[0] == -2);
  CHECK(r[1] == 3);
}
