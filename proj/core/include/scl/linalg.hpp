#pragma once

#include <optional>
#include <vector>

#include "scl/rational.hpp"

namespace scl {

using VecQ = std::vector<Rat>;
using VecZ = std::vector<Int>;

struct MatQ {
  int rows = 0;
  int cols = 0;
  std::vector<Rat> data;  // row-major

  MatQ() = default;
  MatQ(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

  Rat& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
  const Rat& at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

  static MatQ identity(int n);
};

struct MatZ {
  int rows = 0;
  int cols = 0;
  std::vector<Int> data;

  MatZ() = default;
  MatZ(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

  Int& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }
};

MatQ transpose(const MatQ& m);
VecQ mat_vec(const MatQ& m, const VecQ& x);
VecQ vec_add(const VecQ& a, const VecQ& b);
VecQ vec_sub(const VecQ& a, const VecQ& b);
VecQ vec_scale(const Rat& s, const VecQ& a);
Rat dot(const VecQ& a, const VecQ& b);
bool is_zero(const VecQ& a);
bool is_zero(const VecZ& a);

// In-place reduced row echelon form. Returns the rank; pivot column indices are
// appended to *pivots when given.
int rref(MatQ& m, std::vector<int>* pivots = nullptr);

int rank(MatQ m);

// Basis of { x : Mx = 0 }.
std::vector<VecQ> nullspace(const MatQ& m);

// One solution of Mx = b, or nullopt when inconsistent.
std::optional<VecQ> solve(const MatQ& m, const VecQ& b);

// One integral solution of Mx = b over Z, or nullopt when none exists.
// Column-operation Hermite reduction: tracks U with M·U = H triangular.
std::optional<VecZ> solve_integer(const MatZ& m, const VecZ& b);

// Primitive integer vector on the same ray: clears denominators, divides by the
// content, and leaves the zero vector unchanged.
VecZ primitive(const VecQ& v);

}  // namespace scl
