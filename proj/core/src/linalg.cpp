#include "scl/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace scl {

MatQ MatQ::identity(int n) {
  MatQ m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

MatQ transpose(const MatQ& m) {
  MatQ t(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

VecQ mat_vec(const MatQ& m, const VecQ& x) {
  if (static_cast<int>(x.size()) != m.cols) throw std::invalid_argument("mat_vec: size mismatch");
  VecQ y(m.rows);
  for (int i = 0; i < m.rows; ++i) {
    Rat s = 0;
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0) s += m.at(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

VecQ vec_add(const VecQ& a, const VecQ& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_add: size mismatch");
  VecQ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

VecQ vec_sub(const VecQ& a, const VecQ& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vec_sub: size mismatch");
  VecQ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

VecQ vec_scale(const Rat& s, const VecQ& a) {
  VecQ r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

Rat dot(const VecQ& a, const VecQ& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  return s;
}

bool is_zero(const VecQ& a) {
  for (const Rat& x : a)
    if (x != 0) return false;
  return true;
}

bool is_zero(const VecZ& a) {
  return std::all_of(a.begin(), a.end(), [](const Int& x) { return x == 0; });
}

int rref(MatQ& m, std::vector<int>* pivots) {
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = m.at(r, c);
    for (int j = c; j < m.cols; ++j) m.at(r, j) /= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

int rank(MatQ m) { return rref(m); }

std::vector<VecQ> nullspace(const MatQ& m) {
  MatQ w = m;
  std::vector<int> pivots;
  rref(w, &pivots);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<VecQ> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    VecQ v(m.cols, Rat(0));
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -w.at(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<VecQ> solve(const MatQ& m, const VecQ& b) {
  if (static_cast<int>(b.size()) != m.rows) throw std::invalid_argument("solve: size mismatch");
  MatQ aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  std::vector<int> pivots;
  rref(aug, &pivots);
  for (int c : pivots)
    if (c == m.cols) return std::nullopt;
  VecQ x(m.cols, Rat(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), m.cols);
  return x;
}

std::optional<VecZ> solve_integer(const MatZ& m, const VecZ& b) {
  if (static_cast<int>(b.size()) != m.rows)
    throw std::invalid_argument("solve_integer: size mismatch");
  MatZ h = m;
  MatZ u(m.cols, m.cols);
  for (int i = 0; i < m.cols; ++i) u.at(i, i) = 1;

  auto col_swap = [&](MatZ& a, int c1, int c2) {
    for (int i = 0; i < a.rows; ++i) std::swap(a.at(i, c1), a.at(i, c2));
  };
  auto col_axpy = [&](MatZ& a, const Int& f, int src, int dst) {
    for (int i = 0; i < a.rows; ++i) a.at(i, dst) -= f * a.at(i, src);
  };
  auto col_neg = [&](MatZ& a, int c) {
    for (int i = 0; i < a.rows; ++i) a.at(i, c) = -a.at(i, c);
  };

  int lead = 0;
  for (int row = 0; row < h.rows && lead < h.cols; ++row) {
    // Euclidean elimination across columns lead..end on this row.
    while (true) {
      int nz = -1;
      for (int c = lead; c < h.cols; ++c)
        if (h.at(row, c) != 0) {
          nz = (nz < 0 || abs(h.at(row, c)) < abs(h.at(row, nz))) ? c : nz;
        }
      if (nz < 0) break;
      if (nz != lead) {
        col_swap(h, lead, nz);
        col_swap(u, lead, nz);
      }
      if (h.at(row, lead) < 0) {
        col_neg(h, lead);
        col_neg(u, lead);
      }
      bool cleared = true;
      for (int c = lead + 1; c < h.cols; ++c) {
        if (h.at(row, c) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), h.at(row, c).get_mpz_t(), h.at(row, lead).get_mpz_t());
        col_axpy(h, q, lead, c);
        col_axpy(u, q, lead, c);
        if (h.at(row, c) != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (h.at(row, lead) != 0) ++lead;
  }

  // Forward solve H y = b; H is lower "echelon" by columns.
  VecZ y(h.cols, Int(0));
  int col = 0;
  for (int row = 0; row < h.rows; ++row) {
    Int acc = b[row];
    for (int c = 0; c < col; ++c) acc -= h.at(row, c) * y[c];
    if (col < h.cols && h.at(row, col) != 0) {
      Int q, r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(), h.at(row, col).get_mpz_t());
      if (r != 0) return std::nullopt;
      y[col] = q;
      ++col;
    } else if (acc != 0) {
      return std::nullopt;
    }
  }
  VecZ x(m.cols, Int(0));
  for (int i = 0; i < m.cols; ++i) {
    Int s = 0;
    for (int c = 0; c < h.cols; ++c) s += u.at(i, c) * y[c];
    x[i] = s;
  }
  return x;
}

VecZ primitive(const VecQ& v) {
  Int den = 1;
  for (const Rat& x : v) den = int_lcm(den, x.get_den());
  Int content = 0;
  VecZ out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    Rat scaled = v[i] * Rat(den);
    scaled.canonicalize();
    out[i] = scaled.get_num();
    content = int_gcd(content, out[i]);
  }
  if (content == 0) return out;
  for (Int& x : out) x /= content;
  return out;
}

}  // namespace scl
