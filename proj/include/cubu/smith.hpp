// Integer linear algebra: Smith and Hermite normal forms, integer kernels.
#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <utility>
#include <vector>

#include "signed_perm.hpp"

namespace cubu {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow");
  return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow");
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error("integer overflow");
  return r;
}
/// a + k*b
inline std::int64_t axpy(std::int64_t a, std::int64_t k, std::int64_t b) { return add(a, mul(k, b)); }

}  // namespace checked

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix transpose(const IntMatrix& a, std::size_t cols) {
  IntMatrix t(cols, std::vector<std::int64_t>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
  return t;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t inner = b.size(), cols = b.empty() ? 0 : b[0].size();
  IntMatrix out(a.size(), std::vector<std::int64_t>(cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < cols; ++j) out[i][j] = checked::axpy(out[i][j], a[i][k], b[k][j]);
  return out;
}

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... .
struct SmithForm {
  IntMatrix D, U, V;
  std::vector<std::int64_t> diagonal;  // min(rows, cols) entries, zeros last
  int rank = 0;
};

inline SmithForm smith_normal_form(const IntMatrix& A, std::size_t cols) {
  const std::size_t m = A.size(), n = cols;
  SmithForm s{A, identity_matrix(m), identity_matrix(n), {}, 0};
  IntMatrix& D = s.D;
  auto row_op = [&](std::size_t dst, std::int64_t k, std::size_t src) {  // row dst += k row src
    for (std::size_t j = 0; j < n; ++j) D[dst][j] = checked::axpy(D[dst][j], k, D[src][j]);
    for (std::size_t j = 0; j < m; ++j) s.U[dst][j] = checked::axpy(s.U[dst][j], k, s.U[src][j]);
  };
  auto col_op = [&](std::size_t dst, std::int64_t k, std::size_t src) {  // col dst += k col src
    for (std::size_t i = 0; i < m; ++i) D[i][dst] = checked::axpy(D[i][dst], k, D[i][src]);
    for (std::size_t i = 0; i < n; ++i) s.V[i][dst] = checked::axpy(s.V[i][dst], k, s.V[i][src]);
  };
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    std::swap(D[a], D[b]);
    std::swap(s.U[a], s.U[b]);
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    for (auto& r : D) std::swap(r[a], r[b]);
    for (auto& r : s.V) std::swap(r[a], r[b]);
  };
  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      // Smallest nonzero entry of the remaining block becomes the pivot.
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (D[i][j] != 0 && (pi == m || std::llabs(D[i][j]) < std::llabs(D[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == m) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i)
        if (D[i][t]) {
          row_op(i, -(D[i][t] / D[t][t]), t);
          clean &= D[i][t] == 0;
        }
      for (std::size_t j = t + 1; j < n; ++j)
        if (D[t][j]) {
          col_op(j, -(D[t][j] / D[t][t]), t);
          clean &= D[t][j] == 0;
        }
      if (!clean) continue;
      // The pivot must divide the rest of the block.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D[i][j] % D[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      row_op(t, 1, bad);
    }
    if (D[t][t] < 0) {
      for (std::size_t j = 0; j < n; ++j) D[t][j] = -D[t][j];
      for (std::size_t j = 0; j < m; ++j) s.U[t][j] = -s.U[t][j];
    }
  }
  for (std::size_t t = 0; t < steps; ++t) {
    s.diagonal.push_back(D[t][t]);
    if (D[t][t] != 0) ++s.rank;
  }
  return s;
}

/// Integer basis of {x : A x = 0}, as vectors.
inline std::vector<std::vector<std::int64_t>> kernel_basis(const IntMatrix& A, std::size_t cols) {
  const SmithForm s = smith_normal_form(A, cols);
  std::vector<std::vector<std::int64_t>> out;
  for (std::size_t j = static_cast<std::size_t>(s.rank); j < cols; ++j) {
    std::vector<std::int64_t> v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = s.V[i][j];
    out.push_back(std::move(v));
  }
  return out;
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: echelon,
/// positive pivots, entries above each pivot reduced into [0, pivot).
inline IntMatrix hermite_basis(IntMatrix rows, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    while (true) {
      std::size_t piv = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (piv == rows.size() || std::llabs(rows[i][c]) < std::llabs(rows[piv][c]))) piv = i;
      if (piv == rows.size()) break;
      std::swap(rows[r], rows[piv]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        const std::int64_t q = rows[i][c] / rows[r][c];
        for (std::size_t j = 0; j < cols; ++j) rows[i][j] = checked::axpy(rows[i][j], -q, rows[r][j]);
        done &= rows[i][c] == 0;
      }
      if (done) break;
    }
    if (r < rows.size() && rows[r][c] != 0) {
      if (rows[r][c] < 0)
        for (auto& x : rows[r]) x = -x;
      for (std::size_t i = 0; i < r; ++i) {
        std::int64_t q = rows[i][c] / rows[r][c];
        if (rows[i][c] - q * rows[r][c] < 0) --q;
        for (std::size_t j = 0; j < cols; ++j) rows[i][j] = checked::axpy(rows[i][j], -q, rows[r][j]);
      }
      ++r;
    }
  }
  rows.resize(r);
  return rows;
}

/// Membership of v in the lattice with Hermite basis `hnf`.
inline bool in_lattice(const IntMatrix& hnf, std::vector<std::int64_t> v) {
  for (const auto& row : hnf) {
    std::size_t c = 0;
    while (row[c] == 0) ++c;
    for (std::size_t j = 0; j < c; ++j)
      if (v[j] != 0) return false;
    if (v[c] % row[c] != 0) return false;
    const std::int64_t q = v[c] / row[c];
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = checked::axpy(v[j], -q, row[j]);
  }
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace cubu
