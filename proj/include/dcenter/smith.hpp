#pragma once

// Smith-form diagonalization over Z/N and its two consumers: solving linear
// systems A x = b (mod N) for non-prime N, and invariant factors of finite
// abelian groups.
//
// All row and column operations are unimodular 2x2 transforms built from the
// extended gcd, so they are invertible over Z and therefore over Z/N.
// Entries are kept reduced mod N throughout; nothing grows.

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "dcenter/error.hpp"
#include "dcenter/modular.hpp"

namespace dcenter {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct ModDiagonalForm {
  std::int64_t modulus = 0;
  std::vector<std::int64_t> diagonal;  // d_0..d_{r-1}, nonzero mod N
  IntMatrix column_transform;          // V with U A V = D (only if tracked)
};

namespace detail {

// Row operation on rows r1, r2 of M: (r1, r2) <- (s r1 + t r2, u r1 + v r2).
inline void combine_rows(IntMatrix& M, std::size_t r1, std::size_t r2, std::int64_t s, std::int64_t t, std::int64_t u,
                         std::int64_t v, std::int64_t N) {
  auto& a = M[r1];
  auto& b = M[r2];
  for (std::size_t j = 0; j < a.size(); ++j) {
    std::int64_t x = a[j], y = b[j];
    if (x == 0 && y == 0) continue;
    a[j] = modular::reduce(static_cast<std::int64_t>((static_cast<__int128>(s) * x + static_cast<__int128>(t) * y) % N), N);
    b[j] = modular::reduce(static_cast<std::int64_t>((static_cast<__int128>(u) * x + static_cast<__int128>(v) * y) % N), N);
  }
}

inline void combine_cols(IntMatrix& M, std::size_t c1, std::size_t c2, std::int64_t s, std::int64_t t, std::int64_t u,
                         std::int64_t v, std::int64_t N, std::size_t row_begin = 0) {
  for (std::size_t i = row_begin; i < M.size(); ++i) {
    std::int64_t x = M[i][c1], y = M[i][c2];
    if (x == 0 && y == 0) continue;
    M[i][c1] = modular::reduce(static_cast<std::int64_t>((static_cast<__int128>(s) * x + static_cast<__int128>(t) * y) % N), N);
    M[i][c2] = modular::reduce(static_cast<std::int64_t>((static_cast<__int128>(u) * x + static_cast<__int128>(v) * y) % N), N);
  }
}

// Diagonalizes A in place. Row operations are mirrored onto `rhs` (if
// non-null); column operations onto `V` (if non-null, must start as I).
inline std::vector<std::int64_t> diagonalize(IntMatrix& A, std::int64_t N, std::vector<IntMatrix*> row_followers,
                                             IntMatrix* V) {
  const std::size_t rows = A.size();
  const std::size_t cols = rows ? A[0].size() : 0;
  for (auto& r : A)
    for (auto& x : r) x = modular::reduce(x, N);
  std::vector<std::int64_t> diag;
  std::size_t t = 0;
  for (; t < rows && t < cols; ++t) {
    // pivot: smallest nonzero representative in the remaining block
    std::size_t pi = rows, pj = cols;
    std::int64_t best = 0;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        std::int64_t v = A[i][j];
        if (v != 0 && (best == 0 || std::gcd(v, N) < best)) {
          best = std::gcd(v, N);
          pi = i;
          pj = j;
          if (best == 1) goto found;
        }
      }
    if (pi == rows) break;
  found:
    if (pi != t) {
      std::swap(A[pi], A[t]);
      for (auto* f : row_followers) std::swap((*f)[pi], (*f)[t]);
    }
    if (pj != t) {
      for (auto& r : A) std::swap(r[pj], r[t]);
      if (V)
        for (auto& r : *V) std::swap(r[pj], r[t]);
    }
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        std::int64_t b = A[i][t];
        if (b == 0) continue;
        std::int64_t a = A[t][t];
        if (b % a == 0) {
          combine_rows(A, t, i, 1, 0, -(b / a), 1, N);
          for (auto* f : row_followers) combine_rows(*f, t, i, 1, 0, -(b / a), 1, N);
          continue;
        }
        std::int64_t s, u;
        std::int64_t g = modular::ext_gcd(a, b, s, u);
        // [s u; -b/g a/g] has determinant 1 and strictly lowers the pivot.
        combine_rows(A, t, i, s, u, -b / g, a / g, N);
        for (auto* f : row_followers) combine_rows(*f, t, i, s, u, -b / g, a / g, N);
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        std::int64_t b = A[t][j];
        if (b == 0) continue;
        std::int64_t a = A[t][t];
        if (b % a == 0) {
          combine_cols(A, t, j, 1, 0, -(b / a), 1, N, t);
          if (V) combine_cols(*V, t, j, 1, 0, -(b / a), 1, N);
          continue;
        }
        std::int64_t s, u;
        std::int64_t g = modular::ext_gcd(a, b, s, u);
        combine_cols(A, t, j, s, u, -b / g, a / g, N, t);
        if (V) combine_cols(*V, t, j, s, u, -b / g, a / g, N);
        dirty = true;
      }
      if (dirty) {
        dirty = false;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (A[i][t] != 0) dirty = true;
      }
    }
    if (A[t][t] == 0) break;
    diag.push_back(A[t][t]);
  }
  return diag;
}

}  // namespace detail

// Diagonal form of A over Z/N (A is copied).
inline ModDiagonalForm smith_form_mod(IntMatrix A, std::int64_t N, bool track_columns = false) {
  if (N <= 0) throw InputError("modulus must be positive");
  ModDiagonalForm out;
  out.modulus = N;
  const std::size_t cols = A.empty() ? 0 : A[0].size();
  if (track_columns) {
    out.column_transform.assign(cols, std::vector<std::int64_t>(cols, 0));
    for (std::size_t i = 0; i < cols; ++i) out.column_transform[i][i] = 1 % N;
  }
  out.diagonal = detail::diagonalize(A, N, {}, track_columns ? &out.column_transform : nullptr);
  return out;
}

// Solves A x = b (mod N). Returns nullopt iff no solution exists.
inline std::optional<std::vector<std::int64_t>> solve_mod(IntMatrix A, std::vector<std::int64_t> b, std::int64_t N) {
  if (N <= 0) throw InputError("modulus must be positive");
  const std::size_t rows = A.size();
  if (b.size() != rows) throw InputError("right-hand side length mismatch");
  const std::size_t cols = rows ? A[0].size() : 0;
  if (N == 1) return std::vector<std::int64_t>(cols, 0);
  IntMatrix rhs(rows, std::vector<std::int64_t>(1));
  for (std::size_t i = 0; i < rows; ++i) rhs[i][0] = modular::reduce(b[i], N);
  IntMatrix V(cols, std::vector<std::int64_t>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) V[i][i] = 1;
  auto diag = detail::diagonalize(A, N, {&rhs}, &V);
  std::vector<std::int64_t> y(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::int64_t c = rhs[i][0];
    if (i >= diag.size()) {
      if (c != 0) return std::nullopt;
      continue;
    }
    const std::int64_t d = diag[i];
    const std::int64_t g = std::gcd(d, N);
    if (c % g != 0) return std::nullopt;
    const std::int64_t n2 = N / g;
    std::int64_t s, u;
    modular::ext_gcd(d / g, n2, s, u);
    y[i] = modular::reduce(static_cast<std::int64_t>(static_cast<__int128>(c / g) * s % n2), n2);
  }
  std::vector<std::int64_t> x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i) {
    __int128 acc = 0;
    for (std::size_t j = 0; j < cols; ++j) acc += static_cast<__int128>(V[i][j]) * y[j];
    x[i] = modular::reduce(static_cast<std::int64_t>(acc % N), N);
  }
  return x;
}

// Brings a list of cyclic orders into invariant-factor form
// d_1 | d_2 | ... with trivial factors dropped.
inline std::vector<std::int64_t> invariant_factors(std::vector<std::int64_t> d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      std::int64_t g = std::gcd(d[i], d[j]);
      std::int64_t l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  std::vector<std::int64_t> out;
  for (auto x : d)
    if (x > 1) out.push_back(x);
  return out;
}

}  // namespace dcenter
