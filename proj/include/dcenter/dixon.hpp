#pragma once

// Character degrees of a finite group by Dixon's method: common eigenvectors
// of the class-multiplication matrices over a prime field F_p with
// p = 1 (mod exponent) and p > 2 sqrt(|G|). Everything is exact mod p.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "dcenter/error.hpp"
#include "dcenter/group.hpp"
#include "dcenter/modular.hpp"

namespace dcenter::dixon {

using Vec = std::vector<std::uint64_t>;
using Mat = std::vector<Vec>;

// Smallest prime p = 1 (mod exponent) with p > 2 sqrt(order).
inline std::uint64_t choose_prime(std::uint64_t order, std::uint64_t exponent) {
  const auto bound = static_cast<std::uint64_t>(2.0 * std::sqrt(static_cast<double>(order)));
  for (std::uint64_t p = exponent + 1; p < (1ull << 31); p += exponent)
    if (p > bound && modular::is_prime(p)) return p;
  throw ComputationError("no suitable prime below 2^31 for Dixon's method");
}

// Row-reduces `rows` in place mod p; returns pivot columns.
inline std::vector<std::size_t> rref(Mat& rows, std::uint64_t p) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const std::uint64_t inv = modular::inv_mod(rows[r][c], p);
    for (auto& x : rows[r]) x = modular::mul_mod(x, inv, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::uint64_t f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        rows[i][j] = (rows[i][j] + p - modular::mul_mod(f, rows[r][j], p)) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

// Basis of {x : A x = 0}.
inline Mat nullspace(Mat A, std::uint64_t p) {
  const std::size_t n = A.empty() ? 0 : A[0].size();
  auto pivots = rref(A, p);
  std::vector<char> is_pivot(n, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  Mat basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec v(n, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (p - A[i][f]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Vec apply(const Mat& A, const Vec& v, std::uint64_t p) {
  Vec out(A.size(), 0);
  for (std::size_t i = 0; i < A.size(); ++i) {
    unsigned __int128 acc = 0;
    for (std::size_t j = 0; j < v.size(); ++j) acc += static_cast<unsigned __int128>(A[i][j]) * v[j];
    out[i] = static_cast<std::uint64_t>(acc % p);
  }
  return out;
}

// Distinct eigenvalues of a diagonalizable d x d matrix whose spectrum lies
// in F_p, via the minimal polynomial of Krylov sequences.
inline std::vector<std::uint64_t> eigenvalues(const Mat& A, std::uint64_t p, std::mt19937_64& rng) {
  const std::size_t d = A.size();
  std::uniform_int_distribution<std::uint64_t> pick(0, p - 1);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec v(d);
    for (auto& x : v) x = pick(rng);
    if (std::all_of(v.begin(), v.end(), [](std::uint64_t x) { return x == 0; })) continue;
    // Krylov vectors as columns of [v, Av, A^2 v, ...]; find first dependency.
    Mat krylov{v};
    Vec coeffs;
    for (std::size_t k = 1; k <= d; ++k) {
      krylov.push_back(apply(A, krylov.back(), p));
      // Solve sum_{i<k} c_i A^i v = A^k v.
      Mat sys(d, Vec(k + 1));
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t i = 0; i < k; ++i) sys[r][i] = krylov[i][r];
        sys[r][k] = krylov[k][r];
      }
      auto pivots = rref(sys, p);
      if (!pivots.empty() && pivots.back() == k) continue;  // inconsistent: independent
      coeffs.assign(k + 1, 0);
      for (std::size_t i = 0; i < pivots.size(); ++i) coeffs[pivots[i]] = sys[i][k];
      coeffs[k] = 1;
      break;
    }
    // minimal polynomial x^k - sum c_i x^i; roots in F_p.
    const std::size_t k = coeffs.size() - 1;
    std::vector<std::uint64_t> roots;
    for (std::uint64_t x = 0; x < p; ++x) {
      std::uint64_t val = 1;
      for (std::size_t i = k; i-- > 0;) val = (modular::mul_mod(val, x, p) + p - coeffs[i]) % p;
      if (val == 0) roots.push_back(x);
    }
    if (roots.size() == k) return roots;  // split with simple roots
  }
  throw ComputationError("eigenvalue search failed in Dixon's method");
}

struct CharacterDegreeData {
  std::uint64_t prime = 0;
  ConjugacyClassData classes;
  // central_scalar[i][c]: the scalar by which the class sum of class c acts in
  // irreducible i (omega_i(c) = |C| chi_i(g_c) / chi_i(1)), mod prime.
  std::vector<Vec> central_scalar;
  std::vector<std::size_t> degrees;
};

inline CharacterDegreeData character_degrees(const FiniteGroup& G) {
  CharacterDegreeData out;
  out.classes = conjugacy_classes(G);
  const auto& cls = out.classes;
  const std::size_t r = cls.count();
  const std::uint64_t order = G.order();
  const std::uint64_t p = choose_prime(order, G.exponent());
  out.prime = p;
  const std::size_t e_cls = cls.class_of[G.identity()];

  // Structure constants c[j][k][l] = #{x in C_j : x^-1 g_l in C_k}.
  std::vector<Mat> M(r, Mat(r, Vec(r, 0)));
  for (std::size_t l = 0; l < r; ++l) {
    const elem_t gl = cls.representatives[l];
    for (elem_t x = 0; x < G.order(); ++x) {
      const std::size_t j = cls.class_of[x];
      const std::size_t k = cls.class_of[G.mul(G.inv(x), gl)];
      M[j][k][l] += 1;
    }
  }
  for (auto& m : M)
    for (auto& row : m)
      for (auto& x : row) x %= p;

  std::mt19937_64 rng(0xd1c0);
  // Subspaces as RREF row bases of F_p^r.
  std::vector<Mat> spaces;
  {
    Mat I(r, Vec(r, 0));
    for (std::size_t i = 0; i < r; ++i) I[i][i] = 1;
    spaces.push_back(std::move(I));
  }
  for (std::size_t j = 0; j < r && spaces.size() < r; ++j) {
    if (j == e_cls) continue;
    std::vector<Mat> next;
    for (auto& S : spaces) {
      const std::size_t d = S.size();
      if (d == 1) {
        next.push_back(std::move(S));
        continue;
      }
      auto pivots = rref(S, p);
      // Restricted action: column c of A holds coordinates of M_j b_c.
      Mat A(d, Vec(d, 0));
      std::vector<Vec> images(d);
      for (std::size_t c = 0; c < d; ++c) {
        images[c] = apply(M[j], S[c], p);
        for (std::size_t i = 0; i < d; ++i) A[i][c] = images[c][pivots[i]];
      }
      // A random Krylov vector can miss eigenvalues; retry until the
      // eigenspaces fill the subspace.
      std::vector<Mat> pieces;
      for (int attempt = 0; attempt < 64; ++attempt) {
        pieces.clear();
        std::size_t total = 0;
        for (auto lambda : eigenvalues(A, p, rng)) {
          Mat shifted = A;
          for (std::size_t i = 0; i < d; ++i) shifted[i][i] = (shifted[i][i] + p - lambda) % p;
          Mat ker = nullspace(shifted, p);
          total += ker.size();
          Mat sub;
          for (const auto& coeff : ker) {
            Vec w(r, 0);
            for (std::size_t c = 0; c < d; ++c)
              for (std::size_t t = 0; t < r; ++t) w[t] = (w[t] + modular::mul_mod(coeff[c], S[c][t], p)) % p;
            sub.push_back(std::move(w));
          }
          rref(sub, p);
          pieces.push_back(std::move(sub));
        }
        if (total == d) break;
        if (total > d) throw ComputationError("internal: eigenspaces exceed subspace dimension");
        pieces.clear();
      }
      if (pieces.empty()) throw ComputationError("class matrix not diagonalizable over F_p");
      for (auto& piece : pieces) next.push_back(std::move(piece));
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r) throw ComputationError("Dixon splitting did not reach one-dimensional eigenspaces");

  // inverse class map
  std::vector<std::size_t> inv_class(r);
  for (std::size_t c = 0; c < r; ++c) inv_class[c] = cls.class_of[G.inv(cls.representatives[c])];

  const auto max_degree = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(order)) + 1);
  for (auto& S : spaces) {
    Vec w = S[0];
    if (w[e_cls] == 0) throw ComputationError("eigenvector vanishes on the identity class");
    const std::uint64_t inv = modular::inv_mod(w[e_cls], p);
    for (auto& x : w) x = modular::mul_mod(x, inv, p);
    // sum_c omega(c) omega(c*) / |C_c| = |G| / chi(1)^2
    std::uint64_t s = 0;
    for (std::size_t c = 0; c < r; ++c) {
      std::uint64_t term = modular::mul_mod(w[c], w[inv_class[c]], p);
      term = modular::mul_mod(term, modular::inv_mod(cls.class_sizes[c] % p, p), p);
      s = (s + term) % p;
    }
    const std::uint64_t d2 = modular::mul_mod(order % p, modular::inv_mod(s, p), p);
    std::size_t degree = 0;
    for (std::uint64_t d = 1; d <= max_degree; ++d)
      if (d * d % p == d2) {
        degree = d;
        break;
      }
    if (degree == 0) throw ComputationError("character degree lift failed");
    out.degrees.push_back(degree);
    out.central_scalar.push_back(std::move(w));
  }
  std::uint64_t sum = 0;
  for (auto d : out.degrees) sum += d * d;
  if (sum != order) throw ComputationError("character degrees do not satisfy sum d^2 = |G|");
  return out;
}

}  // namespace dcenter::dixon
