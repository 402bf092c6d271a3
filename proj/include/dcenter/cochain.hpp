#pragma once

// Normalized group cochains G^k -> Z/N with trivial action, written
// additively: Z/N stands for the N-th roots of unity, residue 1 for a fixed
// primitive root. Storage is dense over G^k.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "dcenter/error.hpp"
#include "dcenter/group.hpp"
#include "dcenter/modular.hpp"
#include "dcenter/smith.hpp"

namespace dcenter {

inline constexpr std::size_t kMaxDegree = 3;
inline constexpr std::size_t kMaxOrderLowDegree = 512;  // degrees 0..2
inline constexpr std::size_t kMaxOrderDegree3 = 128;

class Cochain {
 public:
  using Tuple = std::vector<elem_t>;

  Cochain(FiniteGroup G, std::size_t degree, std::int64_t modulus) : G_(std::move(G)), k_(degree), N_(modulus) {
    check_shape(G_, k_, N_);
    values_.assign(tuple_count(G_.order(), k_), 0);
  }

  // Values indexed row-major over G^k. Reduces mod N and rejects
  // non-normalized input.
  static Cochain from_dense(FiniteGroup G, std::size_t degree, std::int64_t modulus, std::vector<std::int64_t> values) {
    Cochain c(std::move(G), degree, modulus);
    if (values.size() != c.values_.size()) throw InputError("cochain value count does not match |G|^k");
    for (auto& v : values) v = modular::reduce(v, modulus);
    c.values_ = std::move(values);
    if (auto bad = c.first_unnormalized())
      throw InputError("cochain is not normalized: nonzero value at " + format_tuple(*bad));
    return c;
  }

  static Cochain from_function(FiniteGroup G, std::size_t degree, std::int64_t modulus,
                               const std::function<std::int64_t(std::span<const elem_t>)>& f) {
    Cochain c(std::move(G), degree, modulus);
    Tuple t(degree, 0);
    for (std::size_t idx = 0; idx < c.values_.size(); ++idx) {
      c.decode(idx, t);
      c.values_[idx] = modular::reduce(f(t), modulus);
    }
    if (auto bad = c.first_unnormalized())
      throw InputError("cochain is not normalized: nonzero value at " + format_tuple(*bad));
    return c;
  }

  const FiniteGroup& group() const noexcept { return G_; }
  std::size_t degree() const noexcept { return k_; }
  std::int64_t modulus() const noexcept { return N_; }
  const std::vector<std::int64_t>& dense() const noexcept { return values_; }

  std::int64_t at(std::span<const elem_t> t) const { return values_[encode(t)]; }
  std::int64_t operator()() const { return values_[0]; }
  std::int64_t operator()(elem_t a) const { return values_[a]; }
  std::int64_t operator()(elem_t a, elem_t b) const { return values_[std::size_t(a) * G_.order() + b]; }
  std::int64_t operator()(elem_t a, elem_t b, elem_t c) const {
    const std::size_t n = G_.order();
    return values_[(std::size_t(a) * n + b) * n + c];
  }

  bool is_zero() const noexcept {
    for (auto v : values_)
      if (v) return false;
    return true;
  }

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.k_ == b.k_ && a.N_ == b.N_ && a.G_.same_as(b.G_) && a.values_ == b.values_;
  }

  Cochain operator+(const Cochain& o) const { return combine(o, 1); }
  Cochain operator-(const Cochain& o) const { return combine(o, -1); }

  void decode(std::size_t idx, Tuple& t) const {
    const std::size_t n = G_.order();
    t.resize(k_);
    for (std::size_t i = k_; i-- > 0;) {
      t[i] = static_cast<elem_t>(idx % n);
      idx /= n;
    }
  }

  std::size_t encode(std::span<const elem_t> t) const {
    std::size_t idx = 0;
    for (elem_t x : t) idx = idx * G_.order() + x;
    return idx;
  }

  static std::string format_tuple(std::span<const elem_t> t) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
    os << ")";
    return os.str();
  }

  static std::size_t tuple_count(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r *= n;
    return r;
  }

 private:
  static void check_shape(const FiniteGroup& G, std::size_t k, std::int64_t N) {
    if (k > kMaxDegree) throw InputError("cochain degree " + std::to_string(k) + " out of range 0..3");
    if (N <= 0) throw InputError("modulus must be positive");
    const std::size_t cap = k == 3 ? kMaxOrderDegree3 : kMaxOrderLowDegree;
    if (G.order() > cap)
      throw InputError("degree-" + std::to_string(k) + " cochains limited to |G| <= " + std::to_string(cap));
  }

  std::optional<Tuple> first_unnormalized() const {
    Tuple t;
    for (std::size_t idx = 0; idx < values_.size(); ++idx) {
      if (values_[idx] == 0) continue;
      decode(idx, t);
      for (elem_t x : t)
        if (x == G_.identity()) return t;
    }
    return std::nullopt;
  }

  Cochain combine(const Cochain& o, int sign) const {
    if (o.k_ != k_ || o.N_ != N_ || !o.G_.same_as(G_)) throw InputError("cochain shape mismatch");
    Cochain r = *this;
    for (std::size_t i = 0; i < values_.size(); ++i) r.values_[i] = modular::reduce(values_[i] + sign * o.values_[i], N_);
    return r;
  }

  FiniteGroup G_;
  std::size_t k_;
  std::int64_t N_;
  std::vector<std::int64_t> values_;
};

struct CohomologyClassVerdict {
  bool is_cocycle = false;
  bool is_coboundary = false;
  std::optional<Cochain> witness;                         // delta(witness) == input
  std::optional<std::vector<elem_t>> failure_certificate;  // tuple where delta(f) != 0
};

namespace detail {

// (delta f)(g_1..g_{k+1}) evaluated on a single tuple, for any function on
// G^k (normalized or not) taking a span of k elements.
template <class F>
std::int64_t coboundary_at(const FiniteGroup& G, std::size_t k, std::int64_t N, F&& f, std::span<const elem_t> g) {
  std::array<elem_t, kMaxDegree + 1> buf{};
  const std::span<const elem_t> t(buf.data(), k);
  std::int64_t acc = 0;
  // drop g_1
  for (std::size_t i = 0; i < k; ++i) buf[i] = g[i + 1];
  acc += f(t);
  for (std::size_t i = 0; i < k; ++i) {
    // merge g_{i+1} g_{i+2}
    std::size_t p = 0;
    for (std::size_t j = 0; j <= k; ++j) {
      if (j == i) {
        buf[p++] = G.mul(g[j], g[j + 1]);
        ++j;
      } else {
        buf[p++] = g[j];
      }
    }
    acc += (i % 2 == 0 ? -1 : 1) * f(t);
  }
  // drop g_{k+1}
  for (std::size_t i = 0; i < k; ++i) buf[i] = g[i];
  acc += (k % 2 == 0 ? -1 : 1) * f(t);
  return modular::reduce(acc, N);
}

// Iterates over (G \ {e})^k in row-major order; stops when fn returns false.
template <class Fn>
void for_each_nonidentity_tuple(const FiniteGroup& G, std::size_t k, Fn&& fn) {
  std::vector<elem_t> nonid;
  for (elem_t g = 0; g < G.order(); ++g)
    if (g != G.identity()) nonid.push_back(g);
  if (k > 0 && nonid.empty()) return;
  std::vector<std::size_t> pos(k, 0);
  std::vector<elem_t> t(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) t[i] = nonid[pos[i]];
    if (!fn(std::span<const elem_t>(t))) return;
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++pos[i] < nonid.size()) break;
      pos[i] = 0;
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

}  // namespace detail

inline Cochain coboundary(const Cochain& f) {
  const std::size_t k = f.degree();
  if (k >= kMaxDegree) throw InputError("coboundary defined for degree <= 2");
  auto eval = [&f](std::span<const elem_t> t) { return f.at(t); };
  return Cochain::from_function(f.group(), k + 1, f.modulus(), [&](std::span<const elem_t> g) {
    return detail::coboundary_at(f.group(), k, f.modulus(), eval, g);
  });
}

// Checks delta(f) = 0; on failure reports the first violating tuple.
inline CohomologyClassVerdict is_cocycle(const Cochain& f) {
  CohomologyClassVerdict v;
  v.is_cocycle = true;
  if (f.is_zero()) return v;
  auto eval = [&f](std::span<const elem_t> t) { return f.at(t); };
  // delta of a normalized cochain is normalized, so identity slots are skipped.
  detail::for_each_nonidentity_tuple(f.group(), f.degree() + 1, [&](std::span<const elem_t> g) {
    if (detail::coboundary_at(f.group(), f.degree(), f.modulus(), eval, g) != 0) {
      v.is_cocycle = false;
      v.failure_certificate = std::vector<elem_t>(g.begin(), g.end());
      return false;
    }
    return true;
  });
  return v;
}

inline constexpr double kMaxCoboundaryWork = 4e9;

// Decides whether a cocycle f of degree k is delta(phi) for a normalized
// (k-1)-cochain phi, by diagonalizing the integer system over Z/N.
inline CohomologyClassVerdict is_coboundary(const Cochain& f) {
  const std::size_t k = f.degree();
  if (k == 0 || k > kMaxDegree) throw InputError("is_coboundary requires degree 1..3");
  CohomologyClassVerdict v = is_cocycle(f);
  if (!v.is_cocycle)
    throw ComputationError("input is not a cocycle", "delta nonzero at " + Cochain::format_tuple(*v.failure_certificate));
  const FiniteGroup& G = f.group();
  const std::int64_t N = f.modulus();
  const std::size_t n = G.order();
  // Unknowns: phi on (G\e)^{k-1}, numbered row-major over non-identity elements.
  std::vector<std::size_t> slot(n, 0);
  {
    std::size_t s = 0;
    for (elem_t g = 0; g < n; ++g)
      if (g != G.identity()) slot[g] = s++;
  }
  const std::size_t m = n - 1;
  const std::size_t unknowns = Cochain::tuple_count(m, k - 1);
  const std::size_t equations = Cochain::tuple_count(m, k);
  if (static_cast<double>(unknowns) * unknowns * equations > kMaxCoboundaryWork)
    throw ComputationError("coboundary system too large (" + std::to_string(equations) + " x " + std::to_string(unknowns) + ")");

  auto unknown_index = [&](std::span<const elem_t> t) -> std::optional<std::size_t> {
    std::size_t idx = 0;
    for (elem_t x : t) {
      if (x == G.identity()) return std::nullopt;
      idx = idx * m + slot[x];
    }
    return idx;
  };

  IntMatrix A;
  std::vector<std::int64_t> b;
  A.reserve(equations);
  b.reserve(equations);
  std::vector<elem_t> t(k - 1);
  detail::for_each_nonidentity_tuple(G, k, [&](std::span<const elem_t> g) {
    std::vector<std::int64_t> row(unknowns, 0);
    auto add = [&](std::int64_t sign) {
      if (auto u = unknown_index(t)) row[*u] += sign;
    };
    for (std::size_t i = 0; i + 1 < k; ++i) t[i] = g[i + 1];
    add(1);
    for (std::size_t i = 0; i + 1 < k; ++i) {
      std::size_t p = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) {
          t[p++] = G.mul(g[j], g[j + 1]);
          ++j;
        } else {
          t[p++] = g[j];
        }
      }
      add(i % 2 == 0 ? -1 : 1);
    }
    for (std::size_t i = 0; i + 1 < k; ++i) t[i] = g[i];
    add((k - 1) % 2 == 0 ? -1 : 1);
    A.push_back(std::move(row));
    b.push_back(f.at(g));
    return true;
  });

  if (k == 1) {
    // 0-cochains have zero coboundary under the trivial action.
    v.is_coboundary = f.is_zero();
    if (v.is_coboundary) v.witness = Cochain(G, 0, N);
    return v;
  }
  auto sol = solve_mod(std::move(A), std::move(b), N);
  if (!sol) {
    v.is_coboundary = false;
    return v;
  }
  std::vector<std::int64_t> dense(Cochain::tuple_count(n, k - 1), 0);
  Cochain shape(G, k - 1, N);
  Cochain::Tuple tt;
  for (std::size_t idx = 0; idx < dense.size(); ++idx) {
    shape.decode(idx, tt);
    if (auto u = unknown_index(tt)) dense[idx] = (*sol)[*u];
  }
  Cochain w = Cochain::from_dense(G, k - 1, N, std::move(dense));
  if (!(coboundary(w) == f)) throw ComputationError("internal: coboundary witness failed verification");
  v.is_coboundary = true;
  v.witness = std::move(w);
  return v;
}

// Result of normalizing an arbitrary cocycle: normalized = raw - delta(correction).
struct NormalizedCocycle {
  Cochain normalized;
  std::vector<std::int64_t> correction;  // dense (k-1)-cochain, not necessarily normalized
  bool changed = false;
};

// Normalizes a raw (dense, possibly non-normalized) cocycle of degree 1..3.
inline NormalizedCocycle normalize_cocycle(const FiniteGroup& G, std::size_t k, std::int64_t N, std::vector<std::int64_t> raw) {
  if (k == 0 || k > kMaxDegree) throw InputError("normalization requires degree 1..3");
  const std::size_t n = G.order();
  if (raw.size() != Cochain::tuple_count(n, k)) throw InputError("cochain value count does not match |G|^k");
  for (auto& x : raw) x = modular::reduce(x, N);
  const elem_t e = G.identity();
  auto raw_at = [&](std::span<const elem_t> t) {
    std::size_t idx = 0;
    for (elem_t x : t) idx = idx * n + x;
    return raw[idx];
  };
  // raw must satisfy the cocycle identity everywhere (identity slots included).
  {
    std::vector<elem_t> g(k + 1, 0);
    const std::size_t total = Cochain::tuple_count(n, k + 1);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t r = idx;
      for (std::size_t i = k + 1; i-- > 0;) {
        g[i] = static_cast<elem_t>(r % n);
        r /= n;
      }
      if (detail::coboundary_at(G, k, N, raw_at, g) != 0)
        throw ComputationError("input is not a cocycle", "delta nonzero at " + Cochain::format_tuple(g));
    }
  }
  std::vector<std::int64_t> beta(Cochain::tuple_count(n, k - 1), 0);
  std::vector<std::int64_t> out = raw;
  if (k == 2) {
    // beta constant c = f(e,e); delta(c)(g,h) = c.
    const std::int64_t c = raw[std::size_t(e) * n + e];
    beta[0] = c;
    for (auto& x : out) x = modular::reduce(x - c, N);
  } else if (k == 3) {
    auto idx3 = [n](elem_t a, elem_t b, elem_t c) { return (std::size_t(a) * n + b) * n + c; };
    // Step 1: beta1(g,h) = f(e,e,h) kills the first slot.
    std::vector<std::int64_t> u(n);
    for (elem_t h = 0; h < n; ++h) u[h] = raw[idx3(e, e, h)];
    for (elem_t a = 0; a < n; ++a)
      for (elem_t b = 0; b < n; ++b)
        for (elem_t c = 0; c < n; ++c) {
          // delta(beta1)(a,b,c) = u(c) - u(c) + u(bc) - u(b)
          out[idx3(a, b, c)] = modular::reduce(out[idx3(a, b, c)] - (u[G.mul(b, c)] - u[b]), N);
        }
    // Step 2: beta2(g,h) = -v(g) with v(a) = f1(a,e,e) kills the rest.
    std::vector<std::int64_t> v(n);
    for (elem_t a = 0; a < n; ++a) v[a] = out[idx3(a, e, e)];
    for (elem_t a = 0; a < n; ++a)
      for (elem_t b = 0; b < n; ++b)
        for (elem_t c = 0; c < n; ++c) {
          // delta(beta2)(a,b,c) = beta2(b,c) - beta2(ab,c) = -v(b) + v(ab)
          out[idx3(a, b, c)] = modular::reduce(out[idx3(a, b, c)] - (v[G.mul(a, b)] - v[b]), N);
        }
    for (elem_t g = 0; g < n; ++g)
      for (elem_t h = 0; h < n; ++h) beta[std::size_t(g) * n + h] = modular::reduce(u[h] - v[g], N);
  }
  NormalizedCocycle r{Cochain::from_dense(G, k, N, out), std::move(beta), false};
  r.changed = out != raw;
  return r;
}

// Coordinates of element x of a group built as a product of cyclic factors.
inline std::vector<std::size_t> product_coordinates(const FiniteGroup& G, elem_t x) {
  const auto& f = G.cyclic_factors();
  std::vector<std::size_t> c(f.size());
  std::size_t r = x;
  for (std::size_t i = f.size(); i-- > 0;) {
    c[i] = r % f[i];
    r /= f[i];
  }
  return c;
}

// Cup product of the coordinate characters i, j, k:
// omega(x,y,z) = (N/n) * x_i * y_j * z_k mod N, where n is the gcd of the
// three factor orders (the factor order itself when they agree).
inline Cochain cup3(const FiniteGroup& G, std::size_t i, std::size_t j, std::size_t k, std::int64_t N) {
  const auto& f = G.cyclic_factors();
  if (f.empty()) throw InputError("cup3 requires a group built from cyclic factors");
  if (i >= f.size() || j >= f.size() || k >= f.size())
    throw InputError("cup3 factor index out of range (group has " + std::to_string(f.size()) + " factors)");
  const auto n = static_cast<std::int64_t>(std::gcd(std::gcd(f[i], f[j]), f[k]));
  if (N % static_cast<std::int64_t>(f[i]) != 0 || N % static_cast<std::int64_t>(f[j]) != 0 ||
      N % static_cast<std::int64_t>(f[k]) != 0)
    throw InputError("modulus " + std::to_string(N) + " is not divisible by the referenced factor orders");
  std::vector<std::vector<std::size_t>> coords(G.order());
  for (elem_t x = 0; x < G.order(); ++x) coords[x] = product_coordinates(G, x);
  return Cochain::from_function(G, 3, N, [&](std::span<const elem_t> t) {
    const auto p = static_cast<std::int64_t>((coords[t[0]][i] * coords[t[1]][j] * coords[t[2]][k]) % std::size_t(n));
    return (N / n) * p;
  });
}

inline bool is_central(const FiniteGroup& G, elem_t z) {
  for (elem_t g = 0; g < G.order(); ++g)
    if (G.mul(g, z) != G.mul(z, g)) return false;
  return true;
}

// gamma(g,h) = omega(g,h,z) - omega(g,z,h) + omega(z,g,h), computed without
// re-verifying omega (callers that already hold a verified cocycle).
inline Cochain gamma_unchecked(const Cochain& omega, elem_t z) {
  return Cochain::from_function(omega.group(), 2, omega.modulus(), [&](std::span<const elem_t> t) {
    return omega(t[0], t[1], z) - omega(t[0], z, t[1]) + omega(z, t[0], t[1]);
  });
}

inline Cochain gamma(const Cochain& omega, elem_t z) {
  if (omega.degree() != 3) throw InputError("gamma requires a degree-3 cochain");
  const FiniteGroup& G = omega.group();
  if (z >= G.order()) throw InputError("element index " + std::to_string(z) + " out of range");
  if (!is_central(G, z)) throw InputError("element " + std::to_string(z) + " is not central");
  auto v = is_cocycle(omega);
  if (!v.is_cocycle)
    throw ComputationError("omega is not a 3-cocycle", "delta nonzero at " + Cochain::format_tuple(*v.failure_certificate));
  return gamma_unchecked(omega, z);
}

// Pulls f back along the inclusion of a subgroup.
inline Cochain restrict_to(const Cochain& f, const Subgroup& S) {
  return Cochain::from_function(S.group, f.degree(), f.modulus(), [&](std::span<const elem_t> t) {
    std::vector<elem_t> amb(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) amb[i] = S.embedding[t[i]];
    return f.at(amb);
  });
}

}  // namespace dcenter
