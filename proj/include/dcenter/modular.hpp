#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace dcenter::modular {

inline std::int64_t reduce(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return r;
}

// p must be prime.
inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw std::domain_error("inverse of zero mod p");
  return pow_mod(a, p - 2, p);
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Extended gcd: returns g = gcd(a,b) >= 0 with s*a + t*b = g.
inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    std::int64_t q = a / b;
    std::int64_t r = a - q * b;
    a = b;
    b = r;
    std::int64_t sn = s0 - q * s1;
    s0 = s1;
    s1 = sn;
    std::int64_t tn = t0 - q * t1;
    t0 = t1;
    t1 = tn;
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return a;
}

// Some primitive root of unity of order `n` in F_p; requires n | p-1.
inline std::uint64_t primitive_root_of_unity(std::uint64_t n, std::uint64_t p) {
  if ((p - 1) % n != 0) throw std::domain_error("n does not divide p-1");
  if (n == 1) return 1;
  // prime factors of n
  std::uint64_t m = n;
  std::uint64_t factors[64];
  int nf = 0;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      factors[nf++] = d;
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) factors[nf++] = m;
  for (std::uint64_t g = 2; g < p; ++g) {
    std::uint64_t cand = pow_mod(g, (p - 1) / n, p);
    bool ok = true;
    for (int i = 0; i < nf && ok; ++i)
      if (pow_mod(cand, n / factors[i], p) == 1) ok = false;
    if (ok) return cand;
  }
  throw std::domain_error("no primitive root found");
}

}  // namespace dcenter::modular
