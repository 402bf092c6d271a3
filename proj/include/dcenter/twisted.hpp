#pragma once

// Twisted group algebras K^gamma G: irreducible dimensions and counts of
// m-dimensional representations up to isomorphism.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "dcenter/cochain.hpp"
#include "dcenter/dixon.hpp"
#include "dcenter/error.hpp"
#include "dcenter/group.hpp"

namespace dcenter {

inline constexpr std::size_t kMaxExtensionOrder = 4096;

class TwistedGroupAlgebra {
 public:
  explicit TwistedGroupAlgebra(Cochain gamma) : gamma_(std::move(gamma)) {
    if (gamma_.degree() != 2) throw InputError("twisting cochain must have degree 2");
    auto v = is_cocycle(gamma_);
    if (!v.is_cocycle)
      throw ComputationError("twisting cochain is not a 2-cocycle", "delta nonzero at " + Cochain::format_tuple(*v.failure_certificate));
  }

  const FiniteGroup& group() const noexcept { return gamma_.group(); }
  const Cochain& gamma() const noexcept { return gamma_; }

 private:
  Cochain gamma_;
};

enum class IrrepMethod { AbelianFastPath, CentralExtension };

inline std::string to_string(IrrepMethod m) {
  return m == IrrepMethod::AbelianFastPath ? "abelian-fast-path" : "central-extension";
}

struct IrrepProfile {
  std::vector<std::size_t> dimensions;  // ascending
  std::size_t regular_class_count = 0;
  IrrepMethod method = IrrepMethod::CentralExtension;

  friend bool operator==(const IrrepProfile& a, const IrrepProfile& b) {
    return a.dimensions == b.dimensions && a.regular_class_count == b.regular_class_count;
  }
};

// Classes of gamma-regular elements: g with gamma(g,x) = gamma(x,g) for
// every x commuting with g.
inline std::vector<std::size_t> regular_classes(const TwistedGroupAlgebra& T, const ConjugacyClassData& cls) {
  const FiniteGroup& G = T.group();
  const Cochain& gm = T.gamma();
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < cls.count(); ++c) {
    const elem_t g = cls.representatives[c];
    bool regular = true;
    for (elem_t x = 0; x < G.order() && regular; ++x)
      if (G.mul(g, x) == G.mul(x, g)) regular = gm(g, x) == gm(x, g);
    if (regular) out.push_back(c);
  }
  return out;
}

inline std::vector<std::size_t> regular_classes(const TwistedGroupAlgebra& T) {
  return regular_classes(T, conjugacy_classes(T.group()));
}

namespace detail {

inline std::size_t exact_sqrt(std::size_t v) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v ? r : 0;
}

// gamma takes values in (N/N')Z/N ~ Z/N'; returns N'.
inline std::int64_t effective_modulus(const Cochain& gm) {
  std::int64_t g = gm.modulus();
  for (auto v : gm.dense()) g = std::gcd(g, v);
  return gm.modulus() / g;
}

}  // namespace detail

// Abelian groups only: every irreducible has dimension sqrt(|G|/|R|) where R
// is the radical of the alternating form gamma(g,h) - gamma(h,g); there are |R|
// of them. Returns nullopt when |G|/|R| is not a perfect square.
inline std::optional<IrrepProfile> irrep_profile_abelian(const TwistedGroupAlgebra& T) {
  const FiniteGroup& G = T.group();
  if (!G.is_abelian()) throw InputError("abelian fast path requires an abelian group");
  const Cochain& gm = T.gamma();
  std::size_t radical = 0;
  for (elem_t g = 0; g < G.order(); ++g) {
    bool in = true;
    for (elem_t x = 0; x < G.order() && in; ++x) in = gm(g, x) == gm(x, g);
    radical += in;
  }
  if (G.order() % radical != 0) return std::nullopt;
  const std::size_t d = detail::exact_sqrt(G.order() / radical);
  if (d == 0) return std::nullopt;
  return IrrepProfile{std::vector<std::size_t>(radical, d), radical, IrrepMethod::AbelianFastPath};
}

// Builds Z/N' x_gamma G with (a,g)(b,h) = (a+b+gamma(g,h), gh), encoded as
// a*|G| + g, and keeps the irreducibles on which (1,e) acts by a fixed
// primitive N'-th root of unity.
inline IrrepProfile irrep_profile_extension(const TwistedGroupAlgebra& T) {
  const FiniteGroup& G = T.group();
  const Cochain& gm = T.gamma();
  const std::int64_t Nfull = gm.modulus();
  const std::int64_t Ne = detail::effective_modulus(gm);
  const std::int64_t scale = Nfull / Ne;
  const std::size_t n = G.order();
  const std::size_t order = n * static_cast<std::size_t>(Ne);
  if (order > kMaxExtensionOrder)
    throw ComputationError("central extension of order " + std::to_string(order) + " exceeds limit " +
                           std::to_string(kMaxExtensionOrder));
  IrrepProfile prof;
  prof.method = IrrepMethod::CentralExtension;
  const auto cls_G = conjugacy_classes(G);
  prof.regular_class_count = regular_classes(T, cls_G).size();

  if (Ne == 1) {
    // gamma == 0: ordinary character degrees of G.
    auto data = dixon::character_degrees(G);
    prof.dimensions = data.degrees;
  } else {
    std::vector<elem_t> t(order * order);
    for (std::size_t x = 0; x < order; ++x) {
      const std::size_t a = x / n;
      const elem_t g = static_cast<elem_t>(x % n);
      for (std::size_t y = 0; y < order; ++y) {
        const std::size_t b = y / n;
        const elem_t h = static_cast<elem_t>(y % n);
        const std::size_t c = (a + b + static_cast<std::size_t>(gm(g, h) / scale)) % static_cast<std::size_t>(Ne);
        t[x * order + y] = static_cast<elem_t>(c * n + G.mul(g, h));
      }
    }
    FiniteGroup ext = FiniteGroup::from_table(order, std::move(t));
    auto data = dixon::character_degrees(ext);
    const std::uint64_t p = data.prime;
    const elem_t z0 = static_cast<elem_t>(n + G.identity());
    const std::size_t z_cls = data.classes.class_of[z0];
    if (data.classes.class_sizes[z_cls] != 1) throw ComputationError("internal: (1,e) is not central in the extension");
    const std::uint64_t zeta = modular::primitive_root_of_unity(static_cast<std::uint64_t>(Ne), p);
    for (std::size_t i = 0; i < data.degrees.size(); ++i)
      if (data.central_scalar[i][z_cls] == zeta) prof.dimensions.push_back(data.degrees[i]);
  }
  std::sort(prof.dimensions.begin(), prof.dimensions.end());
  std::size_t sum = 0;
  for (auto d : prof.dimensions) sum += d * d;
  if (sum != n) throw ComputationError("projective degrees do not satisfy sum d^2 = |G|");
  if (prof.dimensions.size() != prof.regular_class_count)
    throw ComputationError("irreducible count " + std::to_string(prof.dimensions.size()) + " differs from regular class count " +
                           std::to_string(prof.regular_class_count));
  return prof;
}

inline IrrepProfile irrep_profile(const TwistedGroupAlgebra& T) {
  if (T.group().is_abelian())
    if (auto p = irrep_profile_abelian(T)) return *p;
  return irrep_profile_extension(T);
}

// Number of isomorphism classes of m-dimensional representations: multisets
// of irreducibles with total dimension m. count(0) = 1.
inline std::uint64_t count_reps_of_dim(const IrrepProfile& prof, std::size_t m) {
  std::vector<std::uint64_t> ways(m + 1, 0);
  ways[0] = 1;
  for (std::size_t d : prof.dimensions)
    for (std::size_t s = d; s <= m; ++s)
      if (__builtin_add_overflow(ways[s], ways[s - d], &ways[s]))
        throw ComputationError("representation count overflows 64 bits");
  return ways[m];
}

inline std::uint64_t count_reps_of_dim(const TwistedGroupAlgebra& T, std::size_t m) {
  return count_reps_of_dim(irrep_profile(T), m);
}

}  // namespace dcenter
