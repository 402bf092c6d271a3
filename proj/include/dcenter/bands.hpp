#pragma once

// Finite evidence for the 2-category of groups: centralizers of
// homomorphisms and endomorphisms of conjugacy type n, where alpha(g) is
// conjugate to g^n for all g. Residues are taken mod exponent(G), since g^n
// only depends on n mod exponent(G).

#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "dcenter/error.hpp"
#include "dcenter/group.hpp"

namespace dcenter {

// {h in H : h alpha(g) h^-1 = alpha(g) for all g}
inline ElementSet centralizer_of_hom(const GroupHom& alpha) {
  std::set<elem_t> image(alpha.images.begin(), alpha.images.end());
  return centralizer(alpha.target, {image.begin(), image.end()});
}

struct ConjugacyTypeResult {
  FiniteGroup group;
  std::size_t modulus = 1;              // exponent(G)
  std::set<std::size_t> types;          // residues mod exponent(G)
  std::map<std::size_t, GroupHom> witnesses;
};

inline bool has_conjugacy_type(const GroupHom& alpha, const ConjugacyClassData& cls, std::size_t n) {
  const FiniteGroup& G = alpha.source;
  for (elem_t g = 0; g < G.order(); ++g)
    if (cls.class_of[alpha.images[g]] != cls.class_of[G.pow(g, n)]) return false;
  return true;
}

inline ConjugacyTypeResult conjugacy_types(const FiniteGroup& G) {
  ConjugacyTypeResult out{G, G.exponent(), {}, {}};
  const auto cls = conjugacy_classes(G);
  const auto endos = enumerate_homomorphisms(G, G);
  for (const auto& alpha : endos)
    for (std::size_t n = 0; n < out.modulus; ++n) {
      if (out.types.count(n)) continue;
      if (has_conjugacy_type(alpha, cls, n)) {
        out.types.insert(n);
        out.witnesses.emplace(n, alpha);
      }
    }
  return out;
}

// Residues n mod lcm(exponents) such that every group in the universe admits
// an endomorphism of conjugacy type n. This is an upper bound on the center
// of the band category restricted to the universe, not the center itself.
struct BandCenterFamilies {
  std::size_t modulus = 1;
  std::set<std::size_t> residues;
  std::vector<ConjugacyTypeResult> per_group;
};

inline BandCenterFamilies band_center_families(const std::vector<FiniteGroup>& universe) {
  BandCenterFamilies out;
  for (const auto& G : universe) {
    out.per_group.push_back(conjugacy_types(G));
    out.modulus = std::lcm(out.modulus, out.per_group.back().modulus);
  }
  for (std::size_t n = 0; n < out.modulus; ++n) {
    bool all = true;
    for (const auto& r : out.per_group)
      if (!r.types.count(n % r.modulus)) {
        all = false;
        break;
      }
    if (all) out.residues.insert(n);
  }
  return out;
}

}  // namespace dcenter
