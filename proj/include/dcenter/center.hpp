#pragma once

// Drinfeld-center invariants of the pointed fusion category Vec_G^omega:
// first/second page terms, per-class obstructions, lift counts for central
// objects, and the kernel of the characteristic homomorphism.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "dcenter/cochain.hpp"
#include "dcenter/error.hpp"
#include "dcenter/group.hpp"
#include "dcenter/smith.hpp"
#include "dcenter/twisted.hpp"

namespace dcenter {

// Invariant factors d_1 | d_2 | ... of a finite abelian group, from the
// Smith form of its relation matrix over the word map Z^k -> A.
inline std::vector<std::int64_t> abelian_invariants(const FiniteGroup& A) {
  if (!A.is_abelian()) throw InputError("abelian_invariants requires an abelian group");
  if (A.order() == 1) return {};
  const auto gens = generating_sequence(A, 64);
  const std::size_t k = gens.size();
  const std::size_t n = A.order();
  std::vector<std::vector<std::int64_t>> word(n);
  std::vector<char> seen(n, 0);
  std::vector<elem_t> queue{A.identity()};
  word[A.identity()].assign(k, 0);
  seen[A.identity()] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const elem_t x = queue[q];
    for (std::size_t i = 0; i < k; ++i) {
      const elem_t y = A.mul(x, gens[i]);
      if (seen[y]) continue;
      seen[y] = 1;
      word[y] = word[x];
      word[y][i] += 1;
      queue.push_back(y);
    }
  }
  // Relations w(x) + e_i - w(x s_i) generate the kernel of Z^k -> A.
  IntMatrix rel;
  for (elem_t x = 0; x < n; ++x)
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::int64_t> row(k);
      const auto& wy = word[A.mul(x, gens[i])];
      for (std::size_t j = 0; j < k; ++j) row[j] = word[x][j] + (j == i) - wy[j];
      rel.push_back(std::move(row));
    }
  // The kernel contains |A| Z^k, so working mod |A| is exact.
  const auto M = static_cast<std::int64_t>(n);
  auto form = smith_form_mod(std::move(rel), M);
  std::vector<std::int64_t> cyc;
  for (auto d : form.diagonal) cyc.push_back(std::gcd(d, M));
  for (std::size_t i = form.diagonal.size(); i < k; ++i) cyc.push_back(M);
  auto inv = invariant_factors(cyc);
  std::int64_t prod = 1;
  for (auto d : inv) prod *= d;
  if (prod != M) throw ComputationError("internal: abelian invariants do not multiply to the group order");
  return inv;
}

struct AbelianGroupDescriptor {
  std::vector<std::int64_t> invariant_factors;

  std::int64_t order() const {
    std::int64_t o = 1;
    for (auto d : invariant_factors) o *= d;
    return o;
  }
};

// Hom(G, Z/N) = Hom(G^ab, Z/N), as invariant factors.
inline AbelianGroupDescriptor character_group(const FiniteGroup& G, std::int64_t N) {
  auto q = quotient_group(G, commutator_subgroup(G));
  std::vector<std::int64_t> f;
  for (auto d : abelian_invariants(q.group)) f.push_back(std::gcd(d, N));
  return {invariant_factors(f)};
}

// Whether a 2-cocycle with values in Z/N is trivial once N-th roots of unity
// are allowed to be divided further: solves delta(phi) = e * f over
// Z/(N e) with e = exp(G). Every K^x-valued phi with delta(phi) in mu_N
// already takes values in mu_{N e}, so this decides vanishing in H^2(G, K^x).
inline CohomologyClassVerdict vanishes_in_units(const Cochain& f) {
  const auto e = static_cast<std::int64_t>(f.group().exponent());
  const std::int64_t N = f.modulus();
  std::vector<std::int64_t> scaled = f.dense();
  for (auto& v : scaled) v *= e;
  return is_coboundary(Cochain::from_dense(f.group(), f.degree(), N * e, std::move(scaled)));
}

class PointedCategory {
 public:
  PointedCategory(FiniteGroup G, Cochain omega) : G_(std::move(G)), omega_(std::move(omega)) {
    if (omega_.degree() != 3) throw InputError("associator must be a degree-3 cochain");
    if (!omega_.group().same_as(G_)) throw InputError("associator is defined on a different group");
    auto v = is_cocycle(omega_);
    if (!v.is_cocycle)
      throw ComputationError("associator is not a 3-cocycle", "delta nonzero at " + Cochain::format_tuple(*v.failure_certificate));
  }

  const FiniteGroup& group() const noexcept { return G_; }
  const Cochain& omega() const noexcept { return omega_; }
  std::int64_t modulus() const noexcept { return omega_.modulus(); }

 private:
  FiniteGroup G_;
  Cochain omega_;
};

// Multiplicities a_i of the class objects Y_i, indexed by conjugacy class.
struct CentralObjectSpec {
  std::vector<std::uint64_t> multiplicities;
};

struct ClassObstruction {
  std::size_t class_index = 0;
  elem_t representative = 0;
  Subgroup centralizer;
  Cochain gamma;  // on the centralizer, in its local indexing
  CohomologyClassVerdict verdict;

  bool vanishes() const noexcept { return verdict.is_coboundary; }
};

inline ClassObstruction obstruction(const PointedCategory& C, const ConjugacyClassData& cls, std::size_t i) {
  if (i >= cls.count()) throw InputError("class index " + std::to_string(i) + " out of range");
  const FiniteGroup& G = C.group();
  const elem_t g = cls.representatives[i];
  Subgroup cent = induced_subgroup(G, centralizer(G, {g}));
  const auto pos = std::find(cent.embedding.begin(), cent.embedding.end(), g) - cent.embedding.begin();
  Cochain omega_c = restrict_to(C.omega(), cent);
  Cochain gm = gamma_unchecked(omega_c, static_cast<elem_t>(pos));
  auto check = is_cocycle(gm);
  if (!check.is_cocycle) throw ComputationError("internal: restricted gamma is not a 2-cocycle");
  CohomologyClassVerdict verdict;
  if (gm.is_zero()) {
    verdict.is_cocycle = verdict.is_coboundary = true;
    verdict.witness = Cochain(cent.group, 1, C.modulus());
  } else {
    verdict = vanishes_in_units(gm);
  }
  return {i, g, std::move(cent), std::move(gm), std::move(verdict)};
}

inline ClassObstruction obstruction(const PointedCategory& C, std::size_t i) {
  return obstruction(C, conjugacy_classes(C.group()), i);
}

// Unit vectors of the class sums y_i.
inline std::vector<CentralObjectSpec> e2_00_basis(const PointedCategory& C) {
  const auto cls = conjugacy_classes(C.group());
  std::vector<CentralObjectSpec> out;
  for (std::size_t i = 0; i < cls.count(); ++i) {
    CentralObjectSpec s{std::vector<std::uint64_t>(cls.count(), 0)};
    s.multiplicities[i] = 1;
    out.push_back(std::move(s));
  }
  return out;
}

inline AbelianGroupDescriptor kernel_of_characteristic(const PointedCategory& C) {
  return character_group(C.group(), C.modulus());
}

struct LiftEntry {
  CentralObjectSpec spec;
  std::uint64_t count = 0;
};

struct CenterReport {
  std::string group_label;
  std::size_t group_order = 0;
  std::int64_t modulus = 0;
  ConjugacyClassData classes;
  std::size_t e1_00_rank = 0;               // free commutative monoid N^|G|
  std::vector<CentralObjectSpec> e2_00;     // class sums
  std::size_t e1_11_rank = 0;               // (K^x)^|G|
  std::size_t e1_21_copies = 0;             // |G|^2 copies of K^x
  AbelianGroupDescriptor e2_11;             // character group of U = G
  std::vector<ClassObstruction> obstructions;
  std::vector<IrrepProfile> profiles;       // per class, twisted centralizer algebra
  std::vector<LiftEntry> lifts;
  std::uint64_t simple_central_objects = 0;
};

// Per-class data shared by the report, lift counts and simple counts.
class CenterEngine {
 public:
  // Classes are processed by up to `threads` workers; results land in class
  // order regardless of scheduling.
  explicit CenterEngine(PointedCategory C, unsigned threads = 1)
      : C_(std::move(C)), classes_(conjugacy_classes(C_.group())) {
    const std::size_t r = classes_.count();
    std::vector<std::optional<ClassObstruction>> obs(r);
    std::vector<std::optional<IrrepProfile>> prof(r);
    std::vector<std::exception_ptr> errors(r);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < r;) {
        try {
          obs[i] = obstruction(C_, classes_, i);
          prof[i] = irrep_profile(TwistedGroupAlgebra(obs[i]->gamma));
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(r)));
    if (n == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    // lowest failing class wins, so errors are deterministic too
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (std::size_t i = 0; i < r; ++i) {
      obstructions_.push_back(std::move(*obs[i]));
      profiles_.push_back(std::move(*prof[i]));
    }
  }

  const PointedCategory& category() const noexcept { return C_; }
  const ConjugacyClassData& classes() const noexcept { return classes_; }
  const std::vector<ClassObstruction>& obstructions() const noexcept { return obstructions_; }
  const std::vector<IrrepProfile>& profiles() const noexcept { return profiles_; }

  // prod_i #{a_i-dimensional reps of K^{gamma_i} C_G(g_i)}; 0 means the
  // object is not in the image of the characteristic homomorphism.
  std::uint64_t lift_count(const CentralObjectSpec& spec) const {
    if (spec.multiplicities.size() != classes_.count())
      throw InputError("spec has " + std::to_string(spec.multiplicities.size()) + " entries, expected " +
                       std::to_string(classes_.count()));
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < classes_.count(); ++i) {
      const auto a = spec.multiplicities[i];
      if (a == 0) continue;
      const std::uint64_t c = count_reps_of_dim(profiles_[i], a);
      if (__builtin_mul_overflow(total, c, &total)) throw ComputationError("lift count overflows 64 bits");
    }
    return total;
  }

  std::uint64_t count_simple_central_objects() const {
    std::uint64_t s = 0;
    for (const auto& p : profiles_) s += p.dimensions.size();
    return s;
  }

  CenterReport report(const std::vector<CentralObjectSpec>& specs = {}) const {
    CenterReport r;
    const FiniteGroup& G = C_.group();
    r.group_label = G.label();
    r.group_order = G.order();
    r.modulus = C_.modulus();
    r.classes = classes_;
    r.e1_00_rank = G.order();
    r.e2_00 = e2_00_basis(C_);
    r.e1_11_rank = G.order();
    r.e1_21_copies = G.order() * G.order();
    r.e2_11 = kernel_of_characteristic(C_);
    r.obstructions = obstructions_;
    r.profiles = profiles_;
    for (const auto& s : specs) r.lifts.push_back({s, lift_count(s)});
    r.simple_central_objects = count_simple_central_objects();
    return r;
  }

 private:
  PointedCategory C_;
  ConjugacyClassData classes_;
  std::vector<ClassObstruction> obstructions_;
  std::vector<IrrepProfile> profiles_;
};

inline std::uint64_t lift_count(const PointedCategory& C, const CentralObjectSpec& spec) {
  return CenterEngine(C).lift_count(spec);
}

inline std::uint64_t count_simple_central_objects(const PointedCategory& C) {
  return CenterEngine(C).count_simple_central_objects();
}

inline CenterReport e_page_report(const PointedCategory& C) { return CenterEngine(C).report(); }

}  // namespace dcenter
