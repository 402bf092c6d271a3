#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace dcenter;
using dtest::product_of_cyclics;

namespace {

// Groups small enough for degree-3 work.
std::vector<FiniteGroup> cochain_groups() {
  auto u = dtest::groups_up_to_8();
  u.push_back(product_of_cyclics({3, 3}));
  u.push_back(make_alternating(4));
  return u;
}

Cochain character(const FiniteGroup& G, const GroupHom& chi, std::int64_t N, std::int64_t scale) {
  return Cochain::from_function(G, 1, N, [&](std::span<const elem_t> t) -> std::int64_t { return scale * chi.images[t[0]]; });
}

}  // namespace

TEST(Coboundary, OfZeroCochainIsZero) {
  auto G = make_symmetric(3);
  Cochain c(G, 0, 6);
  EXPECT_TRUE(coboundary(c).is_zero());
}

TEST(Coboundary, OfCharacterIsZero) {
  auto G = product_of_cyclics({2, 4});
  for (const auto& chi : enumerate_homomorphisms(G, make_cyclic(4)))
    EXPECT_TRUE(coboundary(character(G, chi, 4, 1)).is_zero());
}

TEST(Coboundary, MatchesIndependentFormula) {
  std::mt19937_64 rng(11);
  auto G = make_symmetric(3);
  for (std::size_t k = 1; k <= 2; ++k) {
    auto f = dtest::random_cochain(G, k, 6, rng);
    auto df = coboundary(f);
    Cochain::Tuple t;
    for (std::size_t idx = 0; idx < df.dense().size(); ++idx) {
      df.decode(idx, t);
      ASSERT_EQ(df.dense()[idx], dtest::delta_at(G, f.dense(), k, 6, t));
    }
  }
}

TEST(Coboundary, DeltaDeltaIsZeroOnKleinFour) {
  std::mt19937_64 rng(1);
  auto G = product_of_cyclics({2, 2});
  for (int i = 0; i < 100; ++i) EXPECT_TRUE(coboundary(coboundary(dtest::random_cochain(G, 1, 4, rng))).is_zero());
}

TEST(Coboundary, DeltaDeltaIsZeroAllDegrees) {
  std::mt19937_64 rng(2);
  for (const auto& G : cochain_groups()) {
    const auto N = static_cast<std::int64_t>(G.exponent()) * 2;
    for (int i = 0; i < 100; ++i) {
      ASSERT_TRUE(coboundary(coboundary(dtest::random_cochain(G, 0, N, rng))).is_zero());
      ASSERT_TRUE(coboundary(coboundary(dtest::random_cochain(G, 1, N, rng))).is_zero());
    }
    // degree 2: delta lands in degree 3; check delta of that on random 4-tuples
    for (int i = 0; i < 100; ++i) {
      auto d = coboundary(dtest::random_cochain(G, 2, N, rng));
      std::uniform_int_distribution<elem_t> pick(0, static_cast<elem_t>(G.order() - 1));
      for (int s = 0; s < 20; ++s) {
        std::vector<elem_t> g{pick(rng), pick(rng), pick(rng), pick(rng)};
        ASSERT_EQ(dtest::delta_at(G, d.dense(), 3, N, g), 0) << G.label();
      }
    }
  }
}

TEST(IsCocycle, Examples) {
  auto G = product_of_cyclics({2, 2, 2});
  EXPECT_TRUE(is_cocycle(Cochain(G, 3, 2)).is_cocycle);
  EXPECT_TRUE(is_cocycle(cup3(G, 0, 1, 2, 2)).is_cocycle);
  EXPECT_TRUE(is_cocycle(cup3(product_of_cyclics({3, 3, 3}), 0, 1, 2, 3)).is_cocycle);
}

TEST(IsCocycle, ConstantTwoCochain) {
  // f = 1 off the identity. On C2 with N = 2 this happens to be a cocycle
  // (it is the carry cocycle); on C3 it is not.
  auto one = [](const FiniteGroup& G, std::int64_t N) {
    return Cochain::from_function(G, 2, N, [&](std::span<const elem_t> t) -> std::int64_t {
      return t[0] != G.identity() && t[1] != G.identity();
    });
  };
  EXPECT_TRUE(is_cocycle(one(make_cyclic(2), 2)).is_cocycle);
  auto C3 = make_cyclic(3);
  auto f = one(C3, 3);
  auto v = is_cocycle(f);
  ASSERT_FALSE(v.is_cocycle);
  ASSERT_TRUE(v.failure_certificate.has_value());
  EXPECT_NE(dtest::delta_at(C3, f.dense(), 2, 3, *v.failure_certificate), 0);
}

TEST(IsCoboundary, ConstructedCoboundaryHasWitness) {
  std::mt19937_64 rng(3);
  for (const auto& G : cochain_groups()) {
    const auto N = static_cast<std::int64_t>(G.exponent());
    for (std::size_t k = 1; k <= 2; ++k) {
      if (G.order() > 8 && k == 2) continue;
      auto f = coboundary(dtest::random_cochain(G, k, N, rng));
      auto v = is_coboundary(f);
      ASSERT_TRUE(v.is_coboundary) << G.label();
      ASSERT_TRUE(v.witness.has_value());
      EXPECT_EQ(coboundary(*v.witness), f);
    }
  }
}

TEST(IsCoboundary, ZeroHasZeroWitness) {
  auto G = make_symmetric(3);
  auto v = is_coboundary(Cochain(G, 2, 6));
  EXPECT_TRUE(v.is_coboundary);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(coboundary(*v.witness).is_zero());
}

TEST(IsCoboundary, RejectsNonCocycle) {
  auto C3 = make_cyclic(3);
  auto f = Cochain::from_function(C3, 2, 3, [](std::span<const elem_t> t) -> std::int64_t { return t[0] && t[1]; });
  EXPECT_THROW(is_coboundary(f), ComputationError);
}

TEST(IsCoboundary, GammaOnCupCocycleIsNontrivial) {
  for (std::size_t n : {2u, 3u}) {
    auto G = product_of_cyclics({n, n, n});
    const auto N = static_cast<std::int64_t>(n);
    auto g = gamma(cup3(G, 0, 1, 2, N), static_cast<elem_t>(n * n));  // e1 = (1,0,0)
    EXPECT_FALSE(is_coboundary(g).is_coboundary);
  }
}

TEST(IsCoboundary, CarryCocycleOnC2) {
  // f(1,1) = 1 generates H^2(C2, Z/2) but dies in H^2(C2, K^x).
  auto C2 = make_cyclic(2);
  auto f = Cochain::from_function(C2, 2, 2, [](std::span<const elem_t> t) -> std::int64_t { return t[0] && t[1]; });
  EXPECT_FALSE(is_coboundary(f).is_coboundary);
}

TEST(Cup3, Values) {
  auto G = product_of_cyclics({2, 2, 2});
  auto w = cup3(G, 0, 1, 2, 2);
  EXPECT_EQ(w(4, 2, 1), 1);  // ((1,0,0),(0,1,0),(0,0,1))
  EXPECT_EQ(w(2, 4, 1), 0);
  for (elem_t a = 0; a < 8; ++a)
    for (elem_t b = 0; b < 8; ++b) {
      EXPECT_EQ(w(0, a, b), 0);
      EXPECT_EQ(w(a, 0, b), 0);
      EXPECT_EQ(w(a, b, 0), 0);
    }
  // scaled into a larger modulus
  EXPECT_EQ(cup3(G, 0, 1, 2, 4)(4, 2, 1), 2);
}

TEST(Cup3, Errors) {
  auto G = product_of_cyclics({2, 2, 2});
  EXPECT_THROW(cup3(G, 0, 1, 3, 2), InputError);
  EXPECT_THROW(cup3(product_of_cyclics({3, 3, 3}), 0, 1, 2, 2), InputError);
  EXPECT_THROW(cup3(make_symmetric(3), 0, 0, 0, 6), InputError);
}

TEST(Gamma, ZeroOmegaGivesZero) {
  auto G = product_of_cyclics({2, 4});
  for (elem_t z = 0; z < G.order(); ++z) EXPECT_TRUE(gamma(Cochain(G, 3, 4), z).is_zero());
}

TEST(Gamma, Errors) {
  auto S3 = make_symmetric(3);
  EXPECT_THROW(gamma(Cochain(S3, 3, 6), 1), InputError);  // not central
  auto C2 = make_cyclic(2);
  auto bad = Cochain::from_function(C2, 3, 4, [](std::span<const elem_t> t) -> std::int64_t { return t[0] && t[1] && t[2]; });
  ASSERT_FALSE(is_cocycle(bad).is_cocycle);
  EXPECT_THROW(gamma(bad, 1), ComputationError);
}

TEST(Gamma, IsCocycleForEveryCentralElement) {
  std::mt19937_64 rng(5);
  for (const auto& G : cochain_groups()) {
    const auto N = static_cast<std::int64_t>(G.exponent());
    std::vector<Cochain> omegas{Cochain(G, 3, N)};
    if (G.cyclic_factors().size() >= 1) {
      const auto& f = G.cyclic_factors();
      for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < f.size(); ++j)
          for (std::size_t k = 0; k < f.size(); ++k) omegas.push_back(cup3(G, i, j, k, N));
    }
    const std::size_t base = omegas.size();
    for (std::size_t i = 0; i < base; ++i) omegas.push_back(omegas[i] + coboundary(dtest::random_cochain(G, 2, N, rng)));
    for (const auto& w : omegas) {
      ASSERT_TRUE(is_cocycle(w).is_cocycle);
      for (elem_t z : center(G)) ASSERT_TRUE(is_cocycle(gamma(w, z)).is_cocycle) << G.label() << " z=" << z;
    }
  }
}

TEST(Gamma, CoboundaryShiftGivesCohomologousGamma) {
  std::mt19937_64 rng(6);
  for (std::size_t n : {2u, 3u}) {
    auto G = product_of_cyclics({n, n, n});
    const auto N = static_cast<std::int64_t>(n);
    auto w = cup3(G, 0, 1, 2, N);
    for (int s = 0; s < 20; ++s) {
      auto w2 = w + coboundary(dtest::random_cochain(G, 2, N, rng));
      for (elem_t z : {elem_t(1), elem_t(n), elem_t(n * n), elem_t(G.order() - 1)})
        EXPECT_TRUE(is_coboundary(gamma(w2, z) - gamma(w, z)).is_coboundary);
    }
  }
}

TEST(Gamma, CohomologousCocyclesShareAlternation) {
  std::mt19937_64 rng(8);
  for (std::size_t n : {2u, 3u}) {
    auto G = product_of_cyclics({n, n, n});
    const auto N = static_cast<std::int64_t>(n);
    auto g = gamma(cup3(G, 0, 1, 2, N), static_cast<elem_t>(n * n));
    for (int s = 0; s < 20; ++s) {
      auto h = g + coboundary(dtest::random_cochain(G, 1, N, rng));
      for (elem_t x = 0; x < G.order(); ++x)
        for (elem_t y = 0; y < G.order(); ++y)
          ASSERT_EQ(modular::reduce(g(x, y) - g(y, x), N), modular::reduce(h(x, y) - h(y, x), N));
    }
  }
}

TEST(Normalize, SubtractsExplicitCoboundary) {
  std::mt19937_64 rng(9);
  auto G = product_of_cyclics({2, 2, 2});
  const std::int64_t N = 2;
  auto w = cup3(G, 0, 1, 2, N);
  // add delta of an arbitrary (non-normalized) 2-cochain
  std::uniform_int_distribution<std::int64_t> pick(0, N - 1);
  std::vector<std::int64_t> beta(64);
  for (auto& b : beta) b = pick(rng);
  std::vector<std::int64_t> raw(512);
  for (std::size_t idx = 0; idx < 512; ++idx) {
    std::vector<elem_t> t{elem_t(idx / 64), elem_t(idx / 8 % 8), elem_t(idx % 8)};
    raw[idx] = modular::reduce(w.dense()[idx] + dtest::delta_at(G, beta, 2, N, t), N);
  }
  auto norm = normalize_cocycle(G, 3, N, raw);
  EXPECT_TRUE(is_cocycle(norm.normalized).is_cocycle);
  // normalized = raw - delta(correction), checked independently
  for (std::size_t idx = 0; idx < 512; ++idx) {
    std::vector<elem_t> t{elem_t(idx / 64), elem_t(idx / 8 % 8), elem_t(idx % 8)};
    ASSERT_EQ(norm.normalized.dense()[idx], modular::reduce(raw[idx] - dtest::delta_at(G, norm.correction, 2, N, t), N));
  }
  // and it still differs from w by a (normalized) coboundary
  EXPECT_TRUE(is_coboundary(norm.normalized - w).is_coboundary);
}

TEST(Normalize, RejectsNonCocycle) {
  auto C3 = make_cyclic(3);
  std::vector<std::int64_t> raw(9, 1);
  raw[4] = 2;
  EXPECT_THROW(normalize_cocycle(C3, 2, 3, raw), ComputationError);
}

TEST(Cochain, ShapeChecks) {
  auto G = make_cyclic(3);
  EXPECT_THROW(Cochain(G, 4, 3), InputError);
  EXPECT_THROW(Cochain(G, 2, 0), InputError);
  EXPECT_THROW(Cochain(make_symmetric(6), 3, 60), InputError);  // |G| > 128 in degree 3
  EXPECT_THROW(Cochain::from_dense(G, 1, 3, {1, 0, 0}), InputError);  // not normalized
  EXPECT_THROW(Cochain(G, 1, 3) + Cochain(G, 1, 6), InputError);
}

TEST(Restrict, PullsBackAlongEmbedding) {
  auto G = product_of_cyclics({2, 2, 2});
  auto w = cup3(G, 0, 1, 2, 2);
  auto S = induced_subgroup(G, centralizer(G, {4}));
  auto r = restrict_to(w, S);
  for (elem_t a = 0; a < S.group.order(); ++a)
    for (elem_t b = 0; b < S.group.order(); ++b)
      for (elem_t c = 0; c < S.group.order(); ++c)
        ASSERT_EQ(r(a, b, c), w(S.embedding[a], S.embedding[b], S.embedding[c]));
}
