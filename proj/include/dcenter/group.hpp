#pragma once

// Finite groups given by full multiplication tables.
//
// Element index encodings are part of the external contract because cocycle
// files refer to elements by index:
//   cyclic C<n>       residues 0..n-1, identity 0
//   direct products   row-major, (a, b) -> a * |B| + b
//   S<m>, A<m>        permutations of {0..m-1} in lexicographic one-line order
//   quotients         cosets numbered by their minimal element, in order
//   subgroups         sorted ascending by ambient index

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dcenter/error.hpp"

namespace dcenter {

using elem_t = std::uint32_t;

inline constexpr std::size_t kMaxTableOrder = 5040;
inline constexpr std::size_t kFullAssociativityCheck = 512;
inline constexpr std::size_t kMaxEnumerationOrder = 512;
inline constexpr std::size_t kMaxGeneratorLength = 5;

namespace detail {

struct GroupData {
  std::size_t order = 0;
  std::vector<elem_t> table;  // row-major, table[g * order + h] = g*h
  std::vector<elem_t> inverse;
  elem_t identity = 0;
  std::string label;
  // Orders of the cyclic factors when built from make_cyclic/direct_product.
  std::vector<std::size_t> cyclic_factors;
};

}  // namespace detail

class FiniteGroup {
 public:
  // Validates the Latin-square, identity and inverse invariants; checks
  // associativity on all triples up to order 512 and on a fixed random
  // sample above that.
  static FiniteGroup from_table(std::size_t order, std::vector<elem_t> table, std::string label = {},
                                std::vector<std::size_t> cyclic_factors = {}) {
    if (order == 0) throw InputError("group order must be positive");
    if (order > kMaxTableOrder)
      throw InputError("group order " + std::to_string(order) + " exceeds table cap " +
                       std::to_string(kMaxTableOrder));
    if (table.size() != order * order) throw InputError("table size does not match order");
    auto data = std::make_shared<detail::GroupData>();
    data->order = order;
    data->table = std::move(table);
    data->label = std::move(label);
    data->cyclic_factors = std::move(cyclic_factors);
    validate_and_fill(*data);
    return FiniteGroup(std::move(data));
  }

  static FiniteGroup from_rows(const std::vector<std::vector<elem_t>>& rows, std::string label = {}) {
    std::vector<elem_t> flat;
    flat.reserve(rows.size() * rows.size());
    for (const auto& r : rows) {
      if (r.size() != rows.size()) throw InputError("group table is not square");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return from_table(rows.size(), std::move(flat), std::move(label));
  }

  std::size_t order() const noexcept { return d_->order; }
  elem_t identity() const noexcept { return d_->identity; }
  elem_t mul(elem_t a, elem_t b) const noexcept { return d_->table[std::size_t(a) * d_->order + b]; }
  elem_t inv(elem_t a) const noexcept { return d_->inverse[a]; }
  elem_t conj(elem_t h, elem_t g) const noexcept { return mul(mul(h, g), inv(h)); }  // h g h^-1
  elem_t pow(elem_t g, std::uint64_t n) const noexcept {
    elem_t r = identity();
    elem_t b = g;
    while (n) {
      if (n & 1) r = mul(r, b);
      b = mul(b, b);
      n >>= 1;
    }
    return r;
  }
  const std::string& label() const noexcept { return d_->label; }
  const std::vector<std::size_t>& cyclic_factors() const noexcept { return d_->cyclic_factors; }
  const std::vector<elem_t>& table() const noexcept { return d_->table; }

  bool same_as(const FiniteGroup& o) const noexcept {
    return d_ == o.d_ || (d_->order == o.d_->order && d_->table == o.d_->table);
  }

  FiniteGroup with_label(std::string label) const {
    auto data = std::make_shared<detail::GroupData>(*d_);
    data->label = std::move(label);
    return FiniteGroup(std::move(data));
  }

  std::size_t element_order(elem_t g) const noexcept {
    std::size_t k = 1;
    for (elem_t x = g; x != identity(); x = mul(x, g)) ++k;
    return k;
  }

  std::size_t exponent() const {
    std::size_t e = 1;
    for (elem_t g = 0; g < order(); ++g) e = std::lcm(e, element_order(g));
    return e;
  }

  bool is_abelian() const noexcept {
    for (elem_t a = 0; a < order(); ++a)
      for (elem_t b = a + 1; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

 private:
  explicit FiniteGroup(std::shared_ptr<const detail::GroupData> d) : d_(std::move(d)) {}

  static void validate_and_fill(detail::GroupData& d) {
    const std::size_t n = d.order;
    auto at = [&](std::size_t a, std::size_t b) { return d.table[a * n + b]; };
    for (elem_t v : d.table)
      if (v >= n) throw InputError("table entry " + std::to_string(v) + " out of range");
    std::vector<char> seen(n);
    for (std::size_t a = 0; a < n; ++a) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t b = 0; b < n; ++b) {
        if (seen[at(a, b)]) throw InputError("table is not a Latin square (row " + std::to_string(a) + ")");
        seen[at(a, b)] = 1;
      }
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t b = 0; b < n; ++b) {
        if (seen[at(b, a)]) throw InputError("table is not a Latin square (column " + std::to_string(a) + ")");
        seen[at(b, a)] = 1;
      }
    }
    std::optional<elem_t> e;
    for (std::size_t a = 0; a < n && !e; ++a) {
      bool ok = true;
      for (std::size_t g = 0; g < n && ok; ++g) ok = at(a, g) == g && at(g, a) == g;
      if (ok) e = static_cast<elem_t>(a);
    }
    if (!e) throw InputError("table has no identity element");
    d.identity = *e;
    d.inverse.assign(n, 0);
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h)
        if (at(g, h) == *e) d.inverse[g] = static_cast<elem_t>(h);
    auto assoc_fail = [&](std::size_t a, std::size_t b, std::size_t c) {
      return at(at(a, b), c) != at(a, at(b, c));
    };
    auto fail = [](std::size_t a, std::size_t b, std::size_t c) {
      std::ostringstream os;
      os << "table is not associative at (" << a << "," << b << "," << c << ")";
      throw InputError(os.str());
    };
    if (n <= kFullAssociativityCheck) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            if (assoc_fail(a, b, c)) fail(a, b, c);
    } else {
      std::mt19937_64 rng(0x5eed);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (int i = 0; i < 200000; ++i) {
        std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
        if (assoc_fail(a, b, c)) fail(a, b, c);
      }
    }
  }

  std::shared_ptr<const detail::GroupData> d_;
};

using ElementSet = std::vector<elem_t>;  // sorted ascending

struct GroupHom {
  FiniteGroup source;
  FiniteGroup target;
  std::vector<elem_t> images;

  elem_t operator()(elem_t g) const { return images[g]; }

  // Full-table homomorphism check.
  bool verify() const {
    if (images.size() != source.order()) return false;
    if (images[source.identity()] != target.identity()) return false;
    for (elem_t g = 0; g < source.order(); ++g) {
      if (images[g] >= target.order()) return false;
      for (elem_t h = 0; h < source.order(); ++h)
        if (images[source.mul(g, h)] != target.mul(images[g], images[h])) return false;
    }
    return true;
  }
};

struct ConjugacyClassData {
  std::vector<std::size_t> class_of;
  std::vector<elem_t> representatives;
  std::vector<std::size_t> class_sizes;

  std::size_t count() const noexcept { return representatives.size(); }
};

// ---------------------------------------------------------------- builders

inline FiniteGroup make_cyclic(std::size_t n) {
  if (n == 0) throw InputError("cyclic group order must be positive");
  if (n > kMaxTableOrder) throw InputError("cyclic group order exceeds table cap");
  std::vector<elem_t> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<elem_t>((a + b) % n);
  return FiniteGroup::from_table(n, std::move(t), "C" + std::to_string(n), {n});
}

inline FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
  const std::size_t na = A.order(), nb = B.order(), n = na * nb;
  if (n > kMaxTableOrder) throw InputError("direct product order exceeds table cap");
  std::vector<elem_t> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      elem_t a = A.mul(elem_t(x / nb), elem_t(y / nb));
      elem_t b = B.mul(elem_t(x % nb), elem_t(y % nb));
      t[x * n + y] = static_cast<elem_t>(std::size_t(a) * nb + b);
    }
  std::vector<std::size_t> factors;
  if (!A.cyclic_factors().empty() && !B.cyclic_factors().empty()) {
    factors = A.cyclic_factors();
    factors.insert(factors.end(), B.cyclic_factors().begin(), B.cyclic_factors().end());
  }
  std::string label = A.label().empty() || B.label().empty() ? std::string{} : A.label() + "x" + B.label();
  return FiniteGroup::from_table(n, std::move(t), std::move(label), std::move(factors));
}

namespace detail {

inline FiniteGroup permutation_group(std::size_t m, bool even_only, std::string label) {
  if (m == 0) throw InputError("permutation degree must be positive");
  if (m > 7)
    throw InputError("permutation degree " + std::to_string(m) + " exceeds the dense-table limit (7)");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(m);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (even_only) {
      int inversions = 0;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) inversions += p[i] > p[j];
      if (inversions % 2) continue;
    }
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, elem_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index.emplace(perms[i], static_cast<elem_t>(i));
  const std::size_t n = perms.size();
  std::vector<elem_t> t(n * n);
  std::vector<int> c(m);
  // (g*h)(x) = g(h(x)): apply h first.
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t x = 0; x < m; ++x) c[x] = perms[a][perms[b][x]];
      t[a * n + b] = index.at(c);
    }
  return FiniteGroup::from_table(n, std::move(t), std::move(label));
}

}  // namespace detail

inline FiniteGroup make_symmetric(std::size_t m) {
  return detail::permutation_group(m, false, "S" + std::to_string(m));
}

inline FiniteGroup make_alternating(std::size_t m) {
  return detail::permutation_group(m, true, "A" + std::to_string(m));
}

// ------------------------------------------------------------- subgroups

inline ElementSet generated_subgroup(const FiniteGroup& G, const std::vector<elem_t>& gens) {
  std::vector<char> in(G.order());
  std::vector<elem_t> members{G.identity()};
  in[G.identity()] = 1;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (elem_t s : gens) {
      elem_t x = G.mul(members[i], s);
      if (!in[x]) {
        in[x] = 1;
        members.push_back(x);
      }
    }
  std::sort(members.begin(), members.end());
  return members;
}

inline bool is_subgroup(const FiniteGroup& G, const ElementSet& S) {
  if (S.empty()) return false;
  std::vector<char> in(G.order());
  for (elem_t s : S) in[s] = 1;
  if (!in[G.identity()]) return false;
  for (elem_t a : S) {
    if (!in[G.inv(a)]) return false;
    for (elem_t b : S)
      if (!in[G.mul(a, b)]) return false;
  }
  return true;
}

inline ConjugacyClassData conjugacy_classes(const FiniteGroup& G) {
  const std::size_t n = G.order();
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  ConjugacyClassData out;
  out.class_of.assign(n, kNone);
  for (elem_t g = 0; g < n; ++g) {
    if (out.class_of[g] != kNone) continue;
    const std::size_t id = out.representatives.size();
    out.representatives.push_back(g);
    std::size_t size = 0;
    for (elem_t h = 0; h < n; ++h) {
      elem_t c = G.conj(h, g);
      if (out.class_of[c] == kNone) {
        out.class_of[c] = id;
        ++size;
      }
    }
    out.class_sizes.push_back(size);
  }
  return out;
}

inline ElementSet centralizer(const FiniteGroup& G, const std::vector<elem_t>& S) {
  if (S.empty()) throw InputError("centralizer of an empty set");
  ElementSet out;
  for (elem_t h = 0; h < G.order(); ++h) {
    bool ok = true;
    for (std::size_t i = 0; i < S.size() && ok; ++i) ok = G.mul(h, S[i]) == G.mul(S[i], h);
    if (ok) out.push_back(h);
  }
  return out;
}

inline ElementSet center(const FiniteGroup& G) {
  std::vector<elem_t> all(G.order());
  std::iota(all.begin(), all.end(), elem_t{0});
  return centralizer(G, all);
}

inline ElementSet commutator_subgroup(const FiniteGroup& G) {
  std::vector<char> is_comm(G.order());
  for (elem_t g = 0; g < G.order(); ++g)
    for (elem_t h = 0; h < G.order(); ++h) is_comm[G.mul(G.mul(g, h), G.mul(G.inv(g), G.inv(h)))] = 1;
  std::vector<elem_t> comms;
  for (elem_t x = 0; x < G.order(); ++x)
    if (is_comm[x]) comms.push_back(x);
  return generated_subgroup(G, comms);
}

// Subgroup as a group in its own right; `embedding[i]` is the ambient index
// of subgroup element i.
struct Subgroup {
  FiniteGroup group;
  std::vector<elem_t> embedding;
};

inline Subgroup induced_subgroup(const FiniteGroup& G, const ElementSet& S, std::string label = {}) {
  if (!is_subgroup(G, S)) throw InputError("element set is not a subgroup");
  std::vector<elem_t> local(G.order(), 0);
  ElementSet sorted = S;
  std::sort(sorted.begin(), sorted.end());
  // Identity first so that the subgroup's identity is index 0 when G's is.
  auto it = std::find(sorted.begin(), sorted.end(), G.identity());
  std::rotate(sorted.begin(), it, it + 1);
  for (std::size_t i = 0; i < sorted.size(); ++i) local[sorted[i]] = static_cast<elem_t>(i);
  const std::size_t n = sorted.size();
  std::vector<elem_t> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = local[G.mul(sorted[a], sorted[b])];
  return {FiniteGroup::from_table(n, std::move(t), std::move(label)), std::move(sorted)};
}

struct Quotient {
  FiniteGroup group;
  GroupHom projection;
};

inline Quotient quotient_group(const FiniteGroup& G, const ElementSet& N) {
  if (!is_subgroup(G, N)) throw InputError("quotient by a non-subgroup");
  std::vector<char> inN(G.order());
  for (elem_t x : N) inN[x] = 1;
  for (elem_t g = 0; g < G.order(); ++g)
    for (elem_t x : N)
      if (!inN[G.conj(g, x)]) {
        std::ostringstream os;
        os << "(g=" << g << ", n=" << x << ") with g n g^-1 = " << G.conj(g, x) << " outside the subgroup";
        throw ComputationError("subgroup is not normal", os.str());
      }
  constexpr elem_t kNone = static_cast<elem_t>(-1);
  std::vector<elem_t> coset(G.order(), kNone);
  std::vector<elem_t> reps;
  // Identity's coset must come first; identity is not always index 0 in
  // hand-built tables, so seed it explicitly.
  auto add_coset = [&](elem_t g) {
    const elem_t id = static_cast<elem_t>(reps.size());
    reps.push_back(g);
    for (elem_t x : N) coset[G.mul(g, x)] = id;
  };
  add_coset(G.identity());
  for (elem_t g = 0; g < G.order(); ++g)
    if (coset[g] == kNone) add_coset(g);
  const std::size_t q = reps.size();
  std::vector<elem_t> t(q * q);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b) t[a * q + b] = coset[G.mul(reps[a], reps[b])];
  FiniteGroup Q = FiniteGroup::from_table(q, std::move(t), G.label().empty() ? "" : G.label() + "/N");
  GroupHom proj{G, Q, coset};
  if (!proj.verify()) throw ComputationError("quotient projection failed verification");
  return {std::move(Q), std::move(proj)};
}

// ------------------------------------------------------- homomorphisms

// Greedy generating sequence: each step adds the element (lowest index on
// ties) whose addition yields the largest generated subgroup.
inline std::vector<elem_t> generating_sequence(const FiniteGroup& G, std::size_t max_length = kMaxGeneratorLength) {
  std::vector<elem_t> gens;
  ElementSet current{G.identity()};
  while (current.size() < G.order()) {
    if (gens.size() == max_length)
      throw ComputationError("no generating sequence of length <= " + std::to_string(max_length) + " found for group of order " +
                             std::to_string(G.order()));
    std::vector<char> in(G.order());
    for (elem_t x : current) in[x] = 1;
    elem_t best = 0;
    std::size_t best_size = 0;
    for (elem_t g = 0; g < G.order(); ++g) {
      if (in[g]) continue;
      auto trial = gens;
      trial.push_back(g);
      std::size_t s = generated_subgroup(G, trial).size();
      if (s > best_size) {
        best_size = s;
        best = g;
      }
    }
    gens.push_back(best);
    current = generated_subgroup(G, gens);
  }
  return gens;
}

namespace detail {

// Extends a partial map over the subgroup generated by gens[0..level]; returns
// false on the first inconsistency.
inline bool close_partial_map(const FiniteGroup& G, const FiniteGroup& H, const std::vector<elem_t>& gens,
                              const std::vector<elem_t>& gen_images, std::vector<elem_t>& img, std::vector<elem_t>& members) {
  constexpr elem_t kNone = static_cast<elem_t>(-1);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const elem_t x = members[i];
    for (std::size_t j = 0; j < gen_images.size(); ++j) {
      const elem_t y = G.mul(x, gens[j]);
      const elem_t want = H.mul(img[x], gen_images[j]);
      if (img[y] == kNone) {
        img[y] = want;
        members.push_back(y);
      } else if (img[y] != want) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

// All homomorphisms G -> H, lexicographic in the images of the generating
// sequence, each verified against the full table.
inline std::vector<GroupHom> enumerate_homomorphisms(const FiniteGroup& G, const FiniteGroup& H) {
  if (G.order() > kMaxEnumerationOrder)
    throw ComputationError("homomorphism enumeration limited to source order <= " + std::to_string(kMaxEnumerationOrder));
  const auto gens = generating_sequence(G);
  constexpr elem_t kNone = static_cast<elem_t>(-1);
  std::vector<std::size_t> gen_order(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) gen_order[i] = G.element_order(gens[i]);
  std::vector<std::size_t> h_order(H.order());
  for (elem_t h = 0; h < H.order(); ++h) h_order[h] = H.element_order(h);

  std::vector<GroupHom> out;
  std::vector<elem_t> gen_images;
  auto recurse = [&](auto&& self, std::size_t level, const std::vector<elem_t>& img, const std::vector<elem_t>& members) -> void {
    if (level == gens.size()) {
      GroupHom f{G, H, img};
      if (!f.verify()) throw ComputationError("internal: enumerated map failed homomorphism verification");
      out.push_back(std::move(f));
      return;
    }
    for (elem_t t = 0; t < H.order(); ++t) {
      if (gen_order[level] % h_order[t] != 0) continue;
      gen_images.push_back(t);
      auto next_img = img;
      auto next_members = members;
      if (detail::close_partial_map(G, H, gens, gen_images, next_img, next_members)) self(self, level + 1, next_img, next_members);
      gen_images.pop_back();
    }
  };
  std::vector<elem_t> img(G.order(), kNone);
  img[G.identity()] = H.identity();
  recurse(recurse, 0, img, {G.identity()});
  return out;
}

// Classes of Hom(G,H) under conjugation in H; each inner vector holds
// indices into `homs` in increasing order, classes ordered by first member.
inline std::vector<std::vector<std::size_t>> rep_classes(const std::vector<GroupHom>& homs) {
  std::map<std::vector<elem_t>, std::size_t> index;
  for (std::size_t i = 0; i < homs.size(); ++i) index.emplace(homs[i].images, i);
  std::vector<std::size_t> cls(homs.size(), static_cast<std::size_t>(-1));
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < homs.size(); ++i) {
    if (cls[i] != static_cast<std::size_t>(-1)) continue;
    const auto& H = homs[i].target;
    std::set<std::size_t> members;
    for (elem_t h = 0; h < H.order(); ++h) {
      std::vector<elem_t> conj(homs[i].images.size());
      for (std::size_t g = 0; g < conj.size(); ++g) conj[g] = H.conj(h, homs[i].images[g]);
      members.insert(index.at(conj));
    }
    for (std::size_t m : members) cls[m] = out.size();
    out.emplace_back(members.begin(), members.end());
  }
  return out;
}

inline std::vector<std::vector<std::size_t>> rep_classes(const FiniteGroup& G, const FiniteGroup& H) {
  return rep_classes(enumerate_homomorphisms(G, H));
}

}  // namespace dcenter
