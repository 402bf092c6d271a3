#pragma once

// Text formats: group spec strings, group table files, cocycle files and
// specs, and the JSON form of reports. JSON objects use sorted keys, so
// parse -> dump is byte-stable.

#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "dcenter/bands.hpp"
#include "dcenter/center.hpp"
#include "dcenter/cochain.hpp"
#include "dcenter/error.hpp"
#include "dcenter/group.hpp"

namespace dcenter::io {

using json = nlohmann::json;

// A spec string that does not parse, as opposed to a file whose contents are bad.
class SpecError : public InputError {
 public:
  using InputError::InputError;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json_file(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  if (s.empty() || s.size() > 18 || s.find_first_not_of("0123456789") != std::string::npos)
    throw SpecError("expected a non-negative integer for " + what + ", got '" + s + "'");
  return std::stoull(s);
}

// ------------------------------------------------------------------ groups

struct LoadedGroup {
  FiniteGroup group;
  // relabeling[old] = new; empty when the file already had identity 0.
  std::vector<elem_t> relabeling;
};

// {"order": n, "table": [[...]], "label": "..."}; the identity is moved to
// index 0 by swapping it with whatever sat there.
inline LoadedGroup group_from_json(const json& j, const std::string& origin = "group file") {
  if (!j.is_object() || !j.contains("table")) throw InputError(origin + ": expected an object with a \"table\" array");
  const auto& rows = j.at("table");
  if (!rows.is_array()) throw InputError(origin + ": \"table\" must be an array of rows");
  const std::size_t n = rows.size();
  if (j.contains("order") && (!j.at("order").is_number_unsigned() || j.at("order").get<std::size_t>() != n))
    throw InputError(origin + ": \"order\" does not match the number of table rows");
  if (n == 0) throw InputError(origin + ": empty table");
  if (n > kMaxTableOrder) throw InputError(origin + ": order " + std::to_string(n) + " exceeds table cap");
  std::vector<elem_t> flat;
  flat.reserve(n * n);
  for (const auto& r : rows) {
    if (!r.is_array() || r.size() != n) throw InputError(origin + ": table is not square");
    for (const auto& v : r) {
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= n)
        throw InputError(origin + ": table entry out of range 0.." + std::to_string(n - 1));
      flat.push_back(v.get<elem_t>());
    }
  }
  std::string label = j.value("label", std::string{});
  std::optional<elem_t> e;
  for (std::size_t a = 0; a < n && !e; ++a) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = flat[a * n + g] == g && flat[g * n + a] == g;
    if (ok) e = static_cast<elem_t>(a);
  }
  LoadedGroup out{FiniteGroup::from_table(n, flat, label), {}};
  if (e && *e != 0) {
    std::vector<elem_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::swap(sigma[0], sigma[*e]);
    std::vector<elem_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) t[std::size_t(sigma[a]) * n + sigma[b]] = sigma[flat[a * n + b]];
    out.group = FiniteGroup::from_table(n, std::move(t), label);
    out.relabeling = std::move(sigma);
  }
  return out;
}

inline json group_to_json(const FiniteGroup& G) {
  json rows = json::array();
  for (elem_t a = 0; a < G.order(); ++a) {
    json r = json::array();
    for (elem_t b = 0; b < G.order(); ++b) r.push_back(G.mul(a, b));
    rows.push_back(std::move(r));
  }
  return {{"order", G.order()}, {"table", std::move(rows)}, {"label", G.label()}};
}

// "C<n>", "S<m>", "A<m>", products joined by 'x', or "file:<path>".
inline LoadedGroup parse_group_spec(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    auto g = group_from_json(parse_json_file(path), "'" + path + "'");
    if (g.group.label().empty()) g.group = g.group.with_label(path);
    return g;
  }
  if (spec.empty()) throw SpecError("empty group spec");
  std::optional<FiniteGroup> G;
  for (const auto& part : split(spec, 'x')) {
    if (part.size() < 2) throw SpecError("bad group factor '" + part + "' in '" + spec + "'");
    const std::size_t m = parse_uint(part.substr(1), "group factor '" + part + "'");
    FiniteGroup f = [&] {
      switch (part[0]) {
        case 'C':
          if (m == 0) throw SpecError("cyclic group order must be positive");
          if (m > kMaxTableOrder) throw SpecError("cyclic group order exceeds table cap");
          return make_cyclic(m);
        case 'S':
          if (m == 0 || m > 7) throw SpecError("symmetric degree must be in 1..7");
          return make_symmetric(m);
        case 'A':
          if (m == 0 || m > 7) throw SpecError("alternating degree must be in 1..7");
          return make_alternating(m);
        default:
          throw SpecError("unknown group family '" + part.substr(0, 1) + "' in '" + spec + "' (use C, S, A or file:)");
      }
    }();
    if (G && G->order() * f.order() > kMaxTableOrder) throw SpecError("group '" + spec + "' exceeds table cap");
    G = G ? direct_product(*G, f) : f;
  }
  return {G->with_label(spec), {}};
}

// ------------------------------------------------------------------ cochains

struct LoadedCocycle {
  Cochain cochain;
  std::int64_t source_modulus = 0;  // modulus the values were given in
  bool normalized_on_load = false;  // a coboundary was subtracted
};

// Values given mod M are embedded into Z/N via multiplication by N/M.
inline std::vector<std::int64_t> rescale(std::vector<std::int64_t> v, std::int64_t M, std::int64_t N) {
  if (N % M != 0)
    throw InputError("cocycle modulus " + std::to_string(M) + " does not divide working modulus " + std::to_string(N));
  for (auto& x : v) x = modular::reduce(x, M) * (N / M);
  return v;
}

// {"modulus": M, "degree": k, "entries": [[g_1,...,g_k, v], ...]}
inline LoadedCocycle cocycle_from_json(const json& j, const FiniteGroup& G, std::optional<std::int64_t> N,
                                       const std::string& origin = "cocycle file") {
  if (!j.is_object()) throw InputError(origin + ": expected a JSON object");
  for (const char* key : {"modulus", "degree", "entries"})
    if (!j.contains(key)) throw InputError(origin + ": missing \"" + std::string(key) + "\"");
  if (!j.at("modulus").is_number_integer() || j.at("modulus").get<std::int64_t>() <= 0)
    throw InputError(origin + ": \"modulus\" must be a positive integer");
  if (!j.at("degree").is_number_integer()) throw InputError(origin + ": \"degree\" must be an integer");
  const auto M = j.at("modulus").get<std::int64_t>();
  const auto k = j.at("degree").get<std::int64_t>();
  if (k < 1 || k > 3) throw InputError(origin + ": degree " + std::to_string(k) + " out of range 1..3");
  const std::size_t n = G.order();
  if (n > (k == 3 ? kMaxOrderDegree3 : kMaxOrderLowDegree))
    throw InputError(origin + ": group too large for degree-" + std::to_string(k) + " cochains");
  std::vector<std::int64_t> raw(Cochain::tuple_count(n, static_cast<std::size_t>(k)), 0);
  const auto& entries = j.at("entries");
  if (!entries.is_array()) throw InputError(origin + ": \"entries\" must be an array");
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const auto& row = entries[e];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(k) + 1)
      throw InputError(origin + ": entry " + std::to_string(e) + " must have " + std::to_string(k + 1) + " numbers");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
      if (!row[i].is_number_unsigned() || row[i].get<std::uint64_t>() >= n)
        throw InputError(origin + ": entry " + std::to_string(e) + " has element index out of range 0.." +
                         std::to_string(n - 1));
      idx = idx * n + row[i].get<std::size_t>();
    }
    if (!row[k].is_number_integer()) throw InputError(origin + ": entry " + std::to_string(e) + " has a non-integer value");
    raw[idx] = modular::reduce(row[k].get<std::int64_t>(), M);
  }
  const std::int64_t target = N ? *N : M;
  auto norm = normalize_cocycle(G, static_cast<std::size_t>(k), target, rescale(std::move(raw), M, target));
  return {std::move(norm.normalized), M, norm.changed};
}

inline json cocycle_to_json(const Cochain& f) {
  json entries = json::array();
  Cochain::Tuple t;
  for (std::size_t idx = 0; idx < f.dense().size(); ++idx) {
    if (f.dense()[idx] == 0) continue;
    f.decode(idx, t);
    json row(t);
    row.push_back(f.dense()[idx]);
    entries.push_back(std::move(row));
  }
  return {{"modulus", f.modulus()}, {"degree", f.degree()}, {"entries", std::move(entries)}};
}

// Modulus a cocycle spec carries on its own, if any ("cup:..:M" or a file).
inline std::optional<std::int64_t> cocycle_spec_modulus(const std::string& spec) {
  if (spec.rfind("cup:", 0) == 0) {
    auto parts = split(spec.substr(4), ':');
    if (parts.size() == 2) return static_cast<std::int64_t>(parse_uint(parts[1], "cup modulus"));
    return std::nullopt;
  }
  if (spec.rfind("file:", 0) == 0) {
    const auto j = parse_json_file(spec.substr(5));
    if (j.is_object() && j.contains("modulus") && j.at("modulus").is_number_integer())
      return j.at("modulus").get<std::int64_t>();
  }
  return std::nullopt;
}

// "zero", "cup:i,j,k[:M]" or "file:<path>", as a degree-3 cocycle mod N.
inline LoadedCocycle parse_cocycle_spec(const std::string& spec, const FiniteGroup& G, std::int64_t N) {
  if (spec == "zero") return {Cochain(G, 3, N), N, false};
  if (spec.rfind("cup:", 0) == 0) {
    auto parts = split(spec.substr(4), ':');
    if (parts.size() > 2) throw SpecError("bad cup spec '" + spec + "' (expected cup:i,j,k[:N])");
    auto idx = split(parts[0], ',');
    if (idx.size() != 3) throw SpecError("cup spec needs three factor indices: '" + spec + "'");
    const std::int64_t M = parts.size() == 2 ? static_cast<std::int64_t>(parse_uint(parts[1], "cup modulus")) : N;
    if (M <= 0) throw SpecError("cup modulus must be positive");
    Cochain c = [&] {
      try {
        return cup3(G, parse_uint(idx[0], "factor index"), parse_uint(idx[1], "factor index"),
                    parse_uint(idx[2], "factor index"), M);
      } catch (const SpecError&) {
        throw;
      } catch (const InputError& e) {
        throw SpecError(std::string("cup spec '") + spec + "': " + e.what());
      }
    }();
    if (M == N) return {std::move(c), M, false};
    return {Cochain::from_dense(G, 3, N, rescale(c.dense(), M, N)), M, false};
  }
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    auto loaded = cocycle_from_json(parse_json_file(path), G, N, "'" + path + "'");
    if (loaded.cochain.degree() != 3)
      throw InputError("'" + path + "': associator must have degree 3, got " + std::to_string(loaded.cochain.degree()));
    return loaded;
  }
  throw SpecError("unknown cocycle spec '" + spec + "' (use zero, cup:i,j,k[:N] or file:<path>)");
}

// "i:m,j:m2,..." with absent classes 0.
inline CentralObjectSpec parse_object_spec(const std::string& s, std::size_t class_count) {
  CentralObjectSpec spec{std::vector<std::uint64_t>(class_count, 0)};
  if (s.empty()) return spec;
  for (const auto& item : split(s, ',')) {
    auto kv = split(item, ':');
    if (kv.size() != 2) throw SpecError("bad spec item '" + item + "' (expected class:multiplicity)");
    const std::size_t i = parse_uint(kv[0], "class index");
    if (i >= class_count)
      throw SpecError("class index " + std::to_string(i) + " out of range 0.." + std::to_string(class_count - 1));
    spec.multiplicities[i] += parse_uint(kv[1], "multiplicity");
  }
  return spec;
}

// ------------------------------------------------------------------ reports

inline json profile_to_json(const IrrepProfile& p) {
  return {{"dimensions", p.dimensions}, {"regular_classes", p.regular_class_count}, {"method", to_string(p.method)}};
}

inline json abelian_to_json(const AbelianGroupDescriptor& a) {
  return {{"invariant_factors", a.invariant_factors}, {"order", a.order()}};
}

inline json report_to_json(const CenterReport& r) {
  json classes = json::array();
  for (std::size_t i = 0; i < r.classes.count(); ++i)
    classes.push_back({{"index", i}, {"representative", r.classes.representatives[i]}, {"size", r.classes.class_sizes[i]}});
  json sums = json::array();
  for (const auto& s : r.e2_00) {
    const auto it = std::find(s.multiplicities.begin(), s.multiplicities.end(), 1u);
    sums.push_back(it - s.multiplicities.begin());
  }
  json pages = {
      {"e1_00", {{"monoid", "free commutative"}, {"rank", r.e1_00_rank}}},
      {"e2_00", {{"class_sums", std::move(sums)}}},
      {"e1_01", "K^x"},
      {"e1_11", {{"group", "(K^x)^n"}, {"rank", r.e1_11_rank}}},
      {"e1_21", {{"group", "(K^x)^(n^2)"}, {"copies", r.e1_21_copies}}},
      {"e2_01", "K^x"},
      {"e2_11", abelian_to_json(r.e2_11)},
      {"universal_grading", "U = G"},
  };
  json obs = json::array();
  for (std::size_t i = 0; i < r.obstructions.size(); ++i) {
    const auto& o = r.obstructions[i];
    obs.push_back({{"class", o.class_index},
                   {"representative", o.representative},
                   {"centralizer_order", o.centralizer.group.order()},
                   {"gamma_is_zero", o.gamma.is_zero()},
                   {"vanishes", o.vanishes()},
                   {"irreps", profile_to_json(r.profiles[i])}});
  }
  json lifts = json::array();
  for (const auto& l : r.lifts) lifts.push_back({{"spec", l.spec.multiplicities}, {"count", l.count}});
  return {{"group", r.group_label},
          {"order", r.group_order},
          {"modulus", r.modulus},
          {"classes", std::move(classes)},
          {"e_pages", std::move(pages)},
          {"obstructions", std::move(obs)},
          {"kernel_char", abelian_to_json(r.e2_11)},
          {"lifts", std::move(lifts)},
          {"simple_central_objects", r.simple_central_objects}};
}

inline json conjugacy_types_to_json(const ConjugacyTypeResult& r) {
  json w = json::object();
  for (const auto& [n, alpha] : r.witnesses) w[std::to_string(n)] = alpha.images;
  return {{"group", r.group.label()}, {"modulus", r.modulus}, {"types", r.types}, {"witnesses", std::move(w)}};
}

inline json families_to_json(const BandCenterFamilies& f) {
  json per = json::array();
  for (const auto& r : f.per_group) per.push_back(conjugacy_types_to_json(r));
  return {{"modulus", f.modulus},
          {"residues", f.residues},
          {"per_group", std::move(per)},
          {"note", "upper bound on the center over this universe"}};
}

// Canonical text form used for every JSON emission.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace dcenter::io
