#pragma once

// Command-line front end. run() is the whole program minus main(), so the
// test suite can drive it in-process with string streams.
//
// Exit codes: 0 success, 1 computation or input-file error, 2 usage error.

#include <cstdlib>
#include <iostream>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "dcenter/bands.hpp"
#include "dcenter/center.hpp"
#include "dcenter/cochain.hpp"
#include "dcenter/error.hpp"
#include "dcenter/group.hpp"
#include "dcenter/io.hpp"

namespace dcenter::cli {

using io::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandRequest {
  std::string subcommand;
  std::string group_spec;
  std::optional<std::string> cocycle_spec;
  std::optional<std::int64_t> modulus;
  bool json = false;
  std::vector<std::string> specs;    // lift / center-report
  std::optional<elem_t> gamma_at;    // cohomology --gamma
  std::optional<std::size_t> class_index;  // obstruction --class
  std::string universe;              // bands families
};

// DCENTER_THREADS, else the hardware concurrency.
inline unsigned thread_count() {
  if (const char* s = std::getenv("DCENTER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

struct Context {
  io::LoadedGroup group;
  std::int64_t modulus = 0;
};

inline Context load_group(const CommandRequest& req) {
  Context c{io::parse_group_spec(req.group_spec), 0};
  const auto e = static_cast<std::int64_t>(c.group.group.exponent());
  if (req.modulus) {
    if (*req.modulus <= 0 || *req.modulus % e != 0)
      throw UsageError("--modulus " + std::to_string(*req.modulus) + " must be a positive multiple of exponent(G) = " +
                       std::to_string(e));
    c.modulus = *req.modulus;
  } else {
    c.modulus = e;
    if (req.cocycle_spec)
      if (auto m = io::cocycle_spec_modulus(*req.cocycle_spec)) c.modulus = std::lcm(c.modulus, *m);
  }
  return c;
}

inline io::LoadedCocycle load_cocycle(const CommandRequest& req, const Context& c) {
  if (!req.cocycle_spec) throw UsageError(req.subcommand + " requires --cocycle (zero, cup:i,j,k[:N] or file:<path>)");
  return io::parse_cocycle_spec(*req.cocycle_spec, c.group.group, c.modulus);
}

inline std::string join(const std::vector<std::size_t>& v, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

template <class T>
std::vector<std::size_t> widen(const std::vector<T>& v) {
  return {v.begin(), v.end()};
}

inline std::string factors_text(const AbelianGroupDescriptor& a) {
  if (a.invariant_factors.empty()) return "trivial";
  std::string s;
  for (std::size_t i = 0; i < a.invariant_factors.size(); ++i)
    s += (i ? " x " : "") + ("Z/" + std::to_string(a.invariant_factors[i]));
  return s;
}

inline void emit(std::ostream& out, const json& j) { out << io::dump(j); }

// ---------------------------------------------------------------- commands

inline int group_info(const CommandRequest& req, std::ostream& out) {
  const auto c = load_group(req);
  const FiniteGroup& G = c.group.group;
  const auto cls = conjugacy_classes(G);
  const auto Z = center(G);
  const auto D = commutator_subgroup(G);
  json j = {{"group", G.label()},
            {"order", G.order()},
            {"exponent", G.exponent()},
            {"abelian", G.is_abelian()},
            {"class_count", cls.count()},
            {"class_sizes", cls.class_sizes},
            {"representatives", cls.representatives},
            {"center_order", Z.size()},
            {"commutator_order", D.size()}};
  if (!c.group.relabeling.empty()) j["relabeling"] = c.group.relabeling;
  if (req.json) {
    emit(out, j);
    return kExitOk;
  }
  out << "group: " << G.label() << "\n"
      << "order: " << G.order() << "\n"
      << "exponent: " << G.exponent() << "\n"
      << "abelian: " << (G.is_abelian() ? "yes" : "no") << "\n"
      << "classes: " << cls.count() << "\n"
      << "class sizes: " << join(cls.class_sizes) << "\n"
      << "representatives: " << join(widen(cls.representatives)) << "\n"
      << "center order: " << Z.size() << "\n"
      << "commutator subgroup order: " << D.size() << "\n";
  if (!c.group.relabeling.empty())
    out << "relabeling (old -> new): identity moved to index 0: " << join(widen(c.group.relabeling)) << "\n";
  return kExitOk;
}

inline int cohomology(const CommandRequest& req, std::ostream& out) {
  const auto c = load_group(req);
  const FiniteGroup& G = c.group.group;
  const auto omega = load_cocycle(req, c);
  const auto v = is_cocycle(omega.cochain);
  if (!v.is_cocycle)
    throw ComputationError("associator is not a 3-cocycle", "delta nonzero at " + Cochain::format_tuple(*v.failure_certificate));
  json j = {{"group", G.label()},
            {"modulus", c.modulus},
            {"source_modulus", omega.source_modulus},
            {"normalized_on_load", omega.normalized_on_load},
            {"is_cocycle", true}};
  if (req.gamma_at) {
    const elem_t z = *req.gamma_at;
    if (z >= G.order()) throw InputError("--gamma element " + std::to_string(z) + " out of range 0.." + std::to_string(G.order() - 1));
    if (!is_central(G, z)) throw InputError("--gamma element " + std::to_string(z) + " is not central");
    const Cochain gm = gamma_unchecked(omega.cochain, z);
    const auto zn = is_coboundary(gm);
    const auto units = vanishes_in_units(gm);
    j["gamma"] = {{"z", z},
                  {"values", io::cocycle_to_json(gm)},
                  {"is_cocycle", zn.is_cocycle},
                  {"is_coboundary_mod_n", zn.is_coboundary},
                  {"vanishes_in_units", units.is_coboundary}};
  }
  if (req.json) {
    emit(out, j);
    return kExitOk;
  }
  out << "group: " << G.label() << "\nmodulus: " << c.modulus << "\n"
      << "omega: 3-cocycle" << (omega.normalized_on_load ? " (normalized on load)" : "") << "\n";
  if (req.gamma_at) {
    const auto& g = j["gamma"];
    out << "gamma at " << *req.gamma_at << ": " << g["values"]["entries"].size() << " nonzero entries\n";
    for (const auto& e : g["values"]["entries"]) out << "  gamma(" << e[0] << "," << e[1] << ") = " << e[2] << "\n";
    out << "gamma is a 2-cocycle: " << (g["is_cocycle"].get<bool>() ? "yes" : "no") << "\n"
        << "coboundary in Z/N: " << (g["is_coboundary_mod_n"].get<bool>() ? "yes" : "no") << "\n"
        << "vanishes in H^2(G, K^x): " << (g["vanishes_in_units"].get<bool>() ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

inline CenterEngine make_engine(const CommandRequest& req, const Context& c) {
  auto omega = load_cocycle(req, c);
  return CenterEngine(PointedCategory(c.group.group, std::move(omega.cochain)), thread_count());
}

inline int obstruction_cmd(const CommandRequest& req, std::ostream& out) {
  const auto c = load_group(req);
  const auto engine = make_engine(req, c);
  const auto report = engine.report();
  if (req.class_index && *req.class_index >= engine.classes().count())
    throw UsageError("--class " + std::to_string(*req.class_index) + " out of range 0.." +
                     std::to_string(engine.classes().count() - 1));
  const json full = io::report_to_json(report)["obstructions"];
  json sel = json::array();
  for (std::size_t i = 0; i < full.size(); ++i)
    if (!req.class_index || *req.class_index == i) sel.push_back(full[i]);
  if (req.json) {
    emit(out, {{"group", report.group_label}, {"modulus", report.modulus}, {"obstructions", sel}});
    return kExitOk;
  }
  out << "group: " << report.group_label << "  modulus: " << report.modulus << "\n";
  for (const auto& o : sel) {
    out << "class " << o["class"] << " (rep " << o["representative"] << ", |C| = " << o["centralizer_order"]
        << "): " << (o["vanishes"].get<bool>() ? "vanishes" : "non-vanishing")
        << "; irreps " << o["irreps"]["dimensions"].dump() << "\n";
  }
  return kExitOk;
}

inline std::vector<CentralObjectSpec> parse_specs(const CommandRequest& req, std::size_t classes) {
  std::vector<CentralObjectSpec> specs;
  for (const auto& s : req.specs) specs.push_back(io::parse_object_spec(s, classes));
  return specs;
}

inline int center_report(const CommandRequest& req, std::ostream& out) {
  const auto c = load_group(req);
  const auto engine = make_engine(req, c);
  const auto report = engine.report(parse_specs(req, engine.classes().count()));
  if (req.json) {
    emit(out, io::report_to_json(report));
    return kExitOk;
  }
  out << "group: " << report.group_label << " (order " << report.group_order << ")\n"
      << "modulus: " << report.modulus << "\n"
      << "E1^{0,0}: free commutative monoid of rank " << report.e1_00_rank << "\n"
      << "E2^{0,0}: spanned by " << report.e2_00.size() << " class sums\n"
      << "E1^{0,1} = E2^{0,1}: K^x\n"
      << "E1^{1,1}: (K^x)^" << report.e1_11_rank << "\n"
      << "E1^{2,1}: " << report.e1_21_copies << " copies of K^x\n"
      << "E2^{1,1} = kernel of characteristic map: " << factors_text(report.e2_11) << " (order "
      << report.e2_11.order() << ")\n"
      << "universal grading group: U = G\n";
  for (std::size_t i = 0; i < report.obstructions.size(); ++i) {
    const auto& o = report.obstructions[i];
    out << "class " << i << " (rep " << o.representative << ", size " << report.classes.class_sizes[i]
        << ", |C| = " << o.centralizer.group.order() << "): " << (o.vanishes() ? "vanishes" : "non-vanishing")
        << "; irreps [" << join(report.profiles[i].dimensions) << "]\n";
  }
  for (const auto& l : report.lifts)
    out << "lift [" << join(widen(l.spec.multiplicities)) << "]: " << l.count << "\n";
  out << "simple central objects: " << report.simple_central_objects << "\n";
  return kExitOk;
}

inline int lift(const CommandRequest& req, std::ostream& out) {
  if (req.specs.empty()) throw UsageError("lift requires --spec \"class:multiplicity,...\"");
  const auto c = load_group(req);
  const auto engine = make_engine(req, c);
  json lifts = json::array();
  for (const auto& s : parse_specs(req, engine.classes().count()))
    lifts.push_back({{"spec", s.multiplicities}, {"count", engine.lift_count(s)}});
  if (req.json) {
    emit(out, {{"group", c.group.group.label()}, {"modulus", c.modulus}, {"lifts", lifts}});
    return kExitOk;
  }
  for (const auto& l : lifts) out << "lift " << l["spec"].dump() << ": " << l["count"] << "\n";
  return kExitOk;
}

inline int simples(const CommandRequest& req, std::ostream& out) {
  const auto c = load_group(req);
  const auto engine = make_engine(req, c);
  const auto s = engine.count_simple_central_objects();
  if (req.json)
    emit(out, {{"group", c.group.group.label()}, {"modulus", c.modulus}, {"simple_central_objects", s}});
  else
    out << "simple central objects: " << s << "\n";
  return kExitOk;
}

inline int bands_types(const CommandRequest& req, std::ostream& out) {
  const auto c = io::parse_group_spec(req.group_spec);
  if (c.group.order() > kMaxEnumerationOrder)
    throw InputError("endomorphism enumeration limited to |G| <= " + std::to_string(kMaxEnumerationOrder));
  const auto r = conjugacy_types(c.group);
  if (req.json) {
    emit(out, io::conjugacy_types_to_json(r));
    return kExitOk;
  }
  out << "group: " << r.group.label() << "\nresidues mod " << r.modulus << " with a conjugacy-type-n endomorphism: "
      << join(std::vector<std::size_t>(r.types.begin(), r.types.end())) << "\n";
  return kExitOk;
}

inline int bands_families(const CommandRequest& req, std::ostream& out) {
  std::vector<FiniteGroup> universe;
  for (const auto& s : io::split(req.universe, ',')) {
    auto g = io::parse_group_spec(s).group;
    if (g.order() > kMaxEnumerationOrder)
      throw InputError("endomorphism enumeration limited to |G| <= " + std::to_string(kMaxEnumerationOrder));
    universe.push_back(std::move(g));
  }
  const auto f = band_center_families(universe);
  if (req.json) {
    emit(out, io::families_to_json(f));
    return kExitOk;
  }
  out << "residues mod " << f.modulus << " admitted by every group (upper bound on the center over this universe): "
      << join(std::vector<std::size_t>(f.residues.begin(), f.residues.end())) << "\n";
  return kExitOk;
}

}  // namespace detail

inline int dispatch(const CommandRequest& req, std::ostream& out) {
  if (req.subcommand == "group-info") return detail::group_info(req, out);
  if (req.subcommand == "cohomology") return detail::cohomology(req, out);
  if (req.subcommand == "obstruction") return detail::obstruction_cmd(req, out);
  if (req.subcommand == "center-report") return detail::center_report(req, out);
  if (req.subcommand == "lift") return detail::lift(req, out);
  if (req.subcommand == "simples") return detail::simples(req, out);
  if (req.subcommand == "bands types") return detail::bands_types(req, out);
  if (req.subcommand == "bands families") return detail::bands_families(req, out);
  throw UsageError("unknown subcommand '" + req.subcommand + "'");
}

// Runs a request, mapping exceptions to exit codes and messages on `err`.
inline int run(const CommandRequest& req, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(req, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const io::SpecError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitComputation;
  } catch (const ComputationError& e) {
    err << "computation error: " << e.what() << "\n";
    if (!e.certificate().empty()) err << "certificate: " << e.certificate() << "\n";
    return kExitComputation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitComputation;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Drinfeld-center invariants of pointed fusion categories Vec_G^omega", "dcenter"};
  app.require_subcommand(1);
  CommandRequest req;
  std::int64_t modulus = 0;
  std::string cocycle;
  std::int64_t gamma_at = -1;
  std::int64_t class_index = -1;

  auto common = [&](CLI::App* sub, bool with_cocycle) {
    sub->add_option("--group,-g", req.group_spec, "C<n>, C<a>xC<b>x..., S<m>, A<m> or file:<path>")->required();
    sub->add_option("--modulus,-N", modulus, "coefficient modulus (multiple of exponent(G); default exponent(G))");
    if (with_cocycle) sub->add_option("--cocycle,-w", cocycle, "zero, cup:i,j,k[:N] or file:<path>");
    sub->add_flag("--json", req.json, "emit JSON");
  };
  auto* info = app.add_subcommand("group-info", "order, classes, center of a group");
  common(info, false);
  auto* coh = app.add_subcommand("cohomology", "check a 3-cocycle; optionally gamma at a central element");
  common(coh, true);
  coh->add_option("--gamma", gamma_at, "central element z for gamma_{omega,z}");
  auto* obs = app.add_subcommand("obstruction", "per-class obstruction verdicts");
  common(obs, true);
  obs->add_option("--class", class_index, "restrict to one class index");
  auto* rep = app.add_subcommand("center-report", "E-page terms, obstructions, kernel, lifts");
  common(rep, true);
  rep->add_option("--spec", req.specs, "central object spec \"class:multiplicity,...\" (repeatable)");
  auto* lft = app.add_subcommand("lift", "count central structures on a class-sum object");
  common(lft, true);
  lft->add_option("--spec", req.specs, "\"class:multiplicity,...\" (repeatable)");
  auto* smp = app.add_subcommand("simples", "count simple central objects");
  common(smp, true);
  auto* bands = app.add_subcommand("bands", "conjugacy-type endomorphisms");
  bands->require_subcommand(1);
  auto* types = bands->add_subcommand("types", "residues n with a conjugacy-type-n endomorphism");
  types->add_option("--group,-g", req.group_spec)->required();
  types->add_flag("--json", req.json);
  auto* fam = bands->add_subcommand("families", "residues admitted by every group in a universe");
  fam->add_option("--universe,-u", req.universe, "comma-separated group specs")->required();
  fam->add_flag("--json", req.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  for (auto* s : {info, coh, obs, rep, lft, smp})
    if (s->parsed()) req.subcommand = s->get_name();
  if (types->parsed()) req.subcommand = "bands types";
  if (fam->parsed()) req.subcommand = "bands families";
  for (auto* s : {info, coh, obs, rep, lft, smp})
    if (s->parsed() && s->count("--modulus")) req.modulus = modulus;
  if (!cocycle.empty()) req.cocycle_spec = cocycle;
  if ((coh->count("--gamma") && gamma_at < 0) || (obs->count("--class") && class_index < 0)) {
    err << "usage error: element and class indices must be non-negative\n";
    return kExitUsage;
  }
  if (coh->count("--gamma")) req.gamma_at = static_cast<elem_t>(gamma_at);
  if (obs->count("--class")) req.class_index = static_cast<std::size_t>(class_index);
  return run(req, out, err);
}

}  // namespace dcenter::cli
