#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "dcenter/cli.hpp"
#include "test_support.hpp"

using namespace dcenter;

namespace {

const std::string kData = DCENTER_TEST_DATA;

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dcenter");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

// ------------------------------------------------------------------ parsing

TEST(GroupSpec, Builtins) {
  EXPECT_EQ(io::parse_group_spec("C5").group.order(), 5u);
  auto g = io::parse_group_spec("C2xC2xC2").group;
  EXPECT_EQ(g.order(), 8u);
  EXPECT_EQ(g.cyclic_factors(), (std::vector<std::size_t>{2, 2, 2}));
  EXPECT_EQ(g.label(), "C2xC2xC2");
  EXPECT_EQ(io::parse_group_spec("S4").group.order(), 24u);
  EXPECT_EQ(io::parse_group_spec("A5").group.order(), 60u);
  EXPECT_EQ(io::parse_group_spec("C2xS3").group.order(), 12u);
}

TEST(GroupSpec, Errors) {
  for (const char* bad : {"", "Q8", "C", "Cx", "C0", "S9", "C2xx", "C-1", "S3 "})
    EXPECT_THROW(io::parse_group_spec(bad), io::SpecError) << bad;
  EXPECT_THROW(io::parse_group_spec("file:/nonexistent/q.json"), InputError);
}

TEST(GroupFile, LoadsAndRelabelsIdentity) {
  auto q = io::parse_group_spec("file:" + kData + "/q8.json");
  EXPECT_TRUE(q.relabeling.empty());
  EXPECT_EQ(center(q.group).size(), 2u);
  auto s = io::parse_group_spec("file:" + kData + "/q8_shuffled.json");
  ASSERT_FALSE(s.relabeling.empty());
  EXPECT_EQ(s.group.identity(), 0u);
  EXPECT_EQ(s.relabeling[5], 0u);
  EXPECT_EQ(s.relabeling[0], 5u);
  EXPECT_EQ(s.group.label(), "Q8-shuffled");
  EXPECT_EQ(center(s.group).size(), 2u);
}

TEST(GroupFile, RoundTrip) {
  auto G = make_symmetric(3);
  auto j = io::group_to_json(G);
  auto back = io::group_from_json(j).group;
  EXPECT_TRUE(back.same_as(G));
}

TEST(GroupFile, RejectsMalformed) {
  EXPECT_THROW(io::group_from_json(io::json::parse(R"({"table": [[0,1],[1]]})")), InputError);
  EXPECT_THROW(io::group_from_json(io::json::parse(R"({"order": 3, "table": [[0,1],[1,0]]})")), InputError);
  EXPECT_THROW(io::group_from_json(io::json::parse(R"({"table": [[0,2],[1,0]]})")), InputError);
  EXPECT_THROW(io::group_from_json(io::json::parse(R"([1,2])")), InputError);
}

TEST(CocycleSpec, CupAndZero) {
  auto G = io::parse_group_spec("C2xC2xC2").group;
  auto z = io::parse_cocycle_spec("zero", G, 2);
  EXPECT_TRUE(z.cochain.is_zero());
  auto c = io::parse_cocycle_spec("cup:0,1,2", G, 2);
  EXPECT_EQ(c.cochain, cup3(G, 0, 1, 2, 2));
  auto c4 = io::parse_cocycle_spec("cup:0,1,2:2", G, 4);
  EXPECT_EQ(c4.cochain(4, 2, 1), 2);
  EXPECT_THROW(io::parse_cocycle_spec("cup:0,1", G, 2), io::SpecError);
  EXPECT_THROW(io::parse_cocycle_spec("cup:0,1,7", G, 2), io::SpecError);
  EXPECT_THROW(io::parse_cocycle_spec("bogus", G, 2), io::SpecError);
}

TEST(CocycleFile, CarryCocycle) {
  auto G = make_cyclic(4);
  auto c = io::parse_cocycle_spec("file:" + kData + "/c4_carry.json", G, 4);
  EXPECT_TRUE(is_cocycle(c.cochain).is_cocycle);
  EXPECT_FALSE(c.normalized_on_load);
  EXPECT_EQ(c.cochain(1, 3, 1), 1);
  // given mod 2 and embedded into Z/4 by doubling
  auto d = io::parse_cocycle_spec("file:" + kData + "/c4_carry_mod2.json", G, 4);
  EXPECT_EQ(d.source_modulus, 2);
  EXPECT_EQ(d.cochain(1, 3, 1), 2);
  EXPECT_THROW(io::parse_cocycle_spec("file:" + kData + "/c4_carry.json", G, 2), InputError);  // 4 does not divide 2
}

TEST(CocycleFile, NormalizesOnLoad) {
  auto G = make_cyclic(2);
  auto c = io::parse_cocycle_spec("file:" + kData + "/c2_unnormalized.json", G, 2);
  EXPECT_TRUE(c.normalized_on_load);
  EXPECT_TRUE(is_cocycle(c.cochain).is_cocycle);
  auto abc = Cochain::from_function(G, 3, 2, [](std::span<const elem_t> t) -> std::int64_t { return t[0] * t[1] * t[2]; });
  EXPECT_TRUE(is_coboundary(c.cochain - abc).is_coboundary);
}

TEST(CocycleFile, Errors) {
  auto G = make_cyclic(2);
  EXPECT_THROW(io::parse_cocycle_spec("file:" + kData + "/c2_bad_index.json", G, 2), InputError);
  EXPECT_THROW(io::parse_cocycle_spec("file:" + kData + "/c2_not_cocycle.json", G, 2), ComputationError);
  try {
    io::parse_cocycle_spec("file:" + kData + "/malformed.json", G, 2);
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("malformed JSON"), std::string::npos);
  }
}

TEST(CocycleFile, RoundTrip) {
  auto G = io::parse_group_spec("C3xC3xC3").group;
  auto w = cup3(G, 0, 1, 2, 3);
  auto back = io::cocycle_from_json(io::cocycle_to_json(w), G, 3);
  EXPECT_EQ(back.cochain, w);
}

TEST(ObjectSpec, Parse) {
  auto s = io::parse_object_spec("4:2,0:1", 8);
  EXPECT_EQ(s.multiplicities, (std::vector<std::uint64_t>{1, 0, 0, 0, 2, 0, 0, 0}));
  EXPECT_THROW(io::parse_object_spec("8:1", 8), io::SpecError);
  EXPECT_THROW(io::parse_object_spec("1-2", 8), io::SpecError);
  EXPECT_EQ(io::parse_object_spec("", 3).multiplicities, (std::vector<std::uint64_t>{0, 0, 0}));
}

// ------------------------------------------------------------------ CLI

TEST(Cli, GroupInfoS5) {
  auto r = run_cli({"group-info", "--group", "S5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("order: 120"), std::string::npos);
  EXPECT_NE(r.out.find("classes: 7"), std::string::npos);
  EXPECT_NE(r.out.find("center order: 1"), std::string::npos);
  auto j = io::json::parse(run_cli({"group-info", "--group", "S5", "--json"}).out);
  EXPECT_EQ(j["order"], 120);
  EXPECT_EQ(j["class_count"], 7);
  EXPECT_EQ(j["center_order"], 1);
}

TEST(Cli, GroupInfoReportsRelabeling) {
  auto j = io::json::parse(run_cli({"group-info", "--group", "file:" + kData + "/q8_shuffled.json", "--json"}).out);
  ASSERT_TRUE(j.contains("relabeling"));
  EXPECT_EQ(j["relabeling"][5], 0);
}

TEST(Cli, LiftCounts) {
  // class 4 is the class of e1 = (1,0,0); class 0 is the identity
  auto r = run_cli({"lift", "--group", "C2xC2xC2", "--cocycle", "cup:0,1,2", "--spec", "4:2", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = io::json::parse(r.out);
  EXPECT_EQ(j["lifts"][0]["count"], 2);
  auto r0 = run_cli({"lift", "--group", "C2xC2xC2", "--cocycle", "cup:0,1,2", "--spec", "0:2", "--json"});
  EXPECT_EQ(io::json::parse(r0.out)["lifts"][0]["count"], 36);
  auto r1 = run_cli({"lift", "--group", "C2xC2xC2", "--cocycle", "cup:0,1,2", "--spec", "4:1"});
  EXPECT_NE(r1.out.find(": 0"), std::string::npos);
}

TEST(Cli, CenterReportCupC3Cubed) {
  auto r = run_cli({"center-report", "--group", "C3xC3xC3", "--cocycle", "cup:0,1,2", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = io::json::parse(r.out);
  EXPECT_EQ(j["group"], "C3xC3xC3");
  EXPECT_EQ(j["modulus"], 3);
  EXPECT_EQ(j["kernel_char"]["order"], 27);
  EXPECT_EQ(j["kernel_char"]["invariant_factors"], io::json({3, 3, 3}));
  ASSERT_EQ(j["obstructions"].size(), 27u);
  std::size_t non_vanishing = 0;
  for (const auto& o : j["obstructions"]) {
    const bool identity = o["representative"] == 0;
    EXPECT_EQ(o["vanishes"].get<bool>(), identity);
    non_vanishing += !o["vanishes"].get<bool>();
    if (!identity) { EXPECT_EQ(o["irreps"]["dimensions"], io::json({3, 3, 3})); }
  }
  EXPECT_EQ(non_vanishing, 26u);
  EXPECT_EQ(j["simple_central_objects"], 27 + 26 * 3);
  for (const char* key : {"e1_00", "e2_00", "e1_01", "e1_11", "e1_21", "e2_01", "e2_11", "universal_grading"})
    EXPECT_TRUE(j["e_pages"].contains(key)) << key;
}

TEST(Cli, JsonRoundTripIsByteIdentical) {
  for (auto args : std::vector<std::vector<std::string>>{
           {"center-report", "--group", "S3", "--cocycle", "zero", "--spec", "1:2", "--json"},
           {"center-report", "--group", "C2xC2xC2", "--cocycle", "cup:0,1,2", "--spec", "4:2,2:1", "--json"},
           {"group-info", "--group", "A4", "--json"},
           {"cohomology", "--group", "C2xC2xC2", "--cocycle", "cup:0,1,2", "--gamma", "4", "--json"},
           {"bands", "types", "--group", "S4", "--json"}}) {
    auto r = run_cli(args);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(io::dump(io::json::parse(r.out)), r.out);
  }
}

TEST(Cli, Deterministic) {
  std::vector<std::string> args{"center-report", "--group", "C3xC3xC3", "--cocycle", "cup:0,1,2", "--spec", "9:3", "--json"};
  ::setenv("DCENTER_THREADS", "1", 1);
  auto a = run_cli(args);
  ::setenv("DCENTER_THREADS", "4", 1);
  auto b = run_cli(args);
  auto c = run_cli(args);
  ::unsetenv("DCENTER_THREADS");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(b.out, c.out);
}

TEST(Cli, CohomologyGamma) {
  auto r = run_cli({"cohomology", "--group", "C2xC2xC2", "--cocycle", "cup:0,1,2", "--gamma", "4", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = io::json::parse(r.out);
  EXPECT_EQ(j["gamma"]["is_cocycle"], true);
  EXPECT_EQ(j["gamma"]["is_coboundary_mod_n"], false);
  EXPECT_EQ(j["gamma"]["vanishes_in_units"], false);
  auto nc = run_cli({"cohomology", "--group", "S3", "--cocycle", "zero", "--gamma", "1"});
  EXPECT_EQ(nc.code, 1);
  EXPECT_NE(nc.err.find("not central"), std::string::npos);
}

TEST(Cli, ObstructionAndSimples) {
  auto r = run_cli({"obstruction", "--group", "C2xC2xC2", "--cocycle", "cup:0,1,2", "--class", "4", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = io::json::parse(r.out);
  ASSERT_EQ(j["obstructions"].size(), 1u);
  EXPECT_EQ(j["obstructions"][0]["vanishes"], false);
  auto s = run_cli({"simples", "--group", "S3", "--cocycle", "zero"});
  EXPECT_NE(s.out.find("8"), std::string::npos);
  EXPECT_EQ(run_cli({"obstruction", "--group", "S3", "--cocycle", "zero", "--class", "9"}).code, 2);
}

TEST(Cli, Bands) {
  auto j = io::json::parse(run_cli({"bands", "types", "--group", "S5", "--json"}).out);
  std::set<int> types(j["types"].begin(), j["types"].end());
  EXPECT_TRUE(types.count(0) && types.count(1));
  EXPECT_FALSE(types.count(2) || types.count(3));
  auto f = run_cli({"bands", "families", "--universe", "C2,C3", "--json"});
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_EQ(io::json::parse(f.out)["modulus"], 6);
}

TEST(Cli, ExitCodes) {
  // usage
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"lift", "--group", "C2", "--spec", "1:1"}).code, 2);  // missing cocycle
  auto m = run_cli({"simples", "--group", "S3"});
  EXPECT_EQ(m.code, 2);
  EXPECT_NE(m.err.find("requires --cocycle"), std::string::npos);
  EXPECT_EQ(run_cli({"simples", "--group", "S3", "--cocycle", "zero", "--modulus", "4"}).code, 2);
  EXPECT_EQ(run_cli({"group-info", "--group", "Q8"}).code, 2);
  EXPECT_EQ(run_cli({"lift", "--group", "C2", "--cocycle", "zero", "--spec", "5:1"}).code, 2);
  EXPECT_EQ(run_cli({"lift", "--group", "C2", "--cocycle", "zero"}).code, 2);  // no spec
  // input files and computations
  auto missing = run_cli({"group-info", "--group", "file:/nonexistent.json"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("cannot read file"), std::string::npos);
  auto malformed = run_cli({"simples", "--group", "C2", "--cocycle", "file:" + kData + "/malformed.json"});
  EXPECT_EQ(malformed.code, 1);
  EXPECT_NE(malformed.err.find("malformed JSON"), std::string::npos);
  auto range = run_cli({"simples", "--group", "C2", "--cocycle", "file:" + kData + "/c2_bad_index.json"});
  EXPECT_EQ(range.code, 1);
  EXPECT_NE(range.err.find("out of range"), std::string::npos);
  auto notcoc = run_cli({"simples", "--group", "C2", "--cocycle", "file:" + kData + "/c2_not_cocycle.json"});
  EXPECT_EQ(notcoc.code, 1);
  EXPECT_NE(notcoc.err.find("certificate:"), std::string::npos);
  // help is not an error
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, ModulusOverride) {
  auto j = io::json::parse(run_cli({"center-report", "--group", "S3", "--cocycle", "zero", "--modulus", "12", "--json"}).out);
  EXPECT_EQ(j["modulus"], 12);
  EXPECT_EQ(j["kernel_char"]["order"], 2);
  // file cocycle given mod 2 on C4 lifts the default modulus 4 unchanged
  auto k = io::json::parse(
      run_cli({"center-report", "--group", "C4", "--cocycle", "file:" + kData + "/c4_carry_mod2.json", "--json"}).out);
  EXPECT_EQ(k["modulus"], 4);
}
