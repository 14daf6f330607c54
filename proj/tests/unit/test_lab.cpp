#include <gtest/gtest.h>

#include <filesystem>

#include "pgreedy/errors.hpp"
#include "pgreedy/lab.hpp"

using namespace pgreedy;

namespace {

json small_config() {
  return json::parse(R"({
    "spaces": [
      {"name": "l1", "builtin": "lp", "dimension": 3, "p": 1},
      {"name": "weighted", "dimension": 3, "p": 1, "norm": {"kind": "weighted_lp", "weights": [1, 0.5, 0.25]}}
    ],
    "grid": {"magnitudes": [0, 0.5, 1]},
    "seed": 7,
    "axiom_samples": 500
  })");
}

}  // namespace

TEST(JsonIo, ScalarsAndVectors) {
  EXPECT_EQ(to_json(Scalar{2, 0}), json(2.0));
  EXPECT_EQ(to_json(Scalar{1, -1}), json::parse("[1.0, -1.0]"));
  EXPECT_EQ(scalar_from_json(json::parse("[0, 1]")), (Scalar{0, 1}));
  const CoeffVector f(3, {1, 0, -0.5});
  EXPECT_EQ(coeff_vector_from_json(to_json(f)), f);
  EXPECT_THROW(scalar_from_json(json("x")), InputError);
  EXPECT_THROW(coeff_vector_from_json(json::parse("[1, [1]]")), InputError);
}

TEST(JsonIo, IndexSetsAreOneBased) {
  EXPECT_EQ(index_set_to_json({0, 2}), json::parse("[1, 3]"));
  EXPECT_EQ(index_set_from_json(json::parse("[1, 3]"), 3), (IndexSet{0, 2}));
  EXPECT_THROW(index_set_from_json(json::parse("[0]"), 3), InputError);
  EXPECT_THROW(index_set_from_json(json::parse("[4]"), 3), InputError);
  EXPECT_THROW(index_set_from_json(json::parse("[2, 1]"), 3), InputError);
}

TEST(JsonIo, SpaceRoundTrip) {
  for (BuiltinSpace b : all_builtin_spaces()) {
    const PSpace s = make_builtin(b, 3, 0.5);
    const PSpace back = space_from_json(space_to_json(s));
    const CoeffVector f(3, {1, -0.5, 2});
    EXPECT_EQ(back.norm(f), s.norm(f)) << builtin_name(b);
    EXPECT_EQ(back.p(), s.p());
  }
  EXPECT_THROW(space_from_json(json::parse(R"({"builtin": "nope", "dimension": 2, "p": 1})")), InputError);
  EXPECT_THROW(space_from_json(json::parse(R"({"builtin": "lp", "dimension": 2, "p": 2})")), InputError);
  EXPECT_THROW(space_from_json(json::parse(R"({"dimension": 2, "p": 1, "norm": {"kind": "weighted_lp",
    "weights": [1]}})")), InputError);
}

TEST(JsonIo, EstimateRoundTrip) {
  const GridSearch s(PSpace(3, 1.0, Field::Real, WeightedLp{{1, 0.5, 0.25}}), GridSpec::standard(3));
  for (ConstantKind k : all_constant_kinds()) {
    const ConstantEstimate e = s.estimate(k);
    const json j = to_json(e);
    const ConstantEstimate back = estimate_from_json(j);
    EXPECT_EQ(back.kind, e.kind);
    EXPECT_EQ(back.value, e.value);
    EXPECT_EQ(to_json(back), j) << symbol(k);
  }
}

TEST(JsonIo, GridDefaultsAndMismatch) {
  const GridSpec g = grid_from_json(json::object(), 4);
  EXPECT_EQ(g.magnitudes, GridSpec::standard(4).magnitudes);
  EXPECT_EQ(g.max_support, 4u);
  EXPECT_THROW(grid_from_json(json::parse(R"({"dimension": 3})"), 4), InputError);
  EXPECT_EQ(grid_from_json(json::parse(R"({"signs": "roots:4"})"), 2).signs.size(), 4u);
}

TEST(Config, ParsesAndAppliesOverrides) {
  const RunConfig c = parse_config(small_config());
  ASSERT_EQ(c.spaces.size(), 2u);
  EXPECT_EQ(c.spaces[1].name, "weighted");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.constants.size(), 10u);

  Overrides o;
  o.seed = 11;
  o.only = std::vector<std::string>{"C_pg", "D"};
  const RunConfig d = parse_config(small_config(), o);
  EXPECT_EQ(d.seed, 11u);
  EXPECT_EQ(d.constants, (std::vector<ConstantKind>{ConstantKind::Cpg, ConstantKind::D}));
}

TEST(Config, RejectsMalformedInput) {
  json j = small_config();
  j["bogus"] = 1;
  EXPECT_THROW(parse_config(j), InputError);
  j = small_config();
  j["spaces"] = json::array();
  EXPECT_THROW(parse_config(j), InputError);
  Overrides o;
  o.only = std::vector<std::string>{"C_nope"};
  EXPECT_THROW(parse_config(small_config(), o), InputError);
}

TEST(Config, HashIgnoresWorkersAndOutput) {
  Overrides a, b;
  a.workers = 1;
  b.workers = 4;
  b.output = "/tmp/elsewhere";
  EXPECT_EQ(config_hash(parse_config(small_config(), a)), config_hash(parse_config(small_config(), b)));
  Overrides c;
  c.seed = 8;
  EXPECT_NE(config_hash(parse_config(small_config())), config_hash(parse_config(small_config(), c)));
}

TEST(Sections, IdenticalAcrossWorkerCounts) {
  Overrides one, four;
  one.workers = 1;
  four.workers = 4;
  const RunConfig a = parse_config(small_config(), one);
  const RunConfig b = parse_config(small_config(), four);
  const json ca = constants_section(a);
  const json cb = constants_section(b);
  EXPECT_EQ(ca.dump(), cb.dump());
  EXPECT_EQ(theorems_section(a, ca).dump(), theorems_section(b, cb).dump());
  EXPECT_EQ(renorm_section(a, ca).dump(), renorm_section(b, cb).dump());
}

TEST(Sections, LedgerPassesOnTheSmallConfig) {
  const RunConfig c = parse_config(small_config());
  const json t = theorems_section(c, constants_section(c));
  EXPECT_FALSE(has_failures(t));
  const std::string csv = ledger_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "space,id,lhs,rhs,margin,status");
}

TEST(Sections, BrokenNormFailsAxiomsAndIsSkipped) {
  json j = small_config();
  j["spaces"][1]["norm"]["weights"] = json::parse("[1, 0, 0.25]");
  const RunConfig c = parse_config(j);
  std::set<std::string> failed;
  const json s = spaces_section(c, true, failed);
  EXPECT_EQ(failed, (std::set<std::string>{"weighted"}));
  const json k = constants_section(c, failed);
  EXPECT_TRUE(k["spaces"][1].contains("skipped"));
}

TEST(Sections, RenormNeedsEstimates) {
  const RunConfig c = parse_config(small_config());
  json empty = json::object();
  empty["spaces"] = json::array();
  EXPECT_THROW(renorm_section(c, empty), DependencyError);
}

TEST(Sections, ReportAndCsv) {
  const RunConfig c = parse_config(small_config());
  std::set<std::string> failed;
  const json s = spaces_section(c, false, failed);
  const json k = constants_section(c);
  const json t = theorems_section(c, k);
  const json report = assemble_report(c, &s, &k, &t, nullptr);
  EXPECT_EQ(report["spaces"].size(), 2u);
  EXPECT_EQ(report["config_hash"], hex64(config_hash(c)));
  const std::string csv = constants_csv(report, 1);
  EXPECT_NE(csv.find("report.json#/spaces/1/estimates/0/witness"), std::string::npos);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "symbol,name,value,witness_ref");
}

TEST(Files, MissingArtifactIsADependencyError) {
  const auto dir = std::filesystem::temp_directory_path() / "pgreedy_missing_artifact";
  std::filesystem::create_directories(dir);
  EXPECT_THROW(read_artifact(dir, "estimates.json"), DependencyError);
  write_json_file(dir / "x.json", json::parse(R"({"a": 1})"));
  EXPECT_EQ(read_artifact(dir, "x.json")["a"], 1);
  std::filesystem::remove_all(dir);
}

TEST(Config, RenormTailNeedsABuiltinSpace) {
  json j = small_config();
  j["renorm"] = json::parse(R"({"tail": 2})");
  EXPECT_THROW(parse_config(j), InputError);  // the weighted space has explicit weights
  j["spaces"].erase(1);
  const RunConfig c = parse_config(j);
  EXPECT_EQ(c.spaces[0].renorm.tail, 2u);
  EXPECT_EQ(c.spaces[0].renorm.max_support, 5u);
  EXPECT_EQ(renorm_window(c.spaces[0]).dimension(), 5u);
  j["renorm"] = json::parse(R"({"tails": 2})");
  EXPECT_THROW(parse_config(j), InputError);
}

TEST(Sections, RenormLogsMinimisingCandidates) {
  const RunConfig c = parse_config(small_config());
  const json r = renorm_section(c, constants_section(c));
  const json& weighted = r["spaces"][1];
  ASSERT_TRUE(weighted["applicable"].get<bool>());
  const json& worst = weighted["minimizers"]["worst_vector"];
  EXPECT_EQ(worst["norm_a"].get<double>(), 0.125);  // e_1 / 2 -> k = 1, z = e_3 / 2
  EXPECT_EQ(worst["k"].get<int>(), 1);
  EXPECT_TRUE(weighted["minimizers"].contains("cpg_numerator"));
}
