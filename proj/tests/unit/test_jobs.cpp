#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "costress/jobs.hpp"

using namespace costress;
namespace fs = std::filesystem;

namespace {

JobConfig parse(const std::string& command, const std::string& text, JobOptions opt = {}) {
  return parse_config(command, json::parse(text), opt);
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("costress_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Config, DefaultsAndOverrides) {
  const JobConfig c = parse("verify-operators", R"({"seed": 5})");
  EXPECT_EQ(*c.seed, 5u);
  EXPECT_EQ(c.samples, 1000);
  EXPECT_DOUBLE_EQ(c.tol.at("operators"), 1e-12);
  JobOptions o;
  o.seed = 99;
  o.quadrature_order = 12;
  const JobConfig d = parse("bc-audit", R"({"seed": 5, "quadrature_order": 8})", o);
  EXPECT_EQ(*d.seed, 99u);
  EXPECT_EQ(d.quadrature_order, 12);
  EXPECT_EQ(d.echo.at("seed"), 99u);
}

TEST(Config, SchemaViolationsAreRejected) {
  EXPECT_THROW(parse("verify-operators", R"({"seed": 1, "sedd": 2})"), ConfigError);
  EXPECT_THROW(parse("verify-operators", R"({})"), ConfigError);
  EXPECT_THROW(parse("verify-operators", R"({"seed": -4})"), ConfigError);
  EXPECT_THROW(parse("verify-operators", R"({"seed": 1, "samples": 0})"), ConfigError);
  EXPECT_THROW(parse("verify-operators", R"({"seed": 1, "tolerances": {"nope": 1}})"),
               ConfigError);
  EXPECT_THROW(parse("verify-operators", R"({"seed": 1, "command": "bc-audit"})"), ConfigError);
  EXPECT_THROW(parse("no-such-command", R"({})"), ConfigError);
  EXPECT_THROW(parse("bvp-solve", R"({"seed": 1, "basis": {"N": 9}})"), ConfigError);
  EXPECT_THROW(parse("cosserat-limit", R"({"mu_c_values": [100, 10]})"), ConfigError);
  EXPECT_THROW(parse("hd-postulate", R"({"material": {"regime": "GKMT"}})"), ConfigError);
  EXPECT_THROW(parse("bc-audit", R"({"seed": 1, "patches": [{"kind": "torus"}]})"), ConfigError);
  EXPECT_THROW(parse("hd-postulate", R"({"field": {"family": "callable"}})"), ConfigError);
  EXPECT_THROW(parse("hd-postulate", R"({"field": {"family": "polynomial"}})"), ConfigError);
  // Deterministic commands need no seed.
  EXPECT_NO_THROW(parse("hd-postulate", R"({})"));
  EXPECT_NO_THROW(parse("cosserat-limit", R"({})"));
}

TEST(Serialize, MaterialAliasAndRegimes) {
  const MaterialParams a = material_from_json(json::parse(R"({"alpha3": 0.5, "alpha1": 0})"));
  EXPECT_EQ(a.alpha2, 0.5);
  EXPECT_EQ(a.regime(), "HD");
  EXPECT_THROW(material_from_json(json::parse(R"({"alpha2": 1, "alpha3": 2})")), ConfigError);
  EXPECT_NO_THROW(material_from_json(json::parse(R"({"alpha2": 2, "alpha3": 2})")));
  EXPECT_THROW(material_from_json(json::parse(R"({"mu": -1})")), ConfigError);
  EXPECT_THROW(material_from_json(json::parse(R"({"regime": "HD", "alpha1": 1})")), ConfigError);
  const MaterialParams m = material_from_json(json::parse(R"({"regime": "modified", "L_c": 0.3})"));
  EXPECT_EQ(m.alpha2, 0.0);
  EXPECT_EQ(to_json(m).at("regime"), "modified");
  EXPECT_EQ(material_from_json(to_json(m)).L_c, 0.3);
}

TEST(Serialize, FieldAndPatchRoundTrip) {
  for (const char* spec :
       {R"({"family": "polynomial", "seed": 17, "degree": 3})",
        R"({"family": "conformal", "W_hat": [1, 2, 3], "p_hat": 0.5})",
        R"({"family": "rigid", "omega": [0, 0, 1], "offset": [1, 0, 0]})",
        R"({"family": "affine", "matrix": [[1, 2, 3], [4, 5, 6], [7, 8, 9]]})"}) {
    const FieldPtr f = field_from_json(json::parse(spec));
    const FieldPtr g = field_from_json(field_to_json(*f));
    const Vec3 x{0.1, 0.7, 0.3};
    EXPECT_EQ(f->value(x), g->value(x)) << spec;
  }
  const PatchPtr cap = patch_from_json(
      json::parse(R"({"kind": "spherical_cap", "center": [0, 0, 1], "radius": 2, "theta_max": 1})"));
  EXPECT_EQ(patch_to_json(*cap).at("radius"), 2.0);
  const PatchPtr face = patch_from_json(json::parse(R"({"kind": "box_face", "axis": 1, "side": "lower"})"));
  EXPECT_EQ(patch_to_json(*face).at("side"), "lower");
}

TEST(Csv, Rfc4180Quoting) {
  Table t{"t", {"a", "b,c", "d"}, {{"plain", "with \"quote\"", "line\nbreak"}}};
  EXPECT_EQ(to_csv(t), "a,\"b,c\",d\r\nplain,\"with \"\"quote\"\"\",\"line\nbreak\"\r\n");
}

TEST(Report, StatusAndExitCode) {
  Report r;
  r.checks.push_back({"ok", "op", 0.0, "<=", 1.0, true});
  EXPECT_EQ(r.exit_code(), 0);
  r.checks.push_back({"bad", "op", 2.0, "<=", 1.0, false});
  EXPECT_EQ(r.exit_code(), 1);
  EXPECT_EQ(r.to_json().at("status"), "fail");
  Report e;
  e.errors.push_back("boom");
  EXPECT_EQ(e.exit_code(), 1);
}

TEST(RunJob, MalformedConfigWritesNothing) {
  const fs::path dir = scratch("malformed");
  std::ofstream(dir / "bad.json") << "{\"seed\": 1,";
  std::ostringstream log;
  const fs::path out = dir / "out";
  EXPECT_EQ(run_job("verify-operators", (dir / "bad.json").string(), out.string(), {}, log), 2);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_EQ(run_job("verify-operators", (dir / "missing.json").string(), out.string(), {}, log), 2);
  std::ofstream(dir / "noseed.json") << "{}";
  EXPECT_EQ(run_job("verify-operators", (dir / "noseed.json").string(), out.string(), {}, log), 2);
  EXPECT_FALSE(fs::exists(out));
  JobOptions o;
  o.seed = 3;
  std::ofstream(dir / "small.json") << R"({"samples": 10})";
  EXPECT_EQ(run_job("verify-operators", (dir / "small.json").string(), out.string(), o, log), 0);
  EXPECT_TRUE(fs::exists(out / "report.json"));
  EXPECT_TRUE(fs::exists(out / "checks.csv"));
  const json report = json::parse(slurp(out / "report.json"));
  EXPECT_EQ(report.at("status"), "pass");
  EXPECT_EQ(report.at("environment").at("version"), kVersion);
}

TEST(RunJob, FailingCheckGivesExitOneWithGapInReport) {
  const fs::path dir = scratch("failing");
  // An impossible tolerance forces a failure that must still be reported in full.
  std::ofstream(dir / "cfg.json") << R"({"seed": 4, "samples": 20, "tolerances": {"operators": 1e-300}})";
  std::ostringstream log;
  EXPECT_EQ(run_job("verify-operators", (dir / "cfg.json").string(), (dir / "out").string(), {}, log),
            1);
  const json report = json::parse(slurp(dir / "out" / "report.json"));
  bool found = false;
  for (const auto& c : report.at("checks"))
    if (!c.at("pass").get<bool>()) {
      found = true;
      EXPECT_GT(c.at("value").get<double>(), c.at("bound").get<double>());
    }
  EXPECT_TRUE(found);
}

TEST(Determinism, SameSeedSameCsv) {
  const std::vector<std::pair<std::string, std::string>> jobs = {
      {"verify-operators", R"({"seed": 8, "samples": 50})"},
      {"verify-kinematics", R"({"seed": 8, "samples": 2, "points": 3})"},
      {"energy-report", R"({"seed": 8, "samples": 50, "points": 3})"},
      {"conformal-demo", R"({"seed": 8, "samples": 3, "points": 3})"},
      {"bc-audit", R"({"seed": 8, "pairs": 1, "quadrature_order": 8, "refinement_orders": [4, 8]})"},
      {"bvp-solve", R"({"seed": 8, "basis": {"N": 1}, "korn_sweep": [1, 2]})"},
  };
  for (const auto& [cmd, text] : jobs) {
    const JobConfig c = parse(cmd, text);
    const Report a = run(c), b = run(c);
    ASSERT_EQ(a.tables.size(), b.tables.size()) << cmd;
    EXPECT_EQ(to_csv(a.checks), to_csv(b.checks)) << cmd;
    for (std::size_t i = 0; i < a.tables.size(); ++i)
      EXPECT_EQ(to_csv(a.tables[i]), to_csv(b.tables[i])) << cmd << " " << a.tables[i].name;
    EXPECT_TRUE(a.errors.empty()) << cmd;
  }
  const Report x = run(parse("verify-operators", R"({"seed": 8, "samples": 50})"));
  const Report y = run(parse("verify-operators", R"({"seed": 9, "samples": 50})"));
  EXPECT_NE(to_csv(x.checks), to_csv(y.checks));
}
