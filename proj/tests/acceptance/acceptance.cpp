// Runs every shipped configuration and grades the twelve acceptance criteria.
// Prints one PASS/FAIL line per criterion; exit status is nonzero on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "costress/jobs.hpp"

#ifndef COSTRESS_CONFIG_DIR
#error "COSTRESS_CONFIG_DIR must point at the shipped configs"
#endif

using namespace costress;

namespace {

struct Run {
  JobConfig config;
  Report report;
  double seconds = 0.0;
};

std::map<std::string, Run> runs;

Run& load(const std::string& command) {
  auto it = runs.find(command);
  if (it != runs.end()) return it->second;
  std::ifstream in(std::string(COSTRESS_CONFIG_DIR) + "/" + command + ".json");
  Run r;
  r.config = parse_config(command, json::parse(in), {});
  const auto t0 = std::chrono::steady_clock::now();
  r.report = run(r.config);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return runs.emplace(command, std::move(r)).first->second;
}

// A pattern matches a check name exactly, as the part after a "<patch>:" or
// "<regime>:" qualifier, or as a prefix when the pattern ends in '_'.
bool matches(const std::string& name, const std::string& pattern) {
  if (name == pattern) return true;
  if (pattern.back() == '_') return name.rfind(pattern, 0) == 0;
  return name.size() > pattern.size() &&
         name.compare(name.size() - pattern.size(), pattern.size(), pattern) == 0 &&
         name[name.size() - pattern.size() - 1] == ':';
}

struct Grade {
  bool pass = true;
  int count = 0;
  std::string worst;
  double worst_value = 0.0;
  double worst_bound = 0.0;
  double worst_ratio = -1.0;
  std::vector<std::string> problems;

  void fail(const std::string& why) {
    pass = false;
    problems.push_back(why);
  }
};

// Grades the checks of `command` matched by any of `parts`.
void grade_checks(Grade& g, const std::string& command, const std::vector<std::string>& parts) {
  const Run& r = load(command);
  for (const auto& e : r.report.errors) g.fail(command + " error: " + e);
  int matched = 0;
  for (const Check& c : r.report.checks) {
    bool hit = false;
    for (const auto& p : parts) hit = hit || matches(c.name, p);
    if (!hit) continue;
    ++matched;
    ++g.count;
    if (!c.pass) g.fail(command + " " + c.name);
    double ratio;
    if (c.relation == "<=")
      ratio = c.bound > 0.0 ? c.value / c.bound : (c.value > 0.0 ? INFINITY : 0.0);
    else
      ratio = c.value > 0.0 ? c.bound / c.value : (c.pass ? 0.0 : INFINITY);
    if (!c.pass) ratio = std::max(ratio, 1.0 + ratio);
    if (ratio > g.worst_ratio) {
      g.worst_ratio = ratio;
      g.worst = c.name + " " + c.relation;
      g.worst_value = c.value;
      g.worst_bound = c.bound;
    }
  }
  if (matched == 0) g.fail(command + ": no checks matched");
}

void require(Grade& g, bool ok, const std::string& what) {
  if (!ok) g.fail("setup: " + what);
}

void budget(Grade& g, const std::string& command, double seconds) {
  const Run& r = load(command);
  if (r.seconds > seconds) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s took %.1f s (budget %.0f s)", command.c_str(), r.seconds,
                  seconds);
    g.fail(buf);
  }
}

bool has_kind(const JobConfig& c, const std::string& kind) {
  for (const auto& p : c.patches)
    if (p.value("kind", std::string()) == kind) return true;
  return false;
}

std::string csv_bundle(const Report& r) {
  std::string out = to_csv(r.checks);
  for (const auto& t : r.tables) out += t.name + "\n" + to_csv(t);
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    std::string id;
    std::string text;
    std::function<void(Grade&)> grade;
  };

  const std::vector<Criterion> criteria = {
      {"AC1", "operator suite",
       [](Grade& g) {
         require(g, load("verify-operators").config.samples >= 1000, "1000 cases");
         grade_checks(g, "verify-operators",
                      {"anti_of_axl_round_trip", "axl_of_anti_round_trip", "cartan_recombination",
                       "cartan_orthogonality", "anti_norm_relation", "axl_vs_loops",
                       "anti_vs_loops", "apply_E_v_vs_loops", "apply_X_v_vs_loops",
                       "contract_E_X_vs_loops", "cross_vs_loops"});
         budget(g, "verify-operators", 60);
       }},
      {"AC2", "kinematic identities",
       [](Grade& g) {
         const JobConfig& c = load("verify-kinematics").config;
         require(g, c.samples >= 100 && c.points >= 20, "100 fields x 20 points");
         require(g, c.tol.at("closed_form") <= 1e-12 && c.tol.at("fd") <= 1e-8, "tolerances");
         grade_checks(g, "verify-kinematics",
                      {"curl_equals_twice_axl_skw_grad", "grad_curl_trace_free",
                       "fd_curl_equals_twice_axl_skw_grad", "fd_grad_curl_trace_free"});
         budget(g, "verify-kinematics", 60);
       }},
      {"AC3", "curvature energy forms agree",
       [](Grade& g) {
         const JobConfig& c = load("energy-report").config;
         require(g, c.samples >= 1000 && c.tol.at("energy_forms") <= 1e-12, "1000 cases at 1e-12");
         grade_checks(g, "energy-report", {"curvature_forms_agree"});
         budget(g, "energy-report", 60);
       }},
      {"AC4", "conformal invariance",
       [](Grade& g) {
         const JobConfig& c = load("conformal-demo").config;
         require(g, c.samples >= 100 && c.points >= 20, "100 parameter sets x 20 points");
         grade_checks(g, "conformal-demo",
                      {"torsion_vanishes", "dev_sym_grad_vanishes", "modified_w_curv_vanishes",
                       "modified_m_tilde_vanishes", "hd_m_tilde_is_constant_skew",
                       "hd_m_tilde_constant_across_points"});
       }},
      {"AC5", "torsion-free inhomogeneous example",
       [](Grade& g) {
         require(g, load("conformal-demo").config.tol.at("fd_torsion") <= 1e-10, "FD bound 1e-10");
         grade_checks(g, "conformal-demo",
                      {"example_torsion_vanishes_fd", "example_is_inhomogeneous"});
       }},
      {"AC6", "surface divergence theorem",
       [](Grade& g) {
         const JobConfig& c = load("bc-audit").config;
         require(g, c.quadrature_order == 16, "order 16");
         require(g, c.refinement_orders == std::vector<int>{4, 8, 16}, "orders {4, 8, 16}");
         require(g, has_kind(c, "box_face") && has_kind(c, "spherical_cap"), "flat and curved");
         grade_checks(g, "bc-audit", {"surface_divergence_gap", "surface_divergence_monotone"});
         budget(g, "bc-audit", 60);
       }},
      {"AC7", "boundary work identity",
       [](Grade& g) {
         const JobConfig& c = load("bc-audit").config;
         require(g, c.pairs >= 10 && c.tol.at("work") <= 1e-6, "10 pairs at 1e-6");
         require(g, has_kind(c, "box_face") && has_kind(c, "spherical_cap"), "flat and curved");
         grade_checks(g, "bc-audit", {"GKMT:work_identity_gap", "modified:work_identity_gap",
                                      "HD:work_identity_gap"});
       }},
      {"AC8", "normal-moment postulate refuted",
       [](Grade& g) {
         const JobConfig& c = load("hd-postulate").config;
         require(g, c.material.regime() == "HD", "HD material");
         require(g, has_kind(c, "spherical_cap"), "hemisphere");
         require(g, c.tol.at("normal_moment") <= 1e-14 && c.tol.at("postulate_margin") >= 1e3,
                 "bounds 1e-14 and 1e3");
         grade_checks(g, "hd-postulate",
                      {"normal_moment_sup", "residual_over_normal_moment", "postulate_refuted"});
       }},
      {"AC9", "coercivity and Korn constant",
       [](Grade& g) {
         const JobConfig& c = load("bvp-solve").config;
         require(g, !c.material_given && c.basis_N == 3, "three regimes at N = 3");
         require(g, c.korn_sweep == std::vector<int>{2, 3, 4}, "Korn sweep N = 2..4");
         grade_checks(g, "bvp-solve", {"lambda_min_positive", "eigen_iteration_converged", "korn_"});
       }},
      {"AC10", "solver round trip",
       [](Grade& g) {
         require(g, load("bvp-solve").config.tol.at("solve") <= 1e-10, "bound 1e-10");
         grade_checks(g, "bvp-solve",
                      {"manufactured_round_trip", "zero_load_zero_solution",
                       "linearity_under_load_scaling"});
         budget(g, "bvp-solve", 60);
       }},
      {"AC11", "Cosserat penalty limit",
       [](Grade& g) {
         const JobConfig& c = load("cosserat-limit").config;
         require(g, c.basis_N == 3, "N = 3");
         require(g, c.mu_c_values == std::vector<double>{10.0, 100.0, 1000.0, 10000.0},
                 "mu_c sweep");
         require(g, c.tol.at("order_band") <= 0.3, "band 0.3");
         grade_checks(g, "cosserat-limit", {"order_mu_c_", "error_strictly_decreasing"});
         budget(g, "cosserat-limit", 300);
       }},
      {"AC12", "byte-identical CSV on rerun",
       [](Grade& g) {
         for (const std::string& cmd : job_commands()) {
           const Run& r = load(cmd);
           const Report again = run(r.config);
           ++g.count;
           if (csv_bundle(again) != csv_bundle(r.report)) g.fail(cmd + " CSV differs on rerun");
         }
       }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Grade g;
    try {
      c.grade(g);
    } catch (const std::exception& e) {
      g.fail(std::string("exception: ") + e.what());
    }
    failures += g.pass ? 0 : 1;
    std::printf("%s %s %s (%d checks", c.id.c_str(), g.pass ? "PASS" : "FAIL", c.text.c_str(),
                g.count);
    if (g.worst_ratio >= 0.0)
      std::printf("; tightest %s value %.3g bound %.3g", g.worst.c_str(), g.worst_value,
                  g.worst_bound);
    std::printf(")\n");
    for (const auto& p : g.problems) std::printf("    %s\n", p.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
