#include "costress/jobs.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "costress/errors.hpp"
#include "job_commands.hpp"

namespace costress {

namespace {

const std::vector<std::string> kRandomized = {"verify-operators", "verify-kinematics",
                                              "energy-report",    "bc-audit",
                                              "bvp-solve",        "conformal-demo"};

int command_samples(const std::string& c) {
  if (c == "verify-operators" || c == "energy-report") return 1000;
  if (c == "verify-kinematics" || c == "conformal-demo") return 100;
  return 0;
}

int positive_int(const json& j, const char* key, int lo, int hi) {
  if (!j.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
  const long long v = j.get<long long>();
  if (v < lo || v > hi) {
    std::ostringstream msg;
    msg << "'" << key << "' must lie in [" << lo << ", " << hi << "]";
    throw ConfigError(msg.str());
  }
  return static_cast<int>(v);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += csv_field(cells[i]);
  }
  return line + "\r\n";
}

}  // namespace

const std::vector<std::string>& job_commands() {
  static const std::vector<std::string> c = {"verify-operators", "verify-kinematics",
                                             "energy-report",    "bc-audit",
                                             "hd-postulate",     "bvp-solve",
                                             "cosserat-limit",   "conformal-demo"};
  return c;
}

std::map<std::string, double> default_tolerances() {
  return {{"operators", 1e-12},     {"closed_form", 1e-12}, {"fd", 1e-8},
          {"fd_torsion", 1e-10},    {"energy_forms", 1e-12}, {"equilibrium", 1e-6},
          {"surface", 1e-6},        {"work", 1e-6},          {"jump", 1e-8},
          {"normal_moment", 1e-14}, {"postulate_margin", 1e3}, {"solve", 1e-10},
          {"symmetry", 1e-12},      {"order_band", 0.3},     {"refinement_floor", 1e-12}};
}

JobConfig parse_config(const std::string& command, const json& doc, const JobOptions& options) {
  const auto& cmds = job_commands();
  if (std::find(cmds.begin(), cmds.end(), command) == cmds.end())
    throw ConfigError("unknown command '" + command + "'");
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  reject_unknown_keys(doc,
                      {"command", "seed", "samples", "points", "pairs", "degree", "material",
                       "field", "test_field", "patches", "basis", "load", "body_couple",
                       "mu_c_values", "quadrature_order", "refinement_orders", "hd_plus_sign",
                       "tolerances", "korn_sweep"},
                      "configuration");
  JobConfig c;
  c.command = command;
  c.samples = command_samples(command);
  c.tol = default_tolerances();
  try {
    if (doc.contains("command") && doc.at("command") != command)
      throw ConfigError("configuration is for command '" + doc.at("command").dump() +
                        "', not '" + command + "'");
    if (doc.contains("seed")) {
      if (!doc.at("seed").is_number_unsigned())
        throw ConfigError("'seed' must be an unsigned integer");
      c.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (options.seed) c.seed = options.seed;
    const bool randomized =
        std::find(kRandomized.begin(), kRandomized.end(), command) != kRandomized.end();
    if (randomized && !c.seed)
      throw ConfigError("command '" + command + "' draws random samples and needs a seed");

    if (doc.contains("samples")) c.samples = positive_int(doc.at("samples"), "samples", 1, 1000000);
    if (doc.contains("points")) c.points = positive_int(doc.at("points"), "points", 1, 100000);
    if (doc.contains("pairs")) c.pairs = positive_int(doc.at("pairs"), "pairs", 1, 1000);
    if (doc.contains("degree")) c.degree = positive_int(doc.at("degree"), "degree", 0, 6);
    if (doc.contains("quadrature_order"))
      c.quadrature_order = positive_int(doc.at("quadrature_order"), "quadrature_order", 1, 64);
    if (options.quadrature_order) {
      if (*options.quadrature_order < 1 || *options.quadrature_order > 64)
        throw ConfigError("--quadrature-order must lie in [1, 64]");
      c.quadrature_order = *options.quadrature_order;
    }
    if (doc.contains("refinement_orders")) {
      const json& r = doc.at("refinement_orders");
      if (!r.is_array() || r.empty()) throw ConfigError("'refinement_orders' must be a non-empty array");
      c.refinement_orders.clear();
      for (const auto& v : r) c.refinement_orders.push_back(positive_int(v, "refinement_orders", 1, 64));
    }
    if (doc.contains("material")) {
      c.material = material_from_json(doc.at("material"));
      c.material_given = true;
      if (command == "hd-postulate" && c.material.alpha1 != 0.0)
        throw ConfigError("hd-postulate needs alpha1 = 0 (HD regime)");
    }
    if (doc.contains("field")) {
      c.field = doc.at("field");
      field_from_json(c.field);
    }
    if (doc.contains("test_field")) {
      c.test_field = doc.at("test_field");
      field_from_json(c.test_field);
    }
    if (doc.contains("patches")) {
      const json& p = doc.at("patches");
      if (!p.is_array() || p.empty()) throw ConfigError("'patches' must be a non-empty array");
      for (const auto& e : p) {
        patch_from_json(e);
        c.patches.push_back(e);
      }
    }
    if (doc.contains("basis")) {
      const json& b = doc.at("basis");
      if (!b.is_object()) throw ConfigError("'basis' must be an object");
      reject_unknown_keys(b, {"N", "domain"}, "basis");
      if (b.contains("N")) c.basis_N = positive_int(b.at("N"), "basis.N", 1, 6);
      if (b.contains("domain")) c.basis_domain = box_from_json(b.at("domain"));
    }
    if (doc.contains("korn_sweep")) {
      const json& k = doc.at("korn_sweep");
      if (!k.is_array() || k.empty()) throw ConfigError("'korn_sweep' must be a non-empty array");
      c.korn_sweep.clear();
      for (const auto& v : k) c.korn_sweep.push_back(positive_int(v, "korn_sweep", 1, 6));
    }
    if (doc.contains("load")) {
      c.load = doc.at("load");
      field_from_json(c.load);
    }
    if (doc.contains("body_couple")) {
      c.body_couple = doc.at("body_couple");
      field_from_json(c.body_couple);
    }
    if (doc.contains("mu_c_values")) {
      const json& m = doc.at("mu_c_values");
      if (!m.is_array() || m.size() < 2) throw ConfigError("'mu_c_values' needs at least two entries");
      c.mu_c_values.clear();
      for (const auto& v : m) {
        if (!v.is_number() || !(v.get<double>() > 0.0))
          throw ConfigError("'mu_c_values' entries must be positive numbers");
        c.mu_c_values.push_back(v.get<double>());
      }
      if (!std::is_sorted(c.mu_c_values.begin(), c.mu_c_values.end()))
        throw ConfigError("'mu_c_values' must be increasing");
    }
    if (doc.contains("hd_plus_sign")) {
      if (!doc.at("hd_plus_sign").is_boolean()) throw ConfigError("'hd_plus_sign' must be a boolean");
      c.hd_plus_sign = doc.at("hd_plus_sign").get<bool>();
    }
    if (doc.contains("tolerances")) {
      const json& t = doc.at("tolerances");
      if (!t.is_object()) throw ConfigError("'tolerances' must be an object");
      for (auto it = t.begin(); it != t.end(); ++it) {
        if (!c.tol.count(it.key())) throw ConfigError("unknown tolerance '" + it.key() + "'");
        if (!it.value().is_number() || !(it.value().get<double>() > 0.0))
          throw ConfigError("tolerance '" + it.key() + "' must be a positive number");
        c.tol[it.key()] = it.value().get<double>();
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(e.what());
  }

  json echo{{"command", command}, {"samples", c.samples}, {"points", c.points},
            {"pairs", c.pairs},   {"degree", c.degree},   {"refinement_orders", c.refinement_orders},
            {"basis", {{"N", c.basis_N}, {"domain", to_json(c.basis_domain)}}},
            {"korn_sweep", c.korn_sweep}, {"mu_c_values", c.mu_c_values},
            {"hd_plus_sign", c.hd_plus_sign}, {"tolerances", c.tol}};
  if (c.seed) echo["seed"] = *c.seed;
  if (c.quadrature_order) echo["quadrature_order"] = c.quadrature_order;
  if (c.material_given) echo["material"] = to_json(c.material);
  if (!c.field.is_null()) echo["field"] = c.field;
  if (!c.test_field.is_null()) echo["test_field"] = c.test_field;
  if (!c.patches.empty()) echo["patches"] = c.patches;
  if (!c.load.is_null()) echo["load"] = c.load;
  if (!c.body_couple.is_null()) echo["body_couple"] = c.body_couple;
  c.echo = echo;
  return c;
}

bool Report::passed() const {
  if (!errors.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

json Report::to_json() const {
  json checks_json = json::array();
  for (const auto& c : checks)
    checks_json.push_back({{"name", c.name},
                           {"operation", c.operation},
                           {"value", c.value},
                           {"relation", c.relation},
                           {"bound", c.bound},
                           {"pass", c.pass}});
  json tables_json = json::array();
  for (const auto& t : tables) tables_json.push_back(t.name + ".csv");
  return {{"command", command},
          {"status", passed() ? "pass" : "fail"},
          {"environment", {{"version", kVersion}, {"quadrature_order", quadrature_order}}},
          {"config", config},
          {"checks", checks_json},
          {"tables", tables_json},
          {"notes", notes},
          {"errors", errors}};
}

std::string to_csv(const Table& t) {
  std::string out = csv_line(t.header);
  for (const auto& r : t.rows) out += csv_line(r);
  return out;
}

std::string to_csv(const std::vector<Check>& checks) {
  Table t{"checks", {"name", "operation", "value", "relation", "bound", "pass"}, {}};
  for (const auto& c : checks)
    t.rows.push_back({c.name, c.operation, fmt(c.value), c.relation, fmt(c.bound),
                      c.pass ? "true" : "false"});
  return to_csv(t);
}

Report run(const JobConfig& config) {
  Report r;
  r.command = config.command;
  r.config = config.echo;
  try {
    jobs::dispatch(config, r);
  } catch (const std::exception& e) {
    r.errors.push_back(e.what());
  }
  return r;
}

int run_job(const std::string& command, const std::string& config_path, const std::string& out_dir,
            const JobOptions& options, std::ostream& log) {
  JobConfig cfg;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open configuration '" + config_path + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    cfg = parse_config(command, doc, options);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return 2;
  }

  const Report report = run(cfg);

  namespace fs = std::filesystem;
  try {
    fs::create_directories(out_dir);
    auto write = [&](const std::string& name, const std::string& content) {
      std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
      f << content;
      if (!f) throw std::runtime_error("cannot write " + name);
    };
    write("report.json", report.to_json().dump(2) + "\n");
    write("checks.csv", to_csv(report.checks));
    for (const auto& t : report.tables) write(t.name + ".csv", to_csv(t));
  } catch (const std::exception& e) {
    log << "output error: " << e.what() << "\n";
    return 1;
  }

  for (const auto& c : report.checks)
    log << (c.pass ? "PASS " : "FAIL ") << c.name << "  " << fmt(c.value) << " " << c.relation
        << " " << fmt(c.bound) << "\n";
  for (const auto& e : report.errors) log << "ERROR " << e << "\n";
  log << report.command << ": " << (report.passed() ? "all checks passed" : "some checks failed")
      << "\n";
  return report.exit_code();
}

}  // namespace costress
