#pragma once

// Batch jobs behind the command-line tool: configuration, checks, reports.

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "costress/serialize.hpp"

namespace costress {

inline constexpr const char* kVersion = "0.1.0";

const std::vector<std::string>& job_commands();

struct JobOptions {
  std::optional<std::uint64_t> seed;
  std::optional<int> quadrature_order;
};

struct JobConfig {
  std::string command;
  json echo;  // the configuration as interpreted, defaults filled in

  std::optional<std::uint64_t> seed;
  int samples = 0;
  int points = 20;
  int pairs = 10;
  int degree = 4;
  int quadrature_order = 0;  // 0 = command default
  std::vector<int> refinement_orders{4, 8, 16};
  MaterialParams material;
  bool material_given = false;
  json field;       // null when absent
  json test_field;  // null when absent
  std::vector<json> patches;
  int basis_N = 3;
  Box basis_domain{};
  std::vector<int> korn_sweep{2, 3, 4};
  json load;         // body force field spec, null when absent
  json body_couple;  // null when absent
  std::vector<double> mu_c_values{10.0, 100.0, 1000.0, 10000.0};
  bool hd_plus_sign = false;
  std::map<std::string, double> tol;
};

// Default tolerance table; every entry can be overridden under "tolerances".
std::map<std::string, double> default_tolerances();

// Throws ConfigError on schema violations; command-line options override the file.
JobConfig parse_config(const std::string& command, const json& doc, const JobOptions& options);

struct Check {
  std::string name;
  std::string operation;  // library operation producing the value
  double value = 0.0;     // compared quantity (a gap, or a value held against a bound)
  std::string relation;   // "<=", ">=" or ">"
  double bound = 0.0;
  bool pass = false;
};

struct Table {
  std::string name;  // file stem
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string command;
  json config;
  int quadrature_order = 0;
  std::vector<Check> checks;
  std::vector<Table> tables;
  std::vector<std::string> notes;
  std::vector<std::string> errors;

  bool passed() const;
  int exit_code() const { return passed() ? 0 : 1; }
  json to_json() const;
};

// Runs every check of the command. Library exceptions are recorded as errors.
Report run(const JobConfig& config);

// RFC 4180: CRLF line ends, fields quoted when they contain ',', '"', CR or LF.
std::string to_csv(const Table& table);
std::string to_csv(const std::vector<Check>& checks);

// Parse, run and write `report.json` plus one CSV per table into `out_dir`.
// Returns 0 when all checks pass, 1 when any fails, 2 on configuration errors
// (in which case nothing is written).
int run_job(const std::string& command, const std::string& config_path, const std::string& out_dir,
            const JobOptions& options, std::ostream& log);

}  // namespace costress
