#include <cstdio>

#include "job_commands.hpp"

namespace costress::jobs {

void Recorder::add(const std::string& name, const std::string& op, double value, const char* rel,
                   double bound, bool pass) {
  report_.checks.push_back(Check{name, op, value, rel, bound, pass});
}

void Recorder::le(const std::string& name, const std::string& op, double value, double bound) {
  add(name, op, value, "<=", bound, value <= bound);
}

void Recorder::ge(const std::string& name, const std::string& op, double value, double bound) {
  add(name, op, value, ">=", bound, value >= bound);
}

void Recorder::gt(const std::string& name, const std::string& op, double value, double bound) {
  add(name, op, value, ">", bound, value > bound);
}

void Recorder::holds(const std::string& name, const std::string& op, bool ok) {
  add(name, op, ok ? 0.0 : 1.0, "<=", 0.0, ok);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  std::uint64_t z = base ^ (stream * 0x9E3779B97F4A7C15ULL) ^ (index * 0xD1B54A32D192ED03ULL);
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Vec3 interior_point(SeededRng& rng, const Box& box) {
  Vec3 x;
  for (int a = 0; a < 3; ++a) {
    const double w = box.hi[a] - box.lo[a];
    x[a] = box.lo[a] + w * rng.uniform(0.25, 0.75);
  }
  return x;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dispatch(const JobConfig& cfg, Report& report) {
  Recorder rec(cfg, report);
  const std::string& c = cfg.command;
  if (c == "verify-operators") verify_operators(cfg, rec);
  else if (c == "verify-kinematics") verify_kinematics(cfg, rec);
  else if (c == "energy-report") energy_report(cfg, rec);
  else if (c == "conformal-demo") conformal_demo(cfg, rec);
  else if (c == "bc-audit") bc_audit(cfg, rec);
  else if (c == "hd-postulate") hd_postulate(cfg, rec);
  else if (c == "bvp-solve") bvp_solve(cfg, rec);
  else if (c == "cosserat-limit") cosserat_limit(cfg, rec);
  else rec.error("unknown command " + c);
}

}  // namespace costress::jobs
