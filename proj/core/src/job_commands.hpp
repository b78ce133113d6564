#pragma once

#include <cstdint>
#include <string>

#include "costress/jobs.hpp"

namespace costress::jobs {

class Recorder {
 public:
  Recorder(const JobConfig& cfg, Report& report) : cfg_(cfg), report_(report) {}

  void le(const std::string& name, const std::string& op, double value, double bound);
  void ge(const std::string& name, const std::string& op, double value, double bound);
  void gt(const std::string& name, const std::string& op, double value, double bound);
  // Records a boolean outcome as a 0/1 count against zero.
  void holds(const std::string& name, const std::string& op, bool ok);

  double tol(const std::string& key) const { return cfg_.tol.at(key); }
  void note(const std::string& text) { report_.notes.push_back(text); }
  void table(Table t) { report_.tables.push_back(std::move(t)); }
  void error(const std::string& text) { report_.errors.push_back(text); }
  void set_quadrature_order(int q) { report_.quadrature_order = q; }

 private:
  void add(const std::string& name, const std::string& op, double value, const char* rel,
           double bound, bool pass);
  const JobConfig& cfg_;
  Report& report_;
};

// splitmix64 over (base, stream, index); one independent seed per sample.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index);

// Point in the central half of the box.
Vec3 interior_point(SeededRng& rng, const Box& box);

std::string num(double v);

void dispatch(const JobConfig& cfg, Report& report);

void verify_operators(const JobConfig& cfg, Recorder& rec);
void verify_kinematics(const JobConfig& cfg, Recorder& rec);
void energy_report(const JobConfig& cfg, Recorder& rec);
void conformal_demo(const JobConfig& cfg, Recorder& rec);
void bc_audit(const JobConfig& cfg, Recorder& rec);
void hd_postulate(const JobConfig& cfg, Recorder& rec);
void bvp_solve(const JobConfig& cfg, Recorder& rec);
void cosserat_limit(const JobConfig& cfg, Recorder& rec);

}  // namespace costress::jobs
