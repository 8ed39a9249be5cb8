#ifndef NILP_TOOLS_SUITES_HPP
#define NILP_TOOLS_SUITES_HPP

#include <string>
#include <utility>
#include <vector>

#include "nilp/serialize.hpp"

namespace nilp {

struct SuiteResult {
  explicit SuiteResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool pass = true;
  long checks = 0;
  long failures = 0;
  std::vector<std::string> notes;
  Json data = Json::object();

  void check(bool ok, const std::string& what);
  Json to_json() const;
};

// Every suite reads p, N0, c0, a_max, cap, alphas and seed from the config;
// trials scales the randomized ones.
SuiteResult suite_ch_group(const RunConfig& cfg, int trials);
SuiteResult suite_splitting(const RunConfig& cfg, int trials);
SuiteResult suite_lift(const RunConfig& cfg);
SuiteResult suite_ram_numbers(const RunConfig& cfg);
SuiteResult suite_readings(const RunConfig& cfg);
SuiteResult suite_congruences(const RunConfig& cfg, int trials);
SuiteResult suite_c1_plus(const RunConfig& cfg);
SuiteResult suite_zero_part(const RunConfig& cfg);
SuiteResult suite_membership(const RunConfig& cfg);
SuiteResult suite_power_sums(int p, int n_max);
SuiteResult suite_bernoulli(int p);
SuiteResult suite_orbit_products(int p, int trials, std::uint64_t seed);
SuiteResult suite_mixedchar(int p, int e_k, int n0);

std::vector<std::string> suite_names();
// Dispatch by name with default trial counts; throws UsageError for unknown names.
SuiteResult run_suite(const std::string& name, const RunConfig& cfg);

}  // namespace nilp

#endif
