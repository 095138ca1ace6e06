#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "lagbound/curve.hpp"

namespace lagbound {

struct ExperimentConfig;

const std::vector<std::string>& lemma_names();
double default_tolerance(const std::string& lemma);

struct CheckRow {
  std::string check;
  std::string case_id;
  double value = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // >= 0 iff pass
  bool pass = false;
  std::string witness;
};

struct LemmaReport {
  std::string name;
  double tol = 0.0;
  std::vector<CheckRow> rows;

  // value <= bound + tol
  void at_most(std::string check, std::string case_id, double value, double bound, std::string witness = {});
  // value >= bound - tol
  void at_least(std::string check, std::string case_id, double value, double bound, std::string witness = {});
  bool pass() const;
};

struct SuiteResult {
  std::vector<LemmaReport> lemmas;
  bool pass() const;
};

// Uniform in [0, 1) from the top 53 bits, independent of the standard library's distributions.
double unit_uniform(std::mt19937_64& rng);

// Random trigonometric graph: 1..3 modes <= max_mode, sup bound max_norm.
Curve random_graph(std::mt19937_64& rng, PatchPtr patch, double max_norm, int max_mode, std::string id, int n = 256);

SuiteResult run_lemma_suite(const ExperimentConfig& cfg);
// One CSV per lemma plus summary.csv.
void write_suite(const SuiteResult& r, const std::filesystem::path& dir);

}  // namespace lagbound
