#ifndef COMMUTANT_VERIFY_HPP
#define COMMUTANT_VERIFY_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "commutant/core.hpp"

namespace commutant::verify {

/// Size pairs are read per suite:
///   vec-identity, swap-law, kron-conjugation: (p, q)
///   powers: (largest exponent, n)
///   group-axioms, mode-perm-lemma, preserver-suite: (m, n)
struct RunConfig {
  std::vector<std::pair<Index, Index>> sizes;
  std::uint64_t seed = 0;
  Index trials = 20;
  double tol = 1e-12;
  bool inject_fault = false;
};

struct SuiteResult {
  std::string name;
  Index checks = 0;
  Index passed = 0;
  std::vector<std::string> failures;

  bool ok() const { return checks > 0 && passed == checks; }
};

const std::vector<std::string>& suite_names();

bool is_suite(const std::string& name);

/// Runs one suite. Random draws for size s, trial t come from stream
/// (config.seed, suite index, s * 1000003 + t). With inject_fault set, the
/// first comparison of the suite is corrupted and must be reported.
SuiteResult run_suite(const std::string& name, const RunConfig& config);

std::string result_to_json(const SuiteResult& result);

}  // namespace commutant::verify

#endif  // COMMUTANT_VERIFY_HPP
