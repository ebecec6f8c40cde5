#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "poisonlab/experiments.hpp"

namespace poisonlab::verify {

struct CheckResult {
  std::string module;
  std::string id;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  std::uint64_t seed = kDefaultSeed;
  /// Fault injection for testing the runner itself: flips the sign of the
  /// bound in the ratio-stability check, which must then fail.
  bool flip_ratio_sign = false;
  std::size_t threads = 1;
};

// Exact acceptance checks. Each takes the seed and returns its own result.
CheckResult loss_gap_exactness(std::uint64_t seed, std::size_t instances = 200);
CheckResult ratio_stability_exactness(std::uint64_t seed, bool flip_sign = false, std::size_t instances = 100);
CheckResult coupled_stability(std::uint64_t seed, std::size_t instances = 100);
CheckResult sauer_shelah(std::uint64_t seed, std::size_t classes = 50, std::size_t subsets = 20);
CheckResult equivalence_inequality(std::span<const std::size_t> sizes = {});
CheckResult public_domination(std::span<const std::size_t> sizes = {});

// Statistical acceptance checks.
CheckResult lower_bound_d1(std::uint64_t seed, std::size_t trials_F = 10'000, std::size_t threads = 1);
CheckResult lower_bound_d2(std::uint64_t seed, std::size_t trials_F = 10'000, std::size_t threads = 1);
CheckResult upper_bound_compliance(std::uint64_t seed, std::size_t trials = 10'000, std::size_t threads = 1);
CheckResult cover_radius_bound(std::uint64_t seed, std::size_t classes = 20, std::size_t samples = 200);

/// Every module invariant plus the exact acceptance checks, in a fixed order.
std::vector<CheckResult> run_invariant_suite(const Options& options);

/// One line per check: "PASS module/id: title (detail)".
std::string format_result(const CheckResult& r);

/// Runs fn, timing it and converting exceptions into a failed result.
CheckResult timed(const std::string& module, const std::string& id, const std::string& title,
                  const std::function<void(CheckResult&)>& fn);

}  // namespace poisonlab::verify
