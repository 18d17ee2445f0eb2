#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace holab {

// Outcome of one verification suite: pass iff max_dev < threshold (for
// suites that also carry side conditions, `pass` is the full verdict and
// `detail` spells the parts out).
struct SuiteResult {
  std::string name;
  bool pass = false;
  double max_dev = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20240915;
  int steps = 512;                    // transport resolution
  std::optional<double> tol_override; // replaces every suite threshold
  int threads = 1;                    // worker cap for independent trials
};

// The ten verification suites, in their canonical order.
std::vector<SuiteResult> verify_all(const VerifyOptions& options);

// Reads HOLONOMY_LAB_THREADS (>= 1); defaults to 1.
int thread_count_from_env();

}  // namespace holab
