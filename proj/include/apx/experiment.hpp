#pragma once

// Experiment orchestration: a config document names a ring, a generator
// recipe, and an operation pipeline; the runner executes it and writes a
// machine-readable report plus a text summary. Same config + same seed means
// byte-identical machine output, across runs and worker counts.

#include <cstdint>
#include <optional>
#include <string>

#include "apx/report.hpp"

namespace apx {

struct ExperimentResult {
  Json machine;          // full envelope
  std::string summary;   // human-readable
  bool structural_error = false;
  std::string error;
};

// Parses and runs a config JSON document. Budget violations mark the step
// as truncated and continue; structural errors abort with the flag set.
ExperimentResult run_experiment(const std::string& config_json,
                                unsigned workers = 1);

// Writes <out>.json and <out>.txt as named in the config (or out_override).
// Returns the process exit status (0 = completed pipeline).
int run_experiment_files(const std::string& config_json,
                         const std::string& out_override, unsigned workers);

// Deterministic generator recipes (also used by the acceptance corpus).
ElementSet random_symmetric_subset(const RingPtr& ring, std::size_t size,
                                   SplitMix64& rng);
ElementSet interval_set(const RingPtr& ring, std::uint64_t radius);

}  // namespace apx
