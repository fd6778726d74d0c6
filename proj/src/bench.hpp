#pragma once

#include <optional>
#include <string>
#include <vector>

#include "datagen.hpp"
#include "spca.hpp"

namespace pspca {

struct SimSpec {
  Index n = 0;
  Index p = 0;
  std::vector<double> spikes;
  Index support_size = 0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

struct BenchConfig {
  std::optional<std::string> input_csv;
  std::optional<SimSpec> simulate;
  std::vector<SelectionMethod> methods;  // subset of {forward, backward, threshold, exhaustive}
  long k = 1;
  double alpha = 0.95;
  bool scale = false;
  DeflationMode deflation = DeflationMode::projection;
  PowerConfig power;
};

// Parses the JSON config accepted by the C API / CLI; documented in README.
BenchConfig parse_bench_config(const std::string& json_text);

struct BenchResult {
  std::string report_json;  // deterministic (no timings)
  std::string table_csv;    // one row per method x component, with wall time
};

// Comparison harness: runs each requested selector against the same data at
// matched cardinalities (taken from a forward reference run at the configured
// alpha). Per-method errors are captured in their rows; the remaining methods
// still run. Recovery metrics are attached whenever simulated ground truth
// exists.
BenchResult run_bench(const BenchConfig& config);

}  // namespace pspca
