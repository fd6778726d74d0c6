#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "datagen.hpp"
#include "pca.hpp"
#include "spca.hpp"

namespace pspca {

// Minimal deterministic JSON emitter: fixed key order (insertion order),
// numbers at 17 significant digits, no locale dependence. Reports written
// twice from the same fit are byte-identical.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(double v);
  JsonWriter& value_int(std::int64_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& null();

  const std::string& str() const { return out_; }

 private:
  void separator();

  std::string out_;
  std::vector<bool> first_in_scope_{true};
  bool pending_key_ = false;
};

// JSON report for a full-cardinality PCA fit.
std::string pca_report_json(const PcaModel& model,
                            const std::vector<std::string>& column_names = {});

// JSON report for a sparse fit: config snapshot, per-component records with
// selection traces, and the adjusted cumulative explained variance.
std::string spca_report_json(const SpcaFit& fit,
                             const std::vector<std::string>& column_names = {});

// Sidecar ground-truth document for simulated data.
std::string truth_json(const SpikedTruth& truth);

std::string recovery_json(const RecoveryMetrics& metrics);

void write_text_file(const std::string& path, const std::string& content);

// Shared emitter pieces used by the benchmark report.
void emit_component(JsonWriter& w, const SparseComponent& comp,
                    double parent_eigenvalue, double adjusted_cumulative,
                    const SelectionTrace* trace);
void emit_data_section(JsonWriter& w, Index n, Index p, bool scaled,
                       double total_variance,
                       const std::vector<std::string>& column_names);
void emit_power_config(JsonWriter& w, const PowerConfig& power);
void emit_recovery(JsonWriter& w, const RecoveryMetrics& metrics);

}  // namespace pspca
