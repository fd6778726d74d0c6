#include "report.hpp"

#include <cstdio>
#include <fstream>

#include "csv_io.hpp"
#include "version.hpp"

namespace pspca {

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

}  // namespace

void JsonWriter::separator() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!first_in_scope_.back()) out_ += ',';
  first_in_scope_.back() = false;
}

JsonWriter& JsonWriter::begin_object() {
  separator();
  out_ += '{';
  first_in_scope_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  first_in_scope_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separator();
  out_ += '[';
  first_in_scope_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  first_in_scope_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
  if (!first_in_scope_.back()) out_ += ',';
  first_in_scope_.back() = false;
  append_escaped(out_, name);
  out_ += ':';
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  separator();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value_int(std::int64_t v) {
  separator();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separator();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  separator();
  append_escaped(out_, v);
  return *this;
}

JsonWriter& JsonWriter::null() {
  separator();
  out_ += "null";
  return *this;
}

void emit_power_config(JsonWriter& w, const PowerConfig& power) {
  w.begin_object();
  w.key("tol").value(power.tol);
  w.key("max_iter").value_int(power.max_iter);
  w.key("seed").value_int(static_cast<std::int64_t>(power.seed));
  w.end_object();
}

void emit_data_section(JsonWriter& w, Index n, Index p, bool scaled,
                       double total_variance,
                       const std::vector<std::string>& column_names) {
  w.begin_object();
  w.key("n").value_int(n);
  w.key("p").value_int(p);
  w.key("scaled").value(scaled);
  w.key("total_variance").value(total_variance);
  w.key("column_names");
  if (column_names.empty()) {
    w.null();
  } else {
    w.begin_array();
    for (const std::string& name : column_names) w.value(name);
    w.end_array();
  }
  w.end_object();
}

namespace {

void emit_header(JsonWriter& w, const std::string& command) {
  w.key("schema").value(std::string(kReportSchemaId));
  w.key("generator").begin_object();
  w.key("name").value(std::string("pspca"));
  w.key("version").value(std::string(kVersion));
  w.end_object();
  w.key("command").value(command);
}

void emit_trace(JsonWriter& w, const SelectionTrace& trace) {
  w.begin_object();
  w.key("terminated_by").value(std::string(termination_name(trace.terminated_by)));
  w.key("steps").begin_array();
  for (const SelectionStep& step : trace.steps) {
    w.begin_object();
    w.key("action").value(
        std::string(step.action == SelectionStep::Action::add ? "add" : "remove"));
    w.key("index").value_int(step.index);
    w.key("r2_after").value(step.r2_after);
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

}  // namespace

void emit_component(JsonWriter& w, const SparseComponent& comp,
                    double parent_eigenvalue, double adjusted_cumulative,
                    const SelectionTrace* trace) {
  w.begin_object();
  w.key("parent_index").value_int(comp.parent_index);
  w.key("parent_eigenvalue").value(parent_eigenvalue);
  w.key("cardinality").value_int(comp.cardinality());
  w.key("support").begin_array();
  for (Index idx : comp.support.indices) w.value_int(idx);
  w.end_array();
  w.key("loadings").begin_array();
  for (Index c = 0; c < comp.support.size(); ++c) {
    const Index idx = comp.support.indices[static_cast<size_t>(c)];
    w.begin_object();
    w.key("index").value_int(idx);
    w.key("value").value(comp.loadings[idx]);
    w.end_object();
  }
  w.end_array();
  w.key("raw_coefficients").begin_array();
  for (Index c = 0; c < comp.raw_coefficients.size(); ++c) {
    w.value(comp.raw_coefficients[c]);
  }
  w.end_array();
  w.key("projection_r2").value(comp.projection_r2);
  w.key("component_variance").value(comp.component_variance);
  w.key("adjusted_cumulative_vexp").value(adjusted_cumulative);
  w.key("trace");
  if (trace) {
    emit_trace(w, *trace);
  } else {
    w.null();
  }
  w.end_object();
}

std::string pca_report_json(const PcaModel& model,
                            const std::vector<std::string>& column_names) {
  JsonWriter w;
  w.begin_object();
  emit_header(w, "pca");
  w.key("config").begin_object();
  w.key("k").value_int(model.k);
  w.key("scale").value(model.scaled);
  w.end_object();
  w.key("data");
  emit_data_section(w, model.n, model.p, model.scaled, model.total_variance,
                    column_names);

  const Vector ratios = explained_variance_ratio(model);
  w.key("eigenvalues").begin_array();
  for (Index i = 0; i < model.k; ++i) w.value(model.eigenvalues[i]);
  w.end_array();
  w.key("explained_variance_ratio").begin_array();
  for (Index i = 0; i < model.k; ++i) w.value(ratios[i]);
  w.end_array();

  w.key("components").begin_array();
  double cumulative = 0.0;
  for (Index i = 0; i < model.k; ++i) {
    cumulative += ratios[i];
    w.begin_object();
    w.key("parent_index").value_int(i);
    w.key("parent_eigenvalue").value(model.eigenvalues[i]);
    w.key("cardinality").value_int(model.p);
    w.key("support").begin_array();
    for (Index j = 0; j < model.p; ++j) w.value_int(j);
    w.end_array();
    w.key("loadings").begin_array();
    for (Index j = 0; j < model.p; ++j) {
      w.begin_object();
      w.key("index").value_int(j);
      w.key("value").value(model.loadings(j, i));
      w.end_object();
    }
    w.end_array();
    w.key("raw_coefficients").begin_array().end_array();
    w.key("projection_r2").value(1.0);
    w.key("component_variance").value(model.eigenvalues[i]);
    w.key("adjusted_cumulative_vexp").value(cumulative);
    w.key("trace").null();
    w.end_object();
  }
  w.end_array();

  w.key("adjusted_cumulative_vexp").begin_array();
  cumulative = 0.0;
  for (Index i = 0; i < model.k; ++i) {
    cumulative += ratios[i];
    w.value(cumulative);
  }
  w.end_array();
  w.end_object();
  return w.str();
}

std::string spca_report_json(const SpcaFit& fit,
                             const std::vector<std::string>& column_names) {
  JsonWriter w;
  w.begin_object();
  emit_header(w, "spca");
  w.key("config").begin_object();
  w.key("k").value_int(fit.k_requested);
  w.key("scale").value(fit.scaled);
  w.key("method").value(std::string(selection_method_name(fit.policy.method)));
  w.key("alpha").value(fit.policy.alpha);
  w.key("max_cardinality").value_int(fit.policy.max_cardinality);
  w.key("min_cardinality").value_int(fit.policy.min_cardinality);
  w.key("deflation").value(std::string(deflation_mode_name(fit.deflation_mode)));
  w.key("power");
  emit_power_config(w, fit.power);
  w.end_object();
  w.key("data");
  emit_data_section(w, fit.n, fit.p, fit.scaled, fit.total_variance, column_names);

  w.key("components").begin_array();
  for (size_t i = 0; i < fit.components.size(); ++i) {
    emit_component(w, fit.components[i], fit.parent_eigenvalues[i],
                   fit.adjusted_cumulative_vexp[i], &fit.traces[i]);
  }
  w.end_array();
  w.key("adjusted_cumulative_vexp").begin_array();
  for (const double v : fit.adjusted_cumulative_vexp) w.value(v);
  w.end_array();
  w.end_object();
  return w.str();
}

std::string truth_json(const SpikedTruth& truth) {
  JsonWriter w;
  w.begin_object();
  w.key("schema").value(std::string(kTruthSchemaId));
  w.key("p").value_int(truth.p());
  w.key("noise_sd").value(truth.noise_sd);
  w.key("seed").value_int(static_cast<std::int64_t>(truth.seed));
  w.key("components").begin_array();
  for (Index i = 0; i < truth.m(); ++i) {
    const IndexSet& support = truth.supports[static_cast<size_t>(i)];
    w.begin_object();
    w.key("spike_variance").value(truth.spike_variances[i]);
    w.key("support").begin_array();
    for (Index idx : support.indices) w.value_int(idx);
    w.end_array();
    w.key("loadings").begin_array();
    for (Index idx : support.indices) w.value(truth.true_loadings(idx, i));
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

void emit_recovery(JsonWriter& w, const RecoveryMetrics& metrics) {
  w.begin_object();
  w.key("pairs").begin_array();
  for (const RecoveryPair& pair : metrics.pairs) {
    w.begin_object();
    w.key("estimated").value_int(pair.estimated_index);
    w.key("truth").value_int(pair.truth_index);
    w.key("support_precision").value(pair.support_precision);
    w.key("support_recall").value(pair.support_recall);
    w.key("cosine").value(pair.cosine);
    w.key("exact_support").value(pair.exact_support);
    w.end_object();
  }
  w.end_array();
  w.key("all_exact").value(metrics.all_exact);
  w.end_object();
}

std::string recovery_json(const RecoveryMetrics& metrics) {
  JsonWriter w;
  emit_recovery(w, metrics);
  return w.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::io_error, "cannot open '" + path + "' for writing");
  }
  out << content;
  if (!out) {
    throw Error(ErrorCode::io_error, "write to '" + path + "' failed");
  }
}

}  // namespace pspca
