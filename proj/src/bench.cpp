#include "bench.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "csv_io.hpp"
#include "report.hpp"
#include "version.hpp"

namespace pspca {

namespace {

using nlohmann::json;

SelectionMethod method_from_name(const std::string& name) {
  if (name == "forward") return SelectionMethod::forward;
  if (name == "backward") return SelectionMethod::backward;
  if (name == "threshold") return SelectionMethod::threshold;
  if (name == "exhaustive") return SelectionMethod::exhaustive;
  throw Error(ErrorCode::invalid_argument,
              "bench: unknown method '" + name +
                  "' (expected forward, backward, threshold or exhaustive)");
}

}  // namespace

BenchConfig parse_bench_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error,
                std::string("bench: config is not valid JSON: ") + e.what());
  }

  BenchConfig cfg;
  try {
    if (doc.contains("input_csv")) {
      cfg.input_csv = doc.at("input_csv").get<std::string>();
    }
    if (doc.contains("simulate")) {
      const json& sim = doc.at("simulate");
      SimSpec spec;
      spec.n = sim.at("n").get<Index>();
      spec.p = sim.at("p").get<Index>();
      spec.spikes = sim.at("spikes").get<std::vector<double>>();
      spec.support_size = sim.at("support_size").get<Index>();
      spec.sigma = sim.value("sigma", 0.0);
      spec.seed = sim.value("seed", std::uint64_t{0});
      cfg.simulate = std::move(spec);
    }
    for (const json& m : doc.value("methods", json::array())) {
      cfg.methods.push_back(method_from_name(m.get<std::string>()));
    }
    cfg.k = doc.value("k", 1L);
    cfg.alpha = doc.value("alpha", 0.95);
    cfg.scale = doc.value("scale", false);
    const std::string deflation = doc.value("deflation", "projection");
    if (deflation == "projection") {
      cfg.deflation = DeflationMode::projection;
    } else if (deflation == "none") {
      cfg.deflation = DeflationMode::none;
    } else {
      throw Error(ErrorCode::invalid_argument,
                  "bench: deflation must be 'projection' or 'none'");
    }
    if (doc.contains("power")) {
      const json& pw = doc.at("power");
      cfg.power.tol = pw.value("tol", 1e-10);
      cfg.power.max_iter = pw.value("max_iter", 10000L);
      cfg.power.seed = pw.value("seed", std::uint64_t{0});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_argument,
                std::string("bench: bad config field: ") + e.what());
  }

  if (cfg.methods.empty()) {
    throw Error(ErrorCode::invalid_argument, "bench: method list is empty");
  }
  if (cfg.input_csv.has_value() == cfg.simulate.has_value()) {
    throw Error(ErrorCode::invalid_argument,
                "bench: exactly one of input_csv / simulate is required");
  }
  if (cfg.k < 1) {
    throw Error(ErrorCode::invalid_argument, "bench: k must be >= 1");
  }
  return cfg;
}

namespace {

struct MethodOutcome {
  SelectionMethod method;
  bool failed = false;
  std::string error_code;
  std::string error_message;
  SpcaFit fit;
  std::optional<RecoveryMetrics> recovery;
  double wall_ms = 0.0;
};

std::string sanitize_csv_field(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  }
  return s;
}

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", ms);
  return buf;
}

void emit_sim_spec(JsonWriter& w, const SimSpec& spec) {
  w.begin_object();
  w.key("n").value_int(spec.n);
  w.key("p").value_int(spec.p);
  w.key("spikes").begin_array();
  for (const double s : spec.spikes) w.value(s);
  w.end_array();
  w.key("support_size").value_int(spec.support_size);
  w.key("sigma").value(spec.sigma);
  w.key("seed").value_int(static_cast<std::int64_t>(spec.seed));
  w.end_object();
}

}  // namespace

BenchResult run_bench(const BenchConfig& config) {
  if (config.methods.empty()) {
    throw Error(ErrorCode::invalid_argument, "bench: method list is empty");
  }

  // Data: file or simulation (with ground truth for recovery metrics).
  Matrix raw;
  std::vector<std::string> names;
  std::optional<SpikedTruth> truth;
  if (config.input_csv) {
    CsvData data = load_csv(*config.input_csv);
    raw = std::move(data.x);
    names = std::move(data.names);
  } else if (config.simulate) {
    const SimSpec& spec = *config.simulate;
    truth = make_block_truth(spec.p, spec.spikes, spec.support_size, spec.sigma,
                             spec.seed);
    raw = simulate_spiked(spec.n, spec.p, *truth);
  } else {
    throw Error(ErrorCode::invalid_argument, "bench: no input configured");
  }
  const CenteredData cd = center(raw, config.scale);

  // Reference forward run at the configured alpha fixes the matched
  // cardinalities for every other method.
  SpcaConfig fit_config;
  fit_config.deflation = config.deflation;
  fit_config.power = config.power;

  SelectionPolicy forward_policy;
  forward_policy.method = SelectionMethod::forward;
  forward_policy.alpha = config.alpha;

  const auto ref_start = std::chrono::steady_clock::now();
  const SpcaFit reference = fit_spca(cd, config.k, forward_policy, fit_config);
  const double ref_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                ref_start)
          .count();
  std::vector<Index> cardinalities;
  for (const SparseComponent& comp : reference.components) {
    cardinalities.push_back(comp.cardinality());
  }
  const long k_eff = static_cast<long>(cardinalities.size());

  std::vector<MethodOutcome> outcomes;
  for (const SelectionMethod method : config.methods) {
    MethodOutcome outcome;
    outcome.method = method;
    try {
      if (method == SelectionMethod::forward) {
        outcome.fit = reference;
        outcome.wall_ms = ref_ms;
      } else {
        SelectionPolicy policy;
        policy.method = method;
        policy.alpha = (method == SelectionMethod::backward) ? 0.0 : config.alpha;
        SpcaConfig method_config = fit_config;
        method_config.cardinality_schedule = cardinalities;
        const auto start = std::chrono::steady_clock::now();
        outcome.fit = fit_spca(cd, std::max(k_eff, 1L), policy, method_config);
        outcome.wall_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
      }
      if (truth && !outcome.fit.components.empty()) {
        outcome.recovery = recovery_metrics(outcome.fit.components, *truth);
      }
    } catch (const Error& e) {
      outcome.failed = true;
      outcome.error_code = error_code_name(e.code());
      outcome.error_message = e.what();
    }
    outcomes.push_back(std::move(outcome));
  }

  // Deterministic JSON report (timings live in the CSV table only, so two
  // runs with identical flags stay byte-identical).
  JsonWriter w;
  w.begin_object();
  w.key("schema").value(std::string(kReportSchemaId));
  w.key("generator").begin_object();
  w.key("name").value(std::string("pspca"));
  w.key("version").value(std::string(kVersion));
  w.end_object();
  w.key("command").value(std::string("bench"));
  w.key("config").begin_object();
  w.key("methods").begin_array();
  for (const SelectionMethod m : config.methods) {
    w.value(std::string(selection_method_name(m)));
  }
  w.end_array();
  w.key("k").value_int(config.k);
  w.key("alpha").value(config.alpha);
  w.key("scale").value(config.scale);
  w.key("deflation").value(std::string(deflation_mode_name(config.deflation)));
  w.key("power");
  emit_power_config(w, config.power);
  w.key("input");
  w.begin_object();
  if (config.input_csv) {
    w.key("csv").value(*config.input_csv);
  } else {
    w.key("simulate");
    emit_sim_spec(w, *config.simulate);
  }
  w.end_object();
  w.end_object();
  w.key("data");
  emit_data_section(w, cd.n(), cd.p(), cd.scaled, total_variance(cd), names);
  w.key("reference_cardinalities").begin_array();
  for (const Index c : cardinalities) w.value_int(c);
  w.end_array();
  w.key("methods").begin_array();
  for (const MethodOutcome& outcome : outcomes) {
    w.begin_object();
    w.key("method").value(std::string(selection_method_name(outcome.method)));
    w.key("error");
    if (outcome.failed) {
      w.begin_object();
      w.key("code").value(outcome.error_code);
      w.key("message").value(outcome.error_message);
      w.end_object();
    } else {
      w.null();
    }
    w.key("components").begin_array();
    if (!outcome.failed) {
      for (size_t i = 0; i < outcome.fit.components.size(); ++i) {
        emit_component(w, outcome.fit.components[i],
                       outcome.fit.parent_eigenvalues[i],
                       outcome.fit.adjusted_cumulative_vexp[i],
                       &outcome.fit.traces[i]);
      }
    }
    w.end_array();
    w.key("adjusted_cumulative_vexp").begin_array();
    if (!outcome.failed) {
      for (const double v : outcome.fit.adjusted_cumulative_vexp) w.value(v);
    }
    w.end_array();
    w.key("recovery");
    if (outcome.recovery) {
      emit_recovery(w, *outcome.recovery);
    } else {
      w.null();
    }
    w.end_object();
  }
  w.end_array();
  w.end_object();

  // Flat CSV table, one row per method x component.
  std::string csv =
      "method,component,cardinality,projection_r2,component_variance,"
      "adjusted_cumulative_vexp,wall_ms,support_precision,support_recall,"
      "cosine,exact_support,error\n";
  for (const MethodOutcome& outcome : outcomes) {
    const std::string method_name = selection_method_name(outcome.method);
    if (outcome.failed) {
      csv += method_name + ",,,,,,,,,,," +
             sanitize_csv_field(outcome.error_code + ": " + outcome.error_message) +
             "\n";
      continue;
    }
    for (size_t i = 0; i < outcome.fit.components.size(); ++i) {
      const SparseComponent& comp = outcome.fit.components[i];
      csv += method_name;
      csv += ',' + std::to_string(i);
      csv += ',' + std::to_string(comp.cardinality());
      csv += ',' + format_double(comp.projection_r2);
      csv += ',' + format_double(comp.component_variance);
      csv += ',' + format_double(outcome.fit.adjusted_cumulative_vexp[i]);
      csv += ',' + format_ms(outcome.wall_ms);
      const RecoveryPair* pair = nullptr;
      if (outcome.recovery) {
        for (const RecoveryPair& rp : outcome.recovery->pairs) {
          if (rp.estimated_index == static_cast<long>(i)) {
            pair = &rp;
            break;
          }
        }
      }
      if (pair) {
        csv += ',' + format_double(pair->support_precision);
        csv += ',' + format_double(pair->support_recall);
        csv += ',' + format_double(pair->cosine);
        csv += std::string(",") + (pair->exact_support ? "true" : "false");
      } else {
        csv += ",,,,";
      }
      csv += ",\n";
    }
  }

  BenchResult result;
  result.report_json = w.str();
  result.table_csv = std::move(csv);
  return result;
}

}  // namespace pspca
