// pspca command-line tool. Talks to the library exclusively through the
// public C API in pspca.h; exit codes are 0 = success, 1 = computational
// error, 2 = usage / validation error.

#include <pspca.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitComputational = 1;
constexpr int kExitUsage = 2;

int exit_code_for(int status) {
  if (status == PSPCA_OK) return kExitOk;
  if (status == PSPCA_E_INVALID_ARGUMENT) return kExitUsage;
  return kExitComputational;
}

int report_failure(const std::string& what, int status) {
  std::cerr << "pspca: " << what << ": [" << pspca_status_name(status) << "] "
            << pspca_last_error() << "\n";
  return exit_code_for(status);
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { pspca_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

using MatrixHandle = std::unique_ptr<pspca_matrix, decltype(&pspca_matrix_destroy)>;
using CenteredHandle =
    std::unique_ptr<pspca_centered, decltype(&pspca_centered_destroy)>;
using PcaHandle = std::unique_ptr<pspca_pca, decltype(&pspca_pca_destroy)>;
using SpcaHandle = std::unique_ptr<pspca_spca, decltype(&pspca_spca_destroy)>;
using TruthHandle = std::unique_ptr<pspca_truth, decltype(&pspca_truth_destroy)>;

std::vector<const char*> column_names(const pspca_matrix* m) {
  std::vector<const char*> names;
  const int64_t p = pspca_matrix_cols(m);
  for (int64_t j = 0; j < p; ++j) {
    const char* name = pspca_matrix_column_name(m, j);
    if (!name) return {};
    names.push_back(name);
  }
  return names;
}

// Emits the report to --out when given, otherwise to stdout.
int deliver_report(const std::string& out_path, const std::string& json,
                   const std::string& summary) {
  if (out_path.empty()) {
    std::cout << json << "\n";
    return kExitOk;
  }
  if (!write_file(out_path, json)) {
    std::cerr << "pspca: cannot write '" << out_path << "'\n";
    return kExitComputational;
  }
  std::cout << summary << "\n";
  return kExitOk;
}

struct CommonOpts {
  std::string input;
  std::string out;
  bool scale = false;
  std::int64_t k = 0;
  double tol = 1e-10;
  std::int64_t max_iter = 10000;
  std::uint64_t seed = 0;
};

void add_power_flags(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--tol", opts->tol, "Power-method convergence tolerance");
  cmd->add_option("--max-iter", opts->max_iter, "Power-method iteration cap");
  cmd->add_option("--seed", opts->seed, "Seed for all randomized behavior");
}

int run_pca(const CommonOpts& opts) {
  pspca_matrix* m_raw = nullptr;
  int status = pspca_matrix_from_csv(opts.input.c_str(), &m_raw);
  if (status != PSPCA_OK) return report_failure("loading " + opts.input, status);
  MatrixHandle m(m_raw, &pspca_matrix_destroy);

  pspca_centered* cd_raw = nullptr;
  status = pspca_center(m.get(), opts.scale ? 1 : 0, &cd_raw);
  if (status != PSPCA_OK) return report_failure("centering", status);
  CenteredHandle cd(cd_raw, &pspca_centered_destroy);

  pspca_power_opts power;
  pspca_power_opts_init(&power);
  power.tol = opts.tol;
  power.max_iter = opts.max_iter;
  power.seed = opts.seed;

  pspca_pca* model_raw = nullptr;
  status = pspca_fit_pca(cd.get(), opts.k, &power, &model_raw);
  if (status != PSPCA_OK) return report_failure("fitting pca", status);
  PcaHandle model(model_raw, &pspca_pca_destroy);

  const std::vector<const char*> names = column_names(m.get());
  OwnedString json;
  status = pspca_pca_report_json(model.get(), names.empty() ? nullptr : names.data(),
                                 static_cast<int64_t>(names.size()), &json.ptr);
  if (status != PSPCA_OK) return report_failure("writing report", status);

  const int64_t k = pspca_pca_components(model.get());
  std::ostringstream summary;
  summary << "pca: " << k << " component(s), total variance "
          << pspca_pca_total_variance(model.get()) << ", report: " << opts.out;
  return deliver_report(opts.out, json.str(), summary.str());
}

struct SpcaCliOpts : CommonOpts {
  double alpha = 0.95;
  std::string method = "forward";
  std::int64_t max_card = 0;
  std::int64_t min_card = 1;
  std::string deflation = "projection";
};

int run_spca(const SpcaCliOpts& opts) {
  pspca_spca_opts fit_opts;
  pspca_spca_opts_init(&fit_opts);
  if (opts.method == "forward") {
    fit_opts.method = PSPCA_METHOD_FORWARD;
  } else if (opts.method == "backward") {
    fit_opts.method = PSPCA_METHOD_BACKWARD;
  } else if (opts.method == "threshold") {
    fit_opts.method = PSPCA_METHOD_THRESHOLD;
  } else if (opts.method == "exhaustive") {
    fit_opts.method = PSPCA_METHOD_EXHAUSTIVE;
  } else if (opts.method == "full") {
    fit_opts.method = PSPCA_METHOD_FULL;
  } else {
    std::cerr << "pspca: unknown --method '" << opts.method << "'\n";
    return kExitUsage;
  }
  if (opts.deflation == "projection") {
    fit_opts.deflation = PSPCA_DEFLATION_PROJECTION;
  } else if (opts.deflation == "none") {
    fit_opts.deflation = PSPCA_DEFLATION_NONE;
  } else {
    std::cerr << "pspca: unknown --deflation '" << opts.deflation << "'\n";
    return kExitUsage;
  }
  fit_opts.alpha = opts.alpha;
  fit_opts.max_cardinality = opts.max_card;
  fit_opts.min_cardinality = opts.min_card;
  fit_opts.power.tol = opts.tol;
  fit_opts.power.max_iter = opts.max_iter;
  fit_opts.power.seed = opts.seed;

  pspca_matrix* m_raw = nullptr;
  int status = pspca_matrix_from_csv(opts.input.c_str(), &m_raw);
  if (status != PSPCA_OK) return report_failure("loading " + opts.input, status);
  MatrixHandle m(m_raw, &pspca_matrix_destroy);

  pspca_centered* cd_raw = nullptr;
  status = pspca_center(m.get(), opts.scale ? 1 : 0, &cd_raw);
  if (status != PSPCA_OK) return report_failure("centering", status);
  CenteredHandle cd(cd_raw, &pspca_centered_destroy);

  pspca_spca* fit_raw = nullptr;
  status = pspca_fit_spca(cd.get(), opts.k, &fit_opts, &fit_raw);
  if (status != PSPCA_OK) return report_failure("fitting spca", status);
  SpcaHandle fit(fit_raw, &pspca_spca_destroy);

  const std::vector<const char*> names = column_names(m.get());
  OwnedString json;
  status = pspca_spca_report_json(fit.get(), names.empty() ? nullptr : names.data(),
                                  static_cast<int64_t>(names.size()), &json.ptr);
  if (status != PSPCA_OK) return report_failure("writing report", status);

  const int64_t k = pspca_spca_components(fit.get());
  std::ostringstream summary;
  summary << "spca: " << k << " component(s);";
  for (int64_t i = 0; i < k; ++i) {
    double r2 = 0.0;
    pspca_spca_projection_r2(fit.get(), i, &r2);
    summary << " [" << i << "] card=" << pspca_spca_cardinality(fit.get(), i)
            << " r2=" << r2 << ";";
  }
  summary << " report: " << opts.out;
  return deliver_report(opts.out, json.str(), summary.str());
}

struct SimulateOpts {
  std::int64_t n = 0;
  std::int64_t p = 0;
  std::string spikes;
  std::int64_t support_size = 0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string truth_path;
};

std::vector<double> parse_spikes(const std::string& text) {
  std::vector<double> spikes;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    size_t consumed = 0;
    const double value = std::stod(token, &consumed);
    if (consumed != token.size()) throw std::invalid_argument(token);
    spikes.push_back(value);
  }
  if (spikes.empty()) throw std::invalid_argument("empty spike list");
  return spikes;
}

int run_simulate(const SimulateOpts& opts) {
  std::vector<double> spikes;
  try {
    spikes = parse_spikes(opts.spikes);
  } catch (const std::exception&) {
    std::cerr << "pspca: --spikes expects a comma-separated list of numbers\n";
    return kExitUsage;
  }

  pspca_truth* truth_raw = nullptr;
  int status = pspca_truth_block(opts.p, spikes.data(),
                                 static_cast<int64_t>(spikes.size()),
                                 opts.support_size, opts.sigma, opts.seed,
                                 &truth_raw);
  if (status != PSPCA_OK) return report_failure("building truth", status);
  TruthHandle truth(truth_raw, &pspca_truth_destroy);

  pspca_matrix* m_raw = nullptr;
  status = pspca_simulate(opts.n, truth.get(), &m_raw);
  if (status != PSPCA_OK) return report_failure("simulating", status);
  MatrixHandle m(m_raw, &pspca_matrix_destroy);

  status = pspca_matrix_to_csv(m.get(), opts.out.c_str());
  if (status != PSPCA_OK) return report_failure("writing " + opts.out, status);

  if (!opts.truth_path.empty()) {
    OwnedString json;
    status = pspca_truth_to_json(truth.get(), &json.ptr);
    if (status != PSPCA_OK) return report_failure("serializing truth", status);
    if (!write_file(opts.truth_path, json.str())) {
      std::cerr << "pspca: cannot write '" << opts.truth_path << "'\n";
      return kExitComputational;
    }
  }
  std::cout << "simulate: wrote " << opts.n << "x" << opts.p << " matrix to "
            << opts.out;
  if (!opts.truth_path.empty()) std::cout << ", truth to " << opts.truth_path;
  std::cout << "\n";
  return kExitOk;
}

struct BenchOpts : CommonOpts {
  std::string simulate_spec;
  std::string methods;
  double alpha = 0.95;
  std::string deflation = "projection";
  std::string csv_out;
};

int run_bench_cmd(const BenchOpts& opts) {
  nlohmann::json config;
  if (!opts.input.empty()) {
    config["input_csv"] = opts.input;
  } else {
    std::ifstream in(opts.simulate_spec);
    if (!in) {
      std::cerr << "pspca: cannot open simulate spec '" << opts.simulate_spec
                << "'\n";
      return kExitUsage;
    }
    nlohmann::json spec;
    try {
      in >> spec;
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "pspca: simulate spec is not valid JSON: " << e.what() << "\n";
      return kExitUsage;
    }
    config["simulate"] = spec;
  }

  std::vector<std::string> methods;
  std::stringstream ss(opts.methods);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) methods.push_back(token);
  }
  if (methods.empty()) {
    std::cerr << "pspca: --methods must list at least one method\n";
    return kExitUsage;
  }
  config["methods"] = methods;
  config["k"] = opts.k > 0 ? opts.k : 1;
  config["alpha"] = opts.alpha;
  config["scale"] = opts.scale;
  config["deflation"] = opts.deflation;
  config["power"] = {{"tol", opts.tol},
                     {"max_iter", opts.max_iter},
                     {"seed", opts.seed}};

  OwnedString report;
  OwnedString table;
  const int status =
      pspca_bench_run(config.dump().c_str(), &report.ptr, &table.ptr);
  if (status != PSPCA_OK) return report_failure("running bench", status);

  std::string csv_path = opts.csv_out;
  if (csv_path.empty() && !opts.out.empty()) {
    csv_path = opts.out;
    const size_t dot = csv_path.find_last_of('.');
    if (dot != std::string::npos) csv_path.resize(dot);
    csv_path += ".csv";
  }
  if (!csv_path.empty()) {
    if (!write_file(csv_path, table.str())) {
      std::cerr << "pspca: cannot write '" << csv_path << "'\n";
      return kExitComputational;
    }
  }
  std::ostringstream summary;
  summary << "bench: methods " << opts.methods;
  if (!csv_path.empty()) summary << ", table: " << csv_path;
  summary << ", report: " << opts.out;
  return deliver_report(opts.out, report.str(), summary.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projection sparse principal component analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pspca_version()));

  CommonOpts pca_opts;
  CLI::App* pca_cmd = app.add_subcommand("pca", "Full-cardinality PCA");
  pca_cmd->add_option("--input", pca_opts.input, "Input CSV (header + numeric rows)")
      ->required();
  pca_cmd->add_option("--k", pca_opts.k, "Number of components (0 = auto)");
  pca_cmd->add_flag("--scale", pca_opts.scale, "Standardize columns to unit variance");
  pca_cmd->add_option("--out", pca_opts.out, "Report path (stdout when omitted)");
  add_power_flags(pca_cmd, &pca_opts);

  SpcaCliOpts spca_opts;
  CLI::App* spca_cmd = app.add_subcommand("spca", "Projection sparse PCA");
  spca_cmd->add_option("--input", spca_opts.input, "Input CSV")->required();
  spca_cmd->add_option("--k", spca_opts.k, "Number of sparse components")
      ->required();
  spca_cmd->add_option("--alpha", spca_opts.alpha,
                       "Target share of each parent PC's variance, in (0, 1]");
  spca_cmd->add_option("--method", spca_opts.method,
                       "forward | backward | threshold | exhaustive | full");
  spca_cmd->add_option("--max-card", spca_opts.max_card,
                       "Cardinality cap per component (0 = unlimited)");
  spca_cmd->add_option("--min-card", spca_opts.min_card, "Cardinality floor");
  spca_cmd->add_option("--deflation", spca_opts.deflation, "projection | none");
  spca_cmd->add_flag("--scale", spca_opts.scale, "Standardize columns");
  spca_cmd->add_option("--out", spca_opts.out, "Report path (stdout when omitted)");
  add_power_flags(spca_cmd, &spca_opts);

  SimulateOpts sim_opts;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Spiked-model data generator");
  sim_cmd->add_option("--n", sim_opts.n, "Observations")->required();
  sim_cmd->add_option("--p", sim_opts.p, "Variables")->required();
  sim_cmd->add_option("--spikes", sim_opts.spikes,
                      "Comma-separated spike variances, decreasing")
      ->required();
  sim_cmd->add_option("--support-size", sim_opts.support_size,
                      "Variables per planted support")
      ->required();
  sim_cmd->add_option("--sigma", sim_opts.sigma, "Noise standard deviation");
  sim_cmd->add_option("--seed", sim_opts.seed, "Generator seed");
  sim_cmd->add_option("--out", sim_opts.out, "Output CSV path")->required();
  sim_cmd->add_option("--truth", sim_opts.truth_path, "Ground-truth JSON path");

  BenchOpts bench_opts;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Method comparison harness");
  CLI::Option* bench_input =
      bench_cmd->add_option("--input", bench_opts.input, "Input CSV");
  bench_cmd->add_option("--simulate", bench_opts.simulate_spec,
                        "Simulation spec JSON file")
      ->excludes(bench_input);
  bench_cmd->add_option("--methods", bench_opts.methods,
                        "Comma-separated subset of forward,backward,threshold,exhaustive")
      ->required();
  bench_cmd->add_option("--k", bench_opts.k, "Components per method");
  bench_cmd->add_option("--alpha", bench_opts.alpha, "Forward reference target");
  bench_cmd->add_flag("--scale", bench_opts.scale, "Standardize columns");
  bench_cmd->add_option("--deflation", bench_opts.deflation, "projection | none");
  bench_cmd->add_option("--out", bench_opts.out, "JSON report path");
  bench_cmd->add_option("--csv", bench_opts.csv_out,
                        "Flat table path (default: --out with .csv)");
  add_power_flags(bench_cmd, &bench_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (pca_cmd->parsed()) return run_pca(pca_opts);
  if (spca_cmd->parsed()) return run_spca(spca_opts);
  if (sim_cmd->parsed()) return run_simulate(sim_opts);
  if (bench_cmd->parsed()) {
    if (bench_opts.input.empty() && bench_opts.simulate_spec.empty()) {
      std::cerr << "pspca: bench needs --input or --simulate\n";
      return kExitUsage;
    }
    return run_bench_cmd(bench_opts);
  }
  return kExitUsage;
}
