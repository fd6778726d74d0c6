#include "pspca.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "bench.hpp"
#include "csv_io.hpp"
#include "datagen.hpp"
#include "pca.hpp"
#include "report.hpp"
#include "spca.hpp"
#include "version.hpp"

using namespace pspca;

static_assert(sizeof(Index) == sizeof(int64_t), "Eigen::Index must be 64-bit");

struct pspca_matrix {
  Matrix x;
  std::vector<std::string> names;  // empty when the matrix has no header
};

struct pspca_centered {
  CenteredData cd;
};

struct pspca_pca {
  PcaModel model;
};

struct pspca_spca {
  SpcaFit fit;
};

struct pspca_truth {
  SpikedTruth truth;
};

namespace {

thread_local std::string g_last_error;

pspca_status status_from_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return PSPCA_E_INVALID_ARGUMENT;
    case ErrorCode::non_finite: return PSPCA_E_NON_FINITE;
    case ErrorCode::constant_column: return PSPCA_E_CONSTANT_COLUMN;
    case ErrorCode::singular_submatrix: return PSPCA_E_SINGULAR_SUBMATRIX;
    case ErrorCode::no_convergence: return PSPCA_E_NO_CONVERGENCE;
    case ErrorCode::zero_matrix: return PSPCA_E_ZERO_MATRIX;
    case ErrorCode::empty_support: return PSPCA_E_EMPTY_SUPPORT;
    case ErrorCode::index_out_of_range: return PSPCA_E_INDEX_OUT_OF_RANGE;
    case ErrorCode::zero_score: return PSPCA_E_ZERO_SCORE;
    case ErrorCode::zero_projection: return PSPCA_E_ZERO_PROJECTION;
    case ErrorCode::alpha_infeasible: return PSPCA_E_ALPHA_INFEASIBLE;
    case ErrorCode::too_large: return PSPCA_E_TOO_LARGE;
    case ErrorCode::bad_support: return PSPCA_E_BAD_SUPPORT;
    case ErrorCode::parse_error: return PSPCA_E_PARSE;
    case ErrorCode::ragged_row: return PSPCA_E_RAGGED_ROW;
    case ErrorCode::empty_file: return PSPCA_E_EMPTY_FILE;
    case ErrorCode::io_error: return PSPCA_E_IO;
  }
  return PSPCA_E_INTERNAL;
}

int fail_invalid(const char* message) {
  g_last_error = message;
  return PSPCA_E_INVALID_ARGUMENT;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PSPCA_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_from_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PSPCA_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PSPCA_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PSPCA_E_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> collect_names(const char* const* names, int64_t n) {
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) {
    out.emplace_back(names[i] ? names[i] : "");
  }
  return out;
}

const SparseComponent* component_at(const pspca_spca* fit, int64_t component) {
  if (!fit || component < 0 ||
      component >= static_cast<int64_t>(fit->fit.components.size())) {
    return nullptr;
  }
  return &fit->fit.components[static_cast<size_t>(component)];
}

SpcaConfig config_from_opts(const pspca_spca_opts& opts,
                            SelectionPolicy* policy) {
  switch (opts.method) {
    case PSPCA_METHOD_FORWARD: policy->method = SelectionMethod::forward; break;
    case PSPCA_METHOD_BACKWARD: policy->method = SelectionMethod::backward; break;
    case PSPCA_METHOD_THRESHOLD: policy->method = SelectionMethod::threshold; break;
    case PSPCA_METHOD_EXHAUSTIVE: policy->method = SelectionMethod::exhaustive; break;
    case PSPCA_METHOD_FULL: policy->method = SelectionMethod::full; break;
    default:
      throw Error(ErrorCode::invalid_argument, "unknown selection method");
  }
  policy->alpha = opts.alpha;
  policy->max_cardinality = opts.max_cardinality;
  policy->min_cardinality = opts.min_cardinality;

  SpcaConfig config;
  switch (opts.deflation) {
    case PSPCA_DEFLATION_PROJECTION:
      config.deflation = DeflationMode::projection;
      break;
    case PSPCA_DEFLATION_NONE: config.deflation = DeflationMode::none; break;
    default:
      throw Error(ErrorCode::invalid_argument, "unknown deflation mode");
  }
  config.power.tol = opts.power.tol;
  config.power.max_iter = opts.power.max_iter;
  config.power.seed = opts.power.seed;
  return config;
}

}  // namespace

extern "C" {

const char* pspca_status_name(int status) {
  switch (status) {
    case PSPCA_OK: return "ok";
    case PSPCA_E_INVALID_ARGUMENT: return "invalid_argument";
    case PSPCA_E_NON_FINITE: return "non_finite";
    case PSPCA_E_CONSTANT_COLUMN: return "constant_column";
    case PSPCA_E_SINGULAR_SUBMATRIX: return "singular_submatrix";
    case PSPCA_E_NO_CONVERGENCE: return "no_convergence";
    case PSPCA_E_ZERO_MATRIX: return "zero_matrix";
    case PSPCA_E_EMPTY_SUPPORT: return "empty_support";
    case PSPCA_E_INDEX_OUT_OF_RANGE: return "index_out_of_range";
    case PSPCA_E_ZERO_SCORE: return "zero_score";
    case PSPCA_E_ZERO_PROJECTION: return "zero_projection";
    case PSPCA_E_ALPHA_INFEASIBLE: return "alpha_infeasible";
    case PSPCA_E_TOO_LARGE: return "too_large";
    case PSPCA_E_BAD_SUPPORT: return "bad_support";
    case PSPCA_E_PARSE: return "parse_error";
    case PSPCA_E_RAGGED_ROW: return "ragged_row";
    case PSPCA_E_EMPTY_FILE: return "empty_file";
    case PSPCA_E_IO: return "io_error";
    case PSPCA_E_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* pspca_last_error(void) { return g_last_error.c_str(); }

const char* pspca_version(void) { return kVersion; }

void pspca_string_free(char* s) { delete[] s; }

/* matrices ---------------------------------------------------------- */

int pspca_matrix_create(int64_t rows, int64_t cols, const double* column_major,
                        pspca_matrix** out) {
  if (!column_major || !out) return fail_invalid("null pointer argument");
  if (rows < 1 || cols < 1) return fail_invalid("rows and cols must be >= 1");
  return guarded([&] {
    auto m = std::make_unique<pspca_matrix>();
    m->x = Eigen::Map<const Matrix>(column_major, rows, cols);
    if (!m->x.allFinite()) {
      throw Error(ErrorCode::non_finite, "matrix contains NaN or Inf");
    }
    *out = m.release();
  });
}

int pspca_matrix_from_csv(const char* path, pspca_matrix** out) {
  if (!path || !out) return fail_invalid("null pointer argument");
  return guarded([&] {
    CsvData data = load_csv(path);
    auto m = std::make_unique<pspca_matrix>();
    if (!data.x.allFinite()) {
      throw Error(ErrorCode::non_finite, "matrix contains NaN or Inf");
    }
    m->x = std::move(data.x);
    m->names = std::move(data.names);
    *out = m.release();
  });
}

int pspca_matrix_to_csv(const pspca_matrix* m, const char* path) {
  if (!m || !path) return fail_invalid("null pointer argument");
  return guarded([&] { write_csv(path, m->x, m->names); });
}

int64_t pspca_matrix_rows(const pspca_matrix* m) { return m ? m->x.rows() : 0; }

int64_t pspca_matrix_cols(const pspca_matrix* m) { return m ? m->x.cols() : 0; }

int pspca_matrix_copy_data(const pspca_matrix* m, double* buf, int64_t buflen) {
  if (!m || !buf) return fail_invalid("null pointer argument");
  const int64_t need = m->x.size();
  if (buflen < need) return fail_invalid("buffer too small");
  std::memcpy(buf, m->x.data(), static_cast<size_t>(need) * sizeof(double));
  g_last_error.clear();
  return PSPCA_OK;
}

const char* pspca_matrix_column_name(const pspca_matrix* m, int64_t j) {
  if (!m || j < 0 || j >= static_cast<int64_t>(m->names.size())) return nullptr;
  return m->names[static_cast<size_t>(j)].c_str();
}

void pspca_matrix_destroy(pspca_matrix* m) { delete m; }

/* centering --------------------------------------------------------- */

int pspca_center(const pspca_matrix* m, int scale, pspca_centered** out) {
  if (!m || !out) return fail_invalid("null pointer argument");
  return guarded([&] {
    auto cd = std::make_unique<pspca_centered>();
    cd->cd = center(m->x, scale != 0);
    *out = cd.release();
  });
}

int64_t pspca_centered_rows(const pspca_centered* cd) {
  return cd ? cd->cd.n() : 0;
}

int64_t pspca_centered_cols(const pspca_centered* cd) {
  return cd ? cd->cd.p() : 0;
}

void pspca_centered_destroy(pspca_centered* cd) { delete cd; }

/* configuration ------------------------------------------------------ */

void pspca_power_opts_init(pspca_power_opts* opts) {
  if (!opts) return;
  const PowerConfig defaults;
  opts->tol = defaults.tol;
  opts->max_iter = defaults.max_iter;
  opts->seed = defaults.seed;
}

void pspca_spca_opts_init(pspca_spca_opts* opts) {
  if (!opts) return;
  const SelectionPolicy policy_defaults;
  opts->method = PSPCA_METHOD_FORWARD;
  opts->alpha = policy_defaults.alpha;
  opts->max_cardinality = policy_defaults.max_cardinality;
  opts->min_cardinality = policy_defaults.min_cardinality;
  opts->deflation = PSPCA_DEFLATION_PROJECTION;
  pspca_power_opts_init(&opts->power);
}

/* pca ----------------------------------------------------------------- */

int pspca_fit_pca(const pspca_centered* cd, int64_t k,
                  const pspca_power_opts* power, pspca_pca** out) {
  if (!cd || !out) return fail_invalid("null pointer argument");
  return guarded([&] {
    PowerConfig cfg;
    if (power) {
      cfg.tol = power->tol;
      cfg.max_iter = power->max_iter;
      cfg.seed = power->seed;
    }
    auto model = std::make_unique<pspca_pca>();
    model->model = fit_pca(cd->cd, k, cfg);
    *out = model.release();
  });
}

int64_t pspca_pca_components(const pspca_pca* model) {
  return model ? model->model.k : 0;
}

double pspca_pca_total_variance(const pspca_pca* model) {
  return model ? model->model.total_variance : 0.0;
}

int pspca_pca_eigenvalues(const pspca_pca* model, double* buf, int64_t buflen) {
  if (!model || !buf) return fail_invalid("null pointer argument");
  if (buflen < model->model.k) return fail_invalid("buffer too small");
  for (Index i = 0; i < model->model.k; ++i) buf[i] = model->model.eigenvalues[i];
  g_last_error.clear();
  return PSPCA_OK;
}

int pspca_pca_loadings(const pspca_pca* model, int64_t component, double* buf,
                       int64_t buflen) {
  if (!model || !buf) return fail_invalid("null pointer argument");
  if (component < 0 || component >= model->model.k) {
    return fail_invalid("component out of range");
  }
  if (buflen < model->model.p) return fail_invalid("buffer too small");
  for (Index j = 0; j < model->model.p; ++j) {
    buf[j] = model->model.loadings(j, component);
  }
  g_last_error.clear();
  return PSPCA_OK;
}

int pspca_pca_report_json(const pspca_pca* model, const char* const* names,
                          int64_t n_names, char** out_json) {
  if (!model || !out_json) return fail_invalid("null pointer argument");
  if (n_names > 0 && !names) return fail_invalid("names is null");
  return guarded([&] {
    *out_json = dup_string(
        pca_report_json(model->model, collect_names(names, n_names)));
  });
}

void pspca_pca_destroy(pspca_pca* model) { delete model; }

/* spca ---------------------------------------------------------------- */

int pspca_fit_spca(const pspca_centered* cd, int64_t k,
                   const pspca_spca_opts* opts, pspca_spca** out) {
  if (!cd || !out) return fail_invalid("null pointer argument");
  return guarded([&] {
    pspca_spca_opts defaults;
    pspca_spca_opts_init(&defaults);
    const pspca_spca_opts& used = opts ? *opts : defaults;
    SelectionPolicy policy;
    const SpcaConfig config = config_from_opts(used, &policy);
    auto fit = std::make_unique<pspca_spca>();
    fit->fit = fit_spca(cd->cd, k, policy, config);
    *out = fit.release();
  });
}

int64_t pspca_spca_components(const pspca_spca* fit) {
  return fit ? static_cast<int64_t>(fit->fit.components.size()) : 0;
}

int64_t pspca_spca_cardinality(const pspca_spca* fit, int64_t component) {
  const SparseComponent* comp = component_at(fit, component);
  return comp ? comp->cardinality() : -1;
}

int pspca_spca_support(const pspca_spca* fit, int64_t component, int64_t* buf,
                       int64_t buflen) {
  const SparseComponent* comp = component_at(fit, component);
  if (!comp || !buf) return fail_invalid("bad handle, component or buffer");
  if (buflen < comp->cardinality()) return fail_invalid("buffer too small");
  for (Index i = 0; i < comp->cardinality(); ++i) {
    buf[i] = comp->support.indices[static_cast<size_t>(i)];
  }
  g_last_error.clear();
  return PSPCA_OK;
}

int pspca_spca_loadings(const pspca_spca* fit, int64_t component, double* buf,
                        int64_t buflen) {
  const SparseComponent* comp = component_at(fit, component);
  if (!comp || !buf) return fail_invalid("bad handle, component or buffer");
  if (buflen < comp->loadings.size()) return fail_invalid("buffer too small");
  for (Index j = 0; j < comp->loadings.size(); ++j) buf[j] = comp->loadings[j];
  g_last_error.clear();
  return PSPCA_OK;
}

int pspca_spca_projection_r2(const pspca_spca* fit, int64_t component,
                             double* out) {
  const SparseComponent* comp = component_at(fit, component);
  if (!comp || !out) return fail_invalid("bad handle, component or buffer");
  *out = comp->projection_r2;
  g_last_error.clear();
  return PSPCA_OK;
}

int pspca_spca_component_variance(const pspca_spca* fit, int64_t component,
                                  double* out) {
  const SparseComponent* comp = component_at(fit, component);
  if (!comp || !out) return fail_invalid("bad handle, component or buffer");
  *out = comp->component_variance;
  g_last_error.clear();
  return PSPCA_OK;
}

int pspca_spca_adjusted_vexp(const pspca_spca* fit, double* buf,
                             int64_t buflen) {
  if (!fit || !buf) return fail_invalid("null pointer argument");
  const int64_t k = static_cast<int64_t>(fit->fit.adjusted_cumulative_vexp.size());
  if (buflen < k) return fail_invalid("buffer too small");
  for (int64_t i = 0; i < k; ++i) {
    buf[i] = fit->fit.adjusted_cumulative_vexp[static_cast<size_t>(i)];
  }
  g_last_error.clear();
  return PSPCA_OK;
}

int pspca_spca_report_json(const pspca_spca* fit, const char* const* names,
                           int64_t n_names, char** out_json) {
  if (!fit || !out_json) return fail_invalid("null pointer argument");
  if (n_names > 0 && !names) return fail_invalid("names is null");
  return guarded([&] {
    *out_json =
        dup_string(spca_report_json(fit->fit, collect_names(names, n_names)));
  });
}

void pspca_spca_destroy(pspca_spca* fit) { delete fit; }

/* simulation ----------------------------------------------------------- */

int pspca_truth_block(int64_t p, const double* spikes, int64_t n_spikes,
                      int64_t support_size, double noise_sd, uint64_t seed,
                      pspca_truth** out) {
  if (!spikes || !out) return fail_invalid("null pointer argument");
  if (n_spikes < 1) return fail_invalid("need at least one spike");
  return guarded([&] {
    auto truth = std::make_unique<pspca_truth>();
    truth->truth = make_block_truth(
        p, std::vector<double>(spikes, spikes + n_spikes), support_size,
        noise_sd, seed);
    *out = truth.release();
  });
}

int pspca_truth_to_json(const pspca_truth* truth, char** out_json) {
  if (!truth || !out_json) return fail_invalid("null pointer argument");
  return guarded([&] { *out_json = dup_string(truth_json(truth->truth)); });
}

int pspca_simulate(int64_t n, const pspca_truth* truth, pspca_matrix** out) {
  if (!truth || !out) return fail_invalid("null pointer argument");
  return guarded([&] {
    auto m = std::make_unique<pspca_matrix>();
    m->x = simulate_spiked(n, truth->truth.p(), truth->truth);
    *out = m.release();
  });
}

int pspca_recovery_json(const pspca_spca* fit, const pspca_truth* truth,
                        char** out_json) {
  if (!fit || !truth || !out_json) return fail_invalid("null pointer argument");
  return guarded([&] {
    *out_json = dup_string(
        recovery_json(recovery_metrics(fit->fit.components, truth->truth)));
  });
}

void pspca_truth_destroy(pspca_truth* truth) { delete truth; }

/* benchmark ------------------------------------------------------------ */

int pspca_bench_run(const char* config_json, char** out_report_json,
                    char** out_table_csv) {
  if (!config_json || !out_report_json) {
    return fail_invalid("null pointer argument");
  }
  return guarded([&] {
    const BenchConfig config = parse_bench_config(config_json);
    BenchResult result = run_bench(config);
    *out_report_json = dup_string(result.report_json);
    if (out_table_csv) *out_table_csv = dup_string(result.table_csv);
  });
}

} /* extern "C" */
