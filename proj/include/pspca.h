/*
 * pspca — projection sparse principal component analysis.
 *
 * C interface to the pspca shared library. All functions returning int give
 * back a pspca_status; on failure pspca_last_error() carries a thread-local
 * human-readable message. Handles are opaque and must be released with their
 * matching _destroy function. Strings returned through char** out-parameters
 * are heap-allocated and must be released with pspca_string_free.
 */

#ifndef PSPCA_H
#define PSPCA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define PSPCA_VERSION "0.1.0"

typedef enum pspca_status {
  PSPCA_OK = 0,
  PSPCA_E_INVALID_ARGUMENT = 1,
  PSPCA_E_NON_FINITE = 2,
  PSPCA_E_CONSTANT_COLUMN = 3,
  PSPCA_E_SINGULAR_SUBMATRIX = 4,
  PSPCA_E_NO_CONVERGENCE = 5,
  PSPCA_E_ZERO_MATRIX = 6,
  PSPCA_E_EMPTY_SUPPORT = 7,
  PSPCA_E_INDEX_OUT_OF_RANGE = 8,
  PSPCA_E_ZERO_SCORE = 9,
  PSPCA_E_ZERO_PROJECTION = 10,
  PSPCA_E_ALPHA_INFEASIBLE = 11,
  PSPCA_E_TOO_LARGE = 12,
  PSPCA_E_BAD_SUPPORT = 13,
  PSPCA_E_PARSE = 14,
  PSPCA_E_RAGGED_ROW = 15,
  PSPCA_E_EMPTY_FILE = 16,
  PSPCA_E_IO = 17,
  PSPCA_E_INTERNAL = 18
} pspca_status;

const char* pspca_status_name(int status);
const char* pspca_last_error(void);
const char* pspca_version(void);
void pspca_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Matrices (column-major dense, with optional column names)           */

typedef struct pspca_matrix pspca_matrix;

int pspca_matrix_create(int64_t rows, int64_t cols, const double* column_major,
                        pspca_matrix** out);
int pspca_matrix_from_csv(const char* path, pspca_matrix** out);
int pspca_matrix_to_csv(const pspca_matrix* m, const char* path);
int64_t pspca_matrix_rows(const pspca_matrix* m);
int64_t pspca_matrix_cols(const pspca_matrix* m);
/* buf must hold rows*cols doubles; written column-major. */
int pspca_matrix_copy_data(const pspca_matrix* m, double* buf, int64_t buflen);
/* NULL when the matrix carries no header or j is out of range. The pointer
 * stays valid for the lifetime of the matrix handle. */
const char* pspca_matrix_column_name(const pspca_matrix* m, int64_t j);
void pspca_matrix_destroy(pspca_matrix* m);

/* ------------------------------------------------------------------ */
/* Centering                                                            */

typedef struct pspca_centered pspca_centered;

/* scale != 0 additionally standardizes each column to unit sample variance. */
int pspca_center(const pspca_matrix* m, int scale, pspca_centered** out);
int64_t pspca_centered_rows(const pspca_centered* cd);
int64_t pspca_centered_cols(const pspca_centered* cd);
void pspca_centered_destroy(pspca_centered* cd);

/* ------------------------------------------------------------------ */
/* Configuration                                                        */

typedef struct pspca_power_opts {
  double tol;        /* default 1e-10 */
  int64_t max_iter;  /* default 10000 */
  uint64_t seed;     /* default 0 */
} pspca_power_opts;

void pspca_power_opts_init(pspca_power_opts* opts);

typedef enum pspca_method {
  PSPCA_METHOD_FORWARD = 0,
  PSPCA_METHOD_BACKWARD = 1,
  PSPCA_METHOD_THRESHOLD = 2,
  PSPCA_METHOD_EXHAUSTIVE = 3,
  PSPCA_METHOD_FULL = 4
} pspca_method;

typedef enum pspca_deflation {
  PSPCA_DEFLATION_PROJECTION = 0,
  PSPCA_DEFLATION_NONE = 1
} pspca_deflation;

typedef struct pspca_spca_opts {
  int method;               /* pspca_method, default forward */
  double alpha;             /* target projection R^2, default 0.95 */
  int64_t max_cardinality;  /* 0 = unlimited */
  int64_t min_cardinality;  /* default 1 */
  int deflation;            /* pspca_deflation, default projection */
  pspca_power_opts power;
} pspca_spca_opts;

void pspca_spca_opts_init(pspca_spca_opts* opts);

/* ------------------------------------------------------------------ */
/* Full-cardinality PCA                                                 */

typedef struct pspca_pca pspca_pca;

/* k = 0 keeps every component above the spectral cutoff. */
int pspca_fit_pca(const pspca_centered* cd, int64_t k,
                  const pspca_power_opts* power, pspca_pca** out);
int64_t pspca_pca_components(const pspca_pca* model);
double pspca_pca_total_variance(const pspca_pca* model);
int pspca_pca_eigenvalues(const pspca_pca* model, double* buf, int64_t buflen);
/* buf must hold p doubles. */
int pspca_pca_loadings(const pspca_pca* model, int64_t component, double* buf,
                       int64_t buflen);
/* names may be NULL (no header); n_names must then be 0. */
int pspca_pca_report_json(const pspca_pca* model, const char* const* names,
                          int64_t n_names, char** out_json);
void pspca_pca_destroy(pspca_pca* model);

/* ------------------------------------------------------------------ */
/* Projection sparse PCA                                                */

typedef struct pspca_spca pspca_spca;

int pspca_fit_spca(const pspca_centered* cd, int64_t k,
                   const pspca_spca_opts* opts, pspca_spca** out);
int64_t pspca_spca_components(const pspca_spca* fit);
int64_t pspca_spca_cardinality(const pspca_spca* fit, int64_t component);
int pspca_spca_support(const pspca_spca* fit, int64_t component, int64_t* buf,
                       int64_t buflen);
/* buf must hold p doubles; entries off the support are exactly zero. */
int pspca_spca_loadings(const pspca_spca* fit, int64_t component, double* buf,
                        int64_t buflen);
int pspca_spca_projection_r2(const pspca_spca* fit, int64_t component,
                             double* out);
int pspca_spca_component_variance(const pspca_spca* fit, int64_t component,
                                  double* out);
/* buf must hold pspca_spca_components(fit) doubles. */
int pspca_spca_adjusted_vexp(const pspca_spca* fit, double* buf, int64_t buflen);
int pspca_spca_report_json(const pspca_spca* fit, const char* const* names,
                           int64_t n_names, char** out_json);
void pspca_spca_destroy(pspca_spca* fit);

/* ------------------------------------------------------------------ */
/* Spiked-model simulation                                              */

typedef struct pspca_truth pspca_truth;

/* Disjoint consecutive supports of equal size, equal weights inside each. */
int pspca_truth_block(int64_t p, const double* spikes, int64_t n_spikes,
                      int64_t support_size, double noise_sd, uint64_t seed,
                      pspca_truth** out);
int pspca_truth_to_json(const pspca_truth* truth, char** out_json);
int pspca_simulate(int64_t n, const pspca_truth* truth, pspca_matrix** out);
/* Greedy |cosine| matching of fitted components against the ground truth. */
int pspca_recovery_json(const pspca_spca* fit, const pspca_truth* truth,
                        char** out_json);
void pspca_truth_destroy(pspca_truth* truth);

/* ------------------------------------------------------------------ */
/* Benchmark harness                                                    */

/* config_json schema is documented in the README. out_table_csv may be NULL
 * when the flat table is not wanted. */
int pspca_bench_run(const char* config_json, char** out_report_json,
                    char** out_table_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PSPCA_H */
