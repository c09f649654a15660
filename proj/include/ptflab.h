#ifndef PTFLAB_H
#define PTFLAB_H

/* C interface to the ptflab core. All handles are opaque. Functions return
   PTF_OK or an error code; the message of the last failure on the calling
   thread is available from ptf_last_error(). Strings returned through
   `char **` out-parameters are owned by the caller and freed with
   ptf_string_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PTF_API __declspec(dllexport)
#else
#define PTF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ptf_status {
  PTF_OK = 0,
  PTF_E_INVALID_ARGUMENT = 1,
  PTF_E_DUPLICATE_ROOTS = 2,
  PTF_E_DISALLOWED_ORDER = 3,
  PTF_E_MONOTONICITY = 4,
  PTF_E_NON_TERMINATION = 5,
  PTF_E_DEGREE_VIOLATION = 6,
  PTF_E_INVALID_DISTRIBUTION = 7,
  PTF_E_TOO_LARGE = 8,
  PTF_E_SIZE_LIMIT = 9,
  PTF_E_EPSILON_SEARCH = 10,
  PTF_E_TOLERANCE = 11,
  PTF_E_ASSERTION = 12,
  PTF_E_IO = 13,
  PTF_E_INTERNAL = 14
} ptf_status;

typedef enum ptf_backend { PTF_BACKEND_EXACT = 0, PTF_BACKEND_FLOAT = 1 } ptf_backend;

typedef struct ptf_experiment ptf_experiment;
typedef struct ptf_report ptf_report;
typedef struct ptf_polynomial ptf_polynomial;
typedef struct ptf_oracle ptf_oracle;

PTF_API const char *ptf_version(void);
PTF_API const char *ptf_last_error(void);
PTF_API const char *ptf_status_name(int status);
PTF_API void ptf_string_free(char *s);

/* Experiments. `config_json` uses the keys learner, d, n, alpha, model,
   dirichlet_alpha, trials, seed, backend, random_leading, out. */
PTF_API int ptf_experiment_create(const char *config_json, ptf_experiment **out);
PTF_API void ptf_experiment_destroy(ptf_experiment *e);
/* threads = 0 uses PTF_LAB_THREADS or the hardware concurrency. */
PTF_API int ptf_experiment_run(ptf_experiment *e, unsigned threads);
/* Writes the CSV and <out>.json; requires a prior run. */
PTF_API int ptf_experiment_write(const ptf_experiment *e);
/* *passed = 1 when every trial labeled its sample correctly. */
PTF_API int ptf_experiment_passed(const ptf_experiment *e, int *passed);
PTF_API int ptf_experiment_aggregate_json(const ptf_experiment *e, char **out);
PTF_API int ptf_experiment_csv(const ptf_experiment *e, char **out);

/* Reports. A NULL or empty grid uses the default lower-bound grid. */
PTF_API int ptf_verify_lower_bounds(const char *grid_json, ptf_report **out);
PTF_API int ptf_compare_entropy(const char *const *aggregate_paths, size_t count, ptf_report **out);
PTF_API void ptf_report_destroy(ptf_report *r);
PTF_API int ptf_report_passed(const ptf_report *r, int *passed);
PTF_API int ptf_report_text(const ptf_report *r, char **out);
PTF_API int ptf_report_json(const ptf_report *r, char **out);

PTF_API int ptf_iterative_query_bound(int d, uint64_t n, uint64_t *out);
/* Tab-separated table of the bound over the given grid. */
PTF_API int ptf_print_bounds(const int *d, size_t nd, const uint64_t *n, size_t nn, char **out);

/* Polynomials. Coefficients are low order first, as decimal or "p/q"
   strings; the float backend rounds them to double. */
PTF_API int ptf_polynomial_create(ptf_backend backend, const char *const *coeffs, size_t count, ptf_polynomial **out);
PTF_API void ptf_polynomial_destroy(ptf_polynomial *p);
PTF_API int ptf_polynomial_degree(const ptf_polynomial *p, int *out);
/* Sign of the order-th derivative at x: +1 or -1 (sign(0) = +1). */
PTF_API int ptf_polynomial_sign(const ptf_polynomial *p, const char *x, int order, int *out);
/* Signs of orders 0..d at x into out[0..d]. */
PTF_API int ptf_polynomial_sign_pattern(const ptf_polynomial *p, const char *x, int d, int *out);

/* Oracles. The polynomial is copied. `orders` lists the allowed query orders
   (0 must be among them, all below d). */
PTF_API int ptf_oracle_create(const ptf_polynomial *hidden, int d, const int *orders, size_t count,
                              ptf_oracle **out);
PTF_API void ptf_oracle_destroy(ptf_oracle *o);
PTF_API int ptf_oracle_query(ptf_oracle *o, const char *x, int order, int *sign);
/* One round; rejected without charge if any order is disallowed. */
PTF_API int ptf_oracle_query_batch(ptf_oracle *o, const char *const *xs, const int *orders, size_t count,
                                   int *signs);
PTF_API int ptf_oracle_ledger_json(const ptf_oracle *o, char **out);

#ifdef __cplusplus
}
#endif

#endif
