#ifndef TRA_TRA_H
#define TRA_TRA_H

/*
 * C interface to the tridiagonal-representation scattering library.
 *
 * Every function returns a tra_status. On failure the message of the most
 * recent error on the calling thread is available from tra_last_error().
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function; passing NULL to a *_free function is a no-op.
 * Array outputs take a capacity; a capacity smaller than the element count
 * yields TRA_ERR_INVALID_ARGUMENT and writes nothing.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define TRA_API __declspec(dllexport)
#else
#define TRA_API __attribute__((visibility("default")))
#endif

typedef enum tra_status {
  TRA_OK = 0,
  TRA_ERR_INVALID_ARGUMENT = 1,
  TRA_ERR_DOMAIN = 2,
  TRA_ERR_ACCURACY = 3,
  TRA_ERR_DEGENERATE = 4,
  TRA_ERR_SUPERCRITICAL = 5,
  TRA_ERR_NOT_FOUND = 6,
  TRA_ERR_UNDEFINED_PHASE = 7,
  TRA_ERR_RESOLUTION = 8,
  TRA_ERR_NO_REGULAR_SOLUTION = 9,
  TRA_ERR_INTERNAL = 10
} tra_status;

TRA_API const char* tra_last_error(void);
TRA_API const char* tra_status_string(tra_status status);

/* ---- special functions ------------------------------------------------ */

TRA_API tra_status tra_bessel_j(double nu, double x, double* out);
TRA_API tra_status tra_coulomb_exact(double Z, int ell, double E, double r, double* out);

/* Grids include both endpoints; count >= 2 and start < stop. The log grid
 * needs start > 0. */
TRA_API tra_status tra_linear_grid(double start, double stop, int count, double* out);
TRA_API tra_status tra_log_grid(double start, double stop, int count, double* out);

/* ---- models ------------------------------------------------------------ */

typedef struct tra_model tra_model;

TRA_API tra_status tra_model_kratzer(double xi, double Lambda, tra_model** out);
TRA_API tra_status tra_model_invcube(double Lambda, double zeta, tra_model** out);
/* nu <= 0 selects sqrt(2 Lambda + 1/4). */
TRA_API tra_status tra_model_invquartic(double Lambda, double zeta, double nu, tra_model** out);
TRA_API tra_status tra_model_dipquad(double d, double q, double eta, int m, int branch,
                                     tra_model** out);
TRA_API void tra_model_free(tra_model* model);

TRA_API tra_status tra_model_potential(const tra_model* model, double r, double* out);
TRA_API tra_status tra_model_spectral_map(const tra_model* model, double E, double* k, double* nu,
                                          double* z);

/* ---- scattering solutions --------------------------------------------- */

typedef struct tra_solution tra_solution;

typedef struct tra_solution_info {
  double E;
  double k;
  double nu;
  double z;
  double delta;
  double C0;
  double S;
  double C;
  double tail_estimate;
  int n_used;
  int plateau;            /* optimal truncation at an interior minimum */
  int plateau_index;      /* -1 when absent */
  int truncation_warning; /* no plateau or no convergence before n_max */
  int long_range;         /* S/C phase needs the logarithmic correction */
  int c0_from_gamma;      /* C0 from the Gamma closed form, not from S and C */
  int growing;            /* factorially growing coefficient family */
} tra_solution_info;

TRA_API tra_status tra_solve(const tra_model* model, double E, const double* r, size_t count,
                             int n_max, tra_solution** out);
TRA_API void tra_solution_free(tra_solution* solution);
TRA_API tra_status tra_solution_get_info(const tra_solution* solution, tra_solution_info* out);
TRA_API size_t tra_solution_sample_count(const tra_solution* solution);
TRA_API tra_status tra_solution_samples(const tra_solution* solution, double* r, double* psi,
                                        size_t capacity);
/* Series weights c_n, n = 0..n_max (n_used of them enter the sum). */
TRA_API size_t tra_solution_weight_count(const tra_solution* solution);
TRA_API tra_status tra_solution_weights(const tra_solution* solution, double* out, size_t capacity);

/* Direct integration of the radial equation, normalization-free. */
TRA_API tra_status tra_ode_oracle(const tra_model* model, double E, const double* r, size_t count,
                                  double* psi);

/* ---- coefficient sequences -------------------------------------------- */

typedef struct tra_sequence tra_sequence;

typedef struct tra_family_params {
  int tag; /* from tra_family_from_name */
  double nu;
  double z;
  double lambda;  /* inverse-quartic Lambda */
  double zeta_k2; /* inverse-quartic zeta k^2 */
  double a, b, alpha, beta, x;
} tra_family_params;

TRA_API tra_status tra_family_from_name(const char* name, int* tag);
TRA_API const char* tra_family_name(int tag);
TRA_API tra_status tra_sequence_solve(const tra_family_params* params, int n_max,
                                      tra_sequence** out);
TRA_API void tra_sequence_free(tra_sequence* seq);
TRA_API size_t tra_sequence_size(const tra_sequence* seq);
/* value_n = mantissa_n * 2^exponent_n */
TRA_API tra_status tra_sequence_values(const tra_sequence* seq, double* mantissa, int* exponent,
                                       size_t capacity);
/* -1 when the sequence never settles into growth. */
TRA_API tra_status tra_sequence_first_growth(const tra_sequence* seq, int* index);

/* ---- dipole ------------------------------------------------------------ */

typedef struct tra_dipole tra_dipole;

TRA_API tra_status tra_dipole_spectrum(double d, int m, int size, tra_dipole** out);
TRA_API void tra_dipole_free(tra_dipole* spectrum);
TRA_API size_t tra_dipole_count(const tra_dipole* spectrum);
/* chi is NaN and supercritical is 1 where the eigenvalue is not positive. */
TRA_API tra_status tra_dipole_values(const tra_dipole* spectrum, double* eigenvalues, double* chi,
                                     int* supercritical, size_t capacity);
TRA_API tra_status tra_critical_dipole(int m, int size, double tol, double* d_max);

/* ---- exponential bound states ----------------------------------------- */

/* parity: 0 even, 1 odd */
TRA_API tra_status tra_exponential_level(double lambda, double nu, int parity, int n,
                                         double* energy);
TRA_API tra_status tra_exponential_state(double lambda, double nu, int parity, int n, double r,
                                         double* psi);

/* ---- validation -------------------------------------------------------- */

typedef struct tra_integral {
  double numeric;
  double closed_form;
  double abs_error;
  double tail_bound;
  int segments_used;
} tra_integral;

/* pair: 0 KK, 1 JJ, 2 KJ (weight 1/x), 3 KJ (weight 1) */
TRA_API tra_status tra_ortho_check(int pair, double nu, int n, int m, tra_integral* out);
TRA_API tra_status tra_lommel_check(double nu, int n, int m, int K, tra_integral* out);

typedef struct tra_report tra_report;

TRA_API tra_status tra_validate(const char* suite, tra_report** out);
TRA_API void tra_report_free(tra_report* report);
TRA_API size_t tra_report_count(const tra_report* report);
/* name stays valid until the report is freed. */
TRA_API tra_status tra_report_check(const tra_report* report, size_t index, const char** name,
                                    int* pass, double* measured, double* threshold);
TRA_API int tra_report_all_pass(const tra_report* report);

#ifdef __cplusplus
}
#endif

#endif /* TRA_TRA_H */
