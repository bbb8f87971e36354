/* botoc: bipartite scrambling toolkit.
 *
 * Dense complex matrices, spin-chain spectra, out-of-time-order correlators
 * and their long-time estimates, reduced channels, and sampling experiments,
 * behind a C interface.
 *
 * Conventions:
 *  - A bipartite system with factor dimensions (d_a, d_b) is indexed jointly
 *    as i = a * d_b + b (the first factor is the slow index).
 *  - Matrix payloads cross the boundary as row-major arrays of interleaved
 *    (re, im) doubles, rows*cols*2 values.
 *  - Every fallible call returns botoc_status; on failure the handle/output
 *    arguments are untouched and botoc_last_error() describes the problem
 *    for the calling thread.
 */

#ifndef BOTOC_H
#define BOTOC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum botoc_status {
  BOTOC_OK = 0,
  BOTOC_ERR_INVALID_ARGUMENT = 1,
  BOTOC_ERR_DIMENSION_MISMATCH = 2,
  BOTOC_ERR_NOT_UNITARY = 3,
  BOTOC_ERR_NOT_HERMITIAN = 4,
  BOTOC_ERR_IO = 5,
  BOTOC_ERR_PARSE = 6,
  BOTOC_ERR_NUMERICAL = 7,
  BOTOC_ERR_RESOURCE = 8,
  BOTOC_ERR_UNSUPPORTED = 9,
  BOTOC_ERR_INTERNAL = 10
} botoc_status;

typedef enum botoc_factor {
  BOTOC_FACTOR_A = 0,
  BOTOC_FACTOR_B = 1
} botoc_factor;

typedef enum botoc_side {
  BOTOC_SIDE_AUTO = 0, /* contract over the smaller factor */
  BOTOC_SIDE_AA = 1,
  BOTOC_SIDE_BB = 2
} botoc_side;

typedef enum botoc_ensemble {
  BOTOC_ENSEMBLE_HAAR_LOCAL = 0,
  BOTOC_ENSEMBLE_PAULI_FACTORIZED = 1,
  BOTOC_ENSEMBLE_HAAR_GLOBAL = 2
} botoc_ensemble;

typedef enum botoc_concentration_variant {
  BOTOC_CONCENTRATION_OTOC = 0,
  BOTOC_CONCENTRATION_STATE = 1
} botoc_concentration_variant;

typedef struct botoc_matrix botoc_matrix;
typedef struct botoc_spectral botoc_spectral;
typedef struct botoc_channel botoc_channel;

/* Library version as "major.minor.patch". */
const char* botoc_version(void);

/* Message for the most recent failure on the calling thread ("" if none). */
const char* botoc_last_error(void);

/* --------------------------------------------------------------- matrices */

/* data may be NULL for a zero matrix; otherwise row-major interleaved. */
botoc_status botoc_matrix_create(int rows, int cols, const double* data,
                                 botoc_matrix** out);
botoc_status botoc_matrix_identity(int n, botoc_matrix** out);
botoc_status botoc_matrix_clone(const botoc_matrix* m, botoc_matrix** out);
void botoc_matrix_free(botoc_matrix* m);

int botoc_matrix_rows(const botoc_matrix* m);
int botoc_matrix_cols(const botoc_matrix* m);
/* data must hold rows*cols*2 doubles. */
botoc_status botoc_matrix_copy_out(const botoc_matrix* m, double* data);

/* Whitespace text format; see the library README for the grammar. */
botoc_status botoc_matrix_load(const char* path, botoc_matrix** out);
botoc_status botoc_matrix_save(const botoc_matrix* m, const char* path);

botoc_status botoc_matrix_multiply(const botoc_matrix* x,
                                   const botoc_matrix* y, botoc_matrix** out);
botoc_status botoc_matrix_kron(const botoc_matrix* x, const botoc_matrix* y,
                               botoc_matrix** out);
botoc_status botoc_matrix_adjoint(const botoc_matrix* m, botoc_matrix** out);
/* which: 0 identity, 1 x, 2 y, 3 z. */
botoc_status botoc_matrix_pauli(int which, botoc_matrix** out);
/* Swap of the two copies of a d-dimensional factor, a d^2 x d^2 matrix. */
botoc_status botoc_matrix_swap_replica(int d, botoc_matrix** out);
botoc_status botoc_matrix_haar_unitary(int n, uint64_t seed, uint64_t stream,
                                       botoc_matrix** out);
/* 1 if unitary within tol (max entrywise deviation of U^dag U from I). */
int botoc_matrix_is_unitary(const botoc_matrix* m, double tol);

/* ---------------------------------------------------- models and spectra */

/* kind: "tfim" (params g, h) or "xxz" (params J, delta). Open chain of
 * n_sites qubits; site 0 is the most significant bit of the joint index. */
botoc_status botoc_hamiltonian(const char* kind, int n_sites,
                               const char* const* param_names,
                               const double* param_values, int n_params,
                               botoc_matrix** out);

/* Eigendecomposition plus degeneracy bookkeeping. Tolerances are relative
 * to the spectral range; pass 0 for the defaults. */
botoc_status botoc_spectral_create(const botoc_matrix* hamiltonian,
                                   double tol_level, double tol_gap,
                                   botoc_spectral** out);
void botoc_spectral_free(botoc_spectral* s);

int botoc_spectral_dim(const botoc_spectral* s);
/* out must hold dim doubles (ascending eigenvalues). */
botoc_status botoc_spectral_eigenvalues(const botoc_spectral* s, double* out);
/* exp(-i H t) */
botoc_status botoc_spectral_evolution(const botoc_spectral* s, double t,
                                      botoc_matrix** out);
/* Degeneracy summary; any output pointer may be NULL. nrc: no resonance
 * conditions at all; nrc_plus: none beyond the spectral degeneracies. */
botoc_status botoc_spectral_nrc_flags(const botoc_spectral* s, int* nrc,
                                      int* nrc_plus, int* n_level_classes,
                                      int* n_gap_classes);

/* ------------------------------------------------------------ correlators */

/* Bipartite correlator G of a d_a*d_b unitary; side picks the replica pair
 * contracted first (the value is the same, the routes differ). */
botoc_status botoc_g_exact(const botoc_matrix* u, int d_a, int d_b,
                           int side, double* out);
/* Same value through the reduced channel on the smaller factor. */
botoc_status botoc_g_reduced(const botoc_matrix* u, int d_a, int d_b,
                             double* out);
/* Thermal correlator at inverse temperature beta; hamiltonian may be NULL
 * when beta is 0. */
botoc_status botoc_g_thermal(const botoc_matrix* u, int d_a, int d_b,
                             double beta, const botoc_matrix* hamiltonian,
                             double* out);
/* C(v_a, w_b) = 1 - Re Tr(V(t)^dag W^dag V(t) W)/d for local unitaries. */
botoc_status botoc_commutator_otoc(const botoc_matrix* u,
                                   const botoc_matrix* v_a,
                                   const botoc_matrix* w_b, int d_a, int d_b,
                                   double* out);
/* Linear entropy of the operator-state reduction of u. */
botoc_status botoc_operator_entanglement(const botoc_matrix* u, int d_a,
                                         int d_b, double* out);
/* Mean entanglement generated on product inputs; requires d_a == d_b. */
botoc_status botoc_entangling_power(const botoc_matrix* u, int d_a, int d_b,
                                    double* out);

/* -------------------------------------------------- long-time estimates */

botoc_status botoc_haar_estimate(int d_a, int d_b, double* out);
botoc_status botoc_haar_estimate_asymptote(int d_a, double* out);

botoc_status botoc_nrc_estimate(const botoc_spectral* s, int d_a, int d_b,
                                double* out);
botoc_status botoc_nrc_plus_estimate(const botoc_spectral* s, int d_a,
                                     int d_b, double* out);
botoc_status botoc_exact_time_average(const botoc_spectral* s, int d_a,
                                      int d_b, double* out);
/* values = {haar, nrc, nrc_plus, exact}; hierarchy_ok reports the expected
 * ordering within a small slack. Either output may be NULL. */
botoc_status botoc_hierarchy(const botoc_spectral* s, int d_a, int d_b,
                             double values[4], int* hierarchy_ok);

/* Linear entanglement entropy of each eigenstate; out holds dim doubles. */
botoc_status botoc_entanglement_profile(const botoc_spectral* s, int d_a,
                                        int d_b, double* out);
/* Bound on |nrc - (1-1/d)^2| from the entanglement profile. nrc may be NULL;
 * deviation is written only when nrc is given. Any output may be NULL. */
botoc_status botoc_profile_bound(const double* profile, int len, int d_a,
                                 int d_b, double epsilon, const double* nrc,
                                 double* alpha, double* j_term, double* k_term,
                                 double* bound, double* deviation);

/* ----------------------------------------------------- reduced channels */

botoc_status botoc_channel_create(const botoc_matrix* u, int d_a, int d_b,
                                  int keep, botoc_channel** out);
void botoc_channel_free(botoc_channel* ch);
int botoc_channel_dim(const botoc_channel* ch);
botoc_status botoc_channel_apply(const botoc_channel* ch,
                                 const botoc_matrix* rho, botoc_matrix** out);
botoc_status botoc_channel_choi(const botoc_channel* ch, botoc_matrix** out);
/* OK if completely positive, trace preserving, and unital within tol
 * (0 gives the default); BOTOC_ERR_NUMERICAL otherwise. */
botoc_status botoc_channel_certify(const botoc_channel* ch, double tol);

/* Both sides of g_max - G = |choi - I/d_chi^2|_F^2; outputs may be NULL. */
botoc_status botoc_choi_distance_check(const botoc_matrix* u, int d_a,
                                       int d_b, int keep, double* g,
                                       double* g_max, double* distance_sq);
/* Bounds on the trace distance of the Choi state from maximal mixing. */
botoc_status botoc_diamond_bounds(const botoc_matrix* u, int d_a, int d_b,
                                  int keep, double* lower, double* upper);
/* Bound on the fraction of time the correlator sits more than epsilon below
 * its Haar value. Values above 1 carry no information. */
botoc_status botoc_markov_fraction_bound(double haar_avg, double exact_avg,
                                         int d_a, int d_b, int keep,
                                         double epsilon, double* out);

/* --------------------------------------------------------------- sampling */

typedef struct botoc_sample_stats {
  uint64_t n_samples;
  double mean;
  double variance; /* unbiased */
  double reference;
} botoc_sample_stats;

/* Histograms of |sample - reference| use 64 uniform bins on [0, 2]. */
#define BOTOC_HISTOGRAM_BINS 64

/* Commutator correlators over an operator ensemble. n_sites_a/b are read
 * only for the factorized Pauli ensemble. hist_counts may be NULL or hold
 * BOTOC_HISTOGRAM_BINS entries. Identical results for any n_threads. */
botoc_status botoc_sample_otoc(const botoc_matrix* u, int ensemble, int d_a,
                               int d_b, int n_sites_a, int n_sites_b,
                               uint64_t n_samples, uint64_t seed,
                               uint64_t stream, int n_threads,
                               botoc_sample_stats* out,
                               uint64_t* hist_counts);

/* Exact ensemble average over every factorized Pauli pair. */
botoc_status botoc_pauli_exhaustive_average(const botoc_matrix* u,
                                            int n_sites_a, int n_sites_b,
                                            double* out);

/* Linear entropy produced by the reduced channel on Haar-random inputs. */
botoc_status botoc_entropy_production(const botoc_matrix* u, int d_a, int d_b,
                                      int keep, uint64_t n_samples,
                                      uint64_t seed, uint64_t stream,
                                      int n_threads, botoc_sample_stats* out,
                                      uint64_t* hist_counts);

/* Two-copy swap observable for one input state (d_chi interleaved pairs). */
botoc_status botoc_swap_protocol(const botoc_matrix* u, int d_a, int d_b,
                                 int keep, const double* psi, double* out);

/* Empirical tail probabilities against the analytic bounds. empirical and
 * bounds hold n_eps entries each; either may be NULL. */
botoc_status botoc_concentration(const botoc_matrix* u, int variant,
                                 int d_a, int d_b, uint64_t n_samples,
                                 const double* eps, int n_eps, uint64_t seed,
                                 uint64_t stream, int n_threads,
                                 double* empirical, double* bounds);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BOTOC_H */
