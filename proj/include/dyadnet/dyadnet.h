/* dyadnet - dyadic digital nets, dual-space analysis and discrepancy
 * statistics behind a plain C interface.
 *
 * All objects are opaque handles created and destroyed by the library; every
 * fallible call returns a dn_status and writes results through out
 * parameters. Strings returned through char** are heap-allocated and must be
 * released with dn_string_free().
 *
 * Conventions: dimension s >= 1, digit depth 0 <= m <= 62. Coordinates are
 * exact m-digit binary fractions; digit j = 1 is most significant. A "digit
 * mask" packs one coordinate's digits into a uint64_t whose bit (m-j) holds
 * digit j, so the coordinate value is mask / 2^m. Y arguments sampled by the
 * library carry 64 fractional bits (value = frac / 2^64).
 */

#ifndef DYADNET_H
#define DYADNET_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dn_status {
    DN_OK = 0,
    DN_EINVAL = 1,   /* bad argument, dimension mismatch, unmet precondition */
    DN_EPARSE = 2,   /* malformed matrix or net text */
    DN_ECAP = 3,     /* enumeration/size cap exceeded; use another method */
    DN_EIO = 4,      /* file could not be read or written */
    DN_EVERIFY = 5,  /* verification found a violated identity */
    DN_ENOMEM = 6,
    DN_EINTERNAL = 7
} dn_status;

const char* dn_status_str(dn_status st);
const char* dn_version(void);

void dn_string_free(char* s);

/* ---- generating matrix sets -------------------------------------------- */

typedef struct dn_matrixset dn_matrixset;

/* family: "vdc" (s = 1 identity), "diag" (identity per coordinate),
 * "pascal" (binomial-matrix powers per coordinate; s = 2 gives the classical
 * 2-D Sobol pair). */
dn_status dn_matrixset_builtin(const char* family, int s, int m, dn_matrixset** out);
dn_status dn_matrixset_parse(const char* text, dn_matrixset** out);
dn_status dn_matrixset_format(const dn_matrixset* ms, char** out);
dn_status dn_matrixset_dims(const dn_matrixset* ms, int* s, int* m);
dn_status dn_matrixset_entry(const dn_matrixset* ms, int i, int row, int col, int* bit);
void dn_matrixset_free(dn_matrixset* ms);

/* ---- digital nets ------------------------------------------------------ */

typedef struct dn_net dn_net;

dn_status dn_net_generate(const dn_matrixset* ms, dn_net** out);
/* Block k of the built-in digital sequence: points k*2^m .. (k+1)*2^m - 1
 * truncated to m digits. Requires m + bitlength(k) <= 62. */
dn_status dn_net_sequence_prefix(const char* family, int s, uint64_t k, int m, dn_net** out);
dn_status dn_net_parse(const char* text, dn_net** out);
dn_status dn_net_format(const dn_net* net, char** out);
dn_status dn_net_dims(const dn_net* net, int* s, int* m, uint64_t* n_points);
dn_status dn_net_coord(const dn_net* net, uint64_t n, int i, double* out);
dn_status dn_net_digit_mask(const dn_net* net, uint64_t n, int i, uint64_t* out);
/* t_masks: s digit masks, coordinate-wise XOR shift. */
dn_status dn_net_shift(const dn_net* net, const uint64_t* t_masks, dn_net** out);
dn_status dn_net_extend_index(const dn_net* net, dn_net** out);
void dn_net_free(dn_net* net);

/* First m digits of y in [0,1). */
dn_status dn_truncate(double y, int m, double* out);

/* ---- t parameter and dual space ---------------------------------------- */

typedef enum dn_t_method {
    DN_T_DUAL_WEIGHT = 0,
    DN_T_RANK_COMPOSITION = 1,
    DN_T_DIRECT_COUNTING = 2
} dn_t_method;

dn_status dn_t_parameter(const dn_matrixset* ms, dn_t_method method, int* t);

typedef struct dn_dual dn_dual;

dn_status dn_dual_build(const dn_matrixset* ms, dn_dual** out);
dn_status dn_dual_dim(const dn_dual* d, int* dim);
/* weight = min rho over nonzero dual vectors; *infinite = 1 for the trivial
 * dual (empty minimum). */
dn_status dn_dual_min_weight(const dn_dual* d, int* weight, int* infinite);
/* counts: s*m + 1 slots, rho value -> population. Needs an enumerable dual. */
dn_status dn_dual_weight_histogram(const dn_dual* d, uint64_t* counts);
/* masks: s digit masks forming one candidate vector. */
dn_status dn_dual_contains(const dn_dual* d, const uint64_t* masks, int* out);
/* #(dual vectors with rho(m_i) <= a[i] for every i), zero vector included. */
dn_status dn_dual_count_leq(const dn_dual* d, const int* a, uint64_t* count);
void dn_dual_free(dn_dual* d);

/* Sum over net points of (-1)^<v, digits>; 2^m on dual vectors, else 0. */
dn_status dn_character_sum(const dn_net* net, const uint64_t* masks, int64_t* out);

/* ---- discrepancy ------------------------------------------------------- */

/* D(P, Y) = #(points in [0,Y)) - N y_1...y_s with 0 < y_i <= 1. */
dn_status dn_local_discrepancy(const dn_net* net, const double* y, double* out);

/* Exact integral of D(P,Y)^2 over the unit cube. */
dn_status dn_l2_discrepancy_sq(const dn_net* net, double* out);

/* Signed point mass of the elementary box with leading-digit profile a
 * (entries in [0,m], 0 = whole axis) under the net shifted by z. */
dn_status dn_micro_local(const dn_net* net, const int* a, const uint64_t* z_masks,
                         int64_t* points_in_box, double* lambda);
/* Same value through the dual space; needs an enumerable dual. */
dn_status dn_lambda_dual(const dn_dual* d, const int* a, const uint64_t* z_masks,
                         int64_t* signed_sum, double* lambda);

/* Splits D(P + T, Y) into the per-depth groups dk[1..m], the deep-box
 * remainder, the full main part and the residual. dk and family_sizes must
 * hold m + 1 slots (slot 0 stays 0); any output pointer may be NULL.
 * t_param is the net's (claimed) quality parameter. */
dn_status dn_decompose(const dn_net* net, const uint64_t* t_masks, const uint64_t* y_frac,
                       int t_param, double* dk, uint64_t* family_sizes, double* remainder,
                       uint64_t* remainder_size, double* dm, double* residual);

/* ---- experiments ------------------------------------------------------- */

dn_status dn_chi_p(double p, double* out);
double dn_std_normal_cdf(double w);

/* Deterministic sampling stream used by the experiments: fills the shift
 * digits and 64-bit Y fractions for one sample index. */
dn_status dn_sample_shift_point(int s, int m, uint64_t seed, uint64_t index,
                                uint64_t* t_masks, uint64_t* y_frac);

typedef enum dn_moment_method {
    DN_MSP_EXACT_ENUMERATION = 0,
    DN_MSP_WARNOCK_SHIFT_AVG = 1,
    DN_MSP_MONTE_CARLO = 2
} dn_moment_method;

/* Shift-averaged p-th moment M_{s,p} of the local discrepancy. Exact methods
 * require p = 2; exact enumeration additionally requires s*m <= 16 and
 * reports std_error = 0. */
dn_status dn_estimate_msp(const dn_net* net, double p, dn_moment_method method,
                          uint64_t n_samples, uint64_t seed, int threads, double* value,
                          double* std_error);

#define DN_HIST_BINS 61

typedef struct dn_clt_report dn_clt_report;

dn_status dn_clt_run(const dn_net* net, uint64_t n_samples, uint64_t seed,
                     double normalizer_value, int threads, dn_clt_report** out);
dn_status dn_clt_ks(const dn_clt_report* r, double* out);
/* p in 1..4: empirical E|Z|^p. */
dn_status dn_clt_moment(const dn_clt_report* r, int p, double* out);
/* bins: DN_HIST_BINS slots over [-6, 6); *clipped = samples outside. */
dn_status dn_clt_histogram(const dn_clt_report* r, uint64_t* bins, uint64_t* clipped);
void dn_clt_report_free(dn_clt_report* r);

/* One sampling pass reporting, for each requested p, the sampled M_{s,p},
 * its stderr, the plain ratio M_p/M_2, the exponentiated ratio
 * (M_p/M_2)^p with a fixed-batch stderr, and the Gaussian target chi_p.
 * Arrays hold np entries; any output pointer may be NULL. */
dn_status dn_moment_ratios(const dn_net* net, const double* ps, int np, uint64_t n_samples,
                           uint64_t seed, int threads, double* m_values, double* m_stderrs,
                           double* ratios_raw, double* ratios_pow, double* ratios_pow_stderr,
                           double* chis, double* m2_out);

/* Identity verification suite at the claimed t (claimed_t = -1 derives the
 * exact t). Writes a PASS/FAIL line per check into *report. Returns DN_OK
 * when all checks pass, DN_EVERIFY otherwise. */
dn_status dn_verify(const dn_matrixset* ms, int claimed_t, uint64_t seed, char** report,
                    int* n_failures);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DYADNET_H */
