/*
 * Copyright 2026 The pstforge Authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
/*
 * pstforge C interface.
 *
 * Every entry point returns a pst_status. On failure the thread-local
 * diagnostic is available through pst_last_error() / pst_last_error_index()
 * until the next call from the same thread. Handles are opaque and owned by
 * the caller; release them with the matching *_free function. Strings
 * returned through char** are heap allocated; release them with
 * pst_string_free.
 */
#ifndef PSTFORGE_H
#define PSTFORGE_H

#include <stddef.h>

#if defined(_WIN32)
#  define PST_API __declspec(dllexport)
#else
#  define PST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pst_status {
  PST_OK = 0,
  PST_E_INVALID_ARGUMENT,
  PST_E_NON_INCREASING,
  PST_E_NOT_ADMISSIBLE,
  PST_E_IRRATIONAL_SPACING,
  PST_E_BAD_PARAMETERS,
  PST_E_NON_POSITIVE_SCALE,
  PST_E_INVALID_MEASURE,
  PST_E_OVERFLOW,
  PST_E_DEGENERATE_LEADING,
  PST_E_RESIDUE_DEGREE,
  PST_E_NON_POSITIVE_U,
  PST_E_NON_POSITIVE_NORM,
  PST_E_ALGORITHM_DISAGREEMENT,
  PST_E_INVALID_PLAN,
  PST_E_INTERIOR_SINGLE_REMOVAL,
  PST_E_EMPTY_RESULT,
  PST_E_ZERO_DENOMINATOR,
  PST_E_NON_ZERO_FIELD,
  PST_E_CONVERGENCE,
  PST_E_PARSE,
  PST_E_IO,
  PST_E_INTERNAL
} pst_status;

typedef enum pst_mode { PST_MODE_EXACT = 0, PST_MODE_FLOAT = 1 } pst_mode;

typedef enum pst_algorithm {
  PST_ALGO_DEFAULT = 0, /* euclid in exact mode, stieltjes in float mode */
  PST_ALGO_EUCLID,
  PST_ALGO_STIELTJES,
  PST_ALGO_BOTH
} pst_algorithm;

typedef enum pst_family {
  PST_FAMILY_UNIFORM = 0,
  PST_FAMILY_HYPERBOLIC,
  PST_FAMILY_GAPPED
} pst_family;

typedef struct pst_spectrum pst_spectrum;
typedef struct pst_chain pst_chain;

typedef struct pst_report {
  double fidelity;
  double phase;
  double time_used;
  double persymmetry_residual;
  double sign_condition_residual;
  double dual_weight_residual;
  int is_pst; /* fidelity >= 1 - 1e-8 and every residual <= 1e-8 */
} pst_report;

PST_API const char* pst_status_name(pst_status status);
PST_API const char* pst_last_error(void);
/* Index attached to the last error (offending spacing, coefficient...), or -1. */
PST_API long pst_last_error_index(void);
/* {"error": name, "message": ..., "index": ...} for the last error. */
PST_API pst_status pst_last_error_json(char** out);
PST_API void pst_string_free(char* s);

/* Spectra */
PST_API pst_status pst_spectrum_generate(pst_family family, int n, int k, int l, pst_mode mode,
                                         pst_spectrum** out);
/* force_mode < 0 keeps the mode found in the document. */
PST_API pst_status pst_spectrum_from_json(const char* json, int force_mode, pst_spectrum** out);
PST_API pst_status pst_spectrum_to_json(const pst_spectrum* s, char** out);
PST_API pst_status pst_spectrum_convert(const pst_spectrum* s, pst_mode mode, pst_spectrum** out);
/* Admissibility verdict as JSON {"time": ..., "m": [...]}. */
PST_API pst_status pst_spectrum_check(const pst_spectrum* s, char** out);
PST_API pst_status pst_spectrum_mode(const pst_spectrum* s, pst_mode* out);
PST_API pst_status pst_spectrum_size(const pst_spectrum* s, size_t* out);
PST_API pst_status pst_spectrum_points(const pst_spectrum* s, double* out, size_t capacity);
PST_API void pst_spectrum_free(pst_spectrum* s);

/* Chains */
/* discrepancy may be NULL; it receives the Euclid/Stieltjes gap for
 * PST_ALGO_BOTH and -1 otherwise. */
PST_API pst_status pst_chain_build(const pst_spectrum* s, pst_algorithm algorithm, pst_chain** out,
                                   double* discrepancy);
PST_API pst_status pst_chain_from_json(const char* json, pst_chain** out);
PST_API pst_status pst_chain_to_json(const pst_chain* c, char** out);
PST_API pst_status pst_chain_to_csv(const pst_chain* c, char** out);
PST_API pst_status pst_chain_mode(const pst_chain* c, pst_mode* out);
/* Number of sites N+1. */
PST_API pst_status pst_chain_size(const pst_chain* c, size_t* out);
PST_API pst_status pst_chain_fields(const pst_chain* c, double* out, size_t capacity);
PST_API pst_status pst_chain_couplings(const pst_chain* c, double* out, size_t capacity);
PST_API pst_status pst_chain_time(const pst_chain* c, double* out);
/* Exact chains report an exact zero test through the binary64 conversion. */
PST_API pst_status pst_chain_persymmetry(const pst_chain* c, double* out);
PST_API pst_status pst_chain_verify(const pst_chain* c, pst_report* out);
PST_API pst_status pst_report_to_json(const pst_report* r, char** out);
PST_API pst_status pst_chain_amplitude(const pst_chain* c, double t, double* re, double* im);
PST_API pst_status pst_chain_curve_csv(const pst_chain* c, size_t samples, char** out);
/* discrepancy may be NULL; receives the closed-form vs rebuilt gap. */
PST_API pst_status pst_chain_surgery(const pst_chain* c, const char* plan_json, pst_chain** out,
                                     double* discrepancy);
PST_API void pst_chain_free(pst_chain* c);

/* Acceptance suite. The callback runs once per criterion. */
typedef void (*pst_selftest_callback)(const char* name, int passed, const char* detail, void* user);
PST_API pst_status pst_selftest(pst_selftest_callback callback, void* user, int* failures);

#ifdef __cplusplus
}
#endif

#endif /* PSTFORGE_H */
