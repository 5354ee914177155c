/* C API of the hk library: trinomial Hilbert-Kunz computations behind an
 * opaque handle. Every function returns a status code; string results are
 * heap-allocated and released with hk_string_free. */

#ifndef HK_HK_H
#define HK_HK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct hk_poly hk_poly;

typedef enum hk_status {
    HK_OK = 0,
    HK_ERROR_PARSE = 1,   /* bad polynomial text or invalid arguments */
    HK_ERROR_INVALID = 2, /* violated precondition (non-prime p, n < 1, ...) */
    HK_ERROR_BUDGET = 3,  /* the requested box exceeds the budget */
    HK_ERROR_INTERNAL = 4
} hk_status;

/* Human-readable name of a status code. */
const char* hk_status_str(hk_status status);

/* Message of the last failure on this thread. */
const char* hk_last_error(void);

/* Parses `text` over F_p. On success stores a new handle in *out. */
hk_status hk_poly_parse(const char* text, int64_t p, hk_poly** out);
void hk_poly_free(hk_poly* poly);

int64_t hk_poly_var_count(const hk_poly* poly);
hk_status hk_poly_canonical(const hk_poly* poly, char** out);

/* Hilbert-Kunz series for n = 1..n_max as JSON (format = 0) or CSV
 * (format = 1). budget = 0 selects the default. */
hk_status hk_series_text(const hk_poly* poly, int n_max, uint64_t budget, int format, char** out);

/* colength at a single level, as a decimal string. */
hk_status hk_colength_text(const hk_poly* poly, int n, uint64_t budget, char** out);

/* Membership verdicts for every box monomial, as CSV. */
hk_status hk_classify_csv(const hk_poly* poly, int n, int depth, uint64_t budget, char** out);

/* Class table of the reduced linear systems, as JSON. */
hk_status hk_analyze_json(const hk_poly* poly, int n, int64_t bound, uint64_t budget, char** out);

/* Multiplicity estimate + rationality probe from a series JSON document.
 * d < 0 selects the hypersurface default m - 1. */
hk_status hk_estimate_json(const char* series_json, int64_t d, const char* q_max, int force,
                           char** out);

void hk_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
