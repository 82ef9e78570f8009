/* mu4spec -- exact spectra toolkit for the middle-fourth Cantor measure.
 *
 * C interface of the shared library. Two layers:
 *
 *   1. Typed word arithmetic on opaque handles: canonical eventually
 *      periodic digit sequences over {0,..,m-1} with exact carry-based
 *      addition, negation, scalar products, exact division by integers
 *      coprime to m, the ultrametric distance and block recoding.
 *
 *   2. A JSON request/reply entry point (mu4spec_run) carrying every
 *      construction, decision, verification and measure operation plus the
 *      regression suite. Requests are {"op":"decide.exists",...} objects;
 *      replies are deterministic JSON documents.
 *
 * All functions return MU4SPEC_OK on success. On failure they return a
 * status code and leave a message in mu4spec_last_error() (thread local).
 * Strings returned through out-parameters are heap allocated; release them
 * with mu4spec_string_free. Handles are released with mu4spec_word_free.
 */

#ifndef MU4SPEC_H
#define MU4SPEC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    MU4SPEC_OK = 0,
    MU4SPEC_ERR_INVALID_ARGUMENT = 1, /* malformed input, parse failure */
    MU4SPEC_ERR_DOMAIN = 2,           /* valid input outside an operation's domain */
    MU4SPEC_ERR_INTERNAL = 3
} mu4spec_status;

typedef struct mu4spec_word mu4spec_word; /* opaque */

const char* mu4spec_version(void);

/* Message describing the most recent failure on this thread. */
const char* mu4spec_last_error(void);

void mu4spec_string_free(char* s);
void mu4spec_word_free(mu4spec_word* w);

/* ---- word layer ------------------------------------------------------ */

/* Parses "<preperiod>(<period>)"; digits comma-separated once >= 10. */
mu4spec_status mu4spec_word_parse(const char* text, int64_t alphabet_size,
                                  mu4spec_word** out);
mu4spec_status mu4spec_word_format(const mu4spec_word* w, char** out);

/* Base-m expansion of a decimal integer (arbitrary precision). */
mu4spec_status mu4spec_word_from_integer(const char* decimal, int64_t alphabet_size,
                                         mu4spec_word** out);
/* *out receives a decimal string, or NULL when the word is not the
 * expansion of any integer. */
mu4spec_status mu4spec_word_to_integer(const mu4spec_word* w, char** out);

mu4spec_status mu4spec_word_digit_at(const mu4spec_word* w, uint64_t position,
                                     int64_t* digit);
mu4spec_status mu4spec_integer_digit(const char* decimal, uint64_t position,
                                     int64_t alphabet_size, int64_t* digit);

mu4spec_status mu4spec_word_add(const mu4spec_word* a, const mu4spec_word* b,
                                mu4spec_word** out);
mu4spec_status mu4spec_word_sub(const mu4spec_word* a, const mu4spec_word* b,
                                mu4spec_word** out);
mu4spec_status mu4spec_word_negate(const mu4spec_word* w, mu4spec_word** out);
mu4spec_status mu4spec_word_scalar_mul(int64_t a, const mu4spec_word* w,
                                       mu4spec_word** out);
/* Requires gcd(a, m) == 1; returns the unique word whose a-fold sum is w. */
mu4spec_status mu4spec_word_div_exact(int64_t a, const mu4spec_word* w,
                                      mu4spec_word** out);

/* Distance m^-exponent; *is_zero set when the words are equal. */
mu4spec_status mu4spec_word_rho(const mu4spec_word* a, const mu4spec_word* b,
                                int* is_zero, uint64_t* exponent);

mu4spec_status mu4spec_word_block_recode(int s, const mu4spec_word* w,
                                         mu4spec_word** out);
mu4spec_status mu4spec_word_block_decode(int s, int64_t base_alphabet,
                                         const mu4spec_word* w, mu4spec_word** out);

mu4spec_status mu4spec_word_equal(const mu4spec_word* a, const mu4spec_word* b,
                                  int* equal);

/* First n digits of sum_k 4^(k-1) * expansion(terms[k]); digits_out must
 * hold n entries. */
mu4spec_status mu4spec_series_prefix(const int64_t* terms, size_t n_terms, size_t n,
                                     int64_t* digits_out);

/* First n digits of the +-p stream transform; omega is a word literal over
 * {-p,0,p}. */
mu4spec_status mu4spec_hp_prefix(int64_t p, const char* omega, size_t n,
                                 int64_t* digits_out);

/* ---- report layer ---------------------------------------------------- */

/* Dispatches one operation. See the README for the request schema; the
 * reply is a JSON document. */
mu4spec_status mu4spec_run(const char* request_json, char** reply_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MU4SPEC_H */
