/* ordena — multiplicative order divisibility toolkit, C API.
 *
 * All functions return ORDENA_OK on success. String results are heap
 * allocated; release them with ordena_string_free. A thread-local detail
 * message for the last failure is available via ordena_last_error.
 *
 * Rationals are rendered as "a/b" in lowest terms ("a" when b = 1).
 * Multi-row results are tab-separated text, one row per line.
 */

#ifndef ORDENA_H
#define ORDENA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ordena_status {
  ORDENA_OK = 0,
  ORDENA_ERR_INVALID_ARGUMENT = 1,
  ORDENA_ERR_PARSE = 2,
  ORDENA_ERR_DOMAIN = 3,
  ORDENA_ERR_NOT_IN_S = 4,
  ORDENA_ERR_UNSUPPORTED = 5,
  ORDENA_ERR_RESOURCE = 6,
  ORDENA_ERR_INTERNAL = 7
} ordena_status;

/* Opaque handle for a parsed base g = +/- g0^h. */
typedef struct ordena_base ordena_base;

const char* ordena_status_name(ordena_status status);
const char* ordena_last_error(void);
void ordena_string_free(char* s);

/* Grammar: [-] INT [/ INT] [^ INT]; the exponent applies to the magnitude. */
ordena_status ordena_base_parse(const char* text, ordena_base** out);
void ordena_base_free(ordena_base* base);

int ordena_base_sign(const ordena_base* base);
uint64_t ordena_base_h(const ordena_base* base);
ordena_status ordena_base_discriminant(const ordena_base* base, char** out);
void ordena_base_tau(const ordena_base* base, int* tau1, int* tau2);
int ordena_base_in_s(const ordena_base* base, uint64_t u);

/* "p^e*p^e*..." ascending; "1" for n = 1. n is a decimal string. */
ordena_status ordena_factorize(const char* n, char** out);

/* ord_g(u); u must lie in S(g). */
ordena_status ordena_order(const ordena_base* base, uint64_t u, uint64_t* out);

/* Exact rationals, rendered as strings. d/m are decimal strings. */
ordena_status ordena_cap_c(uint64_t q, uint64_t n, char** out);
ordena_status ordena_delta(const ordena_base* base, const char* d, char** out);
ordena_status ordena_delta_prime(const ordena_base* base, const char* m, char** out);
ordena_status ordena_gamma_min(const ordena_base* base, const char* m, char** out);
ordena_status ordena_epsilon(const ordena_base* base, const char* d, char** out);
/* newline-separated ascending list */
ordena_status ordena_spectrum(const ordena_base* base, const char* m, char** out);

/* Rows "p1<TAB>e1<TAB>p2<TAB>e2<TAB>value". */
ordena_status ordena_coincidences(const ordena_base* base, uint64_t pmax, uint64_t emax,
                                  char** out);
ordena_status ordena_families(const ordena_base* base, char** out);
/* Rows "p<TAB>alpha<TAB>q<TAB>beta<TAB>value". */
ordena_status ordena_solve_order_equation(uint64_t pmax, uint64_t emax, char** out);
/* Newline-separated ascending members. tau2 in {0,1,2}. */
ordena_status ordena_generator_set(int tau2, char** out);
/* witness receives a dividing generator member (0 when none). */
ordena_status ordena_is_muller(const ordena_base* base, int* muller, uint64_t* witness);

ordena_status ordena_unique_pattern_density(const ordena_base* base, char** out);
ordena_status ordena_scan_bad(const ordena_base* base, uint64_t limit, int threads,
                              uint64_t* count);

/* TSV with header "x<TAB>count<TAB>predicted_exponent<TAB>normalized".
 * mode: N | Nprime | Ndoubleprime | P | Pprime (case-insensitive). */
ordena_status ordena_count_series(const ordena_base* base, const char* m, uint64_t x,
                                  const char* mode, unsigned checkpoints, int threads,
                                  char** out);

/* passed receives 1/0; the report is one line per checkpoint. */
ordena_status ordena_verify_lemma2(const ordena_base* base, const char* m, uint64_t x,
                                   unsigned checkpoints, int threads, char** report, int* passed);
ordena_status ordena_verify_prime_ie(const ordena_base* base, const char* d, uint64_t x,
                                     unsigned checkpoints, int threads, char** report,
                                     int* passed);
ordena_status ordena_verify_multiplicative(const ordena_base* base, const char* m, uint64_t x,
                                           uint64_t trials, uint64_t seed, char** report,
                                           int* passed);
ordena_status ordena_verify_congruence(const ordena_base* base, const char* d, uint64_t x,
                                       char** report, int* passed);

/* Principal-value logarithmic integral; x >= 2. */
ordena_status ordena_li(double x, double* out);

#ifdef __cplusplus
}
#endif

#endif /* ORDENA_H */
