#ifndef RESINT_H
#define RESINT_H

/* Generated by cbindgen from the resint-capi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef struct ResintIdeal ResintIdeal;
typedef struct ResintRees ResintRees;

// Outcome of a call.
typedef enum ResintStatus {
  // Success.
  RESINT_STATUS_OK = 0,
  // Malformed input or a violated hypothesis.
  RESINT_STATUS_INVALID_INPUT = 1,
  // A computation contradicted an internal identity or expected value.
  RESINT_STATUS_MATH_MISMATCH = 2,
  // A required pointer was null.
  RESINT_STATUS_NULL_POINTER = 3,
  // Unexpected internal failure.
  RESINT_STATUS_INTERNAL = 4,
} ResintStatus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null if none.
// Valid until the next failing call on the same thread.
const char *resint_last_error(void);

// Release a string returned by this library.
void resint_string_free(char *s);

// Parse an ideal from its JSON file format. On success the handle must be
// released with `resint_ideal_free`.
enum ResintStatus resint_ideal_parse(const char *json, ResintIdeal **out);

void resint_ideal_free(ResintIdeal *ideal);

// Number of generators of the ideal.
enum ResintStatus resint_ideal_generator_count(const ResintIdeal *ideal, size_t *out);

// Dimension of the bidegree (a, b) piece of the quotient by the ideal.
enum ResintStatus resint_ideal_quotient_dim(const ResintIdeal *ideal,
                                            int64_t a,
                                            int64_t b,
                                            uint64_t *out);

// Bigraded Betti numbers of the quotient inside the window i <= i_max,
// a <= a_max, b <= b_max, as a JSON array of {i, a, b, mult} rows sorted
// by (i, a, b). The caller frees the string.
enum ResintStatus resint_ideal_betti_window(const ResintIdeal *ideal,
                                            size_t i_max,
                                            int64_t a_max,
                                            int64_t b_max,
                                            char **out_json);

// Parse a presentation matrix from its JSON file format and build the
// Rees model: transposed matrix, row minors, residual ideal. On success
// the handle must be released with `resint_rees_free`.
enum ResintStatus resint_rees_parse(const char *json, ResintRees **out);

void resint_rees_free(ResintRees *rees);

// Certificates for the (c, e) diagonal of the Rees algebra, as JSON. The
// caller frees the string.
enum ResintStatus resint_rees_certificates(const ResintRees *rees,
                                           int64_t c,
                                           int64_t e,
                                           char **out_json);

// Dimension of the degree-t piece of the s-th power of the presented
// ideal.
enum ResintStatus resint_rees_power_piece_dim(const ResintRees *rees,
                                              size_t s,
                                              int64_t t,
                                              uint64_t *out);

// Closed-form Betti table for the quotient built from a generic n x m
// matrix, as a JSON array of {i, a, b, mult} rows. The caller frees the
// string.
enum ResintStatus resint_bkm_betti_json(size_t n, size_t m, char **out_json);

// Rank of the degree-a strand kernel in homological position b of the
// Koszul complex on n variables, verified against its closed form.
enum ResintStatus resint_kab_rank(size_t n, int64_t a, int64_t b, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RESINT_H */
