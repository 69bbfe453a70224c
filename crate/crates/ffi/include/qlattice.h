#ifndef QLATTICE_H
#define QLATTICE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum QlStatus {
  QL_STATUS_OK = 0,
  QL_STATUS_NULL_POINTER = 1,
  // Malformed JSON, bad UTF-8 or an unknown preset.
  QL_STATUS_PARSE = 2,
  // Well-formed input naming unknown vertices, trivial syllables,
  // invalid graphs or Coxeter matrices.
  QL_STATUS_INVALID_INPUT = 3,
  QL_STATUS_NOT_IN_PP_INV = 4,
  QL_STATUS_NOT_POSITIVE = 5,
  QL_STATUS_BALL_TOO_LARGE = 6,
  QL_STATUS_CONTEXT_MISMATCH = 7,
  // Any other failure of a library operation.
  QL_STATUS_DOMAIN = 8,
  QL_STATUS_PANIC = 9,
} QlStatus;

typedef struct QlContext QlContext;

typedef struct QlWord QlWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *ql_last_error_message(void);

// Library version as a static string.
const char *ql_version(void);

// Builds a context from a JSON context document.
//
// # Safety
// `json` must be a valid C string and `out` a valid pointer.
enum QlStatus ql_context_from_json(const char *json, struct QlContext **out);

// Builds one of the shipped preset contexts by name.
//
// # Safety
// `name` must be a valid C string and `out` a valid pointer.
enum QlStatus ql_context_preset(const char *name, struct QlContext **out);

// # Safety
// `ctx` must come from this library and not be used afterwards. Null is ignored.
void ql_context_free(struct QlContext *ctx);

// # Safety
// Pointers must be valid.
enum QlStatus ql_context_vertex_count(const struct QlContext *ctx, size_t *out);

// Parses a JSON word literal and stores its normal form.
//
// # Safety
// `literal` must be a valid C string; other pointers must be valid.
enum QlStatus ql_word_parse(const struct QlContext *ctx, const char *literal, struct QlWord **out);

// # Safety
// Pointers must be valid.
enum QlStatus ql_word_identity(const struct QlContext *ctx, struct QlWord **out);

// # Safety
// `word` must come from this library and not be used afterwards. Null is ignored.
void ql_word_free(struct QlWord *word);

// The normal form as a JSON word literal. Release with [`ql_string_free`].
//
// # Safety
// Pointers must be valid.
enum QlStatus ql_word_to_json(const struct QlWord *word, char **out);

// # Safety
// `s` must come from this library and not be used afterwards. Null is ignored.
void ql_string_free(char *s);

// # Safety
// Pointers must be valid.
enum QlStatus ql_word_multiply(const struct QlWord *a, const struct QlWord *b, struct QlWord **out);

// # Safety
// Pointers must be valid.
enum QlStatus ql_word_invert(const struct QlWord *a, struct QlWord **out);

// # Safety
// Pointers must be valid.
enum QlStatus ql_word_equal(const struct QlWord *a, const struct QlWord *b, bool *out);

// Number of syllables of the normal form.
//
// # Safety
// Pointers must be valid.
enum QlStatus ql_word_length(const struct QlWord *a, size_t *out);

// # Safety
// Pointers must be valid.
enum QlStatus ql_word_degree(const struct QlWord *a, int64_t *out);

// # Safety
// Pointers must be valid.
enum QlStatus ql_word_is_positive(const struct QlWord *a, bool *out);

// Whether `a ≤ b`, that is `a^-1 b` is positive.
//
// # Safety
// Pointers must be valid.
enum QlStatus ql_word_leq(const struct QlWord *a, const struct QlWord *b, bool *out);

// Least upper bound. When there is none, `*infinite` is set and `*out`
// is null.
//
// # Safety
// Pointers must be valid.
enum QlStatus ql_lub(const struct QlWord *a,
                     const struct QlWord *b,
                     struct QlWord **out,
                     bool *infinite);

// Greatest common right divisor of two positive words.
//
// # Safety
// Pointers must be valid.
enum QlStatus ql_rgcd(const struct QlWord *a, const struct QlWord *b, struct QlWord **out);

// The positive pair `(num, den)` with `x = num den^-1` and trivial right gcd.
//
// # Safety
// Pointers must be valid.
enum QlStatus ql_canonical_fraction(const struct QlWord *x,
                                    struct QlWord **num,
                                    struct QlWord **den);

// Largest singular value of `Σ weights[i] T_{words[i]}` compressed to the
// ball of radius `max_degree`, by power iteration to relative `tolerance`.
//
// # Safety
// `words` and `weights` must point to `count` valid entries.
enum QlStatus ql_norm_estimate(const struct QlContext *ctx,
                               const struct QlWord *const *words,
                               const double *weights,
                               size_t count,
                               size_t max_degree,
                               double tolerance,
                               double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QLATTICE_H */
