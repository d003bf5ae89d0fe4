#ifndef DLAMBDA_H
#define DLAMBDA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// How a predicted value is to be read.
typedef enum DlBoundKind {
  DL_BOUND_KIND_EXACT = 0,
  DL_BOUND_KIND_UPPER_BOUND = 1,
  DL_BOUND_KIND_CONJECTURE = 2,
} DlBoundKind;

// Presentation family of a generating set.
typedef enum DlClass {
  DL_CLASS_CARD2 = 0,
  DL_CLASS_TWO_INV_ONE_CENTRAL = 1,
  DL_CLASS_ONE_INV_TWO_CYCLIC = 2,
  DL_CLASS_THREE_INV_A = 3,
  DL_CLASS_THREE_INV_B = 4,
  DL_CLASS_THREE_INV_C = 5,
  DL_CLASS_THREE_INV_D = 6,
  DL_CLASS_GENERATING_OUTSIDE_FAMILIES = 7,
  DL_CLASS_NON_GENERATING = 8,
} DlClass;

// Result code of every fallible call.
typedef enum DlStatus {
  DL_STATUS_OK = 0,
  // A required pointer argument was null.
  DL_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  DL_STATUS_INVALID_UTF8 = 2,
  // Element or generating-set text did not parse.
  DL_STATUS_PARSE_ERROR = 3,
  // `n` is out of range for the group.
  DL_STATUS_INVALID_ORDER = 4,
  // The generator list is empty, has duplicates, contains the identity,
  // is not inverse-closed, or names an element outside the group.
  DL_STATUS_INVALID_GEN_SET = 5,
  // The set does not generate `D_n`.
  DL_STATUS_NOT_GENERATING = 6,
  // The request is outside what the library supports (e.g. more than
  // three generators for classification, or no closed form exists).
  DL_STATUS_UNSUPPORTED = 7,
  // Two sets live in different groups or have different sizes.
  DL_STATUS_DIFFERENT_AMBIENT = 8,
  // An internal cross-check failed.
  DL_STATUS_INTERNAL_ERROR = 9,
  // A Rust panic was caught at the boundary.
  DL_STATUS_PANIC = 10,
} DlStatus;

// Opaque generating-set handle.
typedef struct DlGenSet DlGenSet;

// Classification result. The three-reflection fields are meaningful only
// when `has_three_flip` is true; they describe the normalized form
// `{f, r^a f, r^b f}` obtained by multiplying with `r^-shift`.
typedef struct DlClassInfo {
  uint32_t family;
  bool generates;
  bool has_three_flip;
  uint32_t shift;
  uint32_t a;
  uint32_t b;
  uint32_t h1;
  uint32_t h2;
  uint32_t h3;
  uint32_t h1h2;
  uint32_t generating_pairs;
} DlClassInfo;

// λ values and diameter of one generating set.
typedef struct DlLambda {
  uint32_t lambda1;
  uint32_t lambda2;
  uint32_t diameter;
} DlLambda;

// Closed-form prediction for a family.
typedef struct DlPrediction {
  uint32_t lambda1;
  enum DlBoundKind lambda1_kind;
  uint32_t lambda2;
  enum DlBoundKind lambda2_kind;
} DlPrediction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a generating set of `D_n` from `len` element strings such as
// `"f"`, `"r^2"`, `"r^3*f"`.
//
// # Safety
// `gens` must point to `len` NUL-terminated strings (it may be null when
// `len` is 0); `out` must be a valid pointer.
enum DlStatus dl_genset_new(uint32_t n, const char *const *gens, size_t len, struct DlGenSet **out);

// Parses the text form `"n=30; S={f, r^3*f, r^5*f}"`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be a valid pointer.
enum DlStatus dl_genset_parse(const char *text, struct DlGenSet **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `set` must be null or a handle not yet freed.
void dl_genset_free(struct DlGenSet *set);

// Number of generators in the set, or 0 for a null handle.
//
// # Safety
// `set` must be null or a live handle.
size_t dl_genset_len(const struct DlGenSet *set);

// Writes the canonical text form of the set to `*out`.
//
// # Safety
// `set` must be a live handle; `out` must be a valid pointer.
enum DlStatus dl_genset_to_string(const struct DlGenSet *set, char **out);

// Whether the set generates all of `D_n`.
//
// # Safety
// `set` must be a live handle; `out` must be a valid pointer.
enum DlStatus dl_genset_generates(const struct DlGenSet *set, bool *out);

// Classifies a set of at most three generators.
//
// # Safety
// `set` must be a live handle; `out` must be a valid pointer.
enum DlStatus dl_genset_classify(const struct DlGenSet *set, struct DlClassInfo *out);

// Computes λ₁, λ₂ and the diameter.
//
// # Safety
// `set` must be a live handle; `out` must be a valid pointer.
enum DlStatus dl_lambda(const struct DlGenSet *set, struct DlLambda *out);

// Word length of the element `element` (element grammar) in the set's
// Cayley graph.
//
// # Safety
// `set` must be a live handle; `element` a NUL-terminated string; `out` a
// valid pointer.
enum DlStatus dl_word_length(const struct DlGenSet *set, const char *element, uint32_t *out);

// Full λ report (values and witnesses) as a JSON object.
//
// # Safety
// `set` must be a live handle; `out` must be a valid pointer. Free the
// result with `dl_string_free`.
enum DlStatus dl_lambda_report_json(const struct DlGenSet *set, char **out);

// Cayley graph in DOT format.
//
// # Safety
// `set` must be a live handle; `out` must be a valid pointer. Free the
// result with `dl_string_free`.
enum DlStatus dl_export_dot(const struct DlGenSet *set, char **out);

// Closed-form λ prediction for a family at `n`. `class` is a `DlClass`
// value.
//
// # Safety
// `out` must be a valid pointer.
enum DlStatus dl_predict(uint32_t class_, uint32_t n, struct DlPrediction *out);

// Whether some bijection `source -> target` of generators extends to an
// automorphism of `D_n`.
//
// # Safety
// `source` and `target` must be live handles; `out` must be a valid pointer.
enum DlStatus dl_automorphism_exists(const struct DlGenSet *source,
                                     const struct DlGenSet *target,
                                     bool *out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void dl_string_free(char *s);

// Message describing the most recent failure on this thread, or null if
// the last call succeeded. Do not free.
const char *dl_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *dl_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DLAMBDA_H */
