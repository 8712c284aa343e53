/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef EORDER_H
#define EORDER_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Three-valued membership answer.
typedef enum EoMembership {
  EO_MEMBERSHIP_IN = 0,
  EO_MEMBERSHIP_OUT = 1,
  EO_MEMBERSHIP_INSUFFICIENT = 2,
} EoMembership;

// Result of every fallible call.
typedef enum EoStatus {
  EO_STATUS_OK = 0,
  // A required pointer argument was null.
  EO_STATUS_NULL_POINTER = 1,
  // Malformed text, a zero or repeated value, a bad pattern or sample.
  EO_STATUS_INVALID_INPUT = 2,
  EO_STATUS_LENGTH_MISMATCH = 3,
  EO_STATUS_VALUE_ABSENT = 4,
  EO_STATUS_VALUE_SET_MISMATCH = 5,
  // The operation's precondition does not hold (e.g. non-reducible pair).
  EO_STATUS_PRECONDITION = 6,
  EO_STATUS_INVALID_PAIRING = 7,
  // The prefix is too short to answer.
  EO_STATUS_INSUFFICIENT_PREFIX = 8,
  EO_STATUS_UNKNOWN_NAME = 9,
  EO_STATUS_OUT_OF_RANGE = 10,
  // A caller-supplied buffer cannot hold the result.
  EO_STATUS_BUFFER_TOO_SMALL = 11,
  EO_STATUS_PANIC = 12,
} EoStatus;

// A stateful enumerator; successive takes continue where the last stopped.
typedef struct EoEnumerator EoEnumerator;

// A rank-aligned pair of listings with its extra element.
typedef struct EoPaired EoPaired;

// A finite listing prefix.
typedef struct EoPrefix EoPrefix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null after a success.
// The pointer stays valid until the next call on the same thread.
const char *eo_last_error(void);

// Builds a prefix from `len` distinct naturals (each ≥ 1).
//
// # Safety
// `values` must point to `len` readable values (or be null with `len == 0`);
// `out_prefix` must be writable.
enum EoStatus eo_prefix_new(const uint64_t *values, size_t len, struct EoPrefix **out_prefix);

// Parses a prefix from text: space-separated naturals or a JSON array.
//
// # Safety
// `text_in` must be a NUL-terminated string; `out_prefix` must be writable.
enum EoStatus eo_prefix_parse(const char *text_in, struct EoPrefix **out_prefix);

// Releases a prefix. Null is ignored.
//
// # Safety
// `p` must come from this library and not be used afterwards.
void eo_prefix_free(struct EoPrefix *p);

// Number of values in the prefix; 0 for null.
//
// # Safety
// `p` must be null or a live prefix.
size_t eo_prefix_len(const struct EoPrefix *p);

// Borrowed pointer to the prefix's values, valid while `p` lives.
//
// # Safety
// `p` must be null or a live prefix.
const uint64_t *eo_prefix_values(const struct EoPrefix *p);

// Decides `f ≤eo g`. On failure of the relation, `*out_i`/`*out_j` receive the
// least violating position pair (1-based); otherwise both are 0.
//
// # Safety
// `f`, `g` must be live prefixes; the out pointers must be writable.
enum EoStatus eo_leq(const struct EoPrefix *f,
                     const struct EoPrefix *g,
                     bool *out_holds,
                     size_t *out_i,
                     size_t *out_j);

// Decides `f ≡eo g`.
//
// # Safety
// `f`, `g` must be live prefixes; `out_equiv` must be writable.
enum EoStatus eo_equiv(const struct EoPrefix *f, const struct EoPrefix *g, bool *out_equiv);

// Writes the prefix's pattern (1-based ranks) into `ranks[0..len]`.
//
// # Safety
// `p` must be a live prefix; `ranks` must hold `capacity` writable entries.
enum EoStatus eo_standardize(const struct EoPrefix *p, size_t *ranks, size_t capacity);

// Number of inverted position pairs.
//
// # Safety
// `p` must be a live prefix; `out_count` must be writable.
enum EoStatus eo_inversion_count(const struct EoPrefix *p, size_t *out_count);

// Position `i` of the result holds `g'(h'^{-1}(h(i)))`.
//
// # Safety
// All three inputs must be live prefixes; `out_prefix` must be writable.
enum EoStatus eo_transport(const struct EoPrefix *h,
                           const struct EoPrefix *h_prime,
                           const struct EoPrefix *g_prime,
                           struct EoPrefix **out_prefix);

// Builds an enumerator from a spec such as `even`, `nminus:3`, `asc:1,5,9`
// or `halt:collatz`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out_enumerator` must be writable.
enum EoStatus eo_enumerator_parse(const char *spec, struct EoEnumerator **out_enumerator);

// Takes up to `n` further values within `budget` scheduling rounds in total.
//
// # Safety
// `e` must be a live enumerator; `out_prefix` must be writable.
enum EoStatus eo_enumerator_take(struct EoEnumerator *e,
                                 size_t n,
                                 uint64_t budget,
                                 struct EoPrefix **out_prefix);

// Releases an enumerator. Null is ignored.
//
// # Safety
// `e` must come from this library and not be used afterwards.
void eo_enumerator_free(struct EoEnumerator *e);

// Builds the aligned pair for sample `elements` (all ≤ `bound`), extra
// element `m` and a pattern of length `elements_len` starting with rank 1.
//
// # Safety
// `elements` and `pattern` must point to readable arrays of the given
// lengths; `out_paired` must be writable.
enum EoStatus eo_paired_make(const uint64_t *elements,
                             size_t elements_len,
                             uint64_t bound,
                             uint64_t m,
                             const size_t *pattern,
                             size_t pattern_len,
                             struct EoPaired **out_paired);

// Parses a pair from text (`f` line, `g` line, `m=<nat>`) or JSON
// `{"f":[..],"g":[..],"m":..}`, validating every invariant.
//
// # Safety
// `text_in` must be a NUL-terminated string; `out_paired` must be writable.
enum EoStatus eo_paired_parse(const char *text_in, struct EoPaired **out_paired);

// Releases a pair. Null is ignored.
//
// # Safety
// `p` must come from this library and not be used afterwards.
void eo_paired_free(struct EoPaired *p);

// The next smaller element of `A ∪ {m}` below `a`.
//
// # Safety
// `p` must be a live pair; `out_value` must be writable.
enum EoStatus eo_predecessor(const struct EoPaired *p, uint64_t a, uint64_t *out_value);

// Decides whether `x` belongs to `A`. An insufficient prefix is reported
// through `*out_result`, not as an error.
//
// # Safety
// `p` must be a live pair; `out_result` must be writable.
enum EoStatus eo_decide(const struct EoPaired *p, uint64_t x, enum EoMembership *out_result);

// Runs one exhaustive property check by id (e.g. `"lemma-2-8"`) at size `n`.
//
// # Safety
// `id` must be a NUL-terminated string; the out pointers must be writable.
enum EoStatus eo_verify_property(const char *id, size_t n, bool *out_pass, uint64_t *out_instances);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EORDER_H */
