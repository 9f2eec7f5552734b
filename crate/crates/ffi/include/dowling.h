#ifndef DOWLING_H
#define DOWLING_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Edge labeling used by the chain and EL queries.
 */
typedef enum DowlingLabeling {
  DOWLING_LABELING_LAMBDA = 0,
  DOWLING_LABELING_MU = 1,
} DowlingLabeling;

/**
 * Result of every call.
 */
typedef enum DowlingStatus {
  DOWLING_STATUS_OK = 0,
  DOWLING_STATUS_NULL_POINTER = 1,
  DOWLING_STATUS_INVALID_UTF8 = 2,
  DOWLING_STATUS_PARSE_ERROR = 3,
  DOWLING_STATUS_INVALID_ARGUMENT = 4,
  DOWLING_STATUS_SIZE_LIMIT = 5,
  DOWLING_STATUS_NOT_BOUNDED = 6,
  DOWLING_STATUS_INTERNAL = 7,
} DowlingStatus;

/**
 * A finite group acting on a finite set.
 */
typedef struct DowlingAction DowlingAction;

/**
 * A generalized Dowling poset or one of its subposets, possibly bounded.
 */
typedef struct DowlingPosetHandle DowlingPosetHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *dowling_last_error(void);

/**
 * Parse a group action from its JSON description.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DowlingStatus dowling_action_from_json(const char *json, struct DowlingAction **out);

/**
 * Look up a built-in action such as `z2-swap` or `z3-trivial-2`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DowlingStatus dowling_action_preset(const char *name, struct DowlingAction **out);

/**
 * # Safety
 * `action` must come from this library and not be used afterwards.
 */
void dowling_action_free(struct DowlingAction *action);

/**
 * Build `D_n(G,S)`, or the subposet for the colors `t[0..t_len]` when
 * `use_t` is set. `max_elements = 0` selects the default cap.
 *
 * # Safety
 * `action` must be a live handle, `t` must point to `t_len` colors when
 * `use_t` is set, and `out` must be a valid pointer.
 */
enum DowlingStatus dowling_poset_build(const struct DowlingAction *action,
                                       size_t n,
                                       bool use_t,
                                       const size_t *t,
                                       size_t t_len,
                                       size_t max_elements,
                                       struct DowlingPosetHandle **out);

/**
 * New handle for the poset with a top element adjoined.
 *
 * # Safety
 * `poset` must be a live handle and `out` a valid pointer.
 */
enum DowlingStatus dowling_poset_adjoin_top(const struct DowlingPosetHandle *poset,
                                            struct DowlingPosetHandle **out);

/**
 * # Safety
 * `poset` must come from this library and not be used afterwards.
 */
void dowling_poset_free(struct DowlingPosetHandle *poset);

/**
 * # Safety
 * `poset` must be a live handle and `out` a valid pointer.
 */
enum DowlingStatus dowling_poset_len(const struct DowlingPosetHandle *poset, size_t *out);

/**
 * # Safety
 * `poset` must be a live handle and `out` a valid pointer.
 */
enum DowlingStatus dowling_poset_rank(const struct DowlingPosetHandle *poset, size_t *out);

/**
 * Check the EL property of a bounded poset. Either out-pointer may be null.
 *
 * # Safety
 * `poset` must be a live handle; non-null out-pointers must be valid.
 */
enum DowlingStatus dowling_poset_verify_el(const struct DowlingPosetHandle *poset,
                                           enum DowlingLabeling labeling,
                                           bool *passed,
                                           size_t *failing_intervals);

/**
 * Number of maximal chains of a bounded poset with strictly decreasing labels.
 *
 * # Safety
 * `poset` must be a live handle and `out` a valid pointer.
 */
enum DowlingStatus dowling_poset_count_decreasing(const struct DowlingPosetHandle *poset,
                                                  enum DowlingLabeling labeling,
                                                  size_t *out);

/**
 * Möbius value from bottom to top of a bounded poset, as a decimal string.
 *
 * # Safety
 * `poset` must be a live handle and `out` a valid pointer.
 */
enum DowlingStatus dowling_poset_moebius(const struct DowlingPosetHandle *poset, char **out);

/**
 * Elements and covers as JSON.
 *
 * # Safety
 * `poset` must be a live handle and `out` a valid pointer.
 */
enum DowlingStatus dowling_poset_to_json(const struct DowlingPosetHandle *poset, char **out);

/**
 * Reduced homology of the proper part of a bounded poset as JSON with keys
 * `betti`, `betti_minus_one` and `torsion`. `max_faces = 0` selects the
 * default cap.
 *
 * # Safety
 * `poset` must be a live handle and `out` a valid pointer.
 */
enum DowlingStatus dowling_poset_homology_json(const struct DowlingPosetHandle *poset,
                                               size_t max_faces,
                                               char **out);

/**
 * Predicted number of spheres for the bounded Dowling poset, as a decimal string.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum DowlingStatus dowling_sphere_count(size_t n, size_t group_order, size_t set_size, char **out);

/**
 * Number of `(q,r)`-blooming trees on `nodes` labels, as a decimal string.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum DowlingStatus dowling_count_blooming(size_t nodes, size_t q, size_t r, char **out);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void dowling_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DOWLING_H */
