#ifndef MIXEDLIP_H
#define MIXEDLIP_H

/* Generated by cbindgen from crates/mixedlip-ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MixedlipDecision {
  MIXEDLIP_DECISION_AMBIENT_EQUIVALENT = 0,
  MIXEDLIP_DECISION_NOT_BILIPSCHITZ_EQUIVALENT = 1,
  MIXEDLIP_DECISION_TOPOLOGICALLY_EQUIVALENT_AT_LEAST = 2,
  MIXEDLIP_DECISION_INCONCLUSIVE = 3,
} MixedlipDecision;

// Link isotopy type asserted by the caller for `mixedlip_compare`.
typedef enum MixedlipLinkAssertion {
  MIXEDLIP_LINK_ASSERTION_NONE = 0,
  MIXEDLIP_LINK_ASSERTION_TRIVIAL_KNOT = 1,
  MIXEDLIP_LINK_ASSERTION_HOPF = 2,
} MixedlipLinkAssertion;

typedef enum MixedlipStatus {
  MIXEDLIP_STATUS_OK = 0,
  MIXEDLIP_STATUS_NULL_POINTER = 1,
  MIXEDLIP_STATUS_INVALID_UTF8 = 2,
  MIXEDLIP_STATUS_PARSE = 3,
  MIXEDLIP_STATUS_INVALID_ARGUMENT = 4,
  MIXEDLIP_STATUS_INTERNAL = 5,
} MixedlipStatus;

// Opaque analysis of one polynomial.
typedef struct MixedlipAnalysis MixedlipAnalysis;

// Opaque comparison or family verdict.
typedef struct MixedlipVerdict MixedlipVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread (empty after success).
// Valid until the next call on the same thread.
const char *mixedlip_last_error(void);

// Analyse `poly`; `grid = 0` selects the default base-angle grid.
//
// # Safety
// `poly` must be a NUL-terminated string and `out` a valid pointer.
enum MixedlipStatus mixedlip_analyze(const char *poly,
                                     uint32_t grid,
                                     struct MixedlipAnalysis **out);

// JSON report of an analysis, owned by the handle.
//
// # Safety
// `a` must come from `mixedlip_analyze` and not have been freed.
const char *mixedlip_analysis_json(const struct MixedlipAnalysis *a);

// # Safety
// `a` must come from `mixedlip_analyze` (or be null) and is invalid afterwards.
void mixedlip_analysis_free(struct MixedlipAnalysis *a);

// Compare two analyses.
//
// # Safety
// `a`, `b` must be live analysis handles and `out` a valid pointer.
enum MixedlipStatus mixedlip_compare(const struct MixedlipAnalysis *a,
                                     const struct MixedlipAnalysis *b,
                                     enum MixedlipLinkAssertion assertion,
                                     struct MixedlipVerdict **out);

// Triviality of the family `f + εθ`.
//
// # Safety
// `f`, `theta` must be NUL-terminated strings and `out` a valid pointer.
enum MixedlipStatus mixedlip_family(const char *f,
                                    const char *theta,
                                    uint32_t grid,
                                    struct MixedlipVerdict **out);

// # Safety
// `v` must be a live verdict handle.
enum MixedlipDecision mixedlip_verdict_decision(const struct MixedlipVerdict *v);

// JSON verdict, owned by the handle.
//
// # Safety
// `v` must be a live verdict handle.
const char *mixedlip_verdict_json(const struct MixedlipVerdict *v);

// # Safety
// `v` must come from `mixedlip_compare`/`mixedlip_family` (or be null).
void mixedlip_verdict_free(struct MixedlipVerdict *v);

// Library version, static storage.
const char *mixedlip_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIXEDLIP_H */
