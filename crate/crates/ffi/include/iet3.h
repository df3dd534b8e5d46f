/* C interface to iet3: substitution invariance of three-interval exchange words. */

#ifndef IET3_H
#define IET3_H

/* Generated by cbindgen from the iet3-ffi sources; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum Iet3Status {
  IET3_STATUS_OK = 0,
  IET3_STATUS_NULL_POINTER = 1,
  IET3_STATUS_INVALID_UTF8 = 2,
  IET3_STATUS_PARSE = 3,
  IET3_STATUS_INVALID_SPEC = 4,
  IET3_STATUS_DEGENERATE_FIELD = 5,
  IET3_STATUS_OUT_OF_DOMAIN = 6,
  IET3_STATUS_NOT_APPLICABLE = 7,
  IET3_STATUS_STEP_BUDGET_EXCEEDED = 8,
  IET3_STATUS_STRADDLES_DISCONTINUITY = 9,
  IET3_STATUS_VERIFICATION_FAILED = 10,
  IET3_STATUS_BUFFER_TOO_SMALL = 11,
  IET3_STATUS_INTERNAL = 12,
} Iet3Status;

typedef enum Iet3Verdict {
  IET3_VERDICT_INVARIANT = 0,
  IET3_VERDICT_NOT_INVARIANT = 1,
  IET3_VERDICT_DEGENERATE = 2,
} Iet3Verdict;

/*
 The outcome of a decision, with the synthesized substitution when
 invariant.
 */
typedef struct Iet3Report Iet3Report;

/*
 A validated exchange in normalized parameters.
 */
typedef struct Iet3Spec Iet3Spec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Builds a spec from `field` (`"A,B,C[,+|-]"`) and exact expressions for
 `eps`, `l`, `c`.

 # Safety
 String arguments must be valid NUL-terminated strings; `out` must be
 writable.
 */
enum Iet3Status iet3_spec_new(const char *field,
                              const char *eps,
                              const char *l,
                              const char *c,
                              struct Iet3Spec **out);

/*
 Builds a spec from raw lengths `alpha1..3` and starting point `x0`.

 # Safety
 As for [`iet3_spec_new`].
 */
enum Iet3Status iet3_spec_new_raw(const char *field,
                                  const char *alpha1,
                                  const char *alpha2,
                                  const char *alpha3,
                                  const char *x0,
                                  struct Iet3Spec **out);

/*
 # Safety
 `spec` must come from this library and not be used afterwards. Null is
 ignored.
 */
void iet3_spec_free(struct Iet3Spec *spec);

/*
 Decides invariance; `step_budget = 0` selects the default.

 # Safety
 `spec` must be a live handle; `out` must be writable.
 */
enum Iet3Status iet3_decide(const struct Iet3Spec *spec,
                            uint64_t step_budget,
                            struct Iet3Report **out);

/*
 Decides invariance straight from parameters, so that degenerate lengths
 are reported as a verdict rather than an invalid spec. `eps`, `l`, `c`
 may be null to use `alpha1..3`, `x0` instead, and vice versa.

 # Safety
 Non-null string arguments must be valid NUL-terminated strings; `out`
 must be writable.
 */
enum Iet3Status iet3_decide_params(const char *field,
                                   const char *eps,
                                   const char *l,
                                   const char *c,
                                   const char *alpha1,
                                   const char *alpha2,
                                   const char *alpha3,
                                   const char *x0,
                                   uint64_t step_budget,
                                   struct Iet3Report **out);

/*
 Like [`iet3_decide`], but fails with `NotApplicable` unless invariant.

 # Safety
 As for [`iet3_decide`].
 */
enum Iet3Status iet3_synthesize(const struct Iet3Spec *spec,
                                uint64_t step_budget,
                                struct Iet3Report **out);

/*
 # Safety
 `report` must be a live handle; `out` must be writable.
 */
enum Iet3Status iet3_report_verdict(const struct Iet3Report *report, enum Iet3Verdict *out);

/*
 The report as JSON, with the same keys as the command-line tool.

 # Safety
 `report` must be a live handle; `out` must be writable. Release the
 string with [`iet3_string_free`].
 */
enum Iet3Status iet3_report_to_json(const struct Iet3Report *report, char **out);

/*
 The image of `letter` (`'A'`, `'B'` or `'C'`) under the synthesized
 substitution. `NotApplicable` when the report has none.

 # Safety
 `report` must be a live handle; `out` must be writable. Release the
 string with [`iet3_string_free`].
 */
enum Iet3Status iet3_report_image(const struct Iet3Report *report, char letter, char **out);

/*
 # Safety
 `report` must come from this library and not be used afterwards. Null
 is ignored.
 */
void iet3_report_free(struct Iet3Report *report);

/*
 Writes the coding of `T^n(0)` for `from <= n < to` as ASCII `A`/`B`/`C`
 into `buf` (not NUL-terminated) and the letter count into `written`.
 With `buf` null or `len` too small, returns `BufferTooSmall` and stores
 the required length in `written`.

 # Safety
 `spec` must be a live handle, `buf` writable for `len` bytes and
 `written` writable.
 */
enum Iet3Status iet3_code_orbit(const struct Iet3Spec *spec,
                                int64_t from,
                                int64_t to,
                                uint8_t *buf,
                                size_t len,
                                size_t *written);

/*
 # Safety
 `s` must come from this library and not be used afterwards. Null is
 ignored.
 */
void iet3_string_free(char *s);

/*
 Message for the last failed call on this thread, or null. Valid until
 the next call into the library from the same thread.
 */
const char *iet3_last_error_message(void);

/*
 Library version, a static string.
 */
const char *iet3_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IET3_H */
