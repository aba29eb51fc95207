#ifndef ZS_H
#define ZS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of every call.
 */
typedef enum ZsStatus {
  ZS_STATUS_OK = 0,
  /*
   A null pointer or a handle of the wrong state.
   */
  ZS_STATUS_NULL_ARGUMENT = 1,
  /*
   Input that does not parse or does not describe a valid object.
   */
  ZS_STATUS_INVALID_INPUT = 2,
  /*
   The requested value does not exist, e.g. an undefined product.
   */
  ZS_STATUS_UNDEFINED = 3,
  /*
   A bounded computation ran out of fuel.
   */
  ZS_STATUS_FUEL_EXHAUSTED = 4,
  /*
   A library-level failure, such as a failed hypothesis.
   */
  ZS_STATUS_FAILED = 5,
  /*
   A Rust panic was caught at the boundary.
   */
  ZS_STATUS_PANIC = 6,
} ZsStatus;

/*
 Verdict of a check, mirroring the library's verdicts.
 */
typedef enum ZsVerdict {
  ZS_VERDICT_PASS = 0,
  ZS_VERDICT_FAIL = 1,
  ZS_VERDICT_NOT_APPLICABLE = 2,
  ZS_VERDICT_PASS_UP_TO_FUEL = 3,
  ZS_VERDICT_INCONCLUSIVE = 4,
} ZsVerdict;

/*
 Word-problem answers.
 */
typedef enum ZsWordAnswer {
  ZS_WORD_ANSWER_EQUAL = 0,
  ZS_WORD_ANSWER_DISTINCT = 1,
  ZS_WORD_ANSWER_UNKNOWN = 2,
} ZsWordAnswer;

/*
 Finite mutual actions with their product domain.
 */
typedef struct ZsActions ZsActions;

/*
 A finite partial magma.
 */
typedef struct ZsMagma ZsMagma;

/*
 A string rewriting system.
 */
typedef struct ZsRules ZsRules;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 The last error message on this thread, or null. Valid until the next failing call.
 */
const char *zs_last_error(void);

/*
 Library version as a static string.
 */
const char *zs_version(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not be freed twice.
 */
void zs_string_free(char *s);

/*
 Parses a magma file (`{"size", "names", "table"}`).

 # Safety
 `json` must be a NUL-terminated string and `out` writable.
 */
enum ZsStatus zs_magma_from_json(const char *json, struct ZsMagma **out_magma);

/*
 # Safety
 `m` must come from this library and not be freed twice. Null is ignored.
 */
void zs_magma_free(struct ZsMagma *m);

/*
 Number of elements.

 # Safety
 `m` must be a live handle and `size` writable.
 */
enum ZsStatus zs_magma_size(const struct ZsMagma *m, size_t *size);

/*
 `a·b`; `ZS_STATUS_UNDEFINED` when the pair is outside the domain.

 # Safety
 `m` must be a live handle and `product` writable.
 */
enum ZsStatus zs_magma_mul(const struct ZsMagma *m, size_t a, size_t b, size_t *product);

/*
 Checks one property by tag, e.g. `"categorical"` or `"assoc"`.

 # Safety
 `m` must be a live handle, `property` a NUL-terminated string, `verdict` writable.
 */
enum ZsStatus zs_magma_check(const struct ZsMagma *m,
                             const char *property,
                             enum ZsVerdict *verdict);

/*
 Whether two magmas are isomorphic, by exhaustive search.

 # Safety
 `a`, `b` must be live handles and `result` writable.
 */
enum ZsStatus zs_magma_isomorphic(const struct ZsMagma *a, const struct ZsMagma *b, bool *result);

/*
 Serializes a magma; free the result with [`zs_string_free`].

 # Safety
 `m` must be a live handle and `json` writable.
 */
enum ZsStatus zs_magma_to_json(const struct ZsMagma *m, char **json);

/*
 Parses an actions file. Path references resolve against the working directory.

 # Safety
 `json` must be a NUL-terminated string and `out` writable.
 */
enum ZsStatus zs_actions_from_json(const char *json, struct ZsActions **out_actions);

/*
 # Safety
 `ap` must come from this library and not be freed twice. Null is ignored.
 */
void zs_actions_free(struct ZsActions *ap);

/*
 Checks an axiom or group of axioms (`"P2"`, `"P7a"`, `"all"`); the verdict is their conjunction.

 # Safety
 `ap` must be a live handle, `axiom` a NUL-terminated string, `verdict` writable.
 */
enum ZsStatus zs_actions_check_axiom(const struct ZsActions *ap,
                                     const char *axiom,
                                     enum ZsVerdict *verdict);

/*
 The external product's table; `ZS_STATUS_FAILED` when the domain is not closed.

 # Safety
 `ap` must be a live handle and `product` writable.
 */
enum ZsStatus zs_actions_product(const struct ZsActions *ap, struct ZsMagma **product);

/*
 Parses a presentation file (`{"alphabet", "kind", "rules"}`).

 # Safety
 `json` must be a NUL-terminated string and `out` writable.
 */
enum ZsStatus zs_rules_from_json(const char *json, struct ZsRules **out_rules);

/*
 # Safety
 `rs` must come from this library and not be freed twice. Null is ignored.
 */
void zs_rules_free(struct ZsRules *rs);

/*
 Leftmost normal form within `fuel` steps; free the result with [`zs_string_free`].

 # Safety
 `rs` must be a live handle, `word` a NUL-terminated string, `normal_form` writable.
 */
enum ZsStatus zs_rules_normalize(const struct ZsRules *rs,
                                 const char *word,
                                 size_t fuel,
                                 char **normal_form);

/*
 Decides `w1 = w2` in the presented monoid within `fuel`.

 # Safety
 `rs` must be a live handle, the words NUL-terminated strings, `answer` writable.
 */
enum ZsStatus zs_rules_word_problem(const struct ZsRules *rs,
                                    const char *w1,
                                    const char *w2,
                                    size_t fuel,
                                    enum ZsWordAnswer *answer);

/*
 Runs the `zs` command line with `argc` arguments (program name first)
 and returns its exit code; output goes to the process's stdout and stderr.
 Returns 2 on null or non-UTF-8 arguments.

 # Safety
 `argv` must hold `argc` NUL-terminated strings.
 */
int zs_cli_run(int argc, const char *const *argv);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZS_H */
