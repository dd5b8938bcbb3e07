#ifndef ORDTYPES_H
#define ORDTYPES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum OtStatus {
  OT_STATUS_OK = 0,
  OT_STATUS_NULL_POINTER = 1,
  OT_STATUS_INVALID_UTF8 = 2,
  OT_STATUS_SYNTAX = 3,
  OT_STATUS_INVALID_ARGUMENT = 4,
  OT_STATUS_CAPACITY = 5,
  OT_STATUS_TYPE = 6,
  OT_STATUS_MALFORMED_POINT = 7,
  OT_STATUS_INCONSISTENCY = 8,
  OT_STATUS_ORACLE_UNKNOWN = 9,
  OT_STATUS_PANIC = 10,
} OtStatus;

/**
 * Three-valued answer of a decision.
 */
typedef enum OtAnswer {
  OT_ANSWER_NO = 0,
  OT_ANSWER_YES = 1,
  OT_ANSWER_UNKNOWN = 2,
} OtAnswer;

/**
 * Opaque decision engine with its memo.
 */
typedef struct OtEngine OtEngine;

/**
 * Opaque normalized term.
 */
typedef struct OtTerm OtTerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; valid until the next call.
 */
const char *ot_last_error(void);

/**
 * Creates an engine; `choice` allows facts that depend on the axiom of choice.
 */
struct OtEngine *ot_engine_new(uint32_t depth, bool choice);

/**
 * # Safety
 * `engine` must be null or a handle from [`ot_engine_new`] not yet freed.
 */
void ot_engine_free(struct OtEngine *engine);

/**
 * Parses and normalizes a term into `*out`.
 *
 * # Safety
 * `src` must be a nul-terminated string and `out` a valid pointer.
 */
enum OtStatus ot_term_parse(const char *src, struct OtTerm **out);

/**
 * # Safety
 * `term` must be null or a handle from [`ot_term_parse`] not yet freed.
 */
void ot_term_free(struct OtTerm *term);

/**
 * The printed form of a term, or null for a null handle. Free with [`ot_string_free`].
 *
 * # Safety
 * `term` must be null or a live handle.
 */
char *ot_term_to_string(const struct OtTerm *term);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void ot_string_free(char *s);

/**
 * Decides `sub ⩽ sup`.
 *
 * # Safety
 * All pointers must be valid live handles or writable locations.
 */
enum OtStatus ot_embeds(struct OtEngine *engine,
                        const struct OtTerm *sub,
                        const struct OtTerm *sup,
                        enum OtAnswer *out);

/**
 * Decides mutual embeddability.
 *
 * # Safety
 * All pointers must be valid live handles or writable locations.
 */
enum OtStatus ot_equimorphic(struct OtEngine *engine,
                             const struct OtTerm *left,
                             const struct OtTerm *right,
                             enum OtAnswer *out);

/**
 * Decides `sub ⩽ sup` and writes the verdict with its certificate as JSON to `*out`.
 *
 * # Safety
 * All pointers must be valid live handles or writable locations.
 */
enum OtStatus ot_embeds_json(struct OtEngine *engine,
                             const struct OtTerm *sub,
                             const struct OtTerm *sup,
                             char **out);

/**
 * Writes the classification profile of a term as JSON to `*out`.
 *
 * # Safety
 * All pointers must be valid live handles or writable locations.
 */
enum OtStatus ot_classify_json(struct OtEngine *engine, const struct OtTerm *term, char **out);

/**
 * Writes the closed-form flags of an ordinal as JSON to `*out`.
 *
 * # Safety
 * `src` must be a nul-terminated string and `out` a valid pointer.
 */
enum OtStatus ot_ordinal_classify_json(const char *src, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORDTYPES_H */
