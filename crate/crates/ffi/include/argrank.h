#ifndef ARGRANK_H
#define ARGRANK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum ArgrankStatus {
  ARGRANK_STATUS_OK = 0,
  ARGRANK_STATUS_NULL_POINTER = 1,
  ARGRANK_STATUS_INVALID_UTF8 = 2,
  ARGRANK_STATUS_PARSE_ERROR = 3,
  ARGRANK_STATUS_TOO_MANY_ARGUMENTS = 4,
  ARGRANK_STATUS_INVALID_ARGUMENT = 5,
  ARGRANK_STATUS_BUDGET_EXCEEDED = 6,
  ARGRANK_STATUS_PANIC = 7,
} ArgrankStatus;

/**
 * Opaque framework handle.
 */
typedef struct ArgrankFramework ArgrankFramework;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses APX or JSON text (JSON when it starts with `{`) into a new handle.
 * `max_args` of 0 selects the library default.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ArgrankStatus argrank_framework_parse(const char *text,
                                           size_t max_args,
                                           struct ArgrankFramework **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `handle` must come from [`argrank_framework_parse`] and not be used again.
 */
void argrank_framework_free(struct ArgrankFramework *handle);

/**
 * Number of arguments.
 *
 * # Safety
 * `handle` must be a live handle and `out` a valid pointer.
 */
enum ArgrankStatus argrank_framework_len(const struct ArgrankFramework *handle, size_t *out);

/**
 * Rank payload as JSON, identical to the service's `payload` field.
 *
 * # Safety
 * `handle` must be live, strings NUL-terminated, `out` valid. The result must
 * be released with [`argrank_string_free`].
 */
enum ArgrankStatus argrank_rank_json(const struct ArgrankFramework *handle,
                                     const char *semantics,
                                     const char *index,
                                     bool exact,
                                     char **out);

/**
 * Extension payload as JSON.
 *
 * # Safety
 * As for [`argrank_rank_json`].
 */
enum ArgrankStatus argrank_extensions_json(const struct ArgrankFramework *handle,
                                           const char *semantics,
                                           char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used again.
 */
void argrank_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *argrank_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARGRANK_H */
