#ifndef BRACE8P_H
#define BRACE8P_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum Brace8pStatus {
  BRACE8P_STATUS_OK = 0,
  BRACE8P_STATUS_NULL_POINTER = 1,
  BRACE8P_STATUS_INVALID_ARGUMENT = 2,
  BRACE8P_STATUS_UNSUPPORTED_PRIME = 3,
  BRACE8P_STATUS_INTERNAL = 4,
} Brace8pStatus;

/**
 * Pair-orbit classification for the three abelian groups of order 8.
 */
typedef struct Brace8pClassification Brace8pClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * `major * 10000 + minor * 100 + patch`.
 */
uint32_t brace8p_version(void);

/**
 * Message of the last failure on this thread; empty if none. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *brace8p_last_error(void);

/**
 * # Safety
 * `out` must be valid for writes.
 */
enum Brace8pStatus brace8p_classification_new(struct Brace8pClassification **out);

/**
 * # Safety
 * `h` must come from [`brace8p_classification_new`] and not be freed twice.
 */
void brace8p_classification_free(struct Brace8pClassification *h);

/**
 * Total number of braces for `p ≡ residue (mod 8)`.
 *
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum Brace8pStatus brace8p_table_total(const struct Brace8pClassification *h,
                                       uint32_t residue,
                                       uint32_t *out);

/**
 * One cell of the table: `group` is a descriptor like `"4x2"`, `iso_type`
 * one of `C8`, `C4xC2`, `C2xC2xC2`, `D8`, `Q8`.
 *
 * # Safety
 * `h` must be a live handle, the strings NUL-terminated, `out` valid.
 */
enum Brace8pStatus brace8p_table_cell(const struct Brace8pClassification *h,
                                      uint32_t residue,
                                      const char *group_desc,
                                      const char *iso_type,
                                      uint32_t *out);

/**
 * Number of conjugacy classes of regular subgroups of `Hol(E)`.
 *
 * # Safety
 * `h` must be a live handle, `group_desc` NUL-terminated, `out` valid.
 */
enum Brace8pStatus brace8p_holomorph_class_count(const struct Brace8pClassification *h,
                                                 const char *group_desc,
                                                 uint32_t *out);

/**
 * Runs the brute-force oracle for one `(p, E)` and writes its class count
 * next to the predicted one. `p` must be on the default allowlist.
 *
 * # Safety
 * `h` must be a live handle, `group_desc` NUL-terminated, outputs valid.
 */
enum Brace8pStatus brace8p_oracle_check(const struct Brace8pClassification *h,
                                        uint64_t p,
                                        const char *group_desc,
                                        uint32_t *oracle_classes,
                                        uint32_t *predicted);

/**
 * The table for one residue class as JSON. Release with
 * [`brace8p_string_free`].
 *
 * # Safety
 * `h` must be a live handle and `out` valid for writes.
 */
enum Brace8pStatus brace8p_table_json(const struct Brace8pClassification *h,
                                      uint32_t residue,
                                      char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void brace8p_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRACE8P_H */
