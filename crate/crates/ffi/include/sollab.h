#ifndef SOLLAB_H
#define SOLLAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SollabStatus {
  SOLLAB_STATUS_OK = 0,
  SOLLAB_STATUS_NULL_POINTER = 1,
  SOLLAB_STATUS_INVALID_ARGUMENT = 2,
  SOLLAB_STATUS_NOT_MEMBER = 3,
  // The check ran and the two sides differ.
  SOLLAB_STATUS_MISMATCH = 4,
  SOLLAB_STATUS_INTERNAL = 5,
} SollabStatus;

typedef enum SollabPsiCase {
  SOLLAB_PSI_CASE_FIXED = 0,
  SOLLAB_PSI_CASE_CASE_I = 1,
  SOLLAB_PSI_CASE_CASE_II = 2,
} SollabPsiCase;

// Opaque partition handle.
typedef struct SollabPartition SollabPartition;

// Opaque truncated q-series handle.
typedef struct SollabSeries SollabSeries;

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *sollab_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void sollab_string_free(char *s);

// Builds a partition from `len` weakly increasing positive parts.
//
// # Safety
// `parts` must point to `len` readable values (it may be null when `len`
// is 0) and `out` must be writable.
enum SollabStatus sollab_partition_new(const uint32_t *parts,
                                       size_t len,
                                       struct SollabPartition **out);

// # Safety
// `p` must be null or a handle from this library not yet freed.
void sollab_partition_free(struct SollabPartition *p);

// Number of parts.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum SollabStatus sollab_partition_len(const struct SollabPartition *p, size_t *out);

// Sum of the parts.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum SollabStatus sollab_partition_weight(const struct SollabPartition *p, uint64_t *out);

// Copies the parts in increasing order into `buf`, which holds `cap`
// values. `InvalidArgument` if `cap` is smaller than the length.
//
// # Safety
// `p` must be a live handle and `buf` writable for `cap` values.
enum SollabStatus sollab_partition_parts(const struct SollabPartition *p,
                                         uint32_t *buf,
                                         size_t cap);

// Applies the involution ψ. `NotMember` unless the input has
// multiplicities at most 2 and adjacent distinct sizes at least 2 apart.
//
// # Safety
// `p` must be a live handle; `out` and `case_out` writable (`case_out` may
// be null).
enum SollabStatus sollab_psi(const struct SollabPartition *p,
                             struct SollabPartition **out,
                             enum SollabPsiCase *case_out);

// Left-hand side of a registered identity through `q^order`.
//
// # Safety
// `id` must be a NUL-terminated string and `out` writable.
enum SollabStatus sollab_series_lhs(const char *id, uint32_t order, struct SollabSeries **out);

// Right-hand side of a registered identity through `q^order`.
//
// # Safety
// `id` must be a NUL-terminated string and `out` writable.
enum SollabStatus sollab_series_rhs(const char *id, uint32_t order, struct SollabSeries **out);

// # Safety
// `s` must be null or a handle from this library not yet freed.
void sollab_series_free(struct SollabSeries *s);

// Serializes a series; free the result with [`sollab_string_free`].
//
// # Safety
// `s` must be a live handle and `out` writable.
enum SollabStatus sollab_series_to_json(const struct SollabSeries *s, char **out);

// Verifies one identity in one mode (`series`, `enum`, `pairing` or
// `counting`) and writes the report as JSON to `out`. An `order` of 0
// selects the registry default. Returns `Mismatch` (with the report still
// written) when the sides differ.
//
// # Safety
// `id` and `mode` must be NUL-terminated strings and `out` writable.
enum SollabStatus sollab_verify_json(const char *id, const char *mode, uint32_t order, char **out);

#endif  /* SOLLAB_H */
