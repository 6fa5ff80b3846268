#ifndef SPO_H
#define SPO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code of every fallible call.
enum SpoStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  SPO_STATUS_OK = 0,
  SPO_STATUS_NULL_POINTER = 1,
  SPO_STATUS_INVALID_ARGUMENT = 2,
  SPO_STATUS_CHECK_FAILED = 3,
  SPO_STATUS_BUFFER_TOO_SMALL = 4,
  SPO_STATUS_INTERNAL = 5,
};
#ifndef __cplusplus
typedef int32_t SpoStatus;
#endif // __cplusplus

// Opaque handle to a root system of `spo(2n|l)`.
typedef struct SpoRootSystem SpoRootSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or an empty string.
// The pointer is valid until the next call into this library on the
// same thread.
const char *spo_last_error(void);

// Builds the root system of `spo(2n|ell)` into `*out`.
//
// # Safety
// `out` must be a valid pointer to writable storage.
SpoStatus spo_root_system_new(size_t n, size_t ell, struct SpoRootSystem **out);

// Releases a handle. Null is accepted.
//
// # Safety
// `rs` must come from [`spo_root_system_new`] and not be used afterwards.
void spo_root_system_free(struct SpoRootSystem *rs);

// Number of negative and positive weight coordinates.
//
// # Safety
// `rs` must be a live handle; the out-pointers must be writable.
SpoStatus spo_root_system_ranks(const struct SpoRootSystem *rs, size_t *neg_rank, size_t *pos_rank);

// `*out = lam` is dominant, with `lam` given by its negative coordinates
// `(lam_{-n}, ..., lam_{-1})` and positive coordinates `(lam_1, ...)`.
//
// # Safety
// `rs` must be a live handle, the arrays valid for their lengths and
// `out` writable.
SpoStatus spo_is_dominant(const struct SpoRootSystem *rs,
                          const int64_t *neg,
                          size_t neg_len,
                          const int64_t *pos,
                          size_t pos_len,
                          bool *out);

// `*out = lam` is the highest weight of a finite-dimensional simple
// module in characteristic `p` (0 or an odd prime).
//
// # Safety
// As for [`spo_is_dominant`].
SpoStatus spo_in_xdag(const struct SpoRootSystem *rs,
                      const int64_t *neg,
                      size_t neg_len,
                      const int64_t *pos,
                      size_t pos_len,
                      uint64_t p,
                      bool *out);

// `j(mu)` at `p`.
//
// # Safety
// `parts` must be valid for `len` reads and `out` writable.
SpoStatus spo_little_j(const size_t *parts, size_t len, uint32_t p, size_t *out);

// Mullineux image of a `p`-restricted partition. The parts are written
// to `out` (capacity `cap`) and their count to `*out_len`. When `cap` is
// too small nothing is written to `out`, `*out_len` holds the required
// length and the status is `BufferTooSmall`.
//
// # Safety
// `parts` valid for `len` reads, `out` valid for `cap` writes (may be
// null when `cap == 0`), `out_len` writable.
SpoStatus spo_mullineux(const size_t *parts,
                        size_t len,
                        uint32_t p,
                        size_t *out,
                        size_t cap,
                        size_t *out_len);

// Bracket table of the Chevalley basis as a JSON list of
// `{"lhs", "rhs", "result"}` rows. `*out` receives a string owned by the
// caller.
//
// # Safety
// `rs` must be a live handle and `out` writable.
SpoStatus spo_bracket_table_json(const struct SpoRootSystem *rs, char **out);

// `ad(X^[p]) = (ad X)^p` for every even basis element. The number of
// failing elements goes to `*violations`; any failure gives
// `CheckFailed`.
//
// # Safety
// `rs` must be a live handle and `violations` writable.
SpoStatus spo_restricted_check(const struct SpoRootSystem *rs, uint64_t p, uint64_t *violations);

// Releases a string returned by this library. Null is accepted.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void spo_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPO_H */
