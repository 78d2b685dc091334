#ifndef ENTROPIC_H
#define ENTROPIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call. `EM_STATUS_FALSE` is a successful "no" answer from a
 * predicate.
 */
typedef enum EmStatus {
  EM_STATUS_OK = 0,
  EM_STATUS_FALSE = 1,
  EM_STATUS_INVALID_INPUT = 2,
  EM_STATUS_NULL_POINTER = 3,
  EM_STATUS_INTERNAL = 4,
  EM_STATUS_NOT_ENTROPIC = 5,
  EM_STATUS_SIZE_LIMIT = 6,
  EM_STATUS_BUFFER_TOO_SMALL = 7,
} EmStatus;

/**
 * A signed graph with ordered edges.
 */
typedef struct EmGraph EmGraph;

/**
 * An unoriented link diagram.
 */
typedef struct EmLink EmLink;

/**
 * A finite magma, optionally carrying an eventually periodic sequence.
 */
typedef struct EmMagma EmMagma;

/**
 * A signed graph with a rotation system.
 */
typedef struct EmPlaneGraph EmPlaneGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `cap` bytes) and returns the full message length.
 *
 * # Safety
 * `buf` must be null or point to `cap` writable bytes.
 */
size_t em_last_error_message(char *buf, size_t cap);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void em_string_free(char *s);

/**
 * Builds a magma of the given order from a row-major table of
 * `order * order` entries in `1..=order`.
 *
 * # Safety
 * `table` must point to `order * order` values; `out` must be writable.
 */
enum EmStatus em_magma_new(size_t order, const uint32_t *table, struct EmMagma **out);

/**
 * Parses a magma file; a `seq` line, if present, becomes the sequence.
 *
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum EmStatus em_magma_parse(const char *src, struct EmMagma **out);

/**
 * The affine magma `a*b = t a + s b + a0` on `Z_modulus`, with `k` stored as
 * element `k + 1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum EmStatus em_magma_affine(size_t modulus,
                              int64_t t,
                              int64_t s,
                              int64_t a0,
                              struct EmMagma **out);

/**
 * # Safety
 * `m` must be null or a handle from this library, not yet freed.
 */
void em_magma_free(struct EmMagma *m);

/**
 * # Safety
 * `m` must be a valid handle; `out` must be writable.
 */
enum EmStatus em_magma_order(const struct EmMagma *m, size_t *out);

/**
 * # Safety
 * `m` must be a valid handle; `out` must be writable.
 */
enum EmStatus em_magma_op(const struct EmMagma *m, uint32_t a, uint32_t b, uint32_t *out);

/**
 * Writes the magma (and its sequence) in the text file format.
 *
 * # Safety
 * `m` must be a valid handle; `out` must be writable.
 */
enum EmStatus em_magma_to_string(const struct EmMagma *m, char **out);

/**
 * Sets the sequence `preperiod` followed by `period` repeated forever.
 *
 * # Safety
 * `m` must be a valid handle; the arrays must hold the given lengths.
 */
enum EmStatus em_magma_set_sequence(struct EmMagma *m,
                                    const uint32_t *preperiod,
                                    size_t preperiod_len,
                                    const uint32_t *period,
                                    size_t period_len);

/**
 * `EM_STATUS_OK` if the magma is entropic, `EM_STATUS_FALSE` otherwise.
 *
 * # Safety
 * `m` must be a valid handle.
 */
enum EmStatus em_magma_is_entropic(const struct EmMagma *m);

/**
 * Checks the bracket conditions against the magma's sequence.
 *
 * # Safety
 * `m` must be a valid handle.
 */
enum EmStatus em_magma_is_bracket(const struct EmMagma *m);

/**
 * Checks the 4-move condition against the magma's sequence.
 *
 * # Safety
 * `m` must be a valid handle.
 */
enum EmStatus em_magma_check_fourmove(const struct EmMagma *m);

/**
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum EmStatus em_link_parse(const char *src, struct EmLink **out);

/**
 * # Safety
 * `d` must be null or a handle from this library, not yet freed.
 */
void em_link_free(struct EmLink *d);

/**
 * # Safety
 * `d` must be a valid handle; `out` must be writable.
 */
enum EmStatus em_link_crossing_count(const struct EmLink *d, size_t *out);

/**
 * # Safety
 * `d` must be a valid handle; `out` must be writable.
 */
enum EmStatus em_link_to_string(const struct EmLink *d, char **out);

/**
 * Bracket value of the diagram in the magma, using the magma's sequence.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum EmStatus em_bracket(const struct EmMagma *m, const struct EmLink *d, uint32_t *out);

/**
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum EmStatus em_graph_parse(const char *src, struct EmGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library, not yet freed.
 */
void em_graph_free(struct EmGraph *g);

/**
 * Graph value in the magma, using the magma's sequence and edge order.
 *
 * # Safety
 * Handles must be valid; `out` must be writable.
 */
enum EmStatus em_tutte_value(const struct EmMagma *m, const struct EmGraph *g, uint32_t *out);

/**
 * # Safety
 * `src` must be a NUL-terminated string; `out` must be writable.
 */
enum EmStatus em_plane_graph_parse(const char *src, struct EmPlaneGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library, not yet freed.
 */
void em_plane_graph_free(struct EmPlaneGraph *g);

/**
 * The medial link diagram of a plane graph.
 *
 * # Safety
 * `g` must be a valid handle; `out` must be writable.
 */
enum EmStatus em_plane_graph_medial_link(const struct EmPlaneGraph *g, struct EmLink **out);

/**
 * Compares the graph value with the bracket of the medial diagram.
 * Returns `EM_STATUS_FALSE` on disagreement; both values are written
 * whenever they were computed.
 *
 * # Safety
 * Handles must be valid; the outputs must be writable.
 */
enum EmStatus em_cross_check(const struct EmMagma *m,
                             const struct EmPlaneGraph *g,
                             uint32_t *tutte_out,
                             uint32_t *bracket_out);

/**
 * `H_n` of the magma over the integers (`prime == 0`) or over `Z_prime`.
 *
 * `nu` and `nu_next` choose the coefficient vectors at levels `n` and
 * `n + 1`; pass null for the default. The rank goes to `betti_out`, the
 * invariant factors to `torsion` (capacity `torsion_cap`) and their count to
 * `torsion_len`. If the buffer is too small the status is
 * `EM_STATUS_BUFFER_TOO_SMALL` and `torsion_len` holds the needed size.
 *
 * # Safety
 * `m` must be a valid handle; arrays must hold the given lengths.
 */
enum EmStatus em_homology(const struct EmMagma *m,
                          size_t n,
                          const int64_t *nu,
                          size_t nu_len,
                          const int64_t *nu_next,
                          size_t nu_next_len,
                          uint64_t prime,
                          size_t *betti_out,
                          uint64_t *torsion,
                          size_t torsion_cap,
                          size_t *torsion_len);

/**
 * `Ĥ_n` of the family `(magma, left projection, right projection)` with
 * signs `+, -, -`; outputs as in [`em_homology`].
 *
 * # Safety
 * `m` must be a valid handle; arrays must hold the given lengths.
 */
enum EmStatus em_hat_homology(const struct EmMagma *m,
                              size_t n,
                              const int64_t *nu_next,
                              size_t nu_next_len,
                              size_t *betti_out,
                              uint64_t *torsion,
                              size_t torsion_cap,
                              size_t *torsion_len);

/**
 * Second cohomology of the magma with coefficients in `Z_modulus` under the
 * action `a*b = t a + s b + a0`; outputs as in [`em_homology`].
 *
 * # Safety
 * `m` must be a valid handle; the outputs must be writable.
 */
enum EmStatus em_second_cohomology(const struct EmMagma *m,
                                   uint64_t modulus,
                                   int64_t t,
                                   int64_t s,
                                   int64_t a0,
                                   size_t *betti_out,
                                   uint64_t *torsion,
                                   size_t torsion_cap,
                                   size_t *torsion_len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENTROPIC_H */
