#ifndef REPVAR_H
#define REPVAR_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum RvStatus {
  RV_STATUS_OK = 0,
  RV_STATUS_NULL_POINTER = 1,
  RV_STATUS_INVALID_ARGUMENT = 2,
  RV_STATUS_BUDGET_EXCEEDED = 3,
  RV_STATUS_NUMERICAL = 4,
  RV_STATUS_NO_SUCH_CLASS = 5,
  RV_STATUS_OVERFLOW = 6,
  RV_STATUS_INTERNAL = 7,
} RvStatus;

/**
 * `SL_n` or `GL_n`.
 */
typedef enum RvGroupKind {
  RV_GROUP_KIND_SL = 0,
  RV_GROUP_KIND_GL = 1,
} RvGroupKind;

/**
 * Opaque enumerated matrix group.
 */
typedef struct RvGroup RvGroup;

/**
 * Opaque certified character table.
 */
typedef struct RvTable RvTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error of this thread into `buf` (NUL terminated,
 * truncated to `len`) and returns the full message length.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t rv_last_error_message(char *buf, size_t len);

/**
 * Enumerates the group of `n x n` matrices over `F_{p^m}`, refusing
 * groups larger than `max_order`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RvStatus rv_group_new(enum RvGroupKind kind,
                           size_t n,
                           uint64_t p,
                           uint32_t m,
                           uint64_t max_order,
                           struct RvGroup **out);

/**
 * # Safety
 * `group` must come from `rv_group_new` and not be used afterwards.
 */
void rv_group_free(struct RvGroup *group);

/**
 * # Safety
 * Pointers must be valid.
 */
enum RvStatus rv_group_order(const struct RvGroup *group, uint64_t *out);

/**
 * # Safety
 * Pointers must be valid.
 */
enum RvStatus rv_group_class_count(const struct RvGroup *group, size_t *out);

/**
 * Size of conjugacy class `class`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RvStatus rv_group_class_size(const struct RvGroup *group, size_t class_, uint64_t *out);

/**
 * Index of the identity class.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RvStatus rv_group_identity_class(const struct RvGroup *group, size_t *out);

/**
 * Computes and certifies the character table; the table keeps the group
 * alive on its own.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RvStatus rv_table_new(const struct RvGroup *group, uint64_t seed, struct RvTable **out);

/**
 * # Safety
 * `table` must come from `rv_table_new` and not be used afterwards.
 */
void rv_table_free(struct RvTable *table);

/**
 * # Safety
 * Pointers must be valid.
 */
enum RvStatus rv_table_degree(const struct RvTable *table, size_t chi, uint64_t *out);

/**
 * Value of character `chi` on class `class` as real and imaginary parts.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RvStatus rv_table_value(const struct RvTable *table,
                             size_t chi,
                             size_t class_,
                             double *re,
                             double *im);

/**
 * Pairs `(x, y)` with `[x, y]` equal to a fixed element of `class`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RvStatus rv_commutator_count(const struct RvTable *table, size_t class_, uint64_t *out);

/**
 * Homomorphisms from the genus-`genus` surface group.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RvStatus rv_surface_count(const struct RvTable *table, size_t genus, uint64_t *out);

/**
 * Tuples with `x_1^2 ... x_m^2` equal to a fixed element of `class`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum RvStatus rv_squares_count(const struct RvTable *table, size_t m, size_t class_, uint64_t *out);

/**
 * Quadruples from four classes whose product is the identity.
 *
 * # Safety
 * `classes` must point to four indices; other pointers must be valid.
 */
enum RvStatus rv_quad_count(const struct RvTable *table, const size_t *classes, uint64_t *out);

/**
 * Number of `w`-dimensional subspaces of `F_q^a`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RvStatus rv_gaussian_binomial(uint64_t a, uint64_t w, uint64_t q, uint64_t *out);

/**
 * Size of `B_k` over `F_l`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RvStatus rv_torsion_bk_count(uint64_t l, size_t k, uint64_t *out);

/**
 * Size of `A_n` over `F_l`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum RvStatus rv_torsion_an_count(uint64_t l, uint64_t n, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REPVAR_H */
