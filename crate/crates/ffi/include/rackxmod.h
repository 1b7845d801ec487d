#ifndef RACKXMOD_H
#define RACKXMOD_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RxStatus {
  RX_STATUS_OK = 0,
  RX_STATUS_NULL_POINTER = 1,
  RX_STATUS_INVALID_STRING = 2,
  /**
   * The file could not be read or parsed.
   */
  RX_STATUS_PARSE = 3,
  /**
   * A structure failed its validator.
   */
  RX_STATUS_AXIOM = 4,
  /**
   * The document has a different kind than the call expects.
   */
  RX_STATUS_KIND_MISMATCH = 5,
  /**
   * A verifier ran and reported a failure.
   */
  RX_STATUS_VERIFICATION_FAILED = 6,
  RX_STATUS_INDEX_OUT_OF_RANGE = 7,
  RX_STATUS_PANIC = 8,
} RxStatus;

typedef struct RxGroup RxGroup;

typedef struct RxGroupHom RxGroupHom;

typedef struct RxGroupXMod RxGroupXMod;

typedef struct RxRack RxRack;

typedef struct RxRackHom RxRackHom;

typedef struct RxXMod RxXMod;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or null. The pointer
 * stays valid until the next failing call on this thread.
 */
const char *rx_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *rx_version(void);

/**
 * Releases a string returned by this library.
 */
void rx_string_free(char *s);

/**
 * Releases a handle; null is ignored.
 */
void rx_rack_free(struct RxRack *handle);

/**
 * Releases a handle; null is ignored.
 */
void rx_group_free(struct RxGroup *handle);

/**
 * Releases a handle; null is ignored.
 */
void rx_rack_hom_free(struct RxRackHom *handle);

/**
 * Releases a handle; null is ignored.
 */
void rx_group_hom_free(struct RxGroupHom *handle);

/**
 * Releases a handle; null is ignored.
 */
void rx_xmod_free(struct RxXMod *handle);

/**
 * Releases a handle; null is ignored.
 */
void rx_group_xmod_free(struct RxGroupXMod *handle);

/**
 * Loads and validates a `rack` document.
 */
enum RxStatus rx_rack_load(const char *path, struct RxRack **out);

/**
 * Loads and validates a `group` document.
 */
enum RxStatus rx_group_load(const char *path, struct RxGroup **out);

/**
 * Loads and validates a `hom` document between racks.
 */
enum RxStatus rx_rack_hom_load(const char *path, struct RxRackHom **out);

/**
 * Loads and validates a `hom` document between groups.
 */
enum RxStatus rx_group_hom_load(const char *path, struct RxGroupHom **out);

/**
 * Loads and validates a `rack-xmod` document.
 */
enum RxStatus rx_xmod_load(const char *path, struct RxXMod **out);

/**
 * Loads and validates a `group-xmod` document.
 */
enum RxStatus rx_group_xmod_load(const char *path, struct RxGroupXMod **out);

/**
 * Validates a row-major `size * size` table as a pointed rack.
 */
enum RxStatus rx_rack_from_table(size_t size,
                                 const size_t *table,
                                 size_t basepoint,
                                 struct RxRack **out);

/**
 * Validates a row-major `size * size` multiplication table.
 */
enum RxStatus rx_group_from_table(size_t size,
                                  const size_t *table,
                                  size_t identity,
                                  struct RxGroup **out);

/**
 * Number of elements; 0 for a null handle.
 */
size_t rx_rack_size(const struct RxRack *rack);

enum RxStatus rx_rack_basepoint(const struct RxRack *rack, size_t *out);

/**
 * `a ◁ b`.
 */
enum RxStatus rx_rack_op(const struct RxRack *rack, size_t a, size_t b, size_t *out);

/**
 * Number of orbits of the rack.
 */
enum RxStatus rx_rack_orbit_count(const struct RxRack *rack, size_t *out);

/**
 * Canonical TOML text of a rack; release with [`rx_string_free`].
 */
enum RxStatus rx_rack_to_toml(const struct RxRack *rack, char **out);

size_t rx_group_size(const struct RxGroup *group);

/**
 * Conjugation rack of a group.
 */
enum RxStatus rx_conj_rack(const struct RxGroup *group, struct RxRack **out);

size_t rx_xmod_domain_size(const struct RxXMod *xmod);

size_t rx_xmod_codomain_size(const struct RxXMod *xmod);

/**
 * Pullback of a crossed module of racks along a rack hom into its
 * codomain.
 */
enum RxStatus rx_pullback(const struct RxXMod *xmod,
                          const struct RxRackHom *phi,
                          struct RxXMod **out);

/**
 * Certifies the universal property of the pullback against the built-in
 * test morphisms, writing how many were certified. Returns
 * `RX_STATUS_VERIFICATION_FAILED` if any test fails.
 */
enum RxStatus rx_certify_universal(const struct RxXMod *xmod,
                                   const struct RxRackHom *phi,
                                   size_t *certified);

/**
 * Sizes of `Hom(X, Conj(G))` and of the relator-satisfying assignments
 * for `As(X)` in `G`.
 */
enum RxStatus rx_adjunction_counts(const struct RxRack *rack,
                                   const struct RxGroup *group,
                                   size_t *rack_homs,
                                   size_t *group_homs);

/**
 * Checks that Conj of the group pullback is isomorphic to the pullback of
 * Conj, writing the carrier size.
 */
enum RxStatus rx_conj_preserves(const struct RxGroupXMod *xmod,
                                const struct RxGroupHom *phi,
                                size_t *carrier);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RACKXMOD_H */
