#ifndef WNALG_H
#define WNALG_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum WnalgStatus {
  WNALG_STATUS_OK = 0,
  WNALG_STATUS_NULL_ARGUMENT = 1,
  WNALG_STATUS_INVALID_UTF8 = 2,
  WNALG_STATUS_PARSE_ERROR = 3,
  WNALG_STATUS_INVALID_ARGUMENT = 4,
  WNALG_STATUS_LIMIT_EXCEEDED = 5,
  WNALG_STATUS_COMPUTATION_ERROR = 6,
  WNALG_STATUS_PANIC = 7,
} WnalgStatus;

/**
 * Opaque list of identities.
 */
typedef struct WnalgIdentitySet WnalgIdentitySet;

/**
 * Opaque polynomial over the free magma.
 */
typedef struct WnalgPoly WnalgPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call into the library on this
 * thread.
 */
const char *wnalg_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void wnalg_string_free(char *s);

/**
 * Parses an expression over the rationals (`prime == 0`) or GF(prime).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum WnalgStatus wnalg_poly_parse(const char *text, uint64_t prime, struct WnalgPoly **out);

/**
 * Parses an identity `<expr over v1, v2, ...> = 0`.
 *
 * # Safety
 * As for [`wnalg_poly_parse`].
 */
enum WnalgStatus wnalg_identity_parse(const char *text, struct WnalgPoly **out);

/**
 * # Safety
 * `p` must come from this library and must not be used afterwards.
 */
void wnalg_poly_free(struct WnalgPoly *p);

/**
 * Canonical text of a polynomial.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum WnalgStatus wnalg_poly_render(const struct WnalgPoly *p, char **out);

/**
 * Normal form of `p` in the algebra `"wlc"` or `"wnov"`.
 *
 * # Safety
 * `algebra` must be a NUL-terminated string, `p` a live handle and `out`
 * writable.
 */
enum WnalgStatus wnalg_normalize(const char *algebra, const struct WnalgPoly *p, char **out);

/**
 * A preset such as `"wnov2"`, a `+` union like `"wlc2+flex"`, or a file path.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum WnalgStatus wnalg_identity_set_preset(const char *name, struct WnalgIdentitySet **out);

/**
 * An identity set from text: one identity `<expr> = 0` per line, `#`
 * comments.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum WnalgStatus wnalg_identity_set_parse(const char *text, struct WnalgIdentitySet **out);

/**
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void wnalg_identity_set_free(struct WnalgIdentitySet *s);

/**
 * Dimension of the component with multiplicities `m[0]` of x1, `m[1]` of
 * x2, and so on, over Q (`prime == 0`) or GF(prime).
 *
 * # Safety
 * `set` must be a live handle, `m` must point to `len` integers and `out`
 * must be writable.
 */
enum WnalgStatus wnalg_quotient_dimension(const struct WnalgIdentitySet *set,
                                          const uint32_t *m,
                                          size_t len,
                                          uint64_t prime,
                                          size_t *out);

/**
 * Whether the homogeneous polynomial `p` lies in the T-ideal of `set`.
 * Variables are read as generators.
 *
 * # Safety
 * `set` and `p` must be live handles; `out` must be writable.
 */
enum WnalgStatus wnalg_membership(const struct WnalgIdentitySet *set,
                                  const struct WnalgPoly *p,
                                  uint64_t prime,
                                  bool *out);

/**
 * Nilpotency classification of a multilinear polynomial on generators, as
 * JSON. With `verify` set, bounds up to the oracle cap are rechecked over
 * GF(1009) and reported under `"oracle"`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum WnalgStatus wnalg_classify(const struct WnalgPoly *p, bool verify, char **out);

/**
 * Substitution check of an identity in `"wlc"` or `"wnov"` over generators
 * x1..x5 up to result degree `max_degree`, as JSON.
 *
 * # Safety
 * `algebra` must be a NUL-terminated string, `identity` a live handle and
 * `out` writable.
 */
enum WnalgStatus wnalg_check_identity(const char *algebra,
                                      const struct WnalgPoly *identity,
                                      uint32_t max_degree,
                                      char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WNALG_H */
