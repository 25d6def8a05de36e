#ifndef RDE_LAB_H
#define RDE_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum RdeStatus {
  RDE_STATUS_OK = 0,
  RDE_STATUS_NULL_POINTER = 1,
  RDE_STATUS_INVALID_ARGUMENT = 2,
  RDE_STATUS_PARSE_ERROR = 3,
  /**
   * The orbit is undefined at the requested index.
   */
  RDE_STATUS_SINGULAR = 4,
  RDE_STATUS_OUT_OF_RANGE = 5,
  RDE_STATUS_PANIC = 6,
} RdeStatus;

typedef enum RdeBackend {
  RDE_BACKEND_RATIONAL = 0,
  RDE_BACKEND_FLOAT = 1,
} RdeBackend;

typedef enum RdeWitness {
  RDE_WITNESS_NOT_FORBIDDEN = 0,
  RDE_WITNESS_ZERO_INITIAL = 1,
  RDE_WITNESS_KERNEL_ROOT = 2,
} RdeWitness;

typedef struct RdeOrbit RdeOrbit;

/**
 * Equation parameters plus initial window, stored exactly.
 */
typedef struct RdeProblem RdeProblem;

/**
 * Orbit terminator. `singular_step` is 0 when the orbit completed.
 */
typedef struct RdeTerminator {
  bool completed;
  uint64_t steps;
  uint64_t singular_step;
} RdeTerminator;

/**
 * Forbidden-set verdict. `index` is the zero window index for
 * `ZeroInitial` and the kernel root exponent `m` for `KernelRoot`.
 */
typedef struct RdeVerdict {
  enum RdeWitness witness;
  int64_t index;
} RdeVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *rde_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `text` must come from this library and not have been freed.
 */
void rde_string_free(char *text);

/**
 * Builds a problem from `k`, the coefficient `a` and a comma-separated
 * window `x_{-k},...,x_0`. Scalars accept `p/q`, integers and decimals.
 *
 * # Safety
 * `a` and `init` must be NUL-terminated strings; `out` must be writable.
 */
enum RdeStatus rde_problem_new(size_t k, const char *a, const char *init, struct RdeProblem **out);

/**
 * # Safety
 * `problem` must come from `rde_problem_new` and not have been freed.
 */
void rde_problem_free(struct RdeProblem *problem);

/**
 * Iterates `steps` times. A singular orbit is still a successful call;
 * inspect it with `rde_orbit_terminator`.
 *
 * # Safety
 * `problem` must be a live handle; `out` must be writable.
 */
enum RdeStatus rde_iterate(const struct RdeProblem *problem,
                           uint64_t steps,
                           enum RdeBackend backend,
                           struct RdeOrbit **out);

/**
 * # Safety
 * `orbit` must come from this library and not have been freed.
 */
void rde_orbit_free(struct RdeOrbit *orbit);

/**
 * Number of computed iterates `x_1, ...`. Returns 0 for NULL.
 *
 * # Safety
 * `orbit` must be NULL or a live handle.
 */
uint64_t rde_orbit_len(const struct RdeOrbit *orbit);

/**
 * # Safety
 * `orbit` must be a live handle; `out` must be writable.
 */
enum RdeStatus rde_orbit_terminator(const struct RdeOrbit *orbit, struct RdeTerminator *out);

/**
 * `x_n` as text for `-k <= n <= len`.
 *
 * # Safety
 * `orbit` must be a live handle; `out` must be writable.
 */
enum RdeStatus rde_orbit_value_text(const struct RdeOrbit *orbit, int64_t n, char **out);

/**
 * `x_n` rounded to double for `-k <= n <= len`.
 *
 * # Safety
 * `orbit` must be a live handle; `out` must be writable.
 */
enum RdeStatus rde_orbit_value_f64(const struct RdeOrbit *orbit, int64_t n, double *out);

/**
 * The orbit in the CLI's CSV layout.
 *
 * # Safety
 * `orbit` must be a live handle; `out` must be writable.
 */
enum RdeStatus rde_orbit_csv(const struct RdeOrbit *orbit, char **out);

/**
 * Exact closed-form value of `x_n` as text. Fails with `Singular` when
 * the orbit is undefined at or before `n`.
 *
 * # Safety
 * `problem` must be a live handle; `out` must be writable.
 */
enum RdeStatus rde_closed_form(const struct RdeProblem *problem, int64_t n, char **out);

/**
 * Exact forbidden-set membership, searching kernel roots up to `m_max`.
 *
 * # Safety
 * `problem` must be a live handle; `out` must be writable.
 */
enum RdeStatus rde_check(const struct RdeProblem *problem, uint64_t m_max, struct RdeVerdict *out);

/**
 * Analytic classification as a JSON object (same schema as the CLI).
 *
 * # Safety
 * `problem` must be a live handle; `out` must be writable.
 */
enum RdeStatus rde_classify_json(const struct RdeProblem *problem, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RDE_LAB_H */
