#ifndef POLYDYN_H
#define POLYDYN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Analysis mode for [`polydyn_analyze`].
 */
typedef enum {
  POLYDYN_MODE_ALGORITHM = 0,
  POLYDYN_MODE_SIMULATION = 1,
} PolydynMode;

/**
 * Status codes returned by every fallible function.
 */
typedef enum {
  POLYDYN_STATUS_OK = 0,
  POLYDYN_STATUS_NULL_ARGUMENT = 1,
  /**
   * Malformed text, including invalid UTF-8.
   */
  POLYDYN_STATUS_PARSE = 2,
  POLYDYN_STATUS_NOT_PRIME = 3,
  POLYDYN_STATUS_INVALID = 4,
  POLYDYN_STATUS_MISMATCH = 5,
  POLYDYN_STATUS_RESOURCE = 6,
  POLYDYN_STATUS_UNSUPPORTED = 7,
  POLYDYN_STATUS_OUT_OF_RANGE = 8,
  POLYDYN_STATUS_BUFFER_TOO_SMALL = 9,
  POLYDYN_STATUS_PANIC = 10,
} PolydynStatus;

/**
 * Steady states and limit cycles found by [`polydyn_analyze`].
 */
typedef struct PolydynAttractors PolydynAttractors;

/**
 * A parsed model document.
 */
typedef struct PolydynModel PolydynModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. The pointer stays valid until
 * the next failing call on the same thread.
 */
const char *polydyn_last_error(void);

/**
 * Parse a NUL-terminated model document. On success `*out` receives a new handle.
 *
 * # Safety
 * `text` must be NULL or a valid NUL-terminated string; `out` must be NULL or valid
 * for writes.
 */
PolydynStatus polydyn_model_parse(const char *text, PolydynModel **out);

/**
 * # Safety
 * `model` must be NULL or a handle from [`polydyn_model_parse`] not yet freed.
 */
void polydyn_model_free(PolydynModel *model);

/**
 * Number of variables, or 0 for NULL.
 *
 * # Safety
 * `model` must be NULL or a live handle.
 */
size_t polydyn_model_nvars(const PolydynModel *model);

/**
 * Field size (the number of states per variable), or 0 for NULL.
 *
 * # Safety
 * `model` must be NULL or a live handle.
 */
uint32_t polydyn_model_states(const PolydynModel *model);

/**
 * Canonical text of the model. Release it with [`polydyn_string_free`].
 *
 * # Safety
 * `model` must be NULL or a live handle.
 */
char *polydyn_model_to_string(const PolydynModel *model);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void polydyn_string_free(char *s);

/**
 * Find steady states and, for `max_cycle_length >= 2`, limit cycles up to that
 * length. `enumeration_cap` bounds simulation mode; 0 selects the default.
 *
 * # Safety
 * `model` must be NULL or a live handle; `out` must be NULL or valid for writes.
 */
PolydynStatus polydyn_analyze(const PolydynModel *model,
                              PolydynMode mode,
                              size_t max_cycle_length,
                              uint64_t enumeration_cap,
                              PolydynAttractors **out);

/**
 * # Safety
 * `result` must be NULL or a handle from [`polydyn_analyze`] not yet freed.
 */
void polydyn_attractors_free(PolydynAttractors *result);

/**
 * # Safety
 * `result` must be NULL or a live handle.
 */
size_t polydyn_attractors_nvars(const PolydynAttractors *result);

/**
 * # Safety
 * `result` must be NULL or a live handle.
 */
size_t polydyn_attractors_steady_count(const PolydynAttractors *result);

/**
 * # Safety
 * `result` must be NULL or a live handle.
 */
size_t polydyn_attractors_cycle_count(const PolydynAttractors *result);

/**
 * Length of limit cycle `index`, or 0 when out of range.
 *
 * # Safety
 * `result` must be NULL or a live handle.
 */
size_t polydyn_attractors_cycle_len(const PolydynAttractors *result, size_t index);

/**
 * Copy steady state `index` into `buf` (at least `nvars` values).
 *
 * # Safety
 * `result` must be NULL or a live handle; `buf` must be NULL or valid for `len` writes.
 */
PolydynStatus polydyn_attractors_steady_state(const PolydynAttractors *result,
                                              size_t index,
                                              uint32_t *buf,
                                              size_t len);

/**
 * Copy state `position` of limit cycle `index` into `buf` (at least `nvars` values).
 * Each cycle starts at its smallest state and follows the dynamics.
 *
 * # Safety
 * `result` must be NULL or a live handle; `buf` must be NULL or valid for `len` writes.
 */
PolydynStatus polydyn_attractors_cycle_state(const PolydynAttractors *result,
                                             size_t index,
                                             size_t position,
                                             uint32_t *buf,
                                             size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYDYN_H */
