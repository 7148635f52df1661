/* C interface for the pdsteady steady-state transport solver. */

#ifndef PDSTEADY_H
#define PDSTEADY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Void-volume closure selector.
 */
typedef enum PdsteadyCase {
  /**
   * nu(x) = (nu_min + nu_max) / 2
   */
  PdsteadyCase_ConstantNu = 0,
  /**
   * nu(x) = nu_max - (nu_max - nu_min) x
   */
  PdsteadyCase_LinearNu = 1,
} PdsteadyCase;

/**
 * Solution column selector for the accessor functions.
 */
typedef enum PdsteadyColumn {
  PdsteadyColumn_X = 0,
  /**
   * Nondimensional glucose
   */
  PdsteadyColumn_U = 1,
  /**
   * Nondimensional albumin
   */
  PdsteadyColumn_W = 2,
  /**
   * Nondimensional pressure
   */
  PdsteadyColumn_P = 3,
  /**
   * Dimensional glucose, mmol/mL
   */
  PdsteadyColumn_CG = 4,
  /**
   * Dimensional albumin, mmol/mL
   */
  PdsteadyColumn_CA = 5,
  /**
   * Dimensional pressure, mmHg
   */
  PdsteadyColumn_PDim = 6,
  /**
   * Fluid flux density from blood, mL/(min cm^3)
   */
  PdsteadyColumn_QU = 7,
  /**
   * Fluid flux across tissue, mL/(min cm^2)
   */
  PdsteadyColumn_JU = 8,
} PdsteadyColumn;

/**
 * Status codes returned by every fallible call.
 */
typedef enum PdsteadyStatus {
  PdsteadyStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  PdsteadyStatus_NullPointer = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  PdsteadyStatus_InvalidUtf8 = 2,
  /**
   * The named parameter does not exist.
   */
  PdsteadyStatus_UnknownField = 3,
  /**
   * Parameter values failed validation.
   */
  PdsteadyStatus_InvalidParams = 4,
  /**
   * Config file could not be read or parsed.
   */
  PdsteadyStatus_ConfigError = 5,
  /**
   * The steady-state solve failed.
   */
  PdsteadyStatus_SolveFailed = 6,
  /**
   * Index or buffer length out of range.
   */
  PdsteadyStatus_OutOfRange = 7,
} PdsteadyStatus;

/**
 * Opaque parameter-set handle.
 */
typedef struct PdsteadyParams PdsteadyParams;

/**
 * Opaque solution handle.
 */
typedef struct PdsteadySolution PdsteadySolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message for this thread, or an empty string. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *pdsteady_last_error(void);

/**
 * New handle holding the bundled clinical reference parameter set.
 */
struct PdsteadyParams *pdsteady_params_default(void);

/**
 * Load parameters from a TOML config file.
 *
 * # Safety
 * `path` must be a valid NUL-terminated string; `out` must be valid for a
 * single pointer write.
 */
enum PdsteadyStatus pdsteady_params_load(const char *path, struct PdsteadyParams **out);

/**
 * Set one parameter by its config key (e.g. "pa_a").
 *
 * # Safety
 * `params` must be a live handle; `name` a valid NUL-terminated string.
 */
enum PdsteadyStatus pdsteady_params_set(struct PdsteadyParams *params,
                                        const char *name,
                                        double value);

/**
 * Read one parameter by its config key.
 *
 * # Safety
 * `params` must be a live handle; `name` valid NUL-terminated; `out`
 * valid for one f64 write.
 */
enum PdsteadyStatus pdsteady_params_get(const struct PdsteadyParams *params,
                                        const char *name,
                                        double *out);

/**
 * Free a parameter handle. Null is a no-op.
 *
 * # Safety
 * `params` must have come from this library and not been freed before.
 */
void pdsteady_params_free(struct PdsteadyParams *params);

/**
 * Solve the steady state on `nodes` grid points (0 selects the default
 * resolution) and hand back a solution handle.
 *
 * # Safety
 * `params` must be a live handle; `out` valid for a single pointer write.
 */
enum PdsteadyStatus pdsteady_solve(const struct PdsteadyParams *params,
                                   enum PdsteadyCase case_,
                                   uintptr_t nodes,
                                   struct PdsteadySolution **out);

/**
 * Number of grid points in a solution; 0 for a null handle.
 *
 * # Safety
 * `solution` must be a live handle or null.
 */
uintptr_t pdsteady_solution_len(const struct PdsteadySolution *solution);

/**
 * Read one value of a solution column.
 *
 * # Safety
 * `solution` must be a live handle; `out` valid for one f64 write.
 */
enum PdsteadyStatus pdsteady_solution_value(const struct PdsteadySolution *solution,
                                            enum PdsteadyColumn column,
                                            uintptr_t index,
                                            double *out);

/**
 * Copy an entire solution column into a caller buffer of length `len`,
 * which must equal the grid length.
 *
 * # Safety
 * `solution` must be a live handle; `buffer` valid for `len` f64 writes.
 */
enum PdsteadyStatus pdsteady_solution_column(const struct PdsteadySolution *solution,
                                             enum PdsteadyColumn column,
                                             double *buffer,
                                             uintptr_t len);

/**
 * Signed total cavity outflow (mL/min) of a solution; its magnitude is
 * the absolute value.
 *
 * # Safety
 * `solution` must be a live handle; `out` valid for one f64 write.
 */
enum PdsteadyStatus pdsteady_solution_outflow(const struct PdsteadySolution *solution, double *out);

/**
 * Number of warnings attached to a solution (e.g. negative albumin).
 *
 * # Safety
 * `solution` must be a live handle or null.
 */
uintptr_t pdsteady_solution_warning_count(const struct PdsteadySolution *solution);

/**
 * Max scaled residuals of the dimensional steady balances, written as
 * (fluid, glucose, albumin) into a 3-element buffer.
 *
 * # Safety
 * `solution` must be a live handle; `out3` valid for three f64 writes.
 */
enum PdsteadyStatus pdsteady_solution_residuals(const struct PdsteadySolution *solution,
                                                double *out3);

/**
 * Write the profile CSV (columns x,u,w,p,C_G,C_A,P,q_U,j_U) to a file.
 *
 * # Safety
 * `solution` must be a live handle; `path` valid NUL-terminated.
 */
enum PdsteadyStatus pdsteady_solution_write_csv(const struct PdsteadySolution *solution,
                                                const char *path);

/**
 * Boundary flux density q_U(0) of a solution, mL/(min cm^3).
 *
 * # Safety
 * `solution` must be a live handle; `out` valid for one f64 write.
 */
enum PdsteadyStatus pdsteady_solution_q0(const struct PdsteadySolution *solution, double *out);

/**
 * Free a solution handle. Null is a no-op.
 *
 * # Safety
 * `solution` must have come from this library and not been freed before.
 */
void pdsteady_solution_free(struct PdsteadySolution *solution);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PDSTEADY_H */
