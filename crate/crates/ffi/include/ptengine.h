#ifndef PTENGINE_H
#define PTENGINE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define PT_MODE_EXACT 0

#define PT_MODE_PAPER 1

typedef enum PtStatus {
  PT_STATUS_OK = 0,
  PT_STATUS_NULL_POINTER = 1,
  PT_STATUS_INVALID_PARAMETER = 2,
  PT_STATUS_INFEASIBLE = 3,
  PT_STATUS_NO_CONVERGENCE = 4,
  PT_STATUS_BUFFER_TOO_SMALL = 5,
  PT_STATUS_INTERNAL = 6,
  PT_STATUS_PANIC = 7,
} PtStatus;

/**
 * Opaque handle to a cycle computed in both modes.
 */
typedef struct PtCycle PtCycle;

/**
 * Opaque well handle.
 */
typedef struct PtWell PtWell;

typedef struct PtSpectrumParams {
  double w;
  double d;
  double lambda;
  double mu;
  double dlambda_dl;
} PtSpectrumParams;

typedef struct PtCycleSummary {
  double efficiency;
  double net_work;
  double q_hot;
  double q_cold;
  double loop_integral;
  double corner_lengths[4];
  double corner_pressures[4];
  /**
   * Paper-mode efficiency minus exact-mode efficiency.
   */
  double efficiency_delta;
} PtCycleSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty if none.
 */
const char *pt_last_error_message(void);

/**
 * # Safety
 * `out` must be valid for one pointer write.
 */
enum PtStatus pt_well_new(double mass, double hbar, double v0, double width, struct PtWell **out);

/**
 * # Safety
 * `well` must come from `pt_well_new` and not be freed twice. Null is a no-op.
 */
void pt_well_free(struct PtWell *well);

/**
 * # Safety
 * `well` must be a live handle and `out` valid for one write.
 */
enum PtStatus pt_well_params(const struct PtWell *well, struct PtSpectrumParams *out);

/**
 * # Safety
 * `well` must be a live handle and `out` valid for one write.
 */
enum PtStatus pt_energy_level(const struct PtWell *well, int32_t n, double *out);

/**
 * `-dE_n/dL` with `lambda` following the width.
 *
 * # Safety
 * `well` must be a live handle and `out` valid for one write.
 */
enum PtStatus pt_pressure_exact(const struct PtWell *well, int32_t n, double *out);

/**
 * The frozen-`lambda` pressure formula; `n >= 1`.
 *
 * # Safety
 * `well` must be a live handle and `out` valid for one write.
 */
enum PtStatus pt_pressure_paper(const struct PtWell *well, int32_t n, double *out);

/**
 * Lowest `len` grid-oracle levels into `levels`, and their error
 * estimates into `errors` unless it is null. `grid_points == 0` picks the
 * default grid.
 *
 * # Safety
 * `levels` (and `errors` when non-null) must be valid for `len` writes.
 */
enum PtStatus pt_oracle_solve(const struct PtWell *well,
                              size_t grid_points,
                              double *levels,
                              double *errors,
                              size_t len);

/**
 * Joule-Brayton cycle from the well's width at pressure ratio `rp`.
 *
 * # Safety
 * `well` must be a live handle and `out` valid for one pointer write.
 */
enum PtStatus pt_cycle_jb(const struct PtWell *well,
                          double rp,
                          size_t samples,
                          struct PtCycle **out);

/**
 * Otto cycle between the well's width and `l3`.
 *
 * # Safety
 * `well` must be a live handle and `out` valid for one pointer write.
 */
enum PtStatus pt_cycle_otto(const struct PtWell *well,
                            double l3,
                            size_t samples,
                            struct PtCycle **out);

/**
 * Headline numbers for `mode` (`PT_MODE_EXACT` or `PT_MODE_PAPER`).
 *
 * # Safety
 * `cycle` must be a live handle and `out` valid for one write.
 */
enum PtStatus pt_cycle_summary(const struct PtCycle *cycle,
                               int32_t mode,
                               struct PtCycleSummary *out);

/**
 * Both modes and the discrepancy block as JSON, numbers rounded to
 * `precision` significant digits. Release with `pt_string_free`.
 *
 * # Safety
 * `cycle` must be a live handle and `out` valid for one pointer write.
 */
enum PtStatus pt_cycle_to_json(const struct PtCycle *cycle, uint32_t precision, char **out);

/**
 * # Safety
 * `s` must come from `pt_cycle_to_json` and not be freed twice. Null is a no-op.
 */
void pt_string_free(char *s);

/**
 * # Safety
 * `cycle` must come from `pt_cycle_jb`/`pt_cycle_otto` and not be freed twice. Null is a no-op.
 */
void pt_cycle_free(struct PtCycle *cycle);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PTENGINE_H */
