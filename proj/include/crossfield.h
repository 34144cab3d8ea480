/* SPDX-License-Identifier: Apache-2.0
 *
 * crossfield: simulation and estimation workbench for THz UM-MIMO
 * array-of-subarrays channels — public C interface.
 *
 * The library core is C++; this header is the stable ABI surface. All state
 * lives behind opaque handles, every call returns a cf_status, and the last
 * failure message of the calling thread is available via cf_last_error().
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------ */

#ifndef CROSSFIELD_H
#define CROSSFIELD_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cf_status {
    CF_OK = 0,
    CF_ERR_INVALID_ARG = 1,   /* bad pointer / unknown key / malformed value */
    CF_ERR_VALIDATION = 2,    /* plan or config fails its invariants */
    CF_ERR_IO = 3,            /* file not found / unwritable output */
    CF_ERR_TRIAL_FAILURES = 4,/* sweep finished but some trials failed */
    CF_ERR_INTERNAL = 5
} cf_status;

typedef struct cf_plan cf_plan;             /* experiment plan (config + grids) */
typedef struct cf_thresholds cf_thresholds; /* calibrated model-selection thresholds */

/* Library version string, e.g. "0.1.0". */
const char* cf_version(void);

/* Message of the last failing call on this thread ("" if none). */
const char* cf_last_error(void);

/* --- plans ------------------------------------------------------------- */

/* Built-in small-geometry preset; runs everywhere in minutes. */
cf_status cf_plan_create_desk_scale(cf_plan** out);

/* Full-scale presets: "scenario1" or "scenario2". */
cf_status cf_plan_create_scenario(const char* name, cf_plan** out);

/* Plan from a key/value config file (system parameters only; grids keep the
 * preset defaults until overridden). */
cf_status cf_plan_create_from_file(const char* config_path, cf_plan** out);

/* Generic string setter. Keys: "seed", "trials", "out_dir", "methods"
 * (comma list), "distances" / "rotations_deg" / "snr_db" (comma lists),
 * "pin_codebooks" (0/1), "workers", "dump_dir",
 * "calibration_rotations", "calibration_trials", "calibration_snr_db",
 * "calibration_distances" (comma list),
 * "threshold_near_intermediate", "threshold_intermediate_far" (overrides),
 * plus every system config key from the config-file schema. */
cf_status cf_plan_set(cf_plan* plan, const char* key, const char* value);

void cf_plan_destroy(cf_plan* plan);

/* Conventional near/far boundaries of the plan's arrays:
 * subarray-level and full-array Rayleigh distances in meters. */
cf_status cf_plan_rayleigh_distances(const cf_plan* plan, double* subarray_level, double* full);

/* --- offline calibration ------------------------------------------------ */

/* Runs the threshold calibration and writes the thresholds JSON document. */
cf_status cf_calibrate(const cf_plan* plan, const char* thresholds_path);

cf_status cf_thresholds_load(const char* path, cf_thresholds** out);
cf_status cf_thresholds_values(const cf_thresholds* t, double* near_intermediate,
                               double* intermediate_far);
void cf_thresholds_destroy(cf_thresholds* t);

/* --- online sweep and reporting ----------------------------------------- */

/* Runs the estimation sweep; CSV reports are written under the plan's
 * out_dir. Returns CF_ERR_TRIAL_FAILURES when any trial failed (reports are
 * still written). */
cf_status cf_sweep(const cf_plan* plan, const cf_thresholds* thresholds);

/* Merges all summary.csv files under in_dir into pivot tables at out_path. */
cf_status cf_report(const char* in_dir, const char* out_path);

#ifdef __cplusplus
}
#endif

#endif /* CROSSFIELD_H */
