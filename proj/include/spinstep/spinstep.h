#ifndef SPINSTEP_H
#define SPINSTEP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SS_API __declspec(dllexport)
#else
#define SS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ss_status {
  SS_OK = 0,
  SS_ERR_INVALID_ARGUMENT = 1,
  SS_ERR_SINGULAR_MATRIX = 2,
  SS_ERR_THRESHOLD_DEGENERACY = 3,
  SS_ERR_MASS_POLE = 4,
  SS_ERR_UNITARITY_VIOLATION = 5,
  SS_ERR_CONVENTION_MISMATCH = 6,
  SS_ERR_UNSUPPORTED = 7,
  SS_ERR_IO = 8,
  SS_ERR_INTERNAL = 9
} ss_status;

typedef enum ss_rep { SS_REP1 = 0, SS_REP2 = 1 } ss_rep;
typedef enum ss_spin { SS_SPIN_UP = 0, SS_SPIN_DOWN = 1 } ss_spin;
typedef enum ss_spacing { SS_SPACING_LINEAR = 0, SS_SPACING_LOG = 1 } ss_spacing;
typedef enum ss_regime { SS_REGIME_PROPAGATING = 0, SS_REGIME_EVANESCENT = 1, SS_REGIME_AUTO = 2 } ss_regime;
typedef enum ss_format { SS_FORMAT_CSV = 0, SS_FORMAT_JSON = 1, SS_FORMAT_SVG = 2 } ss_format;

/* Message for the most recent failure on the calling thread; empty after success. */
SS_API const char* ss_last_error(void);
SS_API const char* ss_status_name(ss_status status);
/* Releases strings returned through char** out-parameters. */
SS_API void ss_string_free(char* s);

/* ---- check reports ---- */

typedef struct ss_report ss_report;

/* Algebra, eigensystem and 3D identity suite. A nonzero eta_perturbation corrupts
   entry (0, 1) of eta before the algebra checks. */
SS_API ss_status ss_verify(ss_rep rep, double eta_perturbation, ss_report** out);

/* 3D continuity identities, squared operator check, and the shell determinant test
   over `directions` random directions drawn from `seed`. */
SS_API ss_status ss_threed_check(ss_rep rep, int directions, uint64_t seed, ss_report** out);

SS_API int ss_report_passed(const ss_report* report);
SS_API size_t ss_report_size(const ss_report* report);
/* name stays valid until the report is freed. */
SS_API ss_status ss_report_check(const ss_report* report, size_t index, const char** name,
                                 double* max_deviation, int* pass);
/* [{"check_name", "max_deviation", "pass"}, ...] */
SS_API ss_status ss_report_to_json(const ss_report* report, char** out);
SS_API void ss_report_free(ss_report* report);

/* ---- single-point queries ---- */

/* One JSON object with the coefficients, the current densities, the continuity
   residual, and t_qm / r_qm above the step. Under SS_REP2 the object reports the
   spin-summed transmission and reflection of the numeric-eigenspace solve instead. */
SS_API ss_status ss_coefficients_json(double energy, double potential, double mass, ss_spin spin,
                                      ss_rep rep, char** out);

/* Bilinear and closed-form current densities with their conservation sum. */
SS_API ss_status ss_currents_json(double energy, double potential, double mass, ss_spin spin,
                                  char** out);

/* ---- sweeps ---- */

typedef struct ss_sweep_spec {
  double potential;
  double mass;
  double e_over_v0_min;
  double e_over_v0_max;
  int points;
  ss_spacing spacing;
  ss_regime regime;
  ss_spin spin;
} ss_sweep_spec;

typedef struct ss_sweep_row {
  int evanescent; /* r1, r2 hold R1', R2' when set; t1, t2, t_qm, r_qm are then zero */
  double energy;
  double e_over_v0;
  double t1;
  double t2;
  double r1;
  double r2;
  double sum;
  double t_qm;
  double r_qm;
} ss_sweep_row;

typedef struct ss_sweep ss_sweep;

SS_API void ss_sweep_spec_default(ss_sweep_spec* spec);
SS_API ss_status ss_sweep_run(const ss_sweep_spec* spec, ss_sweep** out);
SS_API size_t ss_sweep_row_count(const ss_sweep* sweep);
SS_API int ss_sweep_skipped(const ss_sweep* sweep);
SS_API ss_status ss_sweep_row_at(const ss_sweep* sweep, size_t index, ss_sweep_row* out);
/* columns: comma-separated SVG column names, or NULL for the defaults. On success
   *written receives the output paths, one per line. */
SS_API ss_status ss_sweep_write(const ss_sweep* sweep, const char* path, ss_format format,
                                const char* columns, char** written);
SS_API void ss_sweep_free(ss_sweep* sweep);

#ifdef __cplusplus
}
#endif

#endif /* SPINSTEP_H */
