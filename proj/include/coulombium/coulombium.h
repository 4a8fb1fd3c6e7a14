/* C interface to the coulombium library: opaque handles, status codes. */
#ifndef COULOMBIUM_H
#define COULOMBIUM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef COULOMBIUM_BUILDING
#    define COULOMBIUM_API __declspec(dllexport)
#  else
#    define COULOMBIUM_API __declspec(dllimport)
#  endif
#else
#  define COULOMBIUM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define COULOMBIUM_SCHEMA_VERSION 1

typedef enum cb_status {
  CB_OK = 0,
  CB_ERR_INVALID_ARGUMENT = 1,
  CB_ERR_NOT_NORMALIZED = 2,
  CB_ERR_NON_ZERO_MEAN = 3,
  CB_ERR_NEGATIVE_INPUT = 4,
  CB_ERR_UNDER_RESOLVED = 5,
  CB_ERR_GRID_TOO_SMALL = 6,
  CB_ERR_NO_CONVERGENCE = 7,
  CB_ERR_MAX_ITER_EXCEEDED = 8,
  CB_ERR_DIVERGING_ENERGY = 9,
  CB_ERR_LINE_SEARCH_STALLED = 10,
  CB_ERR_IO = 11,
  CB_ERR_INTERNAL = 12
} cb_status;

typedef enum cb_method { CB_METHOD_SCF = 0, CB_METHOD_GRADIENT = 1 } cb_method;

typedef enum cb_preconditioner {
  CB_PRECOND_NONE = 0,
  CB_PRECOND_HAMILTONIAN = 1
} cb_preconditioner;

typedef enum cb_initial_guess {
  CB_GUESS_GAUSSIAN = 0,
  CB_GUESS_RANDOM = 1
} cb_initial_guess;

typedef struct cb_solver_config {
  double half_width;
  size_t n_points;
  double scf_damping;
  double tol_energy;
  double tol_residual;
  int max_iter;
  double gd_step;
  uint64_t seed;
  cb_preconditioner preconditioner;
  cb_initial_guess initial_guess;
  int include_background_self;
} cb_solver_config;

typedef struct cb_summary {
  double epsilon;
  double kinetic;
  double coulomb;
  double background_const;
  double total;
  double residual;
  double moment1;
  double tail_mass;     /* mass outside [-0.9 L, 0.9 L] */
  double boundary_flux; /* [V V'] between the grid ends */
  int iterations;
  int converged;
  size_t n_points;
} cb_summary;

typedef struct cb_background cb_background;
typedef struct cb_ground_state cb_ground_state;

COULOMBIUM_API const char* cb_version(void);
COULOMBIUM_API const char* cb_status_string(cb_status status);

/* Message of the last failed call on the calling thread; never NULL. */
COULOMBIUM_API const char* cb_last_error(void);

COULOMBIUM_API void cb_solver_config_init(cb_solver_config* cfg);

COULOMBIUM_API cb_status cb_background_point(double z, cb_background** out);
COULOMBIUM_API cb_status cb_background_from_samples(double half_width, size_t n_points,
                                                    const double* rho, cb_background** out);
COULOMBIUM_API cb_status cb_background_from_file(const char* path, double half_width,
                                                 size_t n_points, cb_background** out);
COULOMBIUM_API void cb_background_free(cb_background* bg);

/* Any output pointer may be NULL. */
COULOMBIUM_API cb_status cb_background_describe(const cb_background* bg, double* charge_ratio,
                                                double* abs_moment, double* recenter_shift);

/* *out receives a state whenever one exists, including for
 * CB_ERR_MAX_ITER_EXCEEDED, CB_ERR_DIVERGING_ENERGY and
 * CB_ERR_LINE_SEARCH_STALLED; the caller frees it. */
COULOMBIUM_API cb_status cb_solve(const cb_background* bg, const cb_solver_config* cfg,
                                  cb_method method, cb_ground_state** out);
COULOMBIUM_API void cb_ground_state_free(cb_ground_state* state);

COULOMBIUM_API cb_status cb_ground_state_summary(const cb_ground_state* state, cb_summary* out);

/* Each non-NULL array must hold n_points values; potential is V with -V'' = u^2 + rho. */
COULOMBIUM_API cb_status cb_ground_state_table(const cb_ground_state* state, size_t capacity,
                                               double* x, double* u, double* density,
                                               double* potential);

COULOMBIUM_API size_t cb_ground_state_history_length(const cb_ground_state* state);
COULOMBIUM_API cb_status cb_ground_state_history(const cb_ground_state* state, size_t capacity,
                                                 double* energy, double* residual);

COULOMBIUM_API size_t cb_ground_state_warning_count(const cb_ground_state* state);
COULOMBIUM_API const char* cb_ground_state_warning(const cb_ground_state* state, size_t index);

/* Runs a named property suite; *report_json is a UTF-8 JSON document to be
 * released with cb_string_free. Returns CB_OK when the suite ran, and sets
 * *passed accordingly. */
COULOMBIUM_API cb_status cb_verify(const char* suite, uint64_t seed, double z, int* passed,
                                   char** report_json);
COULOMBIUM_API void cb_string_free(char* str);

#ifdef __cplusplus
}
#endif

#endif /* COULOMBIUM_H */
