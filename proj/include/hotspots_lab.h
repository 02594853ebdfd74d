/* C interface to the triangle spectral laboratory. */
#ifndef HOTSPOTS_LAB_H
#define HOTSPOTS_LAB_H

#include <stddef.h>

#if defined(_WIN32)
#define HSL_API __declspec(dllexport)
#else
#define HSL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Codes 0-3 double as process exit codes of the run commands. */
typedef enum hsl_status {
    HSL_OK = 0,
    HSL_ANOMALY = 1,            /* a checked property failed */
    HSL_INVALID_CONFIG = 2,
    HSL_SOLVER_FAILURE = 3,
    HSL_IO_ERROR = 4,
    HSL_INVALID_ARGUMENT = 5,   /* null handle, unknown key, bad geometry */
    HSL_INTERNAL = 6
} hsl_status;

typedef struct hsl_config hsl_config;
typedef struct hsl_result hsl_result;
typedef struct hsl_triangle hsl_triangle;

HSL_API const char* hsl_version(void);
HSL_API const char* hsl_status_string(hsl_status status);
/* Message of the last failing call on this thread; "" if none. */
HSL_API const char* hsl_last_error(void);
HSL_API void hsl_string_free(char* s);

/* Run configuration. Commands: solve, chain, scan, continuation, analytic, selftest. */
HSL_API hsl_status hsl_config_create(const char* command, hsl_config** out);
HSL_API hsl_status hsl_config_from_json(const char* json, hsl_config** out);
HSL_API hsl_status hsl_config_to_json(const hsl_config* config, char** out);
/* "x1,y1;x2,y2;x3,y3" or a JSON array of three points */
HSL_API hsl_status hsl_config_add_triangle(hsl_config* config, const char* text);
HSL_API hsl_status hsl_config_set_levels(hsl_config* config, int lo, int hi);
/* keys: order, grid, steps, jobs, max-iterations */
HSL_API hsl_status hsl_config_set_int(hsl_config* config, const char* key, long long value);
/* keys: tol-grad, tol-mono, tol-vertex, solver-tol */
HSL_API hsl_status hsl_config_set_double(hsl_config* config, const char* key, double value);
/* keys: out, seed (hex), seed-field, test-hook */
HSL_API hsl_status hsl_config_set_string(hsl_config* config, const char* key, const char* value);
HSL_API hsl_status hsl_config_validate(const hsl_config* config);
HSL_API void hsl_config_free(hsl_config* config);

/* Runs the configured command. Returns the exit code contract (0-3) and
   always sets *out unless an argument is null. */
HSL_API hsl_status hsl_run(const hsl_config* config, hsl_result** out);
HSL_API int hsl_result_exit_code(const hsl_result* result);
HSL_API const char* hsl_result_json(const hsl_result* result);
HSL_API const char* hsl_result_summary(const hsl_result* result);
HSL_API const char* hsl_result_error(const hsl_result* result);
HSL_API size_t hsl_result_file_count(const hsl_result* result);
HSL_API const char* hsl_result_file_suffix(const hsl_result* result, size_t index);
/* Writes prefix + suffix for every report file. */
HSL_API hsl_status hsl_result_write(const hsl_result* result, const char* prefix);
HSL_API void hsl_result_free(hsl_result* result);

/* Direct numerics. xy holds x1, y1, x2, y2, x3, y3. */
HSL_API hsl_status hsl_triangle_create(const double xy[6], hsl_triangle** out);
HSL_API hsl_status hsl_triangle_parse(const char* text, hsl_triangle** out);
HSL_API hsl_status hsl_triangle_canonical(const hsl_triangle* t, double xy[6]);
HSL_API void hsl_triangle_free(hsl_triangle* t);
HSL_API hsl_status hsl_neumann_mu2(const hsl_triangle* t, int level, int order, double* mu2, double* mu3);
/* Richardson extrapolation over levels lo..hi (at least three) */
HSL_API hsl_status hsl_mu2_estimate(const hsl_triangle* t, int lo, int hi, int order, double* value,
                                    double* error_bar);

#ifdef __cplusplus
}
#endif

#endif
