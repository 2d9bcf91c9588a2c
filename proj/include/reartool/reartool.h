#ifndef REARTOOL_REARTOOL_H
#define REARTOOL_REARTOOL_H

/* C interface to the reartool library.
 *
 * Functions on (0,R) are created from descriptors: JSON text such as
 *   {"kind":"qconcave","jump":0,"scale":1,"alpha":0.5,"beta":0}
 *   {"kind":"step","breaks":[1,2],"values":[3,1]}
 *   {"kind":"power","pieces":[{"lo":0,"hi":"inf","c":1,"gamma":-0.5}]}
 * or shorthands "pow:a", "powlog:a,b", "const:c", "jump:d+pow:a",
 * "step:e1,e2;v1,v2", each optionally prefixed by "k*". R may be INFINITY.
 *
 * Every call returns RT_OK or an error status; the message of the last failure
 * on the calling thread is available from rt_last_error(). Strings returned
 * through char** are owned by the caller and released with rt_string_free();
 * on failure the char** output is set to NULL.
 * Handles are immutable and may be shared between threads.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define RT_API __declspec(dllexport)
#else
#define RT_API __attribute__((visibility("default")))
#endif

typedef enum rt_status {
    RT_OK = 0,
    RT_ERR_INVALID_ARGUMENT = 1,
    RT_ERR_PARSE = 2,
    RT_ERR_NOT_QUASICONCAVE = 3,
    RT_ERR_NON_INTEGRABLE = 4,
    RT_ERR_TRIVIAL_SPACE = 5,
    RT_ERR_PRECONDITION = 6,
    RT_ERR_DOMAIN_MISMATCH = 7,
    RT_ERR_DISAGREEMENT = 8,
    RT_ERR_UNSUPPORTED = 9,
    RT_ERR_INTERNAL = 10
} rt_status;

typedef struct rt_qconcave rt_qconcave; /* quasiconcave function */
typedef struct rt_step rt_step;         /* step function */
typedef struct rt_function rt_function; /* piecewise power function, e.g. a weight */

RT_API const char* rt_version(void);
/* Version of the JSON report layout. */
RT_API int rt_schema_version(void);
RT_API const char* rt_status_name(rt_status status);
RT_API const char* rt_last_error(void);
RT_API void rt_string_free(char* s);

/* Log-grid size for every sup/inf sweep (default 2048, minimum 16). */
RT_API rt_status rt_set_grid_size(size_t n);
RT_API size_t rt_grid_size(void);

RT_API rt_status rt_qconcave_new(const char* descriptor, double R, rt_qconcave** out);
RT_API rt_status rt_qconcave_complementary(const rt_qconcave* phi, rt_qconcave** out);
RT_API rt_status rt_qconcave_eval(const rt_qconcave* phi, double t, double* out);
RT_API void rt_qconcave_free(rt_qconcave* phi);

RT_API rt_status rt_step_new(const char* descriptor, double R, rt_step** out);
/* f*(t) and f**(t) */
RT_API rt_status rt_step_rearranged(const rt_step* f, double t, double* star, double* double_star);
RT_API void rt_step_free(rt_step* f);

RT_API rt_status rt_function_new(const char* descriptor, double R, rt_function** out);
RT_API rt_status rt_function_eval(const rt_function* w, double t, double* out);
/* Integral over (a,b); +inf when it diverges at 0 or inf. */
RT_API rt_status rt_function_integrate(const rt_function* w, double a, double b, double* out);
RT_API void rt_function_free(rt_function* w);

/* method: "integral", "tilde-integral", "dilation", or NULL for all three. */
RT_API rt_status rt_check_b(const rt_qconcave* phi, const char* method, char** json_out);

RT_API rt_status rt_marcinkiewicz_norm(const rt_qconcave* phi, const rt_step* f, char** json_out);
RT_API rt_status rt_gamma_norm(double p, const rt_function* weight, const rt_step* f,
                               char** json_out);
RT_API rt_status rt_gamma_fundamental(double p, const rt_function* weight, double t, double* out);
RT_API rt_status rt_linfty_embedding(double p, const rt_function* weight, char** json_out);

/* op is 'S' or 'T'; writes S_phi f or T_phi f at the n points t[i] into values[i]. */
RT_API rt_status rt_apply(char op, const rt_qconcave* phi, const rt_step* f, const double* t,
                          size_t n, double* values);

/* kind: sgg, tgg, stgg, ghs, gl, neugebauer. Unused inputs may be NULL.
 * neugebauer uses the S-derived weight of (phi, w2) when phi is given and the
 * T-derived weight of (psi, w2) otherwise. */
RT_API rt_status rt_criterion(const char* kind, double p, const rt_qconcave* phi,
                              const rt_qconcave* psi, const rt_function* w1,
                              const rt_function* w2, char** json_out);

/* lemma: one-star (which ignored), endpoints (T-L1, T-M, S-M, S-Linf) or
 * starfalls (Tff, Tstar, Sstar, Sff, combined). slack is the relative
 * tolerance on proven bounds; 0 selects the default 1e-6. */
RT_API rt_status rt_verify(const char* lemma, const char* which, const rt_qconcave* phi,
                           const rt_qconcave* psi, size_t samples, unsigned long long seed,
                           double slack, char** json_out);

/* op: hardy-average, identity, dilation:r, sum. */
RT_API rt_status rt_interpolate(const char* op, double p, const rt_qconcave* phi,
                                const rt_qconcave* psi, const rt_function* w1,
                                const rt_function* w2, size_t samples, unsigned long long seed,
                                double slack, char** json_out);

#ifdef __cplusplus
}
#endif

#endif
