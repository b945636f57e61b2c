/* Copyright 2026 The shintani authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface: opaque handles, status codes, caller-freed strings. The last
 * error message is kept per thread. */

#ifndef SHINTANI_H
#define SHINTANI_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(SHINTANI_BUILDING_LIBRARY)
#define SHN_API __attribute__((visibility("default")))
#else
#define SHN_API
#endif

typedef enum {
    SHN_OK = 0,
    SHN_ERR_ARGUMENT = 1,     /* invalid input: discriminant, index, family, null pointer */
    SHN_ERR_PRECONDITION = 2, /* a theorem hypothesis on the input form fails */
    SHN_ERR_NUMERIC = 3,      /* quadrature, truncation or tail certification failed */
    SHN_ERR_PARSE = 4,        /* malformed JSON document */
    SHN_ERR_INTERNAL = 5
} shn_status;

typedef struct shn_form shn_form; /* nearly holomorphic form */
typedef struct shn_lift shn_lift; /* lift expansion */

typedef struct {
    int q_order;      /* q-expansion truncation order (default 64) */
    int quad_nodes;   /* initial quadrature node count (default 128) */
    double tol;       /* relative quadrature and certification tolerance (default 1e-8) */
    double reg_T;     /* split-geodesic regularization height (default 8) */
} shn_config;

typedef struct {
    double re, im;
    double err;
    double regularization_T; /* 0 when no regularization was applied */
} shn_value;

SHN_API const char* shn_version(void);
SHN_API const char* shn_last_error(void);
SHN_API void shn_config_default(shn_config* cfg);
SHN_API void shn_string_free(char* s);

/* Hurwitz class number H(n) as "p/q" */
SHN_API shn_status shn_hurwitz(long long n, char** out);
/* family in {P, Q, He, Pi, Omega, E}; "1/2*x^2 + 1/2" style */
SHN_API shn_status shn_poly(const char* family, int index, char** out);
/* name in {h, J, I}: h_nu(x), J_nu(x), I_nu(x) */
SHN_API shn_status shn_special(const char* name, int nu, double x, double* out);

/* name in {J, E2star, JE2star, E2k:<k>, one}; E2k:<k> is (pi/3 E2*)^k */
SHN_API shn_status shn_form_named(const char* name, int q_order, shn_form** out);
SHN_API shn_status shn_form_from_json(const char* text, shn_form** out);
SHN_API shn_status shn_form_to_json(const shn_form* f, char** out);
SHN_API int shn_form_weight(const shn_form* f);
SHN_API void shn_form_free(shn_form* f);

/* kind in {cm, cycle, square, zero, any} */
SHN_API shn_status shn_trace(const shn_form* f, const char* kind, long long d, const shn_config* cfg, shn_value* out);
SHN_API shn_status shn_trace_twisted(const shn_form* f, long long Delta, long long D, const shn_config* cfg,
                                     shn_value* out);

SHN_API shn_status shn_lift_jE2(long long Delta, int d_max, const shn_config* cfg, shn_lift** out);
SHN_API shn_status shn_lift_e2k(int k, int d_max, const shn_config* cfg, shn_lift** out);
SHN_API shn_status shn_lift_nearly_hol(const shn_form* f, int d_max, const shn_config* cfg, shn_lift** out);
SHN_API shn_status shn_lift_from_json(const char* text, shn_lift** out);
SHN_API shn_status shn_lift_to_json(const shn_lift* L, char** out);
SHN_API int shn_lift_num_terms(const shn_lift* L);
SHN_API shn_status shn_lift_evaluate(const shn_lift* L, double x, double y, double tol, shn_value* out);
/* maximum absolute and relative deviation of the termwise lowering from finite differences */
SHN_API shn_status shn_lift_lower_check(const shn_lift* L, double* max_dev, double* max_rel);
SHN_API void shn_lift_free(shn_lift* L);

/* direct theta-kernel integral for weight-0 f and nonsquare m > 0; T <= 0 picks the height */
SHN_API shn_status shn_theta_oracle(const shn_form* f, long long m, double v, double T, shn_value* out);

#ifdef __cplusplus
}
#endif

#endif
