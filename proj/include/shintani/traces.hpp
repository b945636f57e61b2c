// Copyright 2026 The shintani authors.
// SPDX-License-Identifier: Apache-2.0
//
// Traces of level-one nearly holomorphic forms: CM values, closed-geodesic
// cycle integrals, regularized integrals along split-hyperbolic geodesics,
// the index-zero trace and genus-character twists.

#ifndef SHINTANI_TRACES_HPP
#define SHINTANI_TRACES_HPP

#include "shintani/modforms.hpp"
#include "shintani/qforms.hpp"

namespace shintani {

struct TraceValue {
    cplx value;
    double err = 0;
    double regularization_T = 0;  // 0 when no regularization was applied
};

struct TraceOptions {
    int quad_nodes = 128;     // initial node count, doubled until stable
    double tol = 1e-11;       // relative stopping tolerance for doubling
    int max_nodes = 1 << 16;
    double reg_T = 8;         // cutoff for split-hyperbolic regularization
    int orientation = 1;      // global sign convention for geodesic orientation
};

// sum over positive-definite classes of 2/|Gamma_f| f(z_f); f of weight 0
TraceValue trace_cm(const NearlyHolForm& f, i64 d);

// oriented integral of f(z) lambda(z)^{k-1} dz over the closed geodesic of one
// indefinite form with nonsquare discriminant; weight of f is 2k
TraceValue cycle_integral(const NearlyHolForm& f, const QuadForm& lambda, const TraceOptions& opt = {});
TraceValue trace_cycle(const NearlyHolForm& f, i64 d, const TraceOptions& opt = {});

// Sing_lambda(f, T) for a form of positive square discriminant
cplx sing_term(const NearlyHolForm& f, const QuadForm& lambda, double T);
// regularized integral along the infinite geodesic of lambda (square discriminant)
TraceValue split_trace(const NearlyHolForm& f, const QuadForm& lambda, double T, const TraceOptions& opt = {});
// 2 sum_{j mod r} split_trace([0, r, j]) for d = r^2
TraceValue trace_square(const NearlyHolForm& f, i64 d, double T, const TraceOptions& opt = {});

// c(0,0) times the constant term of zeta at s = 1 - k
TraceValue trace_zero(const NearlyHolForm& f);

// Tr_d for any discriminant d (negative: CM, zero, square, nonsquare)
TraceValue trace_d(const NearlyHolForm& f, i64 d, const TraceOptions& opt = {});

// sum over classes of disc Delta*D of chi_Delta(lambda) Tr_lambda(f); Delta, D < 0
TraceValue twisted_trace(const NearlyHolForm& f, i64 Delta, i64 D, const TraceOptions& opt = {});

// sum over positive-definite classes of disc Delta*D (Delta < 0 < D) of
// chi_Delta(lambda) f(z_lambda) / |Gamma_lambda|; f of weight 0
TraceValue twisted_cm(const NearlyHolForm& f, i64 Delta, i64 D);

}  // namespace shintani

#endif
