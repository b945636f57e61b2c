// Copyright 2026 The shintani authors.
// SPDX-License-Identifier: Apache-2.0
//
// Fourier expansions of Shintani theta lifts of level-one nearly holomorphic
// forms, stored symbolically in y as tagged term shapes, with evaluation,
// termwise lowering and xi-images, and a direct theta-kernel oracle.

#ifndef SHINTANI_LIFT_HPP
#define SHINTANI_LIFT_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shintani/traces.hpp"

namespace shintani {

// With eta = 2 sqrt(2 pi |d| y) and q^d = e(d tau):
//   holo        c q^d
//   ypow        c q^d / (16 pi y)^b                        params {b}
//   h_shape     c h_l(eta) / eta^l q^d                     params {l}
//   J_shape     c J_l(eta) / eta^l q^d                     params {l}
//   I_shape     c (I_k(eta) - Omega~_k(eta)) / eta^k q^d   params {k}
//   log_shape   c (log(8 pi y)/2 + C) / (16 pi y)^{k/2}    params {k, C}
//   const_pow   c q^d / (8 pi y)^e                         params {e}
enum class TermKind { holo, ypow, h_shape, J_shape, I_shape, log_shape, const_pow };

std::string kind_name(TermKind k);
TermKind kind_from_name(const std::string& s);

struct LiftTerm {
    i64 d = 0;
    TermKind kind = TermKind::holo;
    cplx coeff;
    std::vector<double> params;

    bool operator==(const LiftTerm& o) const = default;
};

struct LiftExpansion {
    std::string theorem;  // "cycjE2", "E2klift", "liftnoc0k"
    int k = 0;            // weight k + 1/2
    std::optional<i64> delta;
    std::vector<LiftTerm> terms;
    int d_max = 20;
    std::map<std::string, double> tolerances;

    bool operator==(const LiftExpansion& o) const = default;
};

constexpr int kDefaultDMax = 20;

// a theorem hypothesis on the input form fails
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// twisted lift of J E2* for a fundamental discriminant Delta < 0; weight 3/2
LiftExpansion lift_jE2(i64 Delta, int d_max = kDefaultDMax, const TraceOptions& opt = {},
                       int q_order = kDefaultQOrder);

// lift of (pi/3 E2*)^k divided by k!, k even and positive; weight k + 1/2
LiftExpansion lift_e2k(int k, int d_max = kDefaultDMax, const TraceOptions& opt = {},
                       int q_order = kDefaultQOrder);

// lift of f of weight 2k, k even and nonnegative, with c(0,k) = 0; throws
// PreconditionError when c(0,k) != 0 unless check_hypothesis is false
LiftExpansion lift_nearly_hol(const NearlyHolForm& f, int d_max = kDefaultDMax, const TraceOptions& opt = {},
                              bool check_hypothesis = true);

// regularized integral of a weight-0 form over the truncated fundamental domain
double regularized_integral(const NearlyHolForm& f, double tol = 1e-11);

cplx evaluate_term(const LiftTerm& t, cplx tau);

struct LiftValue {
    cplx value;
    double err;  // geometric tail estimate beyond d_max
};
// throws std::runtime_error when the tail estimate exceeds tol
LiftValue evaluate_lift(const LiftExpansion& L, cplx tau, double tol = 1e-8);

// every index satisfies (-1)^k d = 0, 1 mod 4
bool plus_space_support(const LiftExpansion& L);

// termwise image under -2 i y^2 d/dtaubar
std::vector<LiftTerm> lower_terms(const std::vector<LiftTerm>& terms);

struct LowerReport {
    std::vector<cplx> points;
    std::vector<double> deviations;  // |symbolic - finite difference|
    double max_deviation = 0;
    double max_relative = 0;  // deviation / max(1, |symbolic|)
};
LowerReport lower_check(const LiftExpansion& L, const std::vector<cplx>& points = {}, double step = 1e-3);

// termwise xi_{k+1/2} of the nonholomorphic part as a q-series (exponent ->
// coefficient); only h_1 and J_1 shapes at weight 3/2 have holomorphic images
std::map<i64, cplx> xi_shadow(const LiftExpansion& L);

struct OracleResult {
    double value;
    double err;          // difference between two quadrature resolutions
    double lattice_tail; // bound on the omitted Gaussian mass
    int lattice_points;
};
// v^{1/2} int_{F_T} f(z) sum_{Q(lambda) = m} exp(-pi v (lambda, Z_perp(z))^2) dmu(z)
// for weight-0 f and nonsquare m > 0
OracleResult theta_oracle(const NearlyHolForm& f, i64 m, double v = 1, double T = 0);

std::string to_json(const LiftExpansion& L);
LiftExpansion lift_from_json(const std::string& text);

}  // namespace shintani

#endif
