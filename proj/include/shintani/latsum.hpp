// Copyright 2026 The shintani authors.
// SPDX-License-Identifier: Apache-2.0
//
// Singular Schwartz kernels g_{kappa,l}, their Fourier transforms, and the
// lattice sums G_{kappa,l}(omega; upsilon) with their small-upsilon expansion.

#ifndef SHINTANI_LATSUM_HPP
#define SHINTANI_LATSUM_HPP

#include "shintani/specfun.hpp"

namespace shintani {

struct LatticeSumResult {
    double value = 0;
    long terms_used = 0;
    double tail_bound = 0;
    double magnitude = 0;  // sum of |terms|, sets the roundoff floor
};

cplx g_bold(int kappa, int l, double xi, double eta);
cplx g_bold_hat(int kappa, int l, double t, double eta);

// sum over 0 != xi in Z + omega of g_bold(kappa, l, upsilon xi, 0)
LatticeSumResult lattice_sum(int kappa, int l, double omega, double upsilon);
// same sum at eta, complex valued
cplx lattice_sum_eta(int kappa, int l, double omega, double upsilon, double eta);
// Poisson side (1/upsilon) sum_m e(m omega) g_bold_hat(m/upsilon; eta), kappa >= 1,
// omega not integral; the 1/t tail is summed in closed form
cplx lattice_sum_poisson(int kappa, int l, double omega, double upsilon, double eta);

double lattice_sum_asymptotic(int kappa, int l, double omega, double upsilon);

}  // namespace shintani

#endif
