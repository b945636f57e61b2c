// Copyright 2026 The shintani authors.
// SPDX-License-Identifier: Apache-2.0
//
// Floating special functions: Gaussian kernels, h_nu, I_{nu,j}, J_nu,
// regularization kernels and the periodic constants used by lattice sums.

#ifndef SHINTANI_SPECFUN_HPP
#define SHINTANI_SPECFUN_HPP

#include <complex>
#include <vector>

namespace shintani {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrt2Pi = 2.506628274631000502415765284811045253;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

// e^{2 pi i x}
cplx expi2pi(double x);

double gauss(double xi);
// -sgn(xi) int_{|xi|}^inf e^{-w^2/2} dw; throws std::domain_error at 0
double err_anti(double xi);

// Extended Gamma(mu, t) for integer mu; principal value at t < 0.
double inc_gamma_ext(int mu, double t);

// h_nu(xi) = P_nu(xi) e(xi) + Q_nu(xi) g(xi)
double h_fn(int nu, double xi);
// h_0 .. h_numax at one point (shares quadrature nodes)
std::vector<double> h_all(int numax, double xi);
// Fourier transform int h_nu(xi) e^{-2 pi i xi t} dxi, nu >= -1
cplx h_hat(int nu, double t);

// I_{nu,j}(eta, t) by adaptive quadrature; *err receives the estimate.
double i_fn(int nu, int j, double eta, double t, double* err = nullptr);
double i_simple(int nu, double eta);

double j_fn(int nu, double eta);

double phi_sing(int n, int kappa, double T, double r);

double c_const(int l);

double periodic_bernoulli(int mu, double w);
double polygamma(int m, double z);
// F(e(w), -j) = sum_{m>=1} m^j e(m w); w not an integer
cplx f_neg(double w, int j);

double phi_cap(int kappa, double w);
cplx xi_cap(int kappa, double w);

bool near_integer(double w, double tol = 1e-12);

}  // namespace shintani

#endif
