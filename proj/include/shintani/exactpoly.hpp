// Copyright 2026 The shintani authors.
// SPDX-License-Identifier: Apache-2.0
//
// Exact polynomial families over Q.

#ifndef SHINTANI_EXACTPOLY_HPP
#define SHINTANI_EXACTPOLY_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace shintani {

using Rational = mpq_class;

// Univariate polynomial, coefficient i multiplies x^i.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);
    static Poly constant(const Rational& c);
    static Poly monomial(int degree, const Rational& c = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    Rational coeff(int i) const;
    const std::vector<Rational>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rational& s) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly derivative() const;
    Poly shift_up(int k) const;  // multiply by x^k
    // p(a x + b)
    Poly compose_linear(const Rational& a, const Rational& b) const;
    // x -> -x
    Poly reflect() const;
    // i^s * p(i x), which must be real; throws std::logic_error otherwise
    Poly rotate(int s) const;
    // +1 even, -1 odd, 0 neither (zero polynomial counts as even)
    int parity() const;

    Rational eval(const Rational& x) const;
    double eval(double x) const;
    std::complex<double> eval(std::complex<double> x) const;
    std::vector<double> to_double() const;

    // "1/2*x^2 + 1/2" style
    std::string str(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> c_;
};

Poly operator*(const Rational& s, const Poly& p);

// Bivariate polynomial, entry (i,j) multiplies x^i z^j.
class BiPoly {
public:
    BiPoly() = default;
    static BiPoly from_x(const Poly& p);
    static BiPoly from_z(const Poly& p);

    int deg_x() const { return static_cast<int>(c_.size()) - 1; }
    int deg_z() const;
    bool is_zero() const { return c_.empty(); }
    Rational coeff(int i, int j) const;
    void set(int i, int j, const Rational& v);

    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator*(const BiPoly& o) const;
    BiPoly operator*(const Rational& s) const;
    bool operator==(const BiPoly& o) const;

    BiPoly d_dz() const;
    BiPoly d_dx() const;
    // p(x, z) with x := a z  (univariate result in z)
    Poly on_line(const Rational& a) const;
    // q(w, z) := p(w - z, z)
    BiPoly shear() const;
    // p / x, throws std::domain_error unless divisible
    BiPoly divide_x() const;
    // coefficients of p(x, z0) as polynomial in x, z0 complex
    std::vector<std::complex<double>> at_z(std::complex<double> z0) const;

    std::string str(const std::string& vx = "x", const std::string& vz = "z") const;

private:
    void trim();
    std::vector<std::vector<Rational>> c_;  // c_[i][j]
};

Rational factorial(int n);
Rational binomial(int n, int k);
Rational harmonic(int n);
Rational odd_harmonic(int n);  // sum over odd a <= n of 1/a

// He_n, probabilists' Hermite.
const Poly& hermite(int n);
// P_nu; zero for nu < 0.
const Poly& p_poly(int nu);
// Q_nu for every integer nu.
const Poly& q_poly(int nu);
const BiPoly& pi_poly(int l);
// Pi~_l(w, z) in variables (w, z).
const BiPoly& pi_tilde(int l);
const Poly& omega_poly(int l);
const Poly& omega_tilde(int k);
const Poly& e_poly(int l);
// (B_mu(x), B_mu)
std::pair<Poly, Rational> bernoulli(int mu);
// (P~_nu, Q~_nu)
std::pair<Poly, Poly> pq_modified(int nu);

}  // namespace shintani

#endif
