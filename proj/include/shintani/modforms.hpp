// Copyright 2026 The shintani authors.
// SPDX-License-Identifier: Apache-2.0
//
// q-expansions of level-one forms, nearly holomorphic forms sum_l f_l(z) y^{-l},
// the raising and lowering operators, and evaluation through reduction to the
// standard fundamental domain.

#ifndef SHINTANI_MODFORMS_HPP
#define SHINTANI_MODFORMS_HPP

#include <complex>
#include <string>
#include <vector>

#include "shintani/exactpoly.hpp"
#include "shintani/qforms.hpp"

namespace shintani {

using cplx = std::complex<double>;

enum class CoeffMode { exact, floating };

constexpr int kDefaultQOrder = 64;
// truncation order of series that are known exactly (finite support)
constexpr int kUnbounded = 1 << 28;

// sum_{n >= nmin} c(n) q^n, known for n <= order
class QSeries {
public:
    QSeries() = default;  // zero, exact, unbounded
    static QSeries exact(int nmin, std::vector<Rational> c, int order = kUnbounded);
    static QSeries floating(int nmin, std::vector<double> c, int order = kUnbounded);
    static QSeries constant(const Rational& c);

    CoeffMode mode() const { return mode_; }
    int nmin() const { return nmin_; }
    int order() const { return order_; }
    // largest exponent with a stored coefficient
    int nmax() const { return nmin_ + static_cast<int>(d_.size()) - 1; }
    bool is_zero() const;
    // 0 outside the stored range; throws std::out_of_range beyond order
    double coeff(int n) const;
    Rational exact_coeff(int n) const;  // exact mode only

    QSeries operator+(const QSeries& o) const;
    QSeries operator-(const QSeries& o) const;
    QSeries operator-() const;
    QSeries operator*(const QSeries& o) const;
    QSeries operator*(const Rational& s) const;
    QSeries operator*(double s) const;  // result is floating
    bool operator==(const QSeries& o) const;

    QSeries truncate(int order) const;
    QSeries to_floating() const;
    // q d/dq
    QSeries theta() const;
    // multiplicative inverse; leading coefficient must be nonzero
    QSeries inverse() const;

    cplx eval(cplx q) const;
    // geometric estimate of the omitted tail at |q| (0 when unbounded);
    // +inf when the coefficients do not decay geometrically
    double tail_estimate(double absq) const;

private:
    void normalize();
    CoeffMode mode_ = CoeffMode::exact;
    int nmin_ = 0;
    int order_ = kUnbounded;
    std::vector<Rational> q_;  // exact mode
    std::vector<double> d_;    // always filled
};

// sum_l layers[l](z) y^{-l}, modular of the given even weight
struct NearlyHolForm {
    int weight = 0;
    std::vector<QSeries> layers;

    int depth() const;  // -1 for the zero form
    CoeffMode mode() const;
    int order() const;  // min over layers
    // coefficient c(n, l) of q^n y^{-l}
    double coeff(int n, int l) const;
    bool is_zero() const { return depth() < 0; }
};

NearlyHolForm holomorphic(int weight, const QSeries& f);
NearlyHolForm constant_form(const Rational& c);

QSeries eisenstein(int k, int order = kDefaultQOrder);  // k in {4, 6}
QSeries e2_series(int order = kDefaultQOrder);          // 1 - 24 sum sigma_1(n) q^n
QSeries delta_cusp(int order = kDefaultQOrder);
QSeries j_fun(int order = kDefaultQOrder);
QSeries j_normalized(int order = kDefaultQOrder);
QSeries theta_jacobi(int order = kDefaultQOrder);
NearlyHolForm e2_star(int order = kDefaultQOrder);

NearlyHolForm add(const NearlyHolForm& f, const NearlyHolForm& g);
NearlyHolForm scale(const NearlyHolForm& f, double s);
NearlyHolForm scale(const NearlyHolForm& f, const Rational& s);
NearlyHolForm multiply(const NearlyHolForm& f, const NearlyHolForm& g);
NearlyHolForm power(const NearlyHolForm& f, int k);

// L = -2 i y^2 d/dzbar
NearlyHolForm lower(const NearlyHolForm& f);
// R_weight = 2 i d/dz + weight / y
NearlyHolForm raise(const NearlyHolForm& f);
// Delta_weight = -R_{weight-2} L
NearlyHolForm laplacian(const NearlyHolForm& f);

// z in the standard fundamental domain and gamma with z = gamma . z0
struct FDPoint {
    cplx z;
    Mat2 gamma;
};
FDPoint reduce_to_fd(cplx z0);

struct EvalResult {
    cplx value;
    double err;
};
// f(z) = (c z + d)^{-weight} f(gamma z) with gamma z reduced; throws
// std::runtime_error naming the required order when the tail exceeds tol
EvalResult evaluate_checked(const NearlyHolForm& f, cplx z, double tol = 1e-10);
cplx evaluate(const NearlyHolForm& f, cplx z, double tol = 1e-10);
// layer sum at z without reduction
cplx evaluate_direct(const NearlyHolForm& f, cplx z);

std::string to_json(const NearlyHolForm& f);
NearlyHolForm form_from_json(const std::string& text);

}  // namespace shintani

#endif
