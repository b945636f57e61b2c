#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include <gsl/gsl_integration.h>

#include "shintani/exactpoly.hpp"
#include "shintani/latsum.hpp"

using namespace shintani;

namespace {

using Fn = std::function<double(double)>;

double gsl_thunk(double x, void* p) { return (*static_cast<Fn*>(p))(x); }

double quad(Fn f, double a, double b) {
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(2000);
    gsl_function F{&gsl_thunk, &f};
    double r = 0, e = 0;
    gsl_integration_qag(&F, a, b, 1e-13, 1e-11, 2000, GSL_INTEG_GAUSS61, ws, &r, &e);
    gsl_integration_workspace_free(ws);
    return r;
}

// int_R f(xi) e(-xi t) d xi, split at the jump
cplx fourier(const std::function<cplx(double)>& f, double t) {
    auto re = [&](double x) { return (f(x) * std::polar(1.0, -2 * kPi * x * t)).real(); };
    auto im = [&](double x) { return (f(x) * std::polar(1.0, -2 * kPi * x * t)).imag(); };
    const double L = 16;
    return {quad(re, -L, 0) + quad(re, 0, L), quad(im, -L, 0) + quad(im, 0, L)};
}

}  // namespace

TEST_CASE("g_bold special cases") {
    for (int k = -2; k <= 3; ++k)
        for (double xi : {-1.3, 0.4, 2.0}) {
            cplx want = std::pow(cplx(xi, 0.6), k - 1) * err_anti(xi);
            CHECK(std::abs(g_bold(k, 0, xi, 0.6) - want) < 1e-13 * std::max(1.0, std::abs(want)));
            double w1 = -std::pow(xi, k - 1) * gauss(xi);
            CHECK(std::abs(g_bold(k, 1, xi, 0) - w1) < 1e-13);
        }
    CHECK_THROWS_AS(g_bold(1, 1, 0, 1), std::domain_error);
}

TEST_CASE("g_bold eta symmetry") {
    for (int k = -2; k <= 3; ++k)
        for (int l = 0; l <= 4; ++l) {
            cplx a = g_bold(k, l, -0.7, -1), b = g_bold(k, l, 0.7, 1);
            CHECK(std::abs(a - ((k + l) % 2 ? -1.0 : 1.0) * b) < 1e-12);
        }
}

TEST_CASE("g_bold_hat against quadrature") {
    for (int k = -2; k <= 3; ++k)
        for (int l = 0; l <= 3; ++l)
            for (double t : {0.0, 0.4, -0.3, 1.1})
                for (double eta : {0.7, 1.5}) {
                    cplx o = fourier([&](double x) { return g_bold(k, l, x, eta); }, t);
                    cplx v = g_bold_hat(k, l, t, eta);
                    INFO(k << " " << l << " " << t << " " << eta);
                    CHECK(std::abs(v - o) < 1e-7);
                }
    // e_1-hat does not see eta
    cplx o = fourier([](double x) { return cplx(err_anti(x), 0); }, 0.4);
    CHECK(std::abs(g_bold_hat(1, 0, 0.4, 0.9) - o) < 1e-7);
    CHECK(std::abs(g_bold_hat(1, 0, 0.4, 0.9) - g_bold_hat(1, 0, 0.4, 0.2)) < 1e-14);
    CHECK_THROWS_AS(g_bold_hat(0, 1, 0.1, 0), std::domain_error);
}

TEST_CASE("Gaussian part of the transform") {
    // g_{kappa,1} = i eta e_kappa - g_kappa, and g_2-hat = sqrt(2 pi)(-i)(2 pi t - eta) g(2 pi t)
    for (double t : {0.0, 0.15, -0.4})
        for (double eta : {0.3, 1.0}) {
            cplx gk = cplx(0, eta) * g_bold_hat(2, 0, t, eta) - g_bold_hat(2, 1, t, eta);
            cplx want = kSqrt2Pi * cplx(0, -1) * (2 * kPi * t - eta) * gauss(2 * kPi * t);
            CHECK(std::abs(gk - want) < 1e-13);
        }
}

TEST_CASE("transform at t = 0") {
    for (int k = -2; k <= 3; ++k)
        for (int l = 0; l <= 4; ++l)
            for (double eta : {0.5, 1.0, 2.0}) {
                cplx v = g_bold_hat(k, l, 0, eta);
                cplx want;
                cplx ikl = std::pow(cplx(0, 1), k + l);
                if (k != 0 && k + l >= 0) {
                    double he = hermite(k + l).eval(eta) - std::pow(eta, k) * hermite(l).eval(eta);
                    want = -kSqrt2Pi * ikl / (k * factorial(l).get_d()) * he;
                } else if (k == 0) {
                    want = kSqrt2Pi * std::pow(cplx(0, -1), l) * (i_simple(l, eta) - omega_tilde(l).eval(eta));
                } else {
                    continue;
                }
                INFO(k << " " << l << " " << eta);
                CHECK(std::abs(v - want) < 1e-9 * std::max(1.0, std::abs(want)));
            }
    cplx ex = kSqrt2Pi * -1.0 * (i_simple(2, 1) + 0.75);
    CHECK(std::abs(g_bold_hat(0, 2, 0, 1) - ex) < 1e-10);
}

TEST_CASE("lattice_sum direct") {
    auto r = lattice_sum(2, 1, 0.5, 1);
    double o = 0;
    for (int n = -40; n <= 40; ++n) {
        double x = n + 0.5;
        o += -x * std::exp(-x * x / 2);
    }
    CHECK(std::fabs(r.value - o) < 1e-12);
    CHECK(r.tail_bound < 1e-12);
    CHECK(r.terms_used > 0);
    for (int k = -2; k <= 3; ++k)
        for (int l = 0; l <= 3; ++l) {
            // xi -> -xi maps Z + 1/2 to itself; the summand has parity (-1)^{kappa+l}
            auto s = lattice_sum(k, l, 0.5, 0.3);
            if ((k + l) % 2) CHECK(std::fabs(s.value) < 1e-12 * std::max(1.0, s.value));
            CHECK(std::abs(lattice_sum_eta(k, l, 0.5, 0.3, 0).imag()) == 0);
        }
}

TEST_CASE("asymptotic examples") {
    CHECK(lattice_sum_asymptotic(1, 0, 1.0 / 3, 0.1) == doctest::Approx(-kSqrt2Pi / 6).epsilon(1e-14));
    CHECK(lattice_sum_asymptotic(3, 1, 0.2, 0.1) == doctest::Approx(-kSqrt2Pi / 0.1).epsilon(1e-14));
    double u = 0.05;
    double want = kSqrt2Pi * (std::log(u) + c_const(0)) / u - kSqrt2Pi / u * phi_cap(0, 0.5);
    CHECK(lattice_sum_asymptotic(0, 0, 0.5, u) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("Poisson consistency") {
    for (int k = 1; k <= 3; ++k)
        for (int l = 0; l <= 3; ++l)
            for (double w : {1.0 / 3, 0.5, 0.8})
                for (double u : {1.0, 0.5})
                    for (double eta : {0.3, 1.0}) {
                        cplx a = lattice_sum_eta(k, l, w, u, eta);
                        cplx b = lattice_sum_poisson(k, l, w, u, eta);
                        CHECK(std::abs(a - b) < 1e-8);
                    }
}

TEST_CASE("small upsilon expansion") {
    for (int k = -2; k <= 3; ++k)
        for (int l = 0; l <= 3; ++l)
            for (double w : {0.0, 1.0 / 3, 0.5}) {
                double prev = -1;
                for (double u = 0.2; u > 0.02; u /= 2) {
                    auto r = lattice_sum(k, l, w, u);
                    double a = lattice_sum_asymptotic(k, l, w, u);
                    double err = std::fabs(r.value - a);
                    double floor = std::max(1e-10 * std::max(1.0, std::fabs(a)), 1e-14 * r.magnitude);
                    INFO(k << " " << l << " " << w << " " << u);
                    if (k >= 1) {
                        CHECK(err <= floor);
                    } else if (prev >= 0 && (err > floor || prev > floor)) {
                        double order = -std::log2(err / prev);
                        CHECK(order >= k - 0.1);
                    }
                    prev = err;
                }
            }
}
