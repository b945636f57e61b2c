// Copyright 2026 The shintani authors.
// SPDX-License-Identifier: Apache-2.0

#include "shintani/specfun.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_dawson.h>
#include <gsl/gsl_sf_expint.h>
#include <gsl/gsl_sf_gamma.h>
#include <gsl/gsl_sf_psi.h>

#include "shintani/exactpoly.hpp"

namespace shintani {

namespace {

struct GslQuiet {
    GslQuiet() { gsl_set_error_handler_off(); }
};
const GslQuiet gsl_quiet;

double fact(int n) {
    double r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// He_mu(0)/mu!
double taylor_g0(int mu) {
    if (mu < 0 || mu % 2) return 0;
    int a = mu / 2;
    return (a % 2 ? -1.0 : 1.0) / (std::ldexp(1.0, a) * fact(a));
}

// P_mu(0)
double p_at0(int mu) { return std::fabs(taylor_g0(mu)); }

double check(double v, const char* what) {
    if (!std::isfinite(v)) throw std::domain_error(std::string(what) + ": non-finite result");
    return v;
}

// integral of u^nu e^{-s u - u^2/2} over [0, inf) for nu = 0..numax, s >= 1
std::vector<double> gauss_moments(int numax, double s) {
    auto logf = [&](double u) { return numax * std::log(u) - s * u - 0.5 * u * u; };
    double peak = 0.5 * (-s + std::sqrt(s * s + 4.0 * numax));
    double ref = numax > 0 ? logf(peak) : 0.0;
    double U = std::max(peak, 1.0);
    while (logf(U) > ref - 48.0 || -s * U - 0.5 * U * U > -48.0) U *= 1.25;

    using G = boost::math::quadrature::gauss<double, 64>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    const int panels = 2;
    double h = U / panels;
    std::vector<double> out(numax + 1, 0.0);
    auto add = [&](double u, double wt) {
        double base = wt * std::exp(-s * u - 0.5 * u * u);
        for (int nu = 0; nu <= numax; ++nu) {
            out[nu] += base;
            base *= u;
        }
    };
    for (int p = 0; p < panels; ++p) {
        double c = h * (p + 0.5), r = 0.5 * h;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) {
                add(c, r * w[i]);
            } else {
                add(c + r * x[i], r * w[i]);
                add(c - r * x[i], r * w[i]);
            }
        }
    }
    return out;
}

double h_direct(int nu, double xi) {
    double e = nu >= 0 ? err_anti(xi) : 0.0;
    return p_poly(nu).eval(xi) * e + q_poly(nu).eval(xi) * gauss(xi);
}

double gk(const std::function<double(double)>& f, double a, double b, double* err) {
    double e = 0;
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-14, &e);
    if (err) *err += e;
    return v;
}

}  // namespace

bool near_integer(double w, double tol) { return std::fabs(w - std::round(w)) < tol; }

cplx expi2pi(double x) {
    double f = x - std::floor(x);
    return std::polar(1.0, 2 * kPi * f);
}

double gauss(double xi) { return std::exp(-0.5 * xi * xi); }

double err_anti(double xi) {
    if (xi == 0) throw std::domain_error("err_anti: jump at 0");
    double v = std::sqrt(kPi / 2) * std::erfc(std::fabs(xi) / std::sqrt(2.0));
    return xi > 0 ? -v : v;
}

double inc_gamma_ext(int mu, double t) {
    if (mu >= 1) {
        double term = 1, sum = 1;
        for (int a = 1; a < mu; ++a) {
            term *= t / a;
            sum += term;
        }
        return check(std::exp(-t) * fact(mu - 1) * sum, "inc_gamma_ext");
    }
    if (t == 0) throw std::domain_error("inc_gamma_ext: pole at t = 0");
    if (t > 0) {
        gsl_sf_result r;
        if (gsl_sf_gamma_inc_e(mu, t, &r) == GSL_EUNDRFLW) return 0.0;
        return check(r.val, "inc_gamma_ext");
    }
    gsl_sf_result ei;
    gsl_sf_expint_Ei_e(-t, &ei);
    double g0 = -ei.val;
    if (mu == 0) return check(g0, "inc_gamma_ext");
    int m = -mu;
    double s = 0, af = 1;
    for (int a = 0; a < m; ++a) {
        if (a > 0) af *= a;
        s += af / std::pow(-t, a + 1);
    }
    return check((m % 2 ? -1.0 : 1.0) / fact(m) * (g0 + std::exp(-t) * s), "inc_gamma_ext");
}

std::vector<double> h_all(int numax, double xi) {
    if (xi == 0) throw std::domain_error("h_fn: jump at 0");
    std::vector<double> out(numax + 1);
    double s = std::fabs(xi);
    if (s < 1) {
        for (int nu = 0; nu <= numax; ++nu) out[nu] = h_direct(nu, xi);
        return out;
    }
    auto m = gauss_moments(numax, s);
    double g = gauss(s), f = 1;
    for (int nu = 0; nu <= numax; ++nu) {
        if (nu > 0) f *= nu;
        double v = (nu % 2 ? 1.0 : -1.0) * g * m[nu] / f;
        if (xi < 0 && nu % 2 == 0) v = -v;  // h_nu(-x) = (-1)^{nu-1} h_nu(x)
        out[nu] = v;
    }
    return out;
}

double h_fn(int nu, double xi) {
    if (nu < 0) return q_poly(nu).eval(xi) * gauss(xi);
    return h_all(nu, xi)[nu];
}

cplx h_hat(int nu, double t) {
    if (nu < -1) throw std::domain_error("h_hat: nu >= -1 required");
    double x = 2 * kPi * t;
    cplx ix(0, x);
    if (std::fabs(x) <= 2) {
        // |2 pi t| <= 2 keeps the terms below 2^{r/2}/(r/2)!
        cplx sum = 0, pw = 1;
        for (int r = nu + 1; r <= nu + 100; ++r) {
            sum += p_at0(r) * pw;
            pw *= ix;
        }
        return kSqrt2Pi * sum;
    }
    cplx s = gauss(x) / std::pow(ix, nu + 1);
    for (int r = 0; r <= nu; ++r) s -= p_at0(r) / std::pow(ix, nu - r + 1);
    return kSqrt2Pi * s;
}

double i_fn(int nu, int j, double eta, double t, double* err) {
    if (nu >= 0 && !(eta > 0)) throw std::domain_error("i_fn: eta > 0 required for nu >= 0");
    if (j < 0) throw std::domain_error("i_fn: j >= 0 required");
    double jf = fact(j);
    auto core = [nu](double w) -> double {
        if (nu < 0) return gauss(w) * std::pow(w, -nu - 1);
        if (std::fabs(w) <= 3) {
            // sum over even mu > nu of (-1/2)^{mu/2} w^{mu-nu-1}/(mu/2)!
            int a = nu / 2 + 1;
            double term = taylor_g0(2 * a) * std::pow(w, 2 * a - nu - 1);
            double sum = term;
            for (int b = a + 1; b < a + 200; ++b) {
                term *= -0.5 * w * w / b;
                sum += term;
                if (std::fabs(term) < 1e-19 * std::fabs(sum)) break;
            }
            return sum;
        }
        double tay = 0, pw = 1;
        for (int mu = 0; mu <= nu; ++mu) {
            tay += taylor_g0(mu) * pw;
            pw *= w;
        }
        return (gauss(w) - tay) / pw;
    };
    auto f = [&](double w) {
        if (std::isinf(w)) return 0.0;
        double lin = j ? std::pow(w + t, j) / jf : 1.0;
        return lin * std::exp(-eta * w) * core(w);
    };
    double e = 0, v = 0, a = -t;
    if (a < -12) {
        v += gk(f, a, -12, &e);
        a = -12;
    }
    if (a < 0) {
        v += gk(f, a, 0, &e);
        a = 0;
    }
    double b = a + 8;
    v += gk(f, a, b, &e);
    v += gk(f, b, std::numeric_limits<double>::infinity(), &e);
    if (err) *err = e;
    return check(v, "i_fn");
}

double i_simple(int nu, double eta) { return i_fn(nu, 0, eta, 0); }

double j_fn(int nu, double eta) {
    double jm1 = std::exp(0.5 * eta * eta);
    double j0 = -std::sqrt(2.0) * jm1 * gsl_sf_dawson(eta / std::sqrt(2.0));
    if (nu == -1) return jm1;
    if (nu == 0) return j0;
    auto pq = pq_modified(nu);
    return check(pq.first.eval(eta) * j0 - pq.second.eval(eta) * jm1, "j_fn");
}

double phi_sing(int n, int kappa, double T, double r) {
    if (!(T > 0) || !(r > 0)) throw std::domain_error("phi_sing: T, r > 0 required");
    if (n != 0) {
        double rn = r * n;
        return inc_gamma_ext(kappa, rn * T) / std::pow(rn, kappa);
    }
    if (kappa != 0) return -std::pow(T, kappa) / kappa;
    return -std::log(T);
}

double c_const(int l) {
    double s = 0.5 * (kEulerGamma + std::log(2.0));
    for (int a = 1; a <= l; a += 2) s -= 1.0 / a;
    return s;
}

double periodic_bernoulli(int mu, double w) {
    if (mu < 0) throw std::domain_error("periodic_bernoulli: mu >= 0 required");
    if (near_integer(w)) return mu == 1 ? 0.0 : bernoulli(mu).second.get_d();
    double f = w - std::floor(w);
    return bernoulli(mu).first.eval(f);
}

double polygamma(int m, double z) {
    if (!(z > 0)) throw std::domain_error("polygamma: z > 0 required");
    return check(m == 0 ? gsl_sf_psi(z) : gsl_sf_psi_n(m, z), "polygamma");
}

namespace {

// numerator N_j of F(q,-j) = N_j(q)/(1-q)^{j+1}
const Poly& eulerian_num(int j) {
    static std::mutex mu;
    static std::map<int, Poly> memo;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = memo.find(j);
        if (it != memo.end()) return it->second;
    }
    Poly n = Poly::monomial(1);
    Poly one_minus_q = Poly(std::vector<Rational>{1, -1});
    for (int i = 0; i < j; ++i) n = (n.derivative() * one_minus_q + n * Rational(i + 1)).shift_up(1);
    std::lock_guard<std::mutex> lk(mu);
    return memo.emplace(j, n).first->second;
}

double psi_tilde(int m, double x) {
    double f = x - std::floor(x);
    if (f == 0) f = 1;
    return polygamma(m, f);
}

}  // namespace

cplx f_neg(double w, int j) {
    if (near_integer(w)) throw std::domain_error("f_neg: pole at integral omega");
    cplx q = expi2pi(w);
    return eulerian_num(j).eval(q) / std::pow(1.0 - q, j + 1);
}

double phi_cap(int kappa, double w) {
    if (kappa >= 1) return -periodic_bernoulli(kappa, w) / kappa;
    int m = -kappa;
    return -(psi_tilde(m, -w) + (m % 2 ? -1.0 : 1.0) * psi_tilde(m, w)) / (2 * fact(m));
}

cplx xi_cap(int kappa, double w) {
    cplx pre = std::pow(cplx(0, -2 * kPi), 1 - kappa) / kSqrt2Pi;
    bool integral = near_integer(w);
    if (kappa <= 0 && !integral) return pre * (f_neg(w, -kappa) / fact(-kappa) + (kappa == 0 ? 0.5 : 0.0));
    if (kappa <= 1 && integral) return pre * (-periodic_bernoulli(1 - kappa, 0) / fact(1 - kappa));
    return 0;
}

}  // namespace shintani
