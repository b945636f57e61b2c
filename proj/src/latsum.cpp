// Copyright 2026 The shintani authors.
// SPDX-License-Identifier: Apache-2.0

#include "shintani/latsum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "shintani/exactpoly.hpp"

namespace shintani {

namespace {

cplx ipow(cplx z, int n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    cplx r = 1;
    while (n) {
        if (n & 1) r *= z;
        z *= z;
        n >>= 1;
    }
    return r;
}

cplx i_pow(int n) {
    static const cplx u[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return u[((n % 4) + 4) % 4];
}

double dfact(int n) { return factorial(n).get_d(); }

using DPoly = std::vector<double>;

double peval(const DPoly& p, double t) {
    double r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * t + *it;
    return r;
}

// p' - 4 pi^2 t p, i.e. d/dt of p(t) g(2 pi t) divided by g(2 pi t)
DPoly gauss_step(const DPoly& p) {
    DPoly q(p.size() + 1, 0.0);
    for (std::size_t i = 1; i < p.size(); ++i) q[i - 1] += i * p[i];
    for (std::size_t i = 0; i < p.size(); ++i) q[i + 1] -= 4 * kPi * kPi * p[i];
    return q;
}

// phi(t) = (g(2 pi t) - 1)/(2 pi i t) and its first M derivatives
std::vector<cplx> phi_derivs(int M, double t) {
    std::vector<cplx> out(M + 1);
    const cplx tpi(0, 2 * kPi);
    if (std::fabs(2 * kPi * t) <= 2) {
        for (int mu = 0; mu <= M; ++mu) {
            double s = 0;
            double c = 1;  // (-2 pi^2)^a / a!
            for (int a = 1; a <= 80; ++a) {
                c *= -2 * kPi * kPi / a;
                int p = 2 * a - 1;
                if (p < mu) continue;
                double fall = 1;
                for (int k = 0; k < mu; ++k) fall *= p - k;
                s += c * fall * std::pow(t, p - mu);
            }
            out[mu] = s / tpi;
        }
        return out;
    }
    double x = 2 * kPi * t, g = gauss(x);
    out[0] = (g - 1) / (tpi * t);
    for (int mu = 1; mu <= M; ++mu) {
        double d = std::pow(-2 * kPi, mu) * hermite(mu).eval(x) * g;
        out[mu] = (d - tpi * double(mu) * out[mu - 1]) / (tpi * t);
    }
    return out;
}

cplx e_hat(int kappa, double t, double eta) {
    if (kappa <= 0) {
        double v = std::exp(-2 * kPi * eta * t) * i_fn(0, -kappa, eta, 2 * kPi * t);
        return kSqrt2Pi * i_pow(kappa) * v;
    }
    auto ph = phi_derivs(kappa - 1, t);
    cplx s = 0;
    const cplx ieta(0, eta), m2pi(0, -2 * kPi);
    for (int mu = 0; mu < kappa; ++mu)
        s += binomial(kappa - 1, mu).get_d() * ipow(ieta, kappa - 1 - mu) / ipow(m2pi, mu) * ph[mu];
    return kSqrt2Pi * s;
}

// (d/dt)^m of g_kappa-hat for m = 0..M
std::vector<cplx> g_hat_derivs(int kappa, int M, double t, double eta) {
    std::vector<cplx> out(M + 1);
    double g = gauss(2 * kPi * t);
    if (kappa >= 1) {
        // He_{kappa-1}(2 pi t - eta) expanded in t
        const Poly& he = hermite(kappa - 1);
        DPoly p(kappa, 0.0);
        for (int i = 0; i <= he.degree(); ++i) {
            double c = he.coeff(i).get_d();
            for (int k = 0; k <= i; ++k)
                p[k] += c * binomial(i, k).get_d() * std::pow(2 * kPi, k) * std::pow(-eta, i - k);
        }
        cplx pre = kSqrt2Pi * i_pow(-(kappa - 1));
        for (int m = 0; m <= M; ++m) {
            out[m] = pre * peval(p, t) * g;
            p = gauss_step(p);
        }
        return out;
    }
    const int J = -kappa;
    std::vector<double> F(J + 1);
    double damp = std::exp(-2 * kPi * eta * t);
    for (int i = 0; i <= J; ++i) F[i] = damp * i_fn(-1, i, eta, 2 * kPi * t);
    std::vector<double> c(J + 1, 0.0);
    c[J] = 1;
    DPoly p;
    cplx pre = kSqrt2Pi * i_pow(kappa - 1);
    for (int m = 0; m <= M; ++m) {
        double v = peval(p, t) * g;
        for (int i = 0; i <= J; ++i) v += c[i] * F[i];
        out[m] = pre * v;
        // F_i' = -2 pi eta F_i + 2 pi F_{i-1}, with F_{-1} := g(2 pi t)
        std::vector<double> nc(J + 1, 0.0);
        for (int i = 0; i <= J; ++i) {
            nc[i] += -2 * kPi * eta * c[i];
            if (i > 0) nc[i - 1] += 2 * kPi * c[i];
        }
        DPoly np = gauss_step(p);
        if (np.empty()) np.push_back(0.0);
        np[0] += 2 * kPi * c[0];
        c = nc;
        p = np;
    }
    return out;
}

// xi points of Z + omega, nonzero, ordered by |xi| with negatives first
std::vector<double> lattice_points(double omega, double xmax) {
    double w = omega - std::floor(omega);
    std::vector<double> pts;
    for (double x = w; x <= xmax; x += 1)
        if (x != 0) pts.push_back(x);
    for (double x = w - 1; x >= -xmax; x -= 1) pts.push_back(x);
    std::stable_sort(pts.begin(), pts.end(), [](double a, double b) {
        if (std::fabs(a) != std::fabs(b)) return std::fabs(a) < std::fabs(b);
        return a < b;
    });
    return pts;
}

// |x| beyond which the kernel is below e^{-45} relative to its polynomial growth
double cutoff(int kappa, int l) {
    double deg = std::abs(kappa) + l + 1;
    double X = 4;
    while (X * X / 2 - deg * std::log(X) < 45) X += 0.25;
    return X;
}

}  // namespace

cplx g_bold(int kappa, int l, double xi, double eta) {
    if (xi == 0) throw std::domain_error("g_bold: xi != 0 required");
    auto h = h_all(l, xi);
    cplx z(xi, eta), s = 0;
    for (int nu = 0; nu <= l; ++nu)
        s += (nu % 2 ? -1.0 : 1.0) / dfact(l - nu) * ipow(z, kappa + l - nu - 1) * h[nu];
    return s;
}

cplx g_bold_hat(int kappa, int l, double t, double eta) {
    if (kappa <= 0 && !(eta > 0)) throw std::domain_error("g_bold_hat: eta > 0 required for kappa <= 0");
    cplx ieta(0, eta);
    cplx val = p_poly(l).eval(ieta) * e_hat(kappa, t, eta);
    auto pc = pi_poly(l).at_z(ieta);
    int M = static_cast<int>(pc.size()) - 1;
    if (M < 0) return val;
    auto d = g_hat_derivs(kappa, M, t, eta);
    const cplx m2pi(0, -2 * kPi);
    for (int m = 0; m <= M; ++m) val += pc[m] / ipow(m2pi, m) * d[m];
    return val;
}

cplx lattice_sum_eta(int kappa, int l, double omega, double upsilon, double eta) {
    if (!(upsilon > 0)) throw std::domain_error("lattice_sum: upsilon > 0 required");
    double X = cutoff(kappa, l) + std::fabs(eta);
    cplx s = 0;
    for (double x : lattice_points(omega, X / upsilon)) s += g_bold(kappa, l, upsilon * x, eta);
    return s;
}

LatticeSumResult lattice_sum(int kappa, int l, double omega, double upsilon) {
    if (!(upsilon > 0)) throw std::domain_error("lattice_sum: upsilon > 0 required");
    double X = cutoff(kappa, l);
    auto pts = lattice_points(omega, X / upsilon);
    LatticeSumResult r;
    double last = 0;
    for (double x : pts) {
        last = g_bold(kappa, l, upsilon * x, 0).real();
        r.value += last;
        r.magnitude += std::fabs(last);
    }
    r.terms_used = static_cast<long>(pts.size());
    // beyond X successive terms shrink at least by e^{-upsilon X}
    r.tail_bound = 2 * std::fabs(last) / (1 - std::exp(-upsilon * X));
    return r;
}

cplx lattice_sum_poisson(int kappa, int l, double omega, double upsilon, double eta) {
    if (kappa < 1) throw std::domain_error("lattice_sum_poisson: kappa >= 1 required");
    if (near_integer(omega)) throw std::domain_error("lattice_sum_poisson: omega not integral");
    int M = static_cast<int>(std::ceil(10 * upsilon / (2 * kPi))) + 1;
    cplx s = g_bold_hat(kappa, l, 0, eta);
    for (int m = 1; m <= M; ++m) {
        s += expi2pi(m * omega) * g_bold_hat(kappa, l, m / upsilon, eta);
        s += expi2pi(-m * omega) * g_bold_hat(kappa, l, -m / upsilon, eta);
    }
    // beyond M only P_l(i eta) e_kappa-hat survives, a finite sum of A_mu t^{-mu-1}
    cplx ieta(0, eta), tpi(0, 2 * kPi);
    cplx pl = p_poly(l).eval(ieta);
    for (int mu = 0; mu < kappa; ++mu) {
        cplx A = -kSqrt2Pi * binomial(kappa - 1, mu).get_d() * ipow(ieta, kappa - 1 - mu) *
                 (mu % 2 ? -1.0 : 1.0) * dfact(mu) / (ipow(-tpi, mu) * tpi);
        int sp = mu + 1;
        cplx full = -ipow(tpi, sp) * periodic_bernoulli(sp, omega) / dfact(sp);
        for (int m = 1; m <= M; ++m)
            full -= expi2pi(m * omega) / std::pow(m, sp) + expi2pi(-m * omega) / std::pow(-m, sp);
        s += pl * A * std::pow(upsilon, sp) * full;
    }
    return s / upsilon;
}

double lattice_sum_asymptotic(int kappa, int l, double omega, double upsilon) {
    double p0 = p_poly(l).coeff(0).get_d(), q0 = q_poly(l).coeff(0).get_d();
    cplx main = p0 * phi_cap(kappa, omega);
    if (q0 != 0) main += q0 * xi_cap(kappa, omega);
    double v = -kSqrt2Pi * std::pow(upsilon, kappa - 1) * main.real();
    if (kappa >= 1) {
        cplx he = i_pow(kappa + l) * hermite(kappa + l).coeff(0).get_d();
        v -= kSqrt2Pi * he.real() / (upsilon * kappa * dfact(l));
    } else if (kappa == 0) {
        v += kSqrt2Pi / upsilon * p0 * (std::log(upsilon) + c_const(l));
    }
    return v;
}

}  // namespace shintani
