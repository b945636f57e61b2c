// Copyright 2026 The shintani authors.
// SPDX-License-Identifier: Apache-2.0

#include "shintani/lift.hpp"

#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "json.hpp"
#include "shintani/specfun.hpp"

namespace shintani {

namespace {

using json = nlohmann::json;

constexpr double kInf = std::numeric_limits<double>::infinity();

i64 mod4(i64 d) { return ((d % 4) + 4) % 4; }
bool is_disc(i64 d) { return mod4(d) <= 1; }

double eta_of(i64 d, double y) { return 2 * std::sqrt(2 * kPi * static_cast<double>(std::llabs(d)) * y); }

int iparam(const LiftTerm& t, std::size_t i) {
    if (t.params.size() <= i) throw std::invalid_argument("lift term of kind " + kind_name(t.kind) + " lacks parameters");
    return static_cast<int>(std::lround(t.params[i]));
}

cplx ipow(int k) {
    static const cplx p[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return p[((k % 4) + 4) % 4];
}

// Tr_d for d >= 0
cplx trace_nonneg(const NearlyHolForm& f, i64 d, const TraceOptions& opt) {
    if (f.is_zero()) return 0;
    if (d == 0) return trace_zero(f).value;
    if (is_square(d)) return trace_square(f, d, opt.reg_T, opt).value;
    return trace_cycle(f, d, opt).value;
}

void push(std::vector<LiftTerm>& out, i64 d, TermKind kind, cplx c, std::vector<double> params = {}) {
    if (c == cplx(0)) return;
    out.push_back({d, kind, c, std::move(params)});
}

void canonical_order(std::vector<LiftTerm>& terms) {
    std::stable_sort(terms.begin(), terms.end(), [](const LiftTerm& a, const LiftTerm& b) {
        return std::tie(a.d, a.kind, a.params) < std::tie(b.d, b.kind, b.params);
    });
}

// composite 20-point Gauss-Legendre rule on [a, b]
template <class F>
double gl_panels(F&& g, double a, double b, int panels) {
    static gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(20);
    double s = 0, h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h;
        for (std::size_t i = 0; i < table->n; ++i) {
            double x, w;
            gsl_integration_glfixed_point(lo, lo + h, i, &x, &w, table);
            s += w * g(x);
        }
    }
    return s;
}

std::string fmt17(double v) {
    if (!std::isfinite(v)) throw std::runtime_error("lift JSON: non-finite number");
    if (v == 0) v = 0;  // no negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string kind_name(TermKind k) {
    switch (k) {
        case TermKind::holo: return "holo";
        case TermKind::ypow: return "ypow";
        case TermKind::h_shape: return "h_shape";
        case TermKind::J_shape: return "J_shape";
        case TermKind::I_shape: return "I_shape";
        case TermKind::log_shape: return "log_shape";
        case TermKind::const_pow: return "const";
    }
    return "?";
}

TermKind kind_from_name(const std::string& s) {
    for (TermKind k : {TermKind::holo, TermKind::ypow, TermKind::h_shape, TermKind::J_shape, TermKind::I_shape,
                       TermKind::log_shape, TermKind::const_pow})
        if (kind_name(k) == s) return k;
    throw std::invalid_argument("unknown lift term kind '" + s + "'");
}

LiftExpansion lift_jE2(i64 Delta, int d_max, const TraceOptions& opt, int q_order) {
    if (Delta >= 0 || !is_fundamental(Delta)) throw std::domain_error("lift_jE2: fundamental Delta < 0 required");
    if (d_max < 0) throw std::domain_error("lift_jE2: d_max must be nonnegative");
    LiftExpansion L;
    L.theorem = "cycjE2";
    L.k = 1;
    L.delta = Delta;
    L.d_max = d_max;
    L.tolerances = {{"trace_tol", opt.tol}, {"reg_T", opt.reg_T}};
    const double absD = static_cast<double>(-Delta);
    const NearlyHolForm J = holomorphic(0, j_normalized(q_order));
    const NearlyHolForm JE = multiply(J, e2_star(q_order));

    push(L.terms, 0, TermKind::holo, 48 * absD * hurwitz(-Delta).get_d());
    for (i64 D = -1; D >= -d_max; --D) {
        if (!is_disc(D)) continue;
        push(L.terms, -D, TermKind::holo, twisted_trace(JE, Delta, D, opt).value);
    }
    // CM part: sum over PSL2(Z) classes of chi(lambda) J(z_lambda) / |stabilizer|
    const double pre = 12 / kSqrt2Pi;
    for (i64 D = 1; D <= d_max; ++D) {
        if (!is_disc(D)) continue;
        cplx s = 2.0 * twisted_cm(J, Delta, D).value;
        push(L.terms, -D, TermKind::h_shape, -pre * s, {1});
    }
    if (-Delta <= d_max) push(L.terms, -Delta, TermKind::J_shape, pre * std::sqrt(absD), {1});
    canonical_order(L.terms);
    return L;
}

LiftExpansion lift_e2k(int k, int d_max, const TraceOptions& opt, int q_order) {
    if (k <= 0 || k % 2) throw std::domain_error("lift_e2k: k must be even and positive");
    if (d_max < 0) throw std::domain_error("lift_e2k: d_max must be nonnegative");
    LiftExpansion L;
    L.theorem = "E2klift";
    L.k = k;
    L.d_max = d_max;
    L.tolerances = {{"trace_tol", opt.tol}, {"reg_T", opt.reg_T}};

    // G[m] = (pi/3 E2*)^m
    std::vector<NearlyHolForm> G{constant_form(1)};
    const NearlyHolForm base = scale(e2_star(q_order), kPi / 3);
    for (int m = 1; m <= k; ++m) G.push_back(multiply(G.back(), base));

    for (i64 d = 0; d <= d_max; ++d) {
        if (!is_disc(d)) continue;
        for (int b = 0; b <= k / 2; ++b) {
            const int m = k - 2 * b;
            cplx tr = trace_nonneg(G[m], d, opt);
            double den = factorial(m).get_d() * factorial(b).get_d();
            if (b == 0)
                push(L.terms, d, TermKind::holo, tr / den);
            else
                push(L.terms, d, TermKind::ypow, tr / den, {double(b)});
        }
    }
    for (i64 d = -3; d >= -d_max; --d) {
        if (!is_disc(d)) continue;
        double c = 2 * kSqrt2Pi * hurwitz(-d).get_d() * std::pow(double(-d), (k - 1) / 2.0);
        push(L.terms, d, TermKind::h_shape, c, {double(k)});
    }
    push(L.terms, 0, TermKind::log_shape, -1 / factorial(k / 2).get_d(), {double(k), c_const(k)});
    push(L.terms, 0, TermKind::const_pow, kSqrt2Pi * q_poly(k - 1).eval(0.0) / 6, {(k - 1) / 2.0});
    for (i64 a = 1; a * a <= d_max; ++a)
        push(L.terms, a * a, TermKind::I_shape, -2.0 * ipow(k) * std::pow(double(a), k), {double(k)});
    canonical_order(L.terms);
    return L;
}

LiftExpansion lift_nearly_hol(const NearlyHolForm& f, int d_max, const TraceOptions& opt, bool check_hypothesis) {
    if (f.weight % 4 || f.weight < 0) throw std::domain_error("lift_nearly_hol: weight 2k with k even and nonnegative required");
    if (d_max < 0) throw std::domain_error("lift_nearly_hol: d_max must be nonnegative");
    const int k = f.weight / 2;
    const int p = f.depth();
    LiftExpansion L;
    L.theorem = "liftnoc0k";
    L.k = k;
    L.d_max = d_max;
    L.tolerances = {{"trace_tol", opt.tol}, {"reg_T", opt.reg_T}};
    if (f.is_zero()) return L;
    if (check_hypothesis && p >= k && std::abs(f.coeff(0, k)) > 1e-12)
        throw PreconditionError("lift_nearly_hol: c(0,k) = " + fmt17(f.coeff(0, k)) +
                                " but the lift theorem requires c(0,k) = 0; use the E2k-type lift");

    // iterated lowerings L^j f
    std::vector<NearlyHolForm> low{f};
    for (int j = 1; j <= p; ++j) low.push_back(lower(low.back()));

    for (i64 d = 0; d <= d_max; ++d) {
        if (!is_disc(d)) continue;
        for (int b = 0; 2 * b <= p; ++b) {
            cplx tr = trace_nonneg(low[2 * b], d, opt) / factorial(b).get_d();
            if (b == 0)
                push(L.terms, d, TermKind::holo, tr);
            else
                push(L.terms, d, TermKind::ypow, tr, {double(b)});
        }
    }
    // negative index: Tr_d(g) = 2 sum 2/|Gamma_f| g(z_f) for weight-0 g
    for (int l = k; l <= p; ++l) {
        NearlyHolForm g = low[l];
        for (int j = 0; j < l - k; ++j) g = raise(g);
        if (g.is_zero()) continue;
        const double den = std::pow(2.0, l - k) * factorial(l - k).get_d();
        for (i64 d = -3; d >= -d_max; --d) {
            if (!is_disc(d)) continue;
            cplx tr = 2.0 * trace_cm(g, d).value;
            double c = kSqrt2Pi / den * std::pow(double(-d), (k - 1) / 2.0);
            push(L.terms, d, TermKind::h_shape, c * tr, {double(l)});
        }
    }
    // odd-l constant terms
    const double sign_k = (k / 2) % 2 ? -1.0 : 1.0;
    for (int l = std::max(k - 1, 1); l <= p; ++l) {
        if (l % 2 == 0) continue;
        double c0l = f.coeff(0, l);
        if (c0l == 0) continue;
        const int h = (l - 1) / 2;
        double num = factorial(h).get_d() * std::pow(-2.0, h) * bernoulli(l + 1 - k).second.get_d() * sign_k * c0l;
        double den = std::pow(2 * kPi, k - l - 0.5) * factorial(l + 1 - k).get_d();
        push(L.terms, 0, TermKind::const_pow, num / den, {l / 2.0});
    }
    // square-index J_l series from the principal part
    for (i64 r = 1; r * r <= d_max; ++r) {
        for (int l = k; l <= p; ++l) {
            const QSeries& layer = f.layers[l];
            double s = 0;
            for (int n = layer.nmin(); n < 0; ++n) {
                if (n % r) continue;
                s += std::pow(2 * kPi * n, l - k) * factorial(l).get_d() * layer.coeff(n) / factorial(l - k).get_d();
            }
            if (s == 0) continue;
            double c = -std::sqrt(8 * kPi) * sign_k * s * std::pow(double(r), k);
            push(L.terms, r * r, TermKind::J_shape, c, {double(l)});
        }
    }
    if (k == 0) push(L.terms, 0, TermKind::const_pow, 2 * regularized_integral(f) / std::sqrt(8 * kPi), {-0.5});
    canonical_order(L.terms);
    return L;
}

double regularized_integral(const NearlyHolForm& f, double tol) {
    if (f.weight != 0) throw std::domain_error("regularized_integral: weight 0 form required");
    if (f.is_zero()) return 0;
    // part of the fundamental domain below height 1
    auto lower_part = [&](int panels) {
        auto inner = [&](double x) {
            double y0 = std::sqrt(1 - x * x);
            return gl_panels([&](double y) { return evaluate_direct(f, cplx(x, y)).real() / (y * y); }, y0, 1.0, 1);
        };
        return gl_panels(inner, -0.5, 0.5, panels);
    };
    int panels = 2;
    double prev = lower_part(panels), cur = prev;
    for (;;) {
        panels *= 2;
        cur = lower_part(panels);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) break;
        if (panels > 256) throw std::runtime_error("regularized_integral: quadrature did not converge");
        prev = cur;
    }
    // above height 1 only the constant terms survive the x-integration
    double upper = 0;
    for (int l = 0; l <= f.depth(); ++l) upper += f.coeff(0, l) / (l + 1);
    return cur + upper;
}

cplx evaluate_term(const LiftTerm& t, cplx tau) {
    const double x = tau.real(), y = tau.imag();
    if (!(y > 0)) throw std::domain_error("evaluate_term: Im tau > 0 required");
    const double dd = static_cast<double>(t.d);
    const cplx phase = std::exp(cplx(0, 2 * kPi * dd * x));
    auto qd = [&] { return phase * std::exp(-2 * kPi * dd * y); };
    switch (t.kind) {
        case TermKind::holo: return t.coeff * qd();
        case TermKind::ypow: return t.coeff * qd() * std::pow(16 * kPi * y, -t.params.at(0));
        case TermKind::const_pow: return t.coeff * qd() * std::pow(8 * kPi * y, -t.params.at(0));
        case TermKind::log_shape: {
            double kk = t.params.at(0), C = t.params.at(1);
            return t.coeff * qd() * (std::log(8 * kPi * y) / 2 + C) * std::pow(16 * kPi * y, -kk / 2);
        }
        case TermKind::h_shape: {
            if (t.d == 0) throw std::domain_error("h_shape needs d != 0");
            int l = iparam(t, 0);
            double eta = eta_of(t.d, y);
            double h = h_fn(l, eta);
            if (h == 0) return 0;
            // h_l decays like exp(-eta^2/2) = exp(-4 pi |d| y); combine exponents first
            double s = h < 0 ? -1 : 1;
            double logmag = std::log(std::abs(h)) - l * std::log(eta) - 2 * kPi * dd * y;
            return t.coeff * phase * s * std::exp(logmag);
        }
        case TermKind::J_shape: {
            if (t.d == 0) throw std::domain_error("J_shape needs d != 0");
            int l = iparam(t, 0);
            double eta = eta_of(t.d, y);
            return t.coeff * qd() * j_fn(l, eta) / std::pow(eta, l);
        }
        case TermKind::I_shape: {
            if (t.d == 0) throw std::domain_error("I_shape needs d != 0");
            int kk = iparam(t, 0);
            double eta = eta_of(t.d, y);
            double v = i_simple(kk, eta) - omega_tilde(kk).eval(eta);
            return t.coeff * qd() * v / std::pow(eta, kk);
        }
    }
    return 0;
}

LiftValue evaluate_lift(const LiftExpansion& L, cplx tau, double tol) {
    if (!(tau.imag() > 0)) throw std::domain_error("evaluate_lift: Im tau > 0 required");
    cplx sum = 0;
    // magnitudes in the two top windows of |d|
    const int w = std::max(2, std::min(4, L.d_max / 2));
    double top = 0, below = 0;
    for (const auto& t : L.terms) {
        cplx v = evaluate_term(t, tau);
        sum += v;
        i64 ad = std::llabs(t.d);
        if (ad > L.d_max - w)
            top += std::abs(v);
        else if (ad > L.d_max - 2 * w)
            below += std::abs(v);
    }
    double tail;
    if (top == 0)
        tail = 0;
    else if (below == 0)
        tail = kInf;
    else {
        double rho = top / below;
        tail = rho < 0.9 ? top * rho / (1 - rho) : kInf;
    }
    if (tail > tol)
        throw std::runtime_error("evaluate_lift: tail estimate " + std::to_string(tail) + " exceeds tol " + fmt17(tol) +
                                 " at Im tau = " + fmt17(tau.imag()) + "; increase d_max beyond " +
                                 std::to_string(L.d_max));
    return {sum, tail};
}

bool plus_space_support(const LiftExpansion& L) {
    for (const auto& t : L.terms) {
        i64 e = L.k % 2 ? -t.d : t.d;
        if (mod4(e) > 1) return false;
    }
    return true;
}

std::vector<LiftTerm> lower_terms(const std::vector<LiftTerm>& terms) {
    std::vector<LiftTerm> out;
    const double p16 = 16 * kPi;
    for (const auto& t : terms) {
        const double dd = static_cast<double>(t.d);
        switch (t.kind) {
            case TermKind::holo: break;
            case TermKind::ypow: {
                double b = t.params.at(0);
                push(out, t.d, TermKind::ypow, -b * t.coeff / p16, {b - 1});
                break;
            }
            case TermKind::const_pow: {
                double e = t.params.at(0);
                push(out, t.d, TermKind::const_pow, -e * t.coeff / (8 * kPi), {e - 1});
                break;
            }
            case TermKind::log_shape: {
                double kk = t.params.at(0), C = t.params.at(1);
                push(out, t.d, TermKind::ypow, t.coeff / (2 * p16), {kk / 2 - 1});
                push(out, t.d, TermKind::log_shape, -kk * t.coeff / (2 * p16), {kk - 2, C});
                break;
            }
            case TermKind::h_shape: {
                int l = iparam(t, 0);
                push(out, t.d, TermKind::h_shape, -t.coeff / (p16 * std::abs(dd)), {double(l - 2)});
                break;
            }
            case TermKind::J_shape: {
                int l = iparam(t, 0);
                push(out, t.d, TermKind::J_shape, t.coeff / (p16 * dd), {double(l - 2)});
                break;
            }
            case TermKind::I_shape: {
                // eta^3 d/deta (Omega~_k / eta^k) = W / eta^{k-2} with W = eta Omega~_k' - k Omega~_k;
                // the polynomial left over is (Omega~_{k-2} - W) / eta^{k-2}
                int kk = iparam(t, 0);
                cplx c = t.coeff / (p16 * dd);
                push(out, t.d, TermKind::I_shape, c, {double(kk - 2)});
                const Poly& om = omega_tilde(kk);
                Poly W = om.derivative().shift_up(1) - om * Rational(kk);
                Poly R = omega_tilde(kk - 2) - W;
                // eta^{2i} = (8 pi d y)^i = (d/2)^i (16 pi y)^i
                for (int j = 0; j <= R.degree(); ++j) {
                    double r = R.coeff(j).get_d();
                    if (r == 0) continue;
                    if ((j - (kk - 2)) % 2) throw std::logic_error("lower_terms: odd power in I-shape remainder");
                    int i = (j - (kk - 2)) / 2;
                    push(out, t.d, TermKind::ypow, c * r * std::pow(dd / 2, i), {double(-i)});
                }
                break;
            }
        }
    }
    return out;
}

LowerReport lower_check(const LiftExpansion& L, const std::vector<cplx>& points, double step) {
    std::vector<cplx> pts = points;
    if (pts.empty()) pts = {{0.1, 0.8}, {-0.23, 0.95}, {0.31, 1.1}, {0.05, 1.3}, {-0.4, 1.5}};
    const std::vector<LiftTerm> low = lower_terms(L.terms);
    auto sum = [](const std::vector<LiftTerm>& ts, cplx tau) {
        cplx s = 0;
        for (const auto& t : ts) s += evaluate_term(t, tau);
        return s;
    };
    LowerReport rep;
    for (cplx tau : pts) {
        // fourth-order central differences along dir
        auto diff = [&](cplx dir) {
            cplx h = step * dir;
            return (8.0 * (sum(L.terms, tau + h) - sum(L.terms, tau - h)) -
                    (sum(L.terms, tau + 2.0 * h) - sum(L.terms, tau - 2.0 * h))) /
                   (12 * step);
        };
        // -2 i y^2 d/dtaubar = y^2 (d/dy - i d/dx)
        double y = tau.imag();
        cplx fd = y * y * (diff(cplx(0, 1)) - cplx(0, 1) * diff(1));
        cplx sym = sum(low, tau);
        double dev = std::abs(fd - sym);
        rep.points.push_back(tau);
        rep.deviations.push_back(dev);
        rep.max_deviation = std::max(rep.max_deviation, dev);
        rep.max_relative = std::max(rep.max_relative, dev / std::max(1.0, std::abs(sym)));
    }
    return rep;
}

std::map<i64, cplx> xi_shadow(const LiftExpansion& L) {
    if (L.k != 1) throw std::domain_error("xi_shadow: implemented for weight 3/2");
    std::map<i64, cplx> out;
    for (const auto& t : L.terms) {
        if (t.kind == TermKind::holo) continue;
        const double ad = std::abs(static_cast<double>(t.d));
        if (t.kind == TermKind::h_shape && iparam(t, 0) == 1 && t.d < 0)
            out[-t.d] += -std::conj(t.coeff) / (4 * std::sqrt(2 * kPi * ad));
        else if (t.kind == TermKind::J_shape && iparam(t, 0) == 1 && t.d > 0)
            out[-t.d] += std::conj(t.coeff) / (4 * std::sqrt(2 * kPi * ad));
        else
            throw std::domain_error("xi_shadow: term of kind " + kind_name(t.kind) + " has no holomorphic xi-image");
    }
    return out;
}

OracleResult theta_oracle(const NearlyHolForm& f, i64 m, double v, double T) {
    if (f.weight != 0) throw std::domain_error("theta_oracle: weight 0 form required");
    if (m <= 0 || is_square(m)) throw std::domain_error("theta_oracle: m must be positive and nonsquare");
    if (!(v > 0)) throw std::domain_error("theta_oracle: v > 0 required");
    const double md = static_cast<double>(m);
    const int nmin = f.is_zero() ? 0 : std::min(0, f.layers[0].nmin());
    // above height T every lambda has (lambda, Z_perp)^2 >= T^2 - 4m; pick T so that the
    // Gaussian beats the growth exp(2 pi |nmin| y) by e^{-45}
    if (T <= 0) {
        double a = kPi * v, b = 2 * kPi * std::abs(nmin), c = 45 + 4 * kPi * v * md;
        T = std::max(1.0, (b + std::sqrt(b * b + 4 * a * c)) / (2 * a));
    }
    // lattice vectors with (lambda, Z_perp)^2 <= X2 somewhere in F: |A| y^2 <= |lambda(z)| and
    // |x - B/A| <= sqrt(m)/|A| on that set
    const double X2 = 40 / (kPi * v);
    const double ymin = std::sqrt(3.0) / 2;
    const i64 amax = static_cast<i64>(std::floor(std::sqrt(X2 + 4 * md) / ymin));
    struct Vec {
        double A, B, C;
    };
    std::vector<Vec> lat;
    for (i64 A = -amax; A <= amax; ++A) {
        if (A == 0) continue;
        i64 bmax = static_cast<i64>(std::ceil(std::abs(double(A)) / 2 + std::sqrt(md)));
        for (i64 B = -bmax; B <= bmax; ++B) {
            i64 num = B * B - m;
            if (num % A) continue;
            lat.push_back({double(A), double(B), double(num / A)});
        }
    }
    // above T: sum over lattice of exp(-pi v (A^2 y^2 - 4m)) against the growth of f
    double growth = 0;
    if (!f.is_zero())
        for (int l = 0; l <= f.depth(); ++l)
            for (int n = f.layers[l].nmin(); n <= std::min(f.layers[l].nmax(), 8); ++n)
                growth += std::abs(f.layers[l].coeff(n)) * std::exp(-2 * kPi * n * T);
    const double residual =
        std::sqrt(v) * growth * static_cast<double>(lat.size()) * std::exp(-kPi * v * (T * T - 4 * md)) / T;
    if (residual > 1e-8)
        throw std::runtime_error("theta_oracle: truncation height T = " + fmt17(T) +
                                 " leaves a residual bound of " + fmt17(residual));

    auto integrand = [&](double x, double y) {
        const double r2 = x * x + y * y;
        double s = 0;
        for (const auto& l : lat) {
            double X = (l.A * r2 - 2 * l.B * x + l.C) / y;
            s += std::exp(-kPi * v * X * X);
        }
        if (s == 0) return 0.0;
        return evaluate_direct(f, cplx(x, y)).real() * s / (y * y);
    };
    auto rule = [&](int px, int py) {
        auto inner = [&](double x) {
            double y0 = std::sqrt(1 - x * x);
            return gl_panels([&](double y) { return integrand(x, y); }, y0, T, py);
        };
        return std::sqrt(v) * gl_panels(inner, -0.5, 0.5, px);
    };
    const int py = static_cast<int>(std::ceil(8 * (T - ymin)));
    double a = rule(8, py), b = rule(16, 2 * py);
    return {b, std::abs(b - a) + residual, std::exp(-kPi * v * X2), static_cast<int>(lat.size())};
}

std::string to_json(const LiftExpansion& L) {
    std::string s = "{\"theorem\":" + json(L.theorem).dump() + ",\"k\":" + std::to_string(L.k);
    if (L.delta) s += ",\"delta\":" + std::to_string(*L.delta);
    s += ",\"terms\":[";
    for (std::size_t i = 0; i < L.terms.size(); ++i) {
        const auto& t = L.terms[i];
        if (i) s += ",";
        s += "{\"d\":" + std::to_string(t.d) + ",\"kind\":\"" + kind_name(t.kind) + "\",\"coeff_re\":" +
             fmt17(t.coeff.real()) + ",\"coeff_im\":" + fmt17(t.coeff.imag()) + ",\"params\":[";
        for (std::size_t j = 0; j < t.params.size(); ++j) s += (j ? "," : "") + fmt17(t.params[j]);
        s += "]}";
    }
    s += "],\"meta\":{\"d_max\":" + std::to_string(L.d_max) + ",\"tolerances\":{";
    bool first = true;
    for (const auto& [key, val] : L.tolerances) {
        s += (first ? "" : ",") + json(key).dump() + ":" + fmt17(val);
        first = false;
    }
    s += "}}}";
    return s;
}

LiftExpansion lift_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("lift JSON: ") + e.what());
    }
    try {
        LiftExpansion L;
        L.theorem = j.at("theorem").get<std::string>();
        L.k = j.at("k").get<int>();
        if (j.contains("delta") && !j["delta"].is_null()) L.delta = j["delta"].get<i64>();
        for (const auto& t : j.at("terms")) {
            LiftTerm term;
            term.d = t.at("d").get<i64>();
            term.kind = kind_from_name(t.at("kind").get<std::string>());
            term.coeff = {t.at("coeff_re").get<double>(), t.at("coeff_im").get<double>()};
            term.params = t.at("params").get<std::vector<double>>();
            L.terms.push_back(std::move(term));
        }
        const auto& meta = j.at("meta");
        L.d_max = meta.at("d_max").get<int>();
        if (meta.contains("tolerances"))
            for (const auto& [key, val] : meta["tolerances"].items()) L.tolerances[key] = val.get<double>();
        return L;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("lift JSON: ") + e.what());
    }
}

}  // namespace shintani
