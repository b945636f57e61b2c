// Copyright 2026 The shintani authors.
// SPDX-License-Identifier: Apache-2.0

#include "shintani/traces.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "shintani/specfun.hpp"

namespace shintani {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kEvalTol = 1e-8;
// split point between the numerically integrated vertical segment and the
// cusp neighbourhoods handled through the q-expansion
constexpr double kCuspHeight = 1.0;

struct Quad {
    cplx value;
    double err;
};

cplx ipow(int k) {
    static const cplx p[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return p[((k % 4) + 4) % 4];
}

// trapezoid over one period of a smooth periodic integrand, nodes doubled
// (reusing the previous ones) until two successive sums agree to the tolerance
// or to the rounding floor set by the integral of |g|
Quad periodic_trapezoid(const std::function<cplx(double)>& g, double a, double period, const TraceOptions& opt) {
    int n = std::max(opt.quad_nodes, 4);
    cplx sum = 0;
    double abs_sum = 0;
    auto add = [&](double s, cplx& acc) {
        cplx v = g(s);
        acc += v;
        abs_sum += std::abs(v);
    };
    for (int i = 0; i < n; ++i) add(a + period * i / n, sum);
    cplx prev = sum * (period / n);
    while (true) {
        cplx mid = 0;
        for (int i = 0; i < n; ++i) add(a + period * (i + 0.5) / n, mid);
        sum += mid;
        n *= 2;
        cplx cur = sum * (period / n);
        double diff = std::abs(cur - prev);
        double floor = 256 * kEps * abs_sum * (period / n);
        if (diff <= std::max(opt.tol * std::max(1.0, std::abs(cur)), floor)) return {cur, std::max(diff, floor)};
        if (2 * n > opt.max_nodes)
            throw std::runtime_error("trace quadrature did not converge with " + std::to_string(n) + " nodes");
        prev = cur;
    }
}

// composite Gauss-Legendre on [a, b], panel count doubled until stable or
// down to the rounding floor set by the integral of |g|
Quad gauss_panels(const std::function<cplx(double)>& g, double a, double b, const TraceOptions& opt) {
    if (!(b > a)) return {0, 0};
    static gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(16);
    double abs_int = 0;
    auto rule = [&](int panels) {
        cplx s = 0;
        double sa = 0;
        double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            double lo = a + p * h;
            for (std::size_t i = 0; i < table->n; ++i) {
                double x, w;
                gsl_integration_glfixed_point(lo, lo + h, i, &x, &w, table);
                cplx v = g(x);
                s += w * v;
                sa += w * std::abs(v);
            }
        }
        abs_int = sa;
        return s;
    };
    int panels = std::max(2, static_cast<int>(std::ceil(4 * (b - a))));
    cplx prev = rule(panels);
    while (true) {
        panels *= 2;
        cplx cur = rule(panels);
        double diff = std::abs(cur - prev);
        double floor = 256 * kEps * abs_int;
        if (diff <= std::max(opt.tol * std::max(1.0, std::abs(cur)), floor)) return {cur, std::max(diff, floor)};
        if (panels * 16 > opt.max_nodes)
            throw std::runtime_error("vertical quadrature did not converge with " + std::to_string(panels) +
                                     " panels");
        prev = cur;
    }
}

void require_weight0(const NearlyHolForm& f, const char* who) {
    if (f.weight != 0) throw std::domain_error(std::string(who) + ": weight 0 form required");
}

i64 square_root_or_throw(i64 d, const char* who) {
    i64 r;
    if (d <= 0 || !is_square(d, &r)) throw std::domain_error(std::string(who) + ": positive square discriminant required");
    return r;
}

// [0, r, j] representative of a split-hyperbolic form
QuadForm square_rep(const QuadForm& lambda, const char* who) {
    square_root_or_throw(lambda.disc(), who);
    QuadForm rep = reduce(lambda);
    if (rep.a != 0 || rep.b <= 0) throw std::logic_error("square_rep: unexpected representative " + rep.str());
    return rep;
}

// contribution of the cusp at infinity of [0, r, j]: the vertical integral
// from height Y to T plus Sing at T.  Terms with n <= 0 are combined in closed
// form (their integral plus Sing equals phi_n at Y); the decaying part is
// integrated numerically.
Quad cusp_piece(const NearlyHolForm& f, const QuadForm& rep, double Y, double T, const TraceOptions& opt) {
    const int k = f.weight / 2;
    const double r = static_cast<double>(rep.b);
    const double x = -static_cast<double>(rep.c) / r;
    const cplx pref = ipow(k) * std::pow(r, k - 1);
    cplx closed = 0;
    double scale = 0;
    for (int l = 0; l <= f.depth(); ++l) {
        const QSeries& s = f.layers[l];
        for (int n = s.nmin(); n <= s.nmax(); ++n) {
            double c = s.coeff(n);
            if (c == 0) continue;
            cplx t = c * expi2pi(n * x) * phi_sing(n, k - l, n <= 0 ? Y : T, 2 * kPi);
            closed += t;
            scale = std::max(scale, std::abs(t));
        }
    }
    closed *= pref;
    auto decaying = [&](double u) {
        double y = std::exp(u);
        cplx s = 0;
        for (int l = 0; l <= f.depth(); ++l) {
            const QSeries& layer = f.layers[l];
            cplx sl = 0;
            for (int n = std::max(1, layer.nmin()); n <= layer.nmax(); ++n) {
                double c = layer.coeff(n);
                if (c != 0) sl += c * expi2pi(n * x) * std::exp(-2 * kPi * n * y);
            }
            s += sl * std::pow(y, static_cast<double>(k - 1 - l));
        }
        return pref * s * y;
    };
    Quad num = gauss_panels(decaying, std::log(Y), std::log(T), opt);
    double tail = 0;
    for (int l = 0; l <= f.depth(); ++l)
        tail += f.layers[l].tail_estimate(std::exp(-2 * kPi * Y)) * std::max(1.0, std::pow(Y, k - 1.0 - l)) *
                std::log(T / Y);
    return {closed + num.value, num.err + tail + 8 * kEps * std::abs(pref) * scale};
}

// Sing of a [0, r, j] representative
cplx sing_rep(const NearlyHolForm& f, const QuadForm& rep, double T) {
    const int k = f.weight / 2;
    const double r = static_cast<double>(rep.b);
    const double x = -static_cast<double>(rep.c) / r;
    cplx s = 0;
    for (int l = 0; l <= f.depth(); ++l) {
        const QSeries& layer = f.layers[l];
        for (int n = layer.nmin(); n <= layer.nmax(); ++n) {
            double c = layer.coeff(n);
            if (c != 0) s += c * expi2pi(n * x) * phi_sing(n, k - l, T, 2 * kPi);
        }
    }
    return ipow(k) * std::pow(r, k - 1) * s;
}

}  // namespace

TraceValue trace_cm(const NearlyHolForm& f, i64 d) {
    require_weight0(f, "trace_cm");
    if (d >= 0) throw std::domain_error("trace_cm: negative discriminant required");
    TraceValue out{0, 0, 0};
    for (const auto& lam : positive_reps(d)) {
        CMPoint p = cm_point(lam);
        EvalResult e = evaluate_checked(f, p.z, kEvalTol);
        double w = 2.0 / p.stabilizer_order;
        out.value += w * e.value;
        out.err += w * e.err;
    }
    return out;
}

TraceValue twisted_cm(const NearlyHolForm& f, i64 Delta, i64 D) {
    require_weight0(f, "twisted_cm");
    if (Delta >= 0 || !is_fundamental(Delta)) throw std::domain_error("twisted_cm: fundamental Delta < 0 required");
    if (D <= 0) throw std::domain_error("twisted_cm: D > 0 required");
    TraceValue out{0, 0, 0};
    for (const auto& lam : positive_reps(Delta * D)) {
        int chi = genus_char(Delta, lam);
        if (chi == 0) continue;
        CMPoint p = cm_point(lam);
        EvalResult e = evaluate_checked(f, p.z, kEvalTol);
        double w = static_cast<double>(chi) / p.stabilizer_order;
        out.value += w * e.value;
        out.err += std::abs(w) * e.err;
    }
    return out;
}

TraceValue cycle_integral(const NearlyHolForm& f, const QuadForm& lambda, const TraceOptions& opt) {
    GeodesicData g = geodesic_data(lambda);
    const int k = f.weight / 2;
    const double A = static_cast<double>(lambda.a), B = static_cast<double>(lambda.b),
                 C = static_cast<double>(lambda.c);
    const double c0 = g.center, R = g.radius;
    const double period = 2 * std::acosh(0.5 * static_cast<double>(g.automorph.trace()));
    // s increases from the left endpoint to the right one
    const int sigma = (lambda.a > 0 ? -1 : 1) * opt.orientation;
    double eval_err = 0;
    auto integrand = [&](double s) {
        double th = std::tanh(s), sh = 1 / std::cosh(s);
        cplx z(c0 + R * th, R * sh);
        cplx dz(R * sh * sh, -R * sh * th);
        cplx lz = (A * z + B) * z + C;
        EvalResult e = evaluate_checked(f, z, kEvalTol);
        double m = std::abs(std::pow(lz, k - 1) * dz);
        eval_err = std::max(eval_err, e.err * m);
        return e.value * std::pow(lz, k - 1) * dz;
    };
    Quad q = periodic_trapezoid(integrand, 0.0, period, opt);
    return {static_cast<double>(sigma) * q.value, q.err + eval_err * period, 0};
}

TraceValue trace_cycle(const NearlyHolForm& f, i64 d, const TraceOptions& opt) {
    if (d <= 0) throw std::domain_error("trace_cycle: positive discriminant required");
    if (is_square(d)) throw std::domain_error("trace_cycle: square discriminant, use trace_square");
    TraceValue out{0, 0, 0};
    for (const auto& lam : class_reps(d)) {
        TraceValue t = cycle_integral(f, lam, opt);
        out.value += t.value;
        out.err += t.err;
    }
    return out;
}

cplx sing_term(const NearlyHolForm& f, const QuadForm& lambda, double T) {
    return sing_rep(f, square_rep(lambda, "sing_term"), T);
}

TraceValue split_trace(const NearlyHolForm& f, const QuadForm& lambda, double T, const TraceOptions& opt) {
    if (!(T >= kCuspHeight)) throw std::domain_error("split_trace: cutoff T >= 1 required");
    const QuadForm rep = square_rep(lambda, "split_trace");
    // the geodesic is traversed upward; -lambda sees the lower cusp at infinity
    const QuadForm opp = square_rep(-rep, "split_trace");
    const int k = f.weight / 2;
    const double r = static_cast<double>(rep.b);
    const double x = -static_cast<double>(rep.c) / r;
    const i64 qden = rep.b / std::gcd(rep.b, rep.c);
    const double Y = kCuspHeight;
    const double ylo = 1.0 / (static_cast<double>(qden) * qden * Y);

    double eval_err = 0;
    const cplx pref = ipow(k) * std::pow(r, k - 1);
    auto middle = [&](double u) {
        double y = std::exp(u);
        EvalResult e = evaluate_checked(f, cplx(x, y), kEvalTol);
        double m = std::abs(pref) * std::pow(y, static_cast<double>(k));
        eval_err = std::max(eval_err, e.err * m);
        return pref * e.value * std::pow(y, static_cast<double>(k));
    };
    Quad mid = gauss_panels(middle, std::log(ylo), std::log(Y), opt);
    Quad top = cusp_piece(f, rep, Y, T, opt);
    Quad bottom = cusp_piece(f, opp, Y, T, opt);
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    TraceValue out;
    out.value = mid.value + top.value + sign * bottom.value;
    out.err = mid.err + eval_err * std::log(Y / ylo) + top.err + bottom.err;
    out.regularization_T = T;
    return out;
}

TraceValue trace_square(const NearlyHolForm& f, i64 d, double T, const TraceOptions& opt) {
    i64 r = square_root_or_throw(d, "trace_square");
    TraceValue out{0, 0, T};
    for (i64 j = 0; j < r; ++j) {
        TraceValue t = split_trace(f, QuadForm{0, r, j}, T, opt);
        out.value += 2.0 * t.value;
        out.err += 2.0 * t.err;
    }
    return out;
}

TraceValue trace_zero(const NearlyHolForm& f) {
    const int k = f.weight / 2;
    if (k < 0) throw std::domain_error("trace_zero: nonnegative weight required");
    double c = f.depth() >= 0 ? f.coeff(0, 0) : 0.0;
    double z;
    if (k == 0) {
        z = kEulerGamma;
    } else if (k == 1) {
        z = -0.5;
    } else {
        Rational b = -bernoulli(k).second / Rational(k);
        z = b.get_d();
    }
    return {c * z, 0, 0};
}

TraceValue trace_d(const NearlyHolForm& f, i64 d, const TraceOptions& opt) {
    if (d != 0 && ((d % 4) + 4) % 4 > 1) throw std::domain_error("trace_d: d must be 0 or 1 mod 4");
    if (d < 0) return trace_cm(f, d);
    if (d == 0) return trace_zero(f);
    if (is_square(d)) return trace_square(f, d, opt.reg_T, opt);
    return trace_cycle(f, d, opt);
}

TraceValue twisted_trace(const NearlyHolForm& f, i64 Delta, i64 D, const TraceOptions& opt) {
    if (Delta >= 0 || !is_fundamental(Delta))
        throw std::domain_error("twisted_trace: fundamental Delta < 0 required");
    if (D >= 0 || ((D % 4) + 4) % 4 > 1) throw std::domain_error("twisted_trace: discriminant D < 0 required");
    const i64 d = Delta * D;
    const bool square = is_square(d);
    TraceValue out{0, 0, square ? opt.reg_T : 0};
    for (const auto& lam : class_reps(d)) {
        int chi = genus_char(Delta, lam);
        if (chi == 0) continue;
        TraceValue t = square ? split_trace(f, lam, opt.reg_T, opt) : cycle_integral(f, lam, opt);
        out.value += static_cast<double>(chi) * t.value;
        out.err += t.err;
    }
    return out;
}

}  // namespace shintani
