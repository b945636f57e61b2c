#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "shintani/lift.hpp"
#include "shintani/specfun.hpp"

using namespace shintani;

namespace {

NearlyHolForm J_form() { return holomorphic(0, j_normalized(80)); }

const LiftTerm* find(const LiftExpansion& L, i64 d, TermKind kind) {
    for (const auto& t : L.terms)
        if (t.d == d && t.kind == kind) return &t;
    return nullptr;
}

cplx qpow(i64 e, cplx tau) { return std::exp(cplx(0, 2 * kPi * static_cast<double>(e)) * tau); }

// xi_{3/2} F = 2 i y^{3/2} conj(dF/dtaubar) by fourth-order differences
cplx xi_numeric(const LiftTerm& t, cplx tau, double h = 1e-3) {
    auto F = [&](cplx z) { return evaluate_term(t, z); };
    auto d = [&](cplx dir) {
        cplx s = h * dir;
        return (8.0 * (F(tau + s) - F(tau - s)) - (F(tau + 2.0 * s) - F(tau - 2.0 * s))) / (12 * h);
    };
    cplx dbar = 0.5 * (d(1) + cplx(0, 1) * d(cplx(0, 1)));
    return cplx(0, 2) * std::pow(tau.imag(), 1.5) * std::conj(dbar);
}

}  // namespace

TEST_CASE("cycjE2 lift: holomorphic part") {
    auto L = lift_jE2(-3, 12);
    CHECK(L.k == 1);
    CHECK(L.delta == -3);
    CHECK(plus_space_support(L));
    const LiftTerm* c0 = find(L, 0, TermKind::holo);
    REQUIRE(c0);
    CHECK(c0->coeff.real() == doctest::Approx(48));
    for (i64 d : {1, 2}) {
        const LiftTerm* t = find(L, d, TermKind::holo);
        CHECK((t == nullptr || std::abs(t->coeff) < 1e-5));
    }
    // q^{|D|} coefficients are the twisted traces of J E2*
    auto JE = multiply(J_form(), e2_star());
    for (i64 D : {-3, -4, -7, -8}) {
        const LiftTerm* t = find(L, -D, TermKind::holo);
        REQUIRE(t);
        CHECK(std::abs(t->coeff - twisted_trace(JE, -3, D).value) < 1e-9);
    }
    auto L4 = lift_jE2(-4, 8);
    CHECK(find(L4, 0, TermKind::holo)->coeff.real() == doctest::Approx(96));
    CHECK_THROWS_AS(lift_jE2(-12, 8), std::domain_error);
    CHECK_THROWS_AS(lift_jE2(5, 8), std::domain_error);
}

TEST_CASE("cycjE2 lift: shadow") {
    // Zagier's weight 1/2 forms f_3 and f_4, coefficients of q^1, q^4, q^5, q^8
    const std::map<i64, std::vector<double>> zagier = {{-3, {-248, 26752, -85995, 1707264}},
                                                       {-4, {492, 143376, 565760, 18473000}}};
    const double s = 3 / (2 * kPi);
    for (const auto& [Delta, coeffs] : zagier) {
        auto L = lift_jE2(Delta, 9);
        auto sh = xi_shadow(L);
        CHECK(sh.at(Delta).real() == doctest::Approx(s).epsilon(1e-12));
        const i64 idx[] = {1, 4, 5, 8};
        for (int i = 0; i < 4; ++i) CHECK(sh.at(idx[i]).real() == doctest::Approx(s * coeffs[i]).epsilon(1e-9));
        // the J_1 term maps with a plus sign, the h_1 terms with a minus sign
        const LiftTerm* jt = find(L, -Delta, TermKind::J_shape);
        REQUIRE(jt);
        CHECK(jt->coeff.real() > 0);
        CHECK(sh.at(Delta).real() > 0);
        const LiftTerm* h1 = find(L, -1, TermKind::h_shape);
        REQUIRE(h1);
        CHECK(sh.at(1).real() * h1->coeff.real() < 0);
    }
}

TEST_CASE("termwise xi image against finite differences") {
    auto L = lift_jE2(-3, 8);
    for (const auto& t : L.terms) {
        if (t.kind == TermKind::holo) continue;
        LiftExpansion one = L;
        one.terms = {t};
        auto sh = xi_shadow(one);
        REQUIRE(sh.size() == 1);
        for (cplx tau : {cplx(0.13, 0.9), cplx(-0.3, 1.2)}) {
            cplx expect = sh.begin()->second * qpow(sh.begin()->first, tau);
            cplx num = xi_numeric(t, tau);
            INFO(t.d, " ", kind_name(t.kind));
            CHECK(std::abs(num - expect) < 1e-7 * std::max(1.0, std::abs(expect)));
        }
    }
    LiftExpansion bad;
    bad.k = 1;
    bad.terms = {{0, TermKind::ypow, 1, {1}}};
    CHECK_THROWS_AS(xi_shadow(bad), std::domain_error);
}

TEST_CASE("E2k lift coefficients") {
    auto L = lift_e2k(2, 12);
    CHECK(L.k == 2);
    CHECK(plus_space_support(L));
    const LiftTerm* b1 = find(L, 0, TermKind::ypow);
    REQUIRE(b1);
    CHECK(b1->coeff.real() == doctest::Approx(kEulerGamma).epsilon(1e-14));
    CHECK(b1->params == std::vector<double>{1});
    const LiftTerm* q = find(L, 0, TermKind::const_pow);
    REQUIRE(q);
    CHECK(q->coeff.real() == doctest::Approx(kSqrt2Pi / 6));
    CHECK(q->params == std::vector<double>{0.5});
    const LiftTerm* h = find(L, -3, TermKind::h_shape);
    REQUIRE(h);
    CHECK(h->coeff.real() == doctest::Approx(2 * kSqrt2Pi / 3 * std::sqrt(3.0)));
    const LiftTerm* lg = find(L, 0, TermKind::log_shape);
    REQUIRE(lg);
    CHECK(lg->coeff.real() == doctest::Approx(-1));
    CHECK(lg->params[1] == doctest::Approx(c_const(2)));
    // -2 i^2 a^2 at q^{a^2}
    for (i64 a : {1, 2, 3}) CHECK(find(L, a * a, TermKind::I_shape)->coeff.real() == doctest::Approx(2.0 * a * a));
    // holomorphic constant: Tr_0((pi/3 E2*)^2) / 2! = (pi/3)^2 zeta(-1) / 2
    CHECK(find(L, 0, TermKind::holo)->coeff.real() == doctest::Approx(-(kPi / 3) * (kPi / 3) / 24));
    CHECK_THROWS_AS(lift_e2k(3, 4), std::domain_error);
    CHECK_THROWS_AS(lift_e2k(0, 4), std::domain_error);
}

TEST_CASE("lowering: symbolic rules against finite differences") {
    auto L2 = lift_e2k(2, 20);
    auto r = lower_check(L2);
    CHECK(r.points.size() == 5);
    for (cplx p : r.points) CHECK((p.imag() >= 0.8 && p.imag() <= 1.5));
    CHECK(r.max_deviation < 1e-5);
    CHECK(lower_check(lift_e2k(4, 12)).max_deviation < 1e-5);
    CHECK(lower_check(lift_nearly_hol(J_form(), 8)).max_relative < 1e-7);
    CHECK(lower_check(lift_jE2(-4, 8)).max_relative < 1e-6);
    // holomorphic terms map to zero, h_l to h_{l-2} with -1/(16 pi |d|)
    auto img = lower_terms({{5, TermKind::holo, 2.0, {}}, {-3, TermKind::h_shape, 1.0, {2}}});
    REQUIRE(img.size() == 1);
    CHECK(img[0].kind == TermKind::h_shape);
    CHECK(img[0].params[0] == 0);
    CHECK(img[0].coeff.real() == doctest::Approx(-1 / (48 * kPi)));
}

TEST_CASE("E2k lift: image under -16 pi L") {
    // non-square-index part of the image for k = 2
    auto L = lift_e2k(2, 12);
    std::vector<LiftTerm> img;
    for (const auto& t : lower_terms(L.terms))
        if (t.kind != TermKind::I_shape && !(t.d > 0 && is_square(t.d))) img.push_back(t);
    auto one = constant_form(1);
    for (cplx tau : {cplx(0.1, 0.9), cplx(-0.2, 1.3)}) {
        const double y = tau.imag();
        cplx got = 0;
        for (const auto& t : img) got += -16 * kPi * evaluate_term(t, tau);
        cplx expect = kEulerGamma;
        for (i64 d = 5; d <= 12; ++d)
            if (d % 4 <= 1 && !is_square(d)) expect += trace_cycle(one, d).value * qpow(d, tau);
        for (i64 d = -3; d >= -12; --d) {
            if (((d % 4) + 4) % 4 > 1) continue;
            double ad = -static_cast<double>(d);
            expect += 2 * kSqrt2Pi * hurwitz(-d).get_d() * h_fn(0, 2 * std::sqrt(2 * kPi * ad * y)) * qpow(d, tau) /
                      std::sqrt(ad);
        }
        expect += -(std::log(std::sqrt(8 * kPi * y)) + (kEulerGamma + std::log(2.0)) / 2 - 1.5) +
                  2 * kPi / 3 * std::sqrt(y);
        CHECK(std::abs(got - expect) < 1e-9);
    }
}

TEST_CASE("nearly holomorphic lift") {
    // weakly holomorphic input of weight 4: only holomorphic trace terms
    auto E4 = holomorphic(4, eisenstein(4));
    auto M = lift_nearly_hol(E4, 12);
    for (const auto& t : M.terms) CHECK(t.kind == TermKind::holo);
    CHECK(find(M, 0, TermKind::holo)->coeff.real() == doctest::Approx(-1.0 / 12));
    CHECK(std::abs(find(M, 5, TermKind::holo)->coeff - trace_cycle(E4, 5).value) < 1e-14);
    CHECK(lift_nearly_hol(NearlyHolForm{4, {}}, 8).terms.empty());
    // k = 0, f = J: nonsquare coefficients are the cycle traces; regularized constant term
    auto K = lift_nearly_hol(J_form(), 8);
    CHECK(std::abs(find(K, 5, TermKind::holo)->coeff - trace_cycle(J_form(), 5).value) < 1e-12);
    const LiftTerm* c = find(K, 0, TermKind::const_pow);
    REQUIRE(c);
    CHECK(c->coeff.real() == doctest::Approx(2 * (-8 * kPi) / std::sqrt(8 * kPi)).epsilon(1e-9));
    CHECK(plus_space_support(K));
    // the hypothesis c(0,k) = 0
    auto f = power(scale(e2_star(), kPi / 3), 2);
    CHECK_THROWS_AS(lift_nearly_hol(f, 8), PreconditionError);
    CHECK_THROWS_AS(lift_nearly_hol(e2_star(), 8), std::domain_error);
}

TEST_CASE("nearly holomorphic lift of (pi/3 E2*)^2 against the E2k lift") {
    auto f = power(scale(e2_star(), kPi / 3), 2);
    auto N = lift_nearly_hol(f, 12, {}, false);
    auto E = lift_e2k(2, 12);
    int shared = 0;
    for (const auto& t : E.terms) {
        if (t.kind == TermKind::log_shape || t.kind == TermKind::I_shape) continue;
        const LiftTerm* u = nullptr;
        for (const auto& s : N.terms)
            if (s.d == t.d && s.kind == t.kind && s.params == t.params) u = &s;
        INFO(t.d, " ", kind_name(t.kind));
        REQUIRE(u);
        CHECK(std::abs(u->coeff / 2.0 - t.coeff) < 1e-9 * std::max(1.0, std::abs(t.coeff)));
        ++shared;
    }
    CHECK(shared + 4 == static_cast<int>(E.terms.size()));  // log term plus I-shapes at 1, 4, 9
    CHECK(N.terms.size() == static_cast<std::size_t>(shared));
}

TEST_CASE("regularized integral") {
    CHECK(regularized_integral(constant_form(1)) == doctest::Approx(kPi / 3).epsilon(1e-12));
    CHECK(regularized_integral(J_form()) == doctest::Approx(-8 * kPi).epsilon(1e-10));
    CHECK_THROWS_AS(regularized_integral(e2_star()), std::domain_error);
}

TEST_CASE("evaluation") {
    LiftExpansion one;
    one.d_max = 10;
    one.terms = {{3, TermKind::holo, cplx(2, -1), {}}};
    cplx tau(0.17, 0.6);
    CHECK(std::abs(evaluate_lift(one, tau).value - cplx(2, -1) * qpow(3, tau)) < 1e-15);
    // h-shape terms decay like exp(-2 pi |d| y)
    LiftTerm h{-3, TermKind::h_shape, 1, {2}};
    CHECK(std::abs(evaluate_term(h, {0, 1})) < std::exp(-2 * kPi * 3));
    CHECK(std::abs(evaluate_term(h, {0, 1})) > 0);
    // growing coefficients cannot be certified
    LiftExpansion grow;
    grow.d_max = 12;
    for (i64 d = 0; d <= 12; ++d) grow.terms.push_back({d, TermKind::holo, std::exp(2 * kPi * 1.5 * d), {}});
    CHECK_THROWS_AS(evaluate_lift(grow, {0, 1}), std::runtime_error);
    auto L = lift_e2k(2, 20);
    auto v = evaluate_lift(L, {0.1, 1.0});
    CHECK(v.err < 1e-8);
    CHECK(std::isfinite(v.value.real()));
    CHECK_THROWS_AS(evaluate_lift(L, {0.1, -1.0}), std::domain_error);
}

TEST_CASE("JSON round trip") {
    for (const LiftExpansion& L : {lift_jE2(-3, 8), lift_e2k(2, 8), lift_nearly_hol(J_form(), 8)}) {
        std::string s = to_json(L);
        CHECK(lift_from_json(s) == L);
        CHECK(to_json(lift_from_json(s)) == s);
    }
    CHECK(to_json(lift_jE2(-3, 8)).find("\"delta\":-3") != std::string::npos);
    CHECK_THROWS_AS(lift_from_json("{\"theorem\":1}"), std::invalid_argument);
    CHECK_THROWS_AS(lift_from_json("not json"), std::invalid_argument);
}

TEST_CASE("theta-kernel oracle") {
    auto one = constant_form(1);
    auto J = J_form();
    for (const NearlyHolForm* f : {&one, &J}) {
        auto o = theta_oracle(*f, 5);
        double tr = trace_cycle(*f, 20).value.real();
        CHECK(std::abs(o.value - tr) < 1e-3);
        CHECK(std::abs(o.value - tr) < 1e-8 * std::max(1.0, std::abs(tr)));
        CHECK(o.err < 1e-6);
    }
    // independent of v, and other indices
    CHECK(theta_oracle(one, 5, 0.7).value == doctest::Approx(trace_cycle(one, 20).value.real()).epsilon(1e-8));
    CHECK(theta_oracle(J, 3).value == doctest::Approx(trace_cycle(J, 12).value.real()).epsilon(1e-8));
    CHECK_THROWS_AS(theta_oracle(one, 4), std::domain_error);
    CHECK_THROWS_AS(theta_oracle(e2_star(), 5), std::domain_error);
    CHECK_THROWS_AS(theta_oracle(J, 5, 1, 2.0), std::runtime_error);
}
