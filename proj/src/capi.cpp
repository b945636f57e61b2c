// Copyright 2026 The shintani authors.
// SPDX-License-Identifier: Apache-2.0

#include "shintani/shintani.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "shintani/lift.hpp"
#include "shintani/specfun.hpp"

struct shn_form {
    shintani::NearlyHolForm f;
};

struct shn_lift {
    shintani::LiftExpansion L;
};

namespace {

thread_local std::string g_error;

shn_status fail(shn_status s, const std::string& msg) {
    g_error = msg;
    return s;
}

template <class F>
shn_status guarded(F&& body, shn_status invalid_arg = SHN_ERR_ARGUMENT) {
    try {
        g_error.clear();
        body();
        return SHN_OK;
    } catch (const shintani::PreconditionError& e) {
        return fail(SHN_ERR_PRECONDITION, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(invalid_arg, e.what());
    } catch (const std::domain_error& e) {
        return fail(SHN_ERR_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(SHN_ERR_NUMERIC, e.what());
    } catch (const std::runtime_error& e) {
        return fail(SHN_ERR_NUMERIC, e.what());
    } catch (const std::exception& e) {
        return fail(SHN_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(SHN_ERR_INTERNAL, "unknown exception");
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

shintani::TraceOptions options(const shn_config* cfg) {
    shn_config c;
    shn_config_default(&c);
    if (cfg) c = *cfg;
    if (c.quad_nodes <= 0 || !(c.tol > 0) || !(c.tol < 1) || !(c.reg_T > 0) || c.q_order <= 0)
        throw std::domain_error("configuration values must be positive and tol < 1");
    shintani::TraceOptions o;
    o.quad_nodes = c.quad_nodes;
    o.tol = c.tol;
    o.reg_T = c.reg_T;
    return o;
}

int q_order_of(const shn_config* cfg) { return cfg ? cfg->q_order : shintani::kDefaultQOrder; }

void need(const void* p, const char* what) {
    if (!p) throw std::domain_error(std::string(what) + " must not be null");
}

void put(shn_value* out, const shintani::TraceValue& t) {
    out->re = t.value.real();
    out->im = t.value.imag();
    out->err = t.err;
    out->regularization_T = t.regularization_T;
}

}  // namespace

extern "C" {

const char* shn_version(void) { return "1.0.0"; }

const char* shn_last_error(void) { return g_error.c_str(); }

void shn_config_default(shn_config* cfg) {
    if (!cfg) return;
    cfg->q_order = shintani::kDefaultQOrder;
    cfg->quad_nodes = 128;
    cfg->tol = 1e-8;
    cfg->reg_T = 8;
}

void shn_string_free(char* s) { std::free(s); }

shn_status shn_hurwitz(long long n, char** out) {
    return guarded([&] {
        need(out, "out");
        if (n < 0) throw std::domain_error("hurwitz: n >= 0 required");
        *out = dup(shintani::hurwitz(n).get_str());
    });
}

shn_status shn_poly(const char* family, int index, char** out) {
    return guarded([&] {
        need(family, "family");
        need(out, "out");
        const std::string f = family;
        if (index < 0 && f != "Q") throw std::domain_error("poly: nonnegative index required");
        std::string s;
        if (f == "P")
            s = shintani::p_poly(index).str();
        else if (f == "Q")
            s = shintani::q_poly(index).str();
        else if (f == "He")
            s = shintani::hermite(index).str();
        else if (f == "Pi")
            s = shintani::pi_poly(index).str("w", "z");
        else if (f == "Omega")
            s = shintani::omega_poly(index).str();
        else if (f == "E")
            s = shintani::e_poly(index).str();
        else
            throw std::domain_error("poly: unknown family '" + f + "' (P, Q, He, Pi, Omega, E)");
        *out = dup(s);
    });
}

shn_status shn_special(const char* name, int nu, double x, double* out) {
    return guarded([&] {
        need(name, "name");
        need(out, "out");
        const std::string n = name;
        if (n == "h")
            *out = shintani::h_fn(nu, x);
        else if (n == "J")
            *out = shintani::j_fn(nu, x);
        else if (n == "I")
            *out = shintani::i_simple(nu, x);
        else
            throw std::domain_error("special: unknown function '" + n + "' (h, J, I)");
    });
}

shn_status shn_form_named(const char* name, int q_order, shn_form** out) {
    return guarded([&] {
        need(name, "name");
        need(out, "out");
        using namespace shintani;
        if (q_order <= 0) throw std::domain_error("q_order must be positive");
        const std::string n = name;
        NearlyHolForm f;
        if (n == "J")
            f = holomorphic(0, j_normalized(q_order));
        else if (n == "E2star")
            f = e2_star(q_order);
        else if (n == "JE2star")
            f = multiply(holomorphic(0, j_normalized(q_order)), e2_star(q_order));
        else if (n == "one")
            f = constant_form(1);
        else if (n.rfind("E2k:", 0) == 0) {
            char* end = nullptr;
            long k = std::strtol(n.c_str() + 4, &end, 10);
            if (*end || k < 0 || k > 64) throw std::domain_error("form: bad exponent in '" + n + "'");
            f = power(scale(e2_star(q_order), kPi / 3), static_cast<int>(k));
        } else
            throw std::domain_error("form: unknown name '" + n + "' (J, E2star, JE2star, E2k:<k>, one)");
        *out = new shn_form{std::move(f)};
    });
}

shn_status shn_form_from_json(const char* text, shn_form** out) {
    return guarded(
        [&] {
            need(text, "text");
            need(out, "out");
            *out = new shn_form{shintani::form_from_json(text)};
        },
        SHN_ERR_PARSE);
}

shn_status shn_form_to_json(const shn_form* f, char** out) {
    return guarded([&] {
        need(f, "form");
        need(out, "out");
        *out = dup(shintani::to_json(f->f));
    });
}

int shn_form_weight(const shn_form* f) { return f ? f->f.weight : 0; }

void shn_form_free(shn_form* f) { delete f; }

shn_status shn_trace(const shn_form* f, const char* kind, long long d, const shn_config* cfg, shn_value* out) {
    return guarded([&] {
        need(f, "form");
        need(kind, "kind");
        need(out, "out");
        using namespace shintani;
        const TraceOptions opt = options(cfg);
        const std::string k = kind;
        if (k == "cm")
            put(out, trace_cm(f->f, d));
        else if (k == "cycle")
            put(out, trace_cycle(f->f, d, opt));
        else if (k == "square")
            put(out, trace_square(f->f, d, opt.reg_T, opt));
        else if (k == "zero") {
            if (d != 0) throw std::domain_error("trace zero: d must be 0");
            put(out, trace_zero(f->f));
        } else if (k == "any")
            put(out, trace_d(f->f, d, opt));
        else
            throw std::domain_error("trace: unknown kind '" + k + "' (cm, cycle, square, zero, any)");
    });
}

shn_status shn_trace_twisted(const shn_form* f, long long Delta, long long D, const shn_config* cfg,
                             shn_value* out) {
    return guarded([&] {
        need(f, "form");
        need(out, "out");
        put(out, shintani::twisted_trace(f->f, Delta, D, options(cfg)));
    });
}

shn_status shn_lift_jE2(long long Delta, int d_max, const shn_config* cfg, shn_lift** out) {
    return guarded([&] {
        need(out, "out");
        *out = new shn_lift{shintani::lift_jE2(Delta, d_max, options(cfg), q_order_of(cfg))};
    });
}

shn_status shn_lift_e2k(int k, int d_max, const shn_config* cfg, shn_lift** out) {
    return guarded([&] {
        need(out, "out");
        *out = new shn_lift{shintani::lift_e2k(k, d_max, options(cfg), q_order_of(cfg))};
    });
}

shn_status shn_lift_nearly_hol(const shn_form* f, int d_max, const shn_config* cfg, shn_lift** out) {
    return guarded([&] {
        need(f, "form");
        need(out, "out");
        *out = new shn_lift{shintani::lift_nearly_hol(f->f, d_max, options(cfg))};
    });
}

shn_status shn_lift_from_json(const char* text, shn_lift** out) {
    return guarded(
        [&] {
            need(text, "text");
            need(out, "out");
            *out = new shn_lift{shintani::lift_from_json(text)};
        },
        SHN_ERR_PARSE);
}

shn_status shn_lift_to_json(const shn_lift* L, char** out) {
    return guarded([&] {
        need(L, "lift");
        need(out, "out");
        *out = dup(shintani::to_json(L->L));
    });
}

int shn_lift_num_terms(const shn_lift* L) { return L ? static_cast<int>(L->L.terms.size()) : 0; }

shn_status shn_lift_evaluate(const shn_lift* L, double x, double y, double tol, shn_value* out) {
    return guarded([&] {
        need(L, "lift");
        need(out, "out");
        auto v = shintani::evaluate_lift(L->L, {x, y}, tol);
        *out = {v.value.real(), v.value.imag(), v.err, 0};
    });
}

shn_status shn_lift_lower_check(const shn_lift* L, double* max_dev, double* max_rel) {
    return guarded([&] {
        need(L, "lift");
        auto r = shintani::lower_check(L->L);
        if (max_dev) *max_dev = r.max_deviation;
        if (max_rel) *max_rel = r.max_relative;
    });
}

void shn_lift_free(shn_lift* L) { delete L; }

shn_status shn_theta_oracle(const shn_form* f, long long m, double v, double T, shn_value* out) {
    return guarded([&] {
        need(f, "form");
        need(out, "out");
        auto r = shintani::theta_oracle(f->f, m, v, T);
        *out = {r.value, 0, r.err, 0};
    });
}

}  // extern "C"
