// Copyright 2026 The shintani authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end over the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "shintani/shintani.h"

namespace {

enum Exit { kOk = 0, kUsage = 2, kPrecondition = 3, kNumeric = 4 };

struct Failure {
    int code;
    std::string msg;
};

int exit_code(shn_status s) {
    switch (s) {
        case SHN_OK: return kOk;
        case SHN_ERR_PRECONDITION: return kPrecondition;
        case SHN_ERR_NUMERIC: return kNumeric;
        case SHN_ERR_INTERNAL: return 1;
        default: return kUsage;
    }
}

void check(shn_status s) {
    if (s != SHN_OK) throw Failure{exit_code(s), shn_last_error()};
}

std::string num(double v) {
    if (v == 0) v = 0;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string take(char* s) {
    std::string out = s;
    shn_string_free(s);
    return out;
}

struct FormHandle {
    shn_form* f = nullptr;
    ~FormHandle() { shn_form_free(f); }
};

struct LiftHandle {
    shn_lift* L = nullptr;
    ~LiftHandle() { shn_lift_free(L); }
};

void load_form(const std::string& name, int q_order, FormHandle& h) {
    if (name.rfind("file:", 0) == 0) {
        std::ifstream in(name.substr(5));
        if (!in) throw Failure{kUsage, "cannot read form file '" + name.substr(5) + "'"};
        std::stringstream ss;
        ss << in.rdbuf();
        check(shn_form_from_json(ss.str().c_str(), &h.f));
    } else {
        check(shn_form_named(name.c_str(), q_order, &h.f));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Traces of nearly holomorphic modular forms and their Shintani lifts"};
    app.require_subcommand(1);
    app.fallthrough();

    shn_config cfg;
    shn_config_default(&cfg);
    std::string output = "json", precision = "double";
    app.add_option("--q-order", cfg.q_order, "q-expansion truncation order")->check(CLI::PositiveNumber);
    app.add_option("--quad-nodes", cfg.quad_nodes, "initial quadrature nodes")->check(CLI::PositiveNumber);
    app.add_option("--tol", cfg.tol, "relative tolerance")->check(CLI::Range(0.0, 1.0));
    app.add_option("--reg-T", cfg.reg_T, "split-geodesic regularization height")->check(CLI::PositiveNumber);
    app.add_option("--output", output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--precision", precision, "double or extended")->check(CLI::IsMember({"double", "extended"}));

    long long n1 = 0, n2 = 0;
    auto* classnum = app.add_subcommand("classnum", "Hurwitz class numbers H(n) for n1 <= n <= n2");
    classnum->add_option("n1", n1)->required();
    classnum->add_option("n2", n2)->required();

    std::string family;
    int index = 0;
    auto* poly = app.add_subcommand("poly", "exact rational polynomial");
    poly->add_option("family", family, "P, Q, He, Pi, Omega or E")->required();
    poly->add_option("index", index)->required();

    std::string kind, form = "J", theorem;
    long long d = 0, delta = 0, D = 0;
    int k = 2, dmax = 20;
    auto* trace = app.add_subcommand("trace", "trace of a form");
    trace->add_option("kind", kind, "cm, cycle, square or twisted")
        ->required()
        ->check(CLI::IsMember({"cm", "cycle", "square", "twisted"}));
    auto* d_opt = trace->add_option("--d", d, "discriminant");
    auto* delta_opt = trace->add_option("--delta", delta, "fundamental discriminant Delta < 0");
    auto* D_opt = trace->add_option("--D", D, "discriminant D < 0");
    trace->add_option("--form", form, "J, E2star, JE2star, E2k:<k> or file:<path>");

    auto* lift = app.add_subcommand("lift", "Fourier expansion of a lift");
    lift->add_option("theorem", theorem, "cycjE2, E2klift or liftnoc0k")
        ->required()
        ->check(CLI::IsMember({"cycjE2", "E2klift", "liftnoc0k"}));
    lift->add_option("--dmax", dmax, "largest |d| in the expansion")->check(CLI::NonNegativeNumber);
    auto* ldelta = lift->add_option("--delta", delta, "fundamental discriminant Delta < 0");
    auto* lk = lift->add_option("--k", k, "weight parameter k");
    lift->add_option("--form", form, "input form for liftnoc0k");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (precision == "extended") throw Failure{kUsage, "--precision extended is not supported; use double"};
        if (*classnum) {
            if (n1 < 0 || n2 < n1) throw Failure{kUsage, "classnum: need 0 <= n1 <= n2"};
            std::string body = output == "csv" ? "n,H\n" : "[";
            bool first = true;
            for (long long n = n1; n <= n2; ++n) {
                if (n % 4 == 1 || n % 4 == 2) continue;
                std::string h = take([&] {
                    char* s = nullptr;
                    check(shn_hurwitz(n, &s));
                    return s;
                }());
                if (output == "csv")
                    body += std::to_string(n) + "," + h + "\n";
                else {
                    body += (first ? "" : ",") + std::string("{\"n\":") + std::to_string(n) + ",\"H\":\"" + h + "\"}";
                    first = false;
                }
            }
            std::cout << body << (output == "csv" ? "" : "]\n");
        } else if (*poly) {
            char* s = nullptr;
            check(shn_poly(family.c_str(), index, &s));
            std::cout << take(s) << "\n";
        } else if (*trace) {
            FormHandle f;
            load_form(form, cfg.q_order, f);
            shn_value v{};
            if (kind == "twisted") {
                if (!*delta_opt || !*D_opt) throw Failure{kUsage, "trace twisted needs --delta and --D"};
                check(shn_trace_twisted(f.f, delta, D, &cfg, &v));
            } else {
                if (!*d_opt) throw Failure{kUsage, "trace " + kind + " needs --d"};
                shn_status s = shn_trace(f.f, kind.c_str(), d, &cfg, &v);
                if (s == SHN_ERR_ARGUMENT && kind == "cycle" && std::string(shn_last_error()).find("square") != std::string::npos)
                    throw Failure{kUsage, std::string(shn_last_error()) + " (run: trace square --d " + std::to_string(d) + ")"};
                check(s);
            }
            if (output == "csv") {
                std::cout << "kind,d,delta,D,form,value,value_im,err,regularization_T\n"
                          << kind << "," << (kind == "twisted" ? "" : std::to_string(d)) << ","
                          << (kind == "twisted" ? std::to_string(delta) : "") << ","
                          << (kind == "twisted" ? std::to_string(D) : "") << "," << form << "," << num(v.re) << ","
                          << num(v.im) << "," << num(v.err) << "," << num(v.regularization_T) << "\n";
            } else {
                std::string idx = kind == "twisted"
                                      ? "\"delta\":" + std::to_string(delta) + ",\"D\":" + std::to_string(D)
                                      : "\"d\":" + std::to_string(d);
                std::cout << "{\"kind\":\"" << kind << "\"," << idx << ",\"form\":\"" << form << "\",\"value\":"
                          << num(v.re) << ",\"value_im\":" << num(v.im) << ",\"err\":" << num(v.err)
                          << ",\"regularization_T\":" << num(v.regularization_T) << "}\n";
            }
        } else if (*lift) {
            if (output != "json") throw Failure{kUsage, "lift output is JSON only"};
            LiftHandle L;
            if (theorem == "cycjE2") {
                if (!*ldelta) throw Failure{kUsage, "lift cycjE2 needs --delta"};
                check(shn_lift_jE2(delta, dmax, &cfg, &L.L));
            } else if (theorem == "E2klift") {
                check(shn_lift_e2k(k, dmax, &cfg, &L.L));
            } else {
                FormHandle f;
                load_form(form, cfg.q_order, f);
                if (*lk && shn_form_weight(f.f) != 2 * k)
                    throw Failure{kUsage, "liftnoc0k: form weight " + std::to_string(shn_form_weight(f.f)) +
                                              " does not match 2k = " + std::to_string(2 * k)};
                check(shn_lift_nearly_hol(f.f, dmax, &cfg, &L.L));
            }
            // tail certification at tau = i
            shn_value v{};
            check(shn_lift_evaluate(L.L, 0.0, 1.0, cfg.tol, &v));
            char* s = nullptr;
            check(shn_lift_to_json(L.L, &s));
            std::cout << take(s) << "\n";
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.msg << "\n";
        return f.code;
    }
    return kOk;
}
