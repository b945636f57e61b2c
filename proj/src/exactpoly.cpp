// Copyright 2026 The shintani authors.
// SPDX-License-Identifier: Apache-2.0

#include "shintani/exactpoly.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace shintani {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    for (auto& v : c_) v.canonicalize();
    trim();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(int degree, const Rational& c) {
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[i];
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return Poly(std::move(r));
}

Poly Poly::operator*(const Rational& s) const {
    std::vector<Rational> r = c_;
    for (auto& v : r) v *= s;
    return Poly(std::move(r));
}

Poly operator*(const Rational& s, const Poly& p) { return p * s; }

Poly Poly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
    return Poly(std::move(r));
}

Poly Poly::shift_up(int k) const {
    if (is_zero()) return {};
    std::vector<Rational> r(k, Rational(0));
    r.insert(r.end(), c_.begin(), c_.end());
    return Poly(std::move(r));
}

Poly Poly::compose_linear(const Rational& a, const Rational& b) const {
    Poly lin(std::vector<Rational>{b, a});
    Poly acc;
    for (int i = degree(); i >= 0; --i) acc = acc * lin + constant(c_[i]);
    return acc;
}

Poly Poly::reflect() const {
    std::vector<Rational> r = c_;
    for (size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
    return Poly(std::move(r));
}

Poly Poly::rotate(int s) const {
    std::vector<Rational> r = c_;
    for (size_t m = 0; m < r.size(); ++m) {
        if (r[m] == 0) continue;
        long e = static_cast<long>(m) + s;
        if (e % 2 != 0) throw std::logic_error("Poly::rotate: result not real");
        long h = e / 2;
        if (((h % 2) + 2) % 2 == 1) r[m] = -r[m];
    }
    return Poly(std::move(r));
}

int Poly::parity() const {
    bool even = true, odd = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (i % 2) even = false; else odd = false;
    }
    if (even) return 1;
    return odd ? -1 : 0;
}

Rational Poly::eval(const Rational& x) const {
    Rational acc = 0;
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

double Poly::eval(double x) const {
    double acc = 0;
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i].get_d();
    return acc;
}

std::complex<double> Poly::eval(std::complex<double> x) const {
    std::complex<double> acc = 0;
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i].get_d();
    return acc;
}

std::vector<double> Poly::to_double() const {
    std::vector<double> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i].get_d();
    return r;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Rational v = c_[i];
        if (v == 0) continue;
        bool neg = v < 0;
        if (neg) v = -v;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool unit = (v == 1);
        if (i == 0) {
            os << v.get_str();
        } else {
            if (!unit) os << v.get_str() << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------

BiPoly BiPoly::from_x(const Poly& p) {
    BiPoly r;
    for (int i = 0; i <= p.degree(); ++i) r.set(i, 0, p.coeff(i));
    r.trim();
    return r;
}

BiPoly BiPoly::from_z(const Poly& p) {
    BiPoly r;
    for (int j = 0; j <= p.degree(); ++j) r.set(0, j, p.coeff(j));
    r.trim();
    return r;
}

int BiPoly::deg_z() const {
    int d = -1;
    for (const auto& row : c_) d = std::max(d, static_cast<int>(row.size()) - 1);
    return d;
}

Rational BiPoly::coeff(int i, int j) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    const auto& row = c_[i];
    if (j < 0 || j >= static_cast<int>(row.size())) return 0;
    return row[j];
}

void BiPoly::set(int i, int j, const Rational& v) {
    if (static_cast<int>(c_.size()) <= i) c_.resize(i + 1);
    auto& row = c_[i];
    if (static_cast<int>(row.size()) <= j) row.resize(j + 1, Rational(0));
    row[j] = v;
}

void BiPoly::trim() {
    for (auto& row : c_) {
        while (!row.empty() && row.back() == 0) row.pop_back();
    }
    while (!c_.empty() && c_.back().empty()) c_.pop_back();
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
    BiPoly r = *this;
    for (int i = 0; i <= o.deg_x(); ++i)
        for (size_t j = 0; j < o.c_[i].size(); ++j) r.set(i, j, r.coeff(i, j) + o.c_[i][j]);
    r.trim();
    return r;
}

BiPoly BiPoly::operator*(const Rational& s) const {
    BiPoly r = *this;
    for (auto& row : r.c_)
        for (auto& v : row) v *= s;
    r.trim();
    return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + o * Rational(-1); }

BiPoly BiPoly::operator*(const BiPoly& o) const {
    BiPoly r;
    for (int i = 0; i <= deg_x(); ++i)
        for (size_t j = 0; j < c_[i].size(); ++j) {
            if (c_[i][j] == 0) continue;
            for (int k = 0; k <= o.deg_x(); ++k)
                for (size_t l = 0; l < o.c_[k].size(); ++l)
                    r.set(i + k, j + l, r.coeff(i + k, j + l) + c_[i][j] * o.c_[k][l]);
        }
    r.trim();
    return r;
}

bool BiPoly::operator==(const BiPoly& o) const {
    int dx = std::max(deg_x(), o.deg_x()), dz = std::max(deg_z(), o.deg_z());
    for (int i = 0; i <= dx; ++i)
        for (int j = 0; j <= dz; ++j)
            if (coeff(i, j) != o.coeff(i, j)) return false;
    return true;
}

BiPoly BiPoly::d_dz() const {
    BiPoly r;
    for (int i = 0; i <= deg_x(); ++i)
        for (size_t j = 1; j < c_[i].size(); ++j) r.set(i, j - 1, c_[i][j] * static_cast<long>(j));
    r.trim();
    return r;
}

BiPoly BiPoly::d_dx() const {
    BiPoly r;
    for (int i = 1; i <= deg_x(); ++i)
        for (size_t j = 0; j < c_[i].size(); ++j) r.set(i - 1, j, c_[i][j] * static_cast<long>(i));
    r.trim();
    return r;
}

Poly BiPoly::on_line(const Rational& a) const {
    std::vector<Rational> r(std::max(0, deg_x() + deg_z() + 1), Rational(0));
    for (int i = 0; i <= deg_x(); ++i) {
        Rational ai = 1;
        for (int t = 0; t < i; ++t) ai *= a;
        for (size_t j = 0; j < c_[i].size(); ++j) r[i + j] += c_[i][j] * ai;
    }
    return Poly(std::move(r));
}

BiPoly BiPoly::shear() const {
    // x^i z^j -> (w - z)^i z^j
    BiPoly r;
    for (int i = 0; i <= deg_x(); ++i)
        for (size_t j = 0; j < c_[i].size(); ++j) {
            if (c_[i][j] == 0) continue;
            for (int a = 0; a <= i; ++a) {
                Rational t = c_[i][j] * binomial(i, a);
                if ((i - a) % 2) t = -t;
                r.set(a, j + i - a, r.coeff(a, j + i - a) + t);
            }
        }
    r.trim();
    return r;
}

BiPoly BiPoly::divide_x() const {
    if (!c_.empty()) {
        for (const auto& v : c_[0])
            if (v != 0) throw std::domain_error("BiPoly::divide_x: not divisible");
    }
    BiPoly r;
    for (int i = 1; i <= deg_x(); ++i)
        for (size_t j = 0; j < c_[i].size(); ++j) r.set(i - 1, j, c_[i][j]);
    r.trim();
    return r;
}

std::vector<std::complex<double>> BiPoly::at_z(std::complex<double> z0) const {
    std::vector<std::complex<double>> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        std::complex<double> acc = 0;
        for (int j = static_cast<int>(c_[i].size()) - 1; j >= 0; --j) acc = acc * z0 + c_[i][j].get_d();
        r[i] = acc;
    }
    return r;
}

std::string BiPoly::str(const std::string& vx, const std::string& vz) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg_x(); i >= 0; --i)
        for (int j = static_cast<int>(c_[i].size()) - 1; j >= 0; --j) {
            Rational v = c_[i][j];
            if (v == 0) continue;
            bool neg = v < 0;
            if (neg) v = -v;
            if (first) {
                if (neg) os << "-";
            } else {
                os << (neg ? " - " : " + ");
            }
            first = false;
            std::ostringstream mono;
            if (i > 0) mono << vx << (i > 1 ? "^" + std::to_string(i) : "");
            if (j > 0) mono << (i > 0 ? "*" : "") << vz << (j > 1 ? "^" + std::to_string(j) : "");
            if (mono.str().empty()) {
                os << v.get_str();
            } else {
                if (v != 1) os << v.get_str() << "*";
                os << mono.str();
            }
        }
    return os.str();
}

// ---------------------------------------------------------------------------

Rational factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

Rational binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

Rational harmonic(int n) {
    Rational h = 0;
    for (int a = 1; a <= n; ++a) h += Rational(1, a);
    return h;
}

Rational odd_harmonic(int n) {
    Rational h = 0;
    for (int a = 1; a <= n; a += 2) h += Rational(1, a);
    return h;
}

namespace {

std::mutex g_memo_mutex;

template <class T, class F>
const T& memo(std::map<int, T>& table, int key, F&& make) {
    {
        std::lock_guard<std::mutex> lk(g_memo_mutex);
        auto it = table.find(key);
        if (it != table.end()) return it->second;
    }
    T value = make();
    std::lock_guard<std::mutex> lk(g_memo_mutex);
    return table.emplace(key, std::move(value)).first->second;
}

std::map<int, Poly> g_he, g_p, g_q, g_om, g_omt, g_e;
std::map<int, BiPoly> g_pi, g_pit;

}  // namespace

const Poly& hermite(int n) {
    if (n < 0) throw std::domain_error("hermite: n < 0");
    return memo(g_he, n, [n] {
        std::vector<Rational> c(n + 1, Rational(0));
        for (int b = 0; 2 * b <= n; ++b) {
            Rational t = factorial(n) / (factorial(b) * factorial(n - 2 * b));
            mpz_class two_b;
            mpz_ui_pow_ui(two_b.get_mpz_t(), 2, b);
            t /= Rational(two_b);
            c[n - 2 * b] = (b % 2) ? Rational(-t) : t;
        }
        return Poly(std::move(c));
    });
}

const Poly& p_poly(int nu) {
    return memo(g_p, nu, [nu] {
        if (nu < 0) return Poly();
        std::vector<Rational> c(nu + 1, Rational(0));
        for (int a = 0; 2 * a <= nu; ++a) {
            mpz_class two_a;
            mpz_ui_pow_ui(two_a.get_mpz_t(), 2, a);
            c[nu - 2 * a] = Rational(1) / (factorial(a) * factorial(nu - 2 * a) * Rational(two_a));
        }
        return Poly(std::move(c));
    });
}

const Poly& q_poly(int nu) {
    return memo(g_q, nu, [nu] {
        if (nu == 0) return Poly();
        if (nu < 0) {
            Poly h = hermite(-1 - nu);
            return ((1 - nu) % 2 == 0) ? h : -h;
        }
        Poly acc;
        for (int a = 0; 2 * a <= nu - 1; ++a)
            acc = acc + p_poly(nu - 1 - 2 * a) * (factorial(nu - 1 - a) / factorial(nu));
        return acc;
    });
}

const BiPoly& pi_poly(int l) {
    if (l < 0) throw std::domain_error("pi_poly: l < 0");
    return memo(g_pi, l, [l] {
        BiPoly s = BiPoly::from_x(Poly::monomial(1)) + BiPoly::from_z(Poly::monomial(1));
        BiPoly acc;
        for (int nu = 0; nu <= l; ++nu) {
            BiPoly pw = BiPoly::from_x(Poly::constant(1));
            for (int t = 0; t < l - nu; ++t) pw = pw * s;
            Rational f = Rational(nu % 2 ? -1 : 1) / factorial(l - nu);
            acc = acc + pw * BiPoly::from_x(q_poly(nu)) * f;
        }
        return acc;
    });
}

const BiPoly& pi_tilde(int l) {
    return memo(g_pit, l, [l] {
        BiPoly t = pi_poly(l).shear() + BiPoly::from_z(q_poly(l));
        return t.divide_x();
    });
}

const Poly& omega_poly(int l) {
    if (l < 0) throw std::domain_error("omega_poly: l < 0");
    return memo(g_om, l, [l] {
        Poly acc;
        Rational hl = harmonic(l);
        for (int nu = 1; nu <= l; ++nu) {
            Rational p0 = p_poly(nu).coeff(0);
            if (p0 == 0) continue;
            acc = acc + Poly::monomial(l - nu, p0 * (hl - harmonic(l - nu)) / factorial(l - nu));
        }
        return (l % 2) ? -acc : acc;
    });
}

const Poly& omega_tilde(int k) {
    // (-i)^k Om_k(i eta) = (-1)^k * [i^k Om_k(i eta)]
    return memo(g_omt, k, [k] {
        Poly r = omega_poly(k).rotate(k);
        return (k % 2) ? -r : r;
    });
}

const Poly& e_poly(int l) {
    if (l < 0) throw std::domain_error("e_poly: l < 0");
    return memo(g_e, l, [l] {
        if (l <= 1) return Poly();
        // (l)E_l = z E_{l-1} + E_{l-2} - P_{l-2}(z)/(l-1)
        const Poly& a = e_poly(l - 1);
        const Poly& b = e_poly(l - 2);
        Poly r = a.shift_up(1) + b - p_poly(l - 2) * Rational(1, l - 1);
        return r * Rational(1, l);
    });
}

std::pair<Poly, Rational> bernoulli(int mu) {
    if (mu < 0) throw std::domain_error("bernoulli: mu < 0");
    // B_n numbers from sum_{k<=n} C(n+1,k) B_k = 0
    std::vector<Rational> b(mu + 1);
    b[0] = 1;
    for (int n = 1; n <= mu; ++n) {
        Rational s = 0;
        for (int k = 0; k < n; ++k) s += binomial(n + 1, k) * b[k];
        b[n] = -s / Rational(n + 1);
    }
    std::vector<Rational> c(mu + 1);
    for (int k = 0; k <= mu; ++k) c[mu - k] = binomial(mu, k) * b[k];
    return {Poly(std::move(c)), b[mu]};
}

std::pair<Poly, Poly> pq_modified(int nu) {
    return {p_poly(nu).rotate(nu), q_poly(nu).rotate(nu - 1)};
}

}  // namespace shintani
