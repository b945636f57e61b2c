// Copyright 2026 The shintani authors.
// SPDX-License-Identifier: Apache-2.0

#include "shintani/modforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "shintani/specfun.hpp"

namespace shintani {

namespace {

int sat_add(int a, int b) {
    if (a >= kUnbounded || b >= kUnbounded) return kUnbounded;
    return a + b;
}

Rational sigma(int k, int n) {
    mpz_class s = 0, p;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) {
            mpz_ui_pow_ui(p.get_mpz_t(), d, k);
            s += p;
        }
    return Rational(s);
}

}  // namespace

// ---------------------------------------------------------------- QSeries

QSeries QSeries::exact(int nmin, std::vector<Rational> c, int order) {
    QSeries s;
    s.mode_ = CoeffMode::exact;
    s.nmin_ = nmin;
    s.order_ = order;
    s.q_ = std::move(c);
    s.normalize();
    return s;
}

QSeries QSeries::floating(int nmin, std::vector<double> c, int order) {
    QSeries s;
    s.mode_ = CoeffMode::floating;
    s.nmin_ = nmin;
    s.order_ = order;
    s.d_ = std::move(c);
    s.normalize();
    return s;
}

QSeries QSeries::constant(const Rational& c) { return exact(0, {c}); }

void QSeries::normalize() {
    if (mode_ == CoeffMode::exact) {
        for (auto& v : q_) v.canonicalize();
        int last = nmin_ + static_cast<int>(q_.size()) - 1;
        if (last > order_) q_.resize(std::max(0, order_ - nmin_ + 1));
        std::size_t lo = 0;
        while (lo < q_.size() && q_[lo] == 0) ++lo;
        std::size_t hi = q_.size();
        while (hi > lo && q_[hi - 1] == 0) --hi;
        q_ = std::vector<Rational>(q_.begin() + lo, q_.begin() + hi);
        nmin_ += static_cast<int>(lo);
        d_.resize(q_.size());
        for (std::size_t i = 0; i < q_.size(); ++i) d_[i] = q_[i].get_d();
    } else {
        q_.clear();
        int last = nmin_ + static_cast<int>(d_.size()) - 1;
        if (last > order_) d_.resize(std::max(0, order_ - nmin_ + 1));
        std::size_t lo = 0;
        while (lo < d_.size() && d_[lo] == 0) ++lo;
        std::size_t hi = d_.size();
        while (hi > lo && d_[hi - 1] == 0) --hi;
        d_ = std::vector<double>(d_.begin() + lo, d_.begin() + hi);
        nmin_ += static_cast<int>(lo);
    }
    if (d_.empty()) nmin_ = std::min(nmin_, order_);
}

bool QSeries::is_zero() const { return d_.empty(); }

double QSeries::coeff(int n) const {
    if (n > order_) throw std::out_of_range("QSeries: exponent beyond truncation order");
    if (n < nmin_ || n > nmax()) return 0;
    return d_[n - nmin_];
}

Rational QSeries::exact_coeff(int n) const {
    if (mode_ != CoeffMode::exact) throw std::logic_error("QSeries: exact coefficient of a floating series");
    if (n > order_) throw std::out_of_range("QSeries: exponent beyond truncation order");
    if (n < nmin_ || n > nmax()) return 0;
    return q_[n - nmin_];
}

QSeries QSeries::operator+(const QSeries& o) const {
    if (is_zero() && order_ <= o.order_) return o.truncate(order_);
    if (o.is_zero() && o.order_ <= order_) return truncate(o.order_);
    int lo = std::min(is_zero() ? o.nmin_ : nmin_, o.is_zero() ? nmin_ : o.nmin_);
    int ord = std::min(order_, o.order_);
    int hi = std::min(std::max(nmax(), o.nmax()), ord);
    if (hi < lo) return QSeries::exact(lo, {}, ord);
    std::size_t n = hi - lo + 1;
    if (mode_ == CoeffMode::exact && o.mode_ == CoeffMode::exact) {
        std::vector<Rational> c(n, Rational(0));
        for (int e = lo; e <= hi; ++e) {
            if (e >= nmin_ && e <= nmax()) c[e - lo] += q_[e - nmin_];
            if (e >= o.nmin_ && e <= o.nmax()) c[e - lo] += o.q_[e - o.nmin_];
        }
        return exact(lo, std::move(c), ord);
    }
    std::vector<double> c(n, 0.0);
    for (int e = lo; e <= hi; ++e) {
        if (e >= nmin_ && e <= nmax()) c[e - lo] += d_[e - nmin_];
        if (e >= o.nmin_ && e <= o.nmax()) c[e - lo] += o.d_[e - o.nmin_];
    }
    return floating(lo, std::move(c), ord);
}

QSeries QSeries::operator-() const {
    QSeries r = *this;
    for (auto& v : r.q_) v = -v;
    for (auto& v : r.d_) v = -v;
    return r;
}

QSeries QSeries::operator-(const QSeries& o) const { return *this + (-o); }

QSeries QSeries::operator*(const QSeries& o) const {
    int ord = std::min(sat_add(order_, o.is_zero() ? 0 : o.nmin_), sat_add(o.order_, is_zero() ? 0 : nmin_));
    if (is_zero() || o.is_zero()) return QSeries::exact(0, {}, ord);
    int lo = nmin_ + o.nmin_;
    if (ord < lo) throw std::range_error("QSeries: product truncation below the leading exponent");
    int hi = std::min(nmax() + o.nmax(), ord);
    std::size_t n = hi - lo + 1;
    if (mode_ == CoeffMode::exact && o.mode_ == CoeffMode::exact) {
        std::vector<Rational> c(n, Rational(0));
        for (std::size_t i = 0; i < q_.size(); ++i)
            for (std::size_t j = 0; j < o.q_.size() && i + j < n; ++j) c[i + j] += q_[i] * o.q_[j];
        return exact(lo, std::move(c), ord);
    }
    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i < d_.size(); ++i)
        for (std::size_t j = 0; j < o.d_.size() && i + j < n; ++j) c[i + j] += d_[i] * o.d_[j];
    return floating(lo, std::move(c), ord);
}

QSeries QSeries::operator*(const Rational& s) const {
    if (mode_ == CoeffMode::floating) return *this * s.get_d();
    std::vector<Rational> c = q_;
    for (auto& v : c) v *= s;
    return exact(nmin_, std::move(c), order_);
}

QSeries QSeries::operator*(double s) const {
    std::vector<double> c = d_;
    for (auto& v : c) v *= s;
    return floating(nmin_, std::move(c), order_);
}

bool QSeries::operator==(const QSeries& o) const {
    return mode_ == o.mode_ && order_ == o.order_ && d_.size() == o.d_.size() &&
           (d_.empty() || nmin_ == o.nmin_) && q_ == o.q_ && d_ == o.d_;
}

QSeries QSeries::truncate(int order) const {
    QSeries r = *this;
    r.order_ = std::min(order_, order);
    r.normalize();
    return r;
}

QSeries QSeries::to_floating() const {
    if (mode_ == CoeffMode::floating) return *this;
    return floating(nmin_, d_, order_);
}

QSeries QSeries::theta() const {
    QSeries r = *this;
    for (std::size_t i = 0; i < r.d_.size(); ++i) {
        int n = nmin_ + static_cast<int>(i);
        r.d_[i] *= n;
        if (mode_ == CoeffMode::exact) r.q_[i] *= n;
    }
    r.normalize();
    return r;
}

QSeries QSeries::inverse() const {
    if (is_zero()) throw std::domain_error("QSeries: inverse of zero");
    if (order_ >= kUnbounded) throw std::domain_error("QSeries: inverse needs a bounded truncation order");
    int m = nmin_;
    int ord = order_ - 2 * m;
    int n = ord + m + 1;  // number of coefficients from exponent -m
    if (n <= 0) throw std::range_error("QSeries: inverse truncation below the leading exponent");
    if (mode_ == CoeffMode::exact) {
        std::vector<Rational> b(n, Rational(0));
        b[0] = 1 / q_[0];
        for (int k = 1; k < n; ++k) {
            Rational s = 0;
            for (int i = 1; i <= k && i < static_cast<int>(q_.size()); ++i) s += q_[i] * b[k - i];
            b[k] = -s * b[0];
        }
        return exact(-m, std::move(b), ord);
    }
    std::vector<double> b(n, 0.0);
    b[0] = 1 / d_[0];
    for (int k = 1; k < n; ++k) {
        double s = 0;
        for (int i = 1; i <= k && i < static_cast<int>(d_.size()); ++i) s += d_[i] * b[k - i];
        b[k] = -s * b[0];
    }
    return floating(-m, std::move(b), ord);
}

cplx QSeries::eval(cplx q) const {
    if (d_.empty()) return 0;
    cplx s = 0;
    for (auto it = d_.rbegin(); it != d_.rend(); ++it) s = s * q + *it;
    return s * std::pow(q, nmin_);
}

double QSeries::tail_estimate(double absq) const {
    if (order_ >= kUnbounded) return 0;
    if (d_.empty()) return 0;
    // max of |c_n| |q|^n over the last two windows of 8 stored exponents
    auto window = [&](int hi) {
        double m = 0;
        for (int n = std::max(nmin_, hi - 7); n <= hi; ++n)
            m = std::max(m, std::fabs(d_[n - nmin_]) * std::pow(absq, n));
        return m;
    };
    int top = nmax();
    double m1 = window(top);
    double r;
    if (top - 8 >= nmin_ && window(top - 8) > 0) {
        r = std::pow(m1 / window(top - 8), 1.0 / 8);
    } else {
        r = absq;
    }
    if (!(r < 1)) return std::numeric_limits<double>::infinity();
    return m1 * std::pow(r, order_ - top + 1) / (1 - r);
}

// ---------------------------------------------------------- NearlyHolForm

int NearlyHolForm::depth() const {
    for (int l = static_cast<int>(layers.size()) - 1; l >= 0; --l)
        if (!layers[l].is_zero()) return l;
    return -1;
}

CoeffMode NearlyHolForm::mode() const {
    for (const auto& s : layers)
        if (s.mode() == CoeffMode::floating) return CoeffMode::floating;
    return CoeffMode::exact;
}

int NearlyHolForm::order() const {
    int o = kUnbounded;
    for (const auto& s : layers) o = std::min(o, s.order());
    return o;
}

double NearlyHolForm::coeff(int n, int l) const {
    if (l < 0 || l >= static_cast<int>(layers.size())) return 0;
    return layers[l].coeff(n);
}

namespace {

NearlyHolForm trimmed(NearlyHolForm f) {
    f.layers.resize(f.depth() + 1);
    return f;
}

}  // namespace

NearlyHolForm holomorphic(int weight, const QSeries& f) { return trimmed({weight, {f}}); }

NearlyHolForm constant_form(const Rational& c) { return holomorphic(0, QSeries::constant(c)); }

QSeries eisenstein(int k, int order) {
    Rational c;
    if (k == 4) {
        c = 240;
    } else if (k == 6) {
        c = -504;
    } else {
        throw std::domain_error("eisenstein: k in {4, 6}");
    }
    std::vector<Rational> v(order + 1);
    v[0] = 1;
    for (int n = 1; n <= order; ++n) v[n] = c * sigma(k - 1, n);
    return QSeries::exact(0, std::move(v), order);
}

QSeries e2_series(int order) {
    std::vector<Rational> v(order + 1);
    v[0] = 1;
    for (int n = 1; n <= order; ++n) v[n] = -24 * sigma(1, n);
    return QSeries::exact(0, std::move(v), order);
}

QSeries delta_cusp(int order) {
    QSeries e4 = eisenstein(4, order), e6 = eisenstein(6, order);
    return (e4 * e4 * e4 - e6 * e6) * Rational(1, 1728);
}

QSeries j_fun(int order) {
    // 1/Delta loses two orders: Delta = q + O(q^2)
    QSeries e4 = eisenstein(4, order + 2);
    return (e4 * e4 * e4 * delta_cusp(order + 2).inverse()).truncate(order);
}

QSeries j_normalized(int order) { return j_fun(order) - QSeries::constant(744); }

QSeries theta_jacobi(int order) {
    std::vector<Rational> v(order + 1, Rational(0));
    for (int n = 0; n * n <= order; ++n) v[n * n] = n ? 2 : 1;
    return QSeries::exact(0, std::move(v), order);
}

NearlyHolForm e2_star(int order) {
    return {2, {e2_series(order), QSeries::floating(0, {-3 / kPi})}};
}

NearlyHolForm add(const NearlyHolForm& f, const NearlyHolForm& g) {
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    if (f.weight != g.weight) throw std::domain_error("add: weights differ");
    NearlyHolForm r{f.weight, {}};
    std::size_t n = std::max(f.layers.size(), g.layers.size());
    r.layers.resize(n);
    for (std::size_t l = 0; l < n; ++l) {
        QSeries a = l < f.layers.size() ? f.layers[l] : QSeries();
        QSeries b = l < g.layers.size() ? g.layers[l] : QSeries();
        r.layers[l] = a + b;
    }
    return trimmed(r);
}

NearlyHolForm scale(const NearlyHolForm& f, double s) {
    NearlyHolForm r = f;
    for (auto& l : r.layers) l = l * s;
    return trimmed(r);
}

NearlyHolForm scale(const NearlyHolForm& f, const Rational& s) {
    NearlyHolForm r = f;
    for (auto& l : r.layers) l = l * s;
    return trimmed(r);
}

NearlyHolForm multiply(const NearlyHolForm& f, const NearlyHolForm& g) {
    NearlyHolForm r{f.weight + g.weight, {}};
    if (f.is_zero() || g.is_zero()) return r;
    r.layers.resize(f.layers.size() + g.layers.size() - 1);
    for (std::size_t a = 0; a < f.layers.size(); ++a)
        for (std::size_t b = 0; b < g.layers.size(); ++b)
            r.layers[a + b] = r.layers[a + b] + f.layers[a] * g.layers[b];
    return trimmed(r);
}

NearlyHolForm power(const NearlyHolForm& f, int k) {
    if (k < 0) throw std::domain_error("power: k >= 0 required");
    NearlyHolForm r = constant_form(1);
    for (int i = 0; i < k; ++i) r = multiply(r, f);
    return r;
}

NearlyHolForm lower(const NearlyHolForm& f) {
    NearlyHolForm r{f.weight - 2, {}};
    for (std::size_t l = 1; l < f.layers.size(); ++l) r.layers.push_back(f.layers[l] * Rational(-static_cast<long>(l)));
    return trimmed(r);
}

NearlyHolForm raise(const NearlyHolForm& f) {
    NearlyHolForm r{f.weight + 2, {}};
    int p = static_cast<int>(f.layers.size()) - 1;
    if (p < 0) return r;
    r.layers.resize(p + 2);
    for (int l = 0; l <= p + 1; ++l) {
        QSeries s;
        if (l <= p) s = f.layers[l].theta() * (-4 * kPi);
        if (l >= 1) s = s + f.layers[l - 1] * Rational(f.weight - l + 1);
        r.layers[l] = s;
    }
    return trimmed(r);
}

NearlyHolForm laplacian(const NearlyHolForm& f) {
    NearlyHolForm lf = lower(f);
    lf.weight = f.weight - 2;
    NearlyHolForm r = raise(lf);
    r.weight = f.weight;
    return scale(r, Rational(-1));
}

FDPoint reduce_to_fd(cplx z0) {
    if (!(z0.imag() > 0)) throw std::domain_error("reduce_to_fd: Im z > 0 required");
    FDPoint p{z0, Mat2{}};
    for (int it = 0; it < 100000; ++it) {
        double n = std::floor(p.z.real() + 0.5);
        if (n != 0) {
            p.z -= n;
            p.gamma = Mat2{1, -static_cast<i64>(n), 0, 1} * p.gamma;
        }
        if (std::norm(p.z) < 1 - 1e-14) {
            p.z = -1.0 / p.z;
            p.gamma = Mat2{0, -1, 1, 0} * p.gamma;
            continue;
        }
        return p;
    }
    throw std::runtime_error("reduce_to_fd: no convergence");
}

cplx evaluate_direct(const NearlyHolForm& f, cplx z) {
    cplx q = std::exp(cplx(0, 2 * kPi) * z);
    double y = z.imag();
    cplx s = 0;
    for (std::size_t l = 0; l < f.layers.size(); ++l) s += f.layers[l].eval(q) / std::pow(y, static_cast<double>(l));
    return s;
}

EvalResult evaluate_checked(const NearlyHolForm& f, cplx z, double tol) {
    FDPoint p = reduce_to_fd(z);
    double y = p.z.imag();
    double absq = std::exp(-2 * kPi * y);
    cplx v = evaluate_direct(f, p.z);
    double err = 0;
    for (std::size_t l = 0; l < f.layers.size(); ++l)
        err += f.layers[l].tail_estimate(absq) / std::pow(y, static_cast<double>(l));
    cplx cz = static_cast<double>(p.gamma.c) * z + static_cast<double>(p.gamma.d);
    cplx factor = std::pow(cz, -f.weight);
    EvalResult r{factor * v, std::abs(factor) * err};
    if (!(r.err <= tol)) {
        // coefficient growth is subexponential, so the tail shrinks roughly like |q|^N
        int need = f.order() + static_cast<int>(std::ceil(std::log(tol / r.err) / std::log(absq)));
        std::ostringstream msg;
        msg << "evaluate: tail estimate " << r.err << " exceeds tol " << tol << " at truncation order "
            << f.order();
        if (std::isfinite(r.err)) msg << "; required order about " << need;
        throw std::runtime_error(msg.str());
    }
    return r;
}

cplx evaluate(const NearlyHolForm& f, cplx z, double tol) { return evaluate_checked(f, z, tol).value; }

// ------------------------------------------------------------------ JSON

std::string to_json(const NearlyHolForm& f) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["weight"] = f.weight;
    doc["depth"] = f.depth();
    doc["mode"] = f.mode() == CoeffMode::exact ? "exact" : "floating";
    ordered_json layers = ordered_json::array();
    for (const auto& s : f.layers) {
        ordered_json L;
        L["mode"] = s.mode() == CoeffMode::exact ? "exact" : "floating";
        L["nmin"] = s.nmin();
        if (s.order() >= kUnbounded) {
            L["order"] = nullptr;
        } else {
            L["order"] = s.order();
        }
        ordered_json c = ordered_json::array();
        for (int n = s.nmin(); n <= s.nmax(); ++n) {
            if (s.mode() == CoeffMode::exact) {
                c.push_back(s.exact_coeff(n).get_str());
            } else {
                c.push_back(s.coeff(n));
            }
        }
        L["coeffs"] = c;
        layers.push_back(L);
    }
    doc["layers"] = layers;
    return doc.dump();
}

NearlyHolForm form_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("form JSON: ") + e.what());
    }
    try {
        NearlyHolForm f;
        f.weight = doc.at("weight").get<int>();
        if (f.weight % 2) throw std::invalid_argument("form JSON: weight must be even");
        for (const auto& L : doc.at("layers")) {
            int nmin = L.at("nmin").get<int>();
            int order = L.contains("order") && !L["order"].is_null() ? L["order"].get<int>() : kUnbounded;
            std::string mode = L.value("mode", "floating");
            if (mode == "exact") {
                std::vector<Rational> c;
                for (const auto& v : L.at("coeffs")) {
                    if (v.is_string()) {
                        Rational r;
                        if (r.set_str(v.get<std::string>(), 10) != 0)
                            throw std::invalid_argument("form JSON: bad rational " + v.get<std::string>());
                        c.push_back(r);
                    } else {
                        c.push_back(Rational(v.get<long>()));
                    }
                }
                f.layers.push_back(QSeries::exact(nmin, std::move(c), order));
            } else if (mode == "floating") {
                std::vector<double> c;
                for (const auto& v : L.at("coeffs")) c.push_back(v.get<double>());
                f.layers.push_back(QSeries::floating(nmin, std::move(c), order));
            } else {
                throw std::invalid_argument("form JSON: unknown mode " + mode);
            }
        }
        return trimmed(f);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("form JSON: ") + e.what());
    }
}

}  // namespace shintani
