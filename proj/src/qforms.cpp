// Copyright 2026 The shintani authors.
// SPDX-License-Identifier: Apache-2.0

#include "shintani/qforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace shintani {

namespace {

i64 isqrt(i64 n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

i64 floor_mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

void check_disc(i64 d) {
    if (d == 0 || floor_mod(d, 4) > 1) throw std::domain_error("discriminant must be nonzero and 0 or 1 mod 4");
}

// extended gcd: returns g and sets x, y with a x + b y = g
i64 egcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return std::abs(a);
    }
    i64 x1, y1;
    i64 g = egcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

QuadForm reduce_definite(QuadForm f) {
    if (f.a < 0) return -reduce_definite(-f);
    for (;;) {
        // b into (-a, a]
        i64 nb = floor_mod(f.b + f.a - 1, 2 * f.a) - f.a + 1;
        f = {f.a, nb, (nb * nb - f.disc()) / (4 * f.a)};
        if (f.a > f.c) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        break;
    }
    if (f.a == f.c && f.b < 0) f.b = -f.b;
    return f;
}

// rho step for indefinite forms; s = -b mod 2c normalised against sqrt(d)
QuadForm rho(const QuadForm& f, i64 sq) {
    i64 c = f.c, ac = std::abs(c), m = 2 * ac;
    i64 s;
    if (sq < ac) {
        s = floor_mod(-f.b + ac - 1, m) - ac + 1;  // (-|c|, |c|]
    } else {
        i64 lo = sq + 1 - m;  // [sq + 1 - 2|c|, sq]
        s = lo + floor_mod(-f.b - lo, m);
    }
    i64 d = f.disc();
    return {c, s, (s * s - d) / (4 * c)};
}

bool is_reduced_indef(const QuadForm& f, i64 sq) {
    i64 aa = 2 * std::abs(f.a);
    return f.b >= 1 && f.b <= sq && aa + f.b >= sq + 1 && aa - f.b <= sq;
}

std::vector<QuadForm> cycle_of(const QuadForm& f, i64 sq) {
    std::vector<QuadForm> cyc{f};
    QuadForm g = rho(f, sq);
    while (!(g == f)) {
        cyc.push_back(g);
        g = rho(g, sq);
        if (cyc.size() > 100000) throw std::runtime_error("rho cycle did not close");
    }
    return cyc;
}

QuadForm reduce_indefinite(QuadForm f) {
    i64 d = f.disc(), sq = isqrt(d);
    for (int it = 0; !is_reduced_indef(f, sq); ++it) {
        if (it > 100000) throw std::runtime_error("indefinite reduction did not terminate");
        f = rho(f, sq);
    }
    auto cyc = cycle_of(f, sq);
    return *std::min_element(cyc.begin(), cyc.end());
}

QuadForm reduce_square(const QuadForm& f, i64 r) {
    QuadForm g = f;
    if (g.a != 0) {
        // move a rational root x/y = (-b + s r)/(2a) to infinity
        for (int s : {1, -1}) {
            i64 x = -f.b + s * r, y = 2 * f.a;
            i64 gg = std::gcd(std::abs(x), std::abs(y));
            x /= gg;
            y /= gg;
            i64 u, v;
            egcd(x, y, v, u);  // x v + y u = 1
            Mat2 m{x, -u, y, v};  // det = x v + u y = 1
            QuadForm h = compose(f, m);
            if (h.a == 0 && h.b == r) {
                g = h;
                break;
            }
            if (h.a == 0 && h.b == -r) g = h;
        }
    }
    if (g.b == -r) {
        QuadForm h = compose(g, Mat2{0, -1, 1, 0});
        return reduce_square(h, r);
    }
    return {0, r, floor_mod(g.c, r)};
}

}  // namespace

Mat2 Mat2::operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2 Mat2::inverse() const { return {d, -b, -c, a}; }

i64 QuadForm::content() const { return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c)); }

bool QuadForm::operator<(const QuadForm& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
}

std::string QuadForm::str() const {
    std::ostringstream s;
    s << "[" << a << "," << b << "," << c << "]";
    return s.str();
}

QuadForm compose(const QuadForm& f, const Mat2& m) {
    i64 al = m.a, be = m.b, ga = m.c, de = m.d;
    return {f.a * al * al + f.b * al * ga + f.c * ga * ga,
            2 * f.a * al * be + f.b * (al * de + be * ga) + 2 * f.c * ga * de,
            f.a * be * be + f.b * be * de + f.c * de * de};
}

QuadForm act(const Mat2& g, const QuadForm& f) { return compose(f, g.inverse()); }

bool is_square(i64 n, i64* root) {
    if (n < 0) return false;
    i64 r = isqrt(n);
    if (root) *root = r;
    return r * r == n;
}

QuadForm reduce(const QuadForm& f) {
    i64 d = f.disc();
    check_disc(d);
    i64 r;
    if (d < 0) return reduce_definite(f);
    if (is_square(d, &r)) return reduce_square(f, r);
    return reduce_indefinite(f);
}

std::vector<QuadForm> positive_reps(i64 d) {
    check_disc(d);
    if (d >= 0) throw std::domain_error("positive_reps: d < 0 required");
    std::vector<QuadForm> out;
    i64 n = -d;
    for (i64 a = 1; 3 * a * a <= n; ++a)
        for (i64 b = -a + 1; b <= a; ++b) {
            i64 num = b * b - d;
            if (num % (4 * a)) continue;
            i64 c = num / (4 * a);
            if (c < a || (c == a && b < 0)) continue;
            out.push_back({a, b, c});
        }
    return out;
}

std::vector<QuadForm> class_reps(i64 d) {
    check_disc(d);
    std::vector<QuadForm> out;
    i64 r;
    if (d < 0) {
        out = positive_reps(d);
        std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i) out.push_back(-out[i]);
        return out;
    }
    if (is_square(d, &r)) {
        for (i64 j = 0; j < r; ++j) out.push_back({0, r, j});
        return out;
    }
    i64 sq = isqrt(d);
    std::set<QuadForm> seen;
    for (i64 b = 1; b <= sq; ++b) {
        if (floor_mod(b - d, 2)) continue;
        for (i64 aa = std::max<i64>(1, (sq + 1 - b + 1) / 2); 2 * aa - b <= sq; ++aa) {
            if (2 * aa + b < sq + 1) continue;
            i64 num = b * b - d;
            if (num % (4 * aa)) continue;
            for (i64 a : {aa, -aa}) {
                QuadForm f{a, b, num / (4 * a)};
                if (seen.count(f)) continue;
                auto cyc = cycle_of(f, sq);
                seen.insert(cyc.begin(), cyc.end());
                out.push_back(*std::min_element(cyc.begin(), cyc.end()));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int stabilizer_order(const QuadForm& f) {
    if (f.disc() >= 0) throw std::domain_error("stabilizer_order: definite form required");
    QuadForm g = reduce_definite(f.a > 0 ? f : -f);
    if (g.a == g.b && g.b == g.c) return 6;
    if (g.b == 0 && g.a == g.c) return 4;
    return 2;
}

Rational hurwitz(i64 n) {
    if (n == 0) return Rational(-1, 12);
    if (n < 0 || floor_mod(-n, 4) > 1) return 0;
    Rational h = 0;
    for (const auto& f : positive_reps(-n)) h += Rational(1, stabilizer_order(f) / 2);
    return h;
}

bool is_fundamental(i64 D) {
    auto squarefree = [](i64 m) {
        m = std::abs(m);
        for (i64 p = 2; p * p <= m; ++p)
            if (m % (p * p) == 0) return false;
        return true;
    };
    if (D == 0) return false;
    if (floor_mod(D, 4) == 1) return squarefree(D);
    if (floor_mod(D, 4) == 0) {
        i64 m = D / 4;
        i64 r = floor_mod(m, 4);
        return (r == 2 || r == 3) && squarefree(m);
    }
    return false;
}

int kronecker(i64 a, i64 n) {
    mpz_class A(static_cast<long>(a)), N(static_cast<long>(n));
    return mpz_kronecker(A.get_mpz_t(), N.get_mpz_t());
}

int genus_char(i64 Delta, const QuadForm& f) {
    if (!is_fundamental(Delta)) throw std::domain_error("genus_char: fundamental discriminant required");
    if (f.disc() % Delta != 0) throw std::domain_error("genus_char: Delta must divide the discriminant");
    if (std::gcd(f.content(), std::abs(Delta)) > 1) return 0;
    for (i64 R = 1; R <= 200; ++R)
        for (i64 x = -R; x <= R; ++x)
            for (i64 y : {-R, R}) {
                for (int swap = 0; swap < 2; ++swap) {
                    i64 X = swap ? y : x, Y = swap ? x : y;
                    i64 n = f.eval(X, Y);
                    if (n != 0 && std::gcd(std::abs(n), std::abs(Delta)) == 1) return kronecker(Delta, n);
                }
            }
    throw std::runtime_error("genus_char: no represented value coprime to Delta found");
}

CMPoint cm_point(const QuadForm& f) {
    i64 d = f.disc();
    if (d >= 0 || f.a <= 0) throw std::domain_error("cm_point: positive-definite form required");
    CMPoint p;
    p.z = std::complex<double>(-static_cast<double>(f.b), std::sqrt(static_cast<double>(-d))) / (2.0 * f.a);
    p.stabilizer_order = stabilizer_order(f);
    return p;
}

std::pair<i64, i64> pell4(i64 d) {
    if (d <= 0 || is_square(d)) throw std::domain_error("pell4: positive nonsquare d required");
    for (i64 u = 1; u < 100000000; ++u) {
        __int128 v = static_cast<__int128>(d) * u * u + 4;
        if (v > static_cast<__int128>(4e18)) break;
        i64 t;
        if (is_square(static_cast<i64>(v), &t)) return {t, u};
    }
    throw std::runtime_error("pell4: fundamental solution out of range");
}

GeodesicData geodesic_data(const QuadForm& f) {
    i64 d = f.disc();
    if (d <= 0 || is_square(d)) throw std::domain_error("geodesic_data: positive nonsquare discriminant required");
    GeodesicData g;
    g.center = -static_cast<double>(f.b) / (2.0 * f.a);
    g.radius = std::sqrt(static_cast<double>(d)) / (2.0 * std::abs(f.a));
    i64 k = f.content();
    QuadForm p{f.a / k, f.b / k, f.c / k};
    auto [t, u] = pell4(p.disc());
    g.automorph = {(t - p.b * u) / 2, -p.c * u, p.a * u, (t + p.b * u) / 2};
    g.orientation = f.a > 0 ? 1 : -1;
    return g;
}

}  // namespace shintani
