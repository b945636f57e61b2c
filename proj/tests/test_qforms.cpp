#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>

#include "shintani/qforms.hpp"

using namespace shintani;

namespace {

const Mat2 S{0, -1, 1, 0}, T{1, 1, 0, 1}, Ti{1, -1, 0, 1};

// orbit of f under S, T, T^{-1} restricted to a coefficient box
std::set<QuadForm> orbit(const QuadForm& f, i64 box) {
    std::set<QuadForm> seen{f};
    std::queue<QuadForm> q;
    q.push(f);
    while (!q.empty()) {
        QuadForm g = q.front();
        q.pop();
        for (const Mat2& m : {S, T, Ti}) {
            QuadForm h = compose(g, m);
            if (std::abs(h.a) > box || std::abs(h.b) > box || std::abs(h.c) > box) continue;
            if (seen.insert(h).second) q.push(h);
        }
    }
    return seen;
}

// number of orbits met by forms of discriminant d with coefficients up to n
std::vector<std::set<QuadForm>> brute_classes(i64 d, i64 n, i64 box) {
    std::vector<std::set<QuadForm>> out;
    for (i64 a = -n; a <= n; ++a)
        for (i64 b = -n; b <= n; ++b) {
            if (a == 0) {
                if (b * b != d) continue;
                for (i64 c = -n; c <= n; ++c) {
                    QuadForm f{0, b, c};
                    bool known = false;
                    for (auto& o : out) known |= o.count(f) > 0;
                    if (!known) out.push_back(orbit(f, box));
                }
                continue;
            }
            i64 num = b * b - d;
            if (num % (4 * a)) continue;
            QuadForm f{a, b, num / (4 * a)};
            if (std::abs(f.c) > n) continue;
            bool known = false;
            for (auto& o : out) known |= o.count(f) > 0;
            if (!known) out.push_back(orbit(f, box));
        }
    return out;
}

int brute_stabilizer(const QuadForm& f) {
    int n = 0;
    for (i64 a = -8; a <= 8; ++a)
        for (i64 b = -8; b <= 8; ++b)
            for (i64 c = -8; c <= 8; ++c)
                for (i64 d = -8; d <= 8; ++d)
                    if (a * d - b * c == 1 && compose(f, Mat2{a, b, c, d}) == f) ++n;
    return n;
}

Mat2 random_sl2(std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(0, 2), len(1, 6);
    Mat2 g;
    for (int i = len(rng); i > 0; --i) {
        int k = pick(rng);
        g = g * (k == 0 ? S : k == 1 ? T : Ti);
        if (std::max({std::abs(g.a), std::abs(g.b), std::abs(g.c), std::abs(g.d)}) > 20) break;
    }
    return g;
}

Rational sigma(i64 n) {
    i64 s = 0;
    for (i64 k = 1; k <= n; ++k)
        if (n % k == 0) s += k;
    return Rational(static_cast<long>(s));
}

}  // namespace

TEST_CASE("class_reps examples") {
    auto r3 = class_reps(-3);
    REQUIRE(r3.size() == 2);
    CHECK(r3[0] == QuadForm{1, 1, 1});
    CHECK(reduce(QuadForm{-1, 1, -1}) == r3[1]);
    auto r5 = class_reps(5);
    REQUIRE(r5.size() == 1);
    CHECK(reduce(QuadForm{1, 1, -1}) == r5[0]);
    auto r4 = class_reps(4);
    CHECK(r4 == std::vector<QuadForm>{{0, 2, 0}, {0, 2, 1}});
    CHECK(reduce(-QuadForm{0, 2, 1}) == QuadForm{0, 2, 1});
    CHECK(reduce(-QuadForm{0, 2, 0}) == QuadForm{0, 2, 0});
    CHECK_THROWS_AS(class_reps(6), std::domain_error);
    CHECK_THROWS_AS(class_reps(0), std::domain_error);
}

TEST_CASE("class counts against brute-force orbits") {
    for (i64 d : {-3, -4, -7, -8, -12, -15, -16, -20, -23, -24, -27, -36, -47, -48}) {
        auto br = brute_classes(d, 14, 60);
        CHECK(br.size() == class_reps(d).size());
        for (auto& o : br) CHECK(o.count(reduce(*o.begin())) == 1);
    }
    for (i64 d : {5, 8, 12, 13, 17, 20, 21, 24, 28, 29, 32, 33, 37, 40, 41, 44, 45, 48, 52, 60, 65, 68}) {
        INFO(d);
        auto br = brute_classes(d, 12, 80);
        CHECK(br.size() == class_reps(d).size());
        for (auto& o : br) CHECK(o.count(reduce(*o.begin())) == 1);
    }
    for (i64 r = 1; r <= 6; ++r) {
        INFO(r);
        auto br = brute_classes(r * r, 10, 40);
        CHECK(br.size() == class_reps(r * r).size());
        CHECK(class_reps(r * r).size() == static_cast<std::size_t>(r));
        for (auto& o : br) CHECK(o.count(reduce(*o.begin())) == 1);
    }
}

TEST_CASE("reduction is a class invariant") {
    std::mt19937 rng(7);
    for (i64 d : {-3, -4, -23, -56, -71, 5, 8, 13, 40, 45, 60, 85, 9, 16, 25}) {
        for (const auto& f : class_reps(d)) {
            CHECK(reduce(f) == f);
            for (int k = 0; k < 100; ++k) {
                Mat2 g = random_sl2(rng);
                REQUIRE(g.det() == 1);
                CHECK(reduce(act(g, f)) == f);
            }
        }
    }
}

TEST_CASE("Hurwitz class numbers") {
    CHECK(hurwitz(3) == Rational(1, 3));
    CHECK(hurwitz(4) == Rational(1, 2));
    CHECK(hurwitz(23) == 3);
    CHECK(hurwitz(0) == Rational(-1, 12));
    CHECK(hurwitz(5) == 0);
    CHECK(hurwitz(12) == Rational(4, 3));
    // Kronecker-Hurwitz: sum_t H(4n - t^2) = 2 sigma(n) - sum_{k|n} min(k, n/k)
    for (i64 n = 1; n <= 50; ++n) {
        Rational lhs = 0;
        for (i64 t = -2 * n; t <= 2 * n; ++t)
            if (t * t <= 4 * n) lhs += hurwitz(4 * n - t * t);
        Rational lam = 0;
        for (i64 k = 1; k <= n; ++k)
            if (n % k == 0) lam += static_cast<long>(std::min(k, n / k));
        CHECK(lhs == 2 * sigma(n) - lam);
    }
    for (i64 n = 3; n <= 200; ++n) {
        if (n % 4 == 1 || n % 4 == 2) continue;
        Rational w = 0;
        for (const auto& f : class_reps(-n))
            if (f.a > 0) w += Rational(1, brute_stabilizer(f) / 2);
        CHECK(w == hurwitz(n));
    }
}

TEST_CASE("stabilizers and CM points") {
    auto p = cm_point({1, 1, 1});
    CHECK(std::abs(p.z - std::complex<double>(-0.5, std::sqrt(3.0) / 2)) < 1e-15);
    CHECK(p.stabilizer_order == 6);
    CHECK(brute_stabilizer({1, 1, 1}) == 6);
    auto q = cm_point({1, 0, 1});
    CHECK(std::abs(q.z - std::complex<double>(0, 1)) < 1e-15);
    CHECK(q.stabilizer_order == 4);
    CHECK(brute_stabilizer({1, 0, 1}) == 4);
    auto r = cm_point({1, 0, 2});
    CHECK(std::abs(r.z - std::complex<double>(0, std::sqrt(2.0))) < 1e-15);
    CHECK(r.stabilizer_order == 2);
    CHECK(cm_point({2, 2, 2}).stabilizer_order == 6);
    CHECK_THROWS_AS(cm_point({1, 1, -1}), std::domain_error);
    for (i64 d = -3; d >= -60; --d) {
        if (-d % 4 == 1 || -d % 4 == 2) continue;
        for (const auto& f : positive_reps(d)) {
            CHECK(stabilizer_order(f) == brute_stabilizer(f));
            auto z = cm_point(f).z;
            CHECK(std::abs(double(f.a) * z * z + double(f.b) * z + double(f.c)) < 1e-10);
        }
    }
}

TEST_CASE("geodesic data") {
    auto g = geodesic_data({1, 0, -2});
    CHECK(g.center == 0);
    CHECK(g.radius == doctest::Approx(std::sqrt(2.0)));
    CHECK(g.automorph == Mat2{3, 4, 2, 3});
    auto h = geodesic_data({1, 1, -1});
    CHECK(h.center == -0.5);
    CHECK(h.radius == doctest::Approx(std::sqrt(5.0) / 2));
    CHECK(h.automorph == Mat2{1, 1, 1, 2});
    CHECK(pell4(8) == std::pair<i64, i64>{6, 2});
    CHECK(pell4(5) == std::pair<i64, i64>{3, 1});
    CHECK_THROWS_AS(geodesic_data({0, 2, 1}), std::domain_error);
    CHECK_THROWS_AS(geodesic_data({1, 1, 1}), std::domain_error);
    for (i64 d = 5; d <= 120; ++d) {
        i64 r;
        if (d % 4 > 1 || is_square(d, &r)) continue;
        for (const auto& f : class_reps(d)) {
            auto gd = geodesic_data(f);
            CHECK(compose(f, gd.automorph) == f);
            CHECK(act(gd.automorph, f) == f);
            CHECK(gd.automorph.det() == 1);
            CHECK(gd.automorph.trace() > 2);
        }
    }
}

TEST_CASE("Kronecker symbol") {
    CHECK(kronecker(-3, -1) == -1);
    CHECK(kronecker(5, -1) == 1);
    CHECK(kronecker(-4, 2) == 0);
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(-7, 2) == 1);
    CHECK(kronecker(-8, 3) == 1);
    CHECK(is_fundamental(-3));
    CHECK(is_fundamental(-4));
    CHECK(is_fundamental(-8));
    CHECK(is_fundamental(1));
    CHECK_FALSE(is_fundamental(-12));
    CHECK_FALSE(is_fundamental(-16));
    CHECK_FALSE(is_fundamental(9));
}

TEST_CASE("genus characters") {
    CHECK(genus_char(-3, {1, 0, -3}) == 1);
    CHECK(genus_char(-3, {-1, 0, 3}) == -1);
    CHECK(genus_char(-3, {3, 0, -3}) == 0);
    CHECK_THROWS_AS(genus_char(-12, {1, 0, -3}), std::domain_error);
    std::mt19937 rng(11);
    for (i64 Delta : {-3, -4, -7, -8}) {
        for (i64 D = -30; D <= 30; ++D) {
            if (D == 0 || ((D % 4) + 4) % 4 > 1) continue;
            i64 d = Delta * D;
            for (const auto& f : class_reps(d)) {
                int chi = genus_char(Delta, f);
                CHECK(genus_char(Delta, -f) == -chi);
                for (int k = 0; k < 5; ++k) CHECK(genus_char(Delta, act(random_sl2(rng), f)) == chi);
            }
        }
    }
}
