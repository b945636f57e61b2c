// Copyright 2026 The shintani authors.
// SPDX-License-Identifier: Apache-2.0
//
// Binary quadratic forms [a,b,c] = a x^2 + b x y + c y^2 under SL2(Z).

#ifndef SHINTANI_QFORMS_HPP
#define SHINTANI_QFORMS_HPP

#include <complex>
#include <string>
#include <vector>

#include "shintani/exactpoly.hpp"

namespace shintani {

using i64 = long long;

struct Mat2 {
    i64 a = 1, b = 0, c = 0, d = 1;  // [[a,b],[c,d]]
    Mat2 operator*(const Mat2& o) const;
    Mat2 inverse() const;  // det 1 assumed
    i64 det() const { return a * d - b * c; }
    i64 trace() const { return a + d; }
    bool operator==(const Mat2& o) const = default;
};

struct QuadForm {
    i64 a = 0, b = 0, c = 0;
    i64 disc() const { return b * b - 4 * a * c; }
    i64 content() const;
    QuadForm operator-() const { return {-a, -b, -c}; }
    bool operator==(const QuadForm& o) const = default;
    bool operator<(const QuadForm& o) const;
    i64 eval(i64 x, i64 y) const { return a * x * x + b * x * y + c * y * y; }
    std::string str() const;
};

// (g . f)(x, y) = f(g^{-1}(x, y))
QuadForm act(const Mat2& g, const QuadForm& f);
// f(M(x, y)), the right action
QuadForm compose(const QuadForm& f, const Mat2& m);

// one form per SL2(Z)-orbit; see README for the square case
std::vector<QuadForm> class_reps(i64 d);
// canonical representative of the orbit of f (a member of class_reps(disc f))
QuadForm reduce(const QuadForm& f);
// positive-definite classes only (a > 0)
std::vector<QuadForm> positive_reps(i64 d);

Rational hurwitz(i64 n);

bool is_fundamental(i64 D);
int kronecker(i64 a, i64 n);
int genus_char(i64 Delta, const QuadForm& f);

struct CMPoint {
    std::complex<double> z;
    int stabilizer_order = 2;  // |Gamma_f| including -I
};
CMPoint cm_point(const QuadForm& f);
int stabilizer_order(const QuadForm& f);  // definite forms

struct GeodesicData {
    double center = 0, radius = 0;
    bool vertical = false;
    double real_part = 0;  // for vertical geodesics
    Mat2 automorph;
    int orientation = 1;
};
// fundamental solution of t^2 - d u^2 = 4 with u > 0 minimal; d > 0 nonsquare
std::pair<i64, i64> pell4(i64 d);
GeodesicData geodesic_data(const QuadForm& f);

bool is_square(i64 n, i64* root = nullptr);

}  // namespace shintani

#endif
