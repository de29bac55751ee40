#pragma once

#include <cmath>

#include "qdsindex/rational.hpp"

namespace qdsindex {

/// Wigner 3j symbol by the Racah single-sum formula, evaluated over exact
/// rationals and square-rooted once at the end. Half-integer arguments are
/// passed doubled: wigner3j_2(2*j1, ...). Selection-rule violations return 0.
inline double wigner3j_2(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    if (tj1 < 0 || tj2 < 0 || tj3 < 0) return 0.0;
    if ((tj1 + tm1) % 2 != 0 || (tj2 + tm2) % 2 != 0 || (tj3 + tm3) % 2 != 0) return 0.0;
    if (tm1 + tm2 + tm3 != 0) return 0.0;
    if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
    if (tj3 > tj1 + tj2 || tj3 < std::abs(tj1 - tj2)) return 0.0;
    if ((tj1 + tj2 + tj3) % 2 != 0) return 0.0;

    auto half = [](long twice) { return twice / 2; };
    long a1 = half(tj1 + tj2 - tj3), a2 = half(tj1 - tj2 + tj3), a3 = half(-tj1 + tj2 + tj3);
    long b1 = half(tj1 + tm1), b2 = half(tj1 - tm1);
    long b3 = half(tj2 + tm2), b4 = half(tj2 - tm2);
    long b5 = half(tj3 + tm3), b6 = half(tj3 - tm3);
    long J = half(tj1 + tj2 + tj3);

    long tmin = std::max({0L, half(tj2 - tj3 - tm1), half(tj1 - tj3 + tm2)});
    long tmax = std::min({a1, b2, b3});
    if (tmin > tmax) return 0.0;

    Rational sum = 0;
    for (long t = tmin; t <= tmax; ++t) {
        BigInt den = factorial(t) * factorial(a1 - t) * factorial(b2 - t) * factorial(b3 - t) *
                     factorial(half(tj3 - tj2 + tm1) + t) * factorial(half(tj3 - tj1 - tm2) + t);
        Rational term(1, den);
        if (t % 2 != 0) term = -term;
        sum += term;
    }
    if (sum == 0) return 0.0;

    Rational radicand = Rational(factorial(a1) * factorial(a2) * factorial(a3), factorial(J + 1));
    radicand *= Rational(factorial(b1) * factorial(b2) * factorial(b3) * factorial(b4) *
                         factorial(b5) * factorial(b6));
    radicand *= sum * sum;

    double value = std::sqrt(to_double(radicand));
    if (sum < 0) value = -value;
    long phase = half(tj1 - tj2 - tm3);
    if (phase % 2 != 0) value = -value;
    return value;
}

inline double wigner3j(double j1, double j2, double j3, double m1, double m2, double m3) {
    auto twice = [](double x) {
        double t = 2.0 * x;
        double r = std::round(t);
        if (std::abs(t - r) > 1e-9) throw Error("wigner3j: arguments must be half-integers");
        return static_cast<int>(r);
    };
    return wigner3j_2(twice(j1), twice(j2), twice(j3), twice(m1), twice(m2), twice(m3));
}

}  // namespace qdsindex
