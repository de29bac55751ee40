#pragma once

#include <stdexcept>
#include <vector>

#include "qdsindex/rational.hpp"

namespace qdsindex {

/// Truncated power series with exact rational coefficients c_0..c_R.
/// All arithmetic is closed at the common truncation order.
struct RationalSeries {
    std::vector<Rational> c;

    explicit RationalSeries(int order) : c(order + 1) {}
    int order() const { return static_cast<int>(c.size()) - 1; }

    static RationalSeries constant(const Rational& v, int order) {
        RationalSeries s(order);
        s.c[0] = v;
        return s;
    }
};

inline RationalSeries series_add(const RationalSeries& a, const RationalSeries& b) {
    int r = std::min(a.order(), b.order());
    RationalSeries out(r);
    for (int i = 0; i <= r; ++i) out.c[i] = a.c[i] + b.c[i];
    return out;
}

inline RationalSeries series_scale(const RationalSeries& a, const Rational& s) {
    RationalSeries out = a;
    for (auto& x : out.c) x *= s;
    return out;
}

inline RationalSeries series_mul(const RationalSeries& a, const RationalSeries& b) {
    int r = std::min(a.order(), b.order());
    RationalSeries out(r);
    for (int i = 0; i <= r; ++i)
        for (int j = 0; i + j <= r; ++j) out.c[i + j] += a.c[i] * b.c[j];
    return out;
}

inline RationalSeries series_recip(const RationalSeries& a) {
    if (a.c[0] == 0) throw std::domain_error("series_recip: zero constant term");
    int r = a.order();
    RationalSeries out(r);
    out.c[0] = Rational(1) / a.c[0];
    for (int n = 1; n <= r; ++n) {
        Rational acc = 0;
        for (int k = 1; k <= n; ++k) acc += a.c[k] * out.c[n - k];
        out.c[n] = -acc / a.c[0];
    }
    return out;
}

/// exp(s*t) truncated at the given order.
inline RationalSeries exp_series(const Rational& s, int order) {
    RationalSeries out(order);
    Rational term = 1;
    out.c[0] = 1;
    for (int n = 1; n <= order; ++n) {
        term = term * s / n;
        out.c[n] = term;
    }
    return out;
}

/// Coefficients n_r of t/(1-e^{-t}) = t*Tr(e^{-tN}) on l2(N).
/// n_0 = 1, n_1 = 1/2, n_2 = 1/12, n_3 = 0, n_4 = -1/720, ...
inline RationalSeries n_coefficients(int order) {
    // (1 - e^{-t})/t = sum_{r>=0} (-1)^r t^r / (r+1)!
    RationalSeries den(order);
    int sign = 1;
    for (int r = 0; r <= order; ++r) {
        den.c[r] = Rational(sign, factorial(r + 1));
        sign = -sign;
    }
    return series_recip(den);
}

inline std::vector<double> series_to_doubles(const RationalSeries& s) {
    std::vector<double> out(s.c.size());
    for (size_t i = 0; i < s.c.size(); ++i) out[i] = to_double(s.c[i]);
    return out;
}

}  // namespace qdsindex
