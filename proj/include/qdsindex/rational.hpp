#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace qdsindex {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(long n) {
    BigInt r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Binomial with zero extension: C(a,b) = 0 for b < 0 or b > a.
inline BigInt binomial(long a, long b) {
    if (b < 0 || b > a || a < 0) return 0;
    if (b > a - b) b = a - b;
    BigInt num = 1, den = 1;
    for (long i = 0; i < b; ++i) {
        num *= (a - i);
        den *= (i + 1);
    }
    return num / den;
}

/// Gamma at a half-integer argument 2m/2, m = two_arg.
/// Returns q with Gamma(two_arg/2) = q * sqrt(pi)^sqrt_pi_pow,
/// sqrt_pi_pow = two_arg mod 2. Requires two_arg >= 1.
struct HalfGamma {
    Rational q;
    int sqrt_pi_pow;  // 0 or 1
};

inline HalfGamma gamma_half(long two_arg) {
    if (two_arg % 2 == 0) {
        return {Rational(factorial(two_arg / 2 - 1)), 0};
    }
    // Gamma(m + 1/2) = (2m)! / (4^m m!) * sqrt(pi)
    long m = (two_arg - 1) / 2;
    Rational q(factorial(2 * m), factorial(m));
    BigInt four_m = 1;
    four_m <<= 2 * m;
    q /= Rational(four_m);
    return {q, 1};
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace qdsindex
