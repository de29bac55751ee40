#pragma once

#include <vector>

#include "qdsindex/op.hpp"
#include "qdsindex/rational.hpp"

namespace qdsindex {

/// Exact scalar q * sqrt(pi)^e with a global sqrt(2i) unit flag. The unit
/// embeds numerically as 1+i (principal branch) only at evaluation time.
struct ExactCoeff {
    Rational q;
    int sqrt_pi_pow = 0;  // 0 or 1
    bool carries_sqrt2i = false;

    bool is_zero() const { return q == 0; }

    ExactCoeff& operator+=(const ExactCoeff& o) {
        if (o.q == 0) return *this;
        if (q == 0) {
            *this = o;
            return *this;
        }
        if (sqrt_pi_pow != o.sqrt_pi_pow || carries_sqrt2i != o.carries_sqrt2i)
            throw Error("ExactCoeff: incompatible units in addition");
        q += o.q;
        return *this;
    }

    friend ExactCoeff operator*(const ExactCoeff& a, const ExactCoeff& b) {
        ExactCoeff out;
        out.q = a.q * b.q;
        out.sqrt_pi_pow = a.sqrt_pi_pow + b.sqrt_pi_pow;  // stays in {0,1} for our use
        out.carries_sqrt2i = a.carries_sqrt2i != b.carries_sqrt2i;
        return out;
    }

    cplx embed() const {
        double v = to_double(q) * std::pow(std::sqrt(M_PI), sqrt_pi_pow);
        return carries_sqrt2i ? cplx(v, v) : cplx(v, 0.0);
    }
};

/// c_{n,k} = (-1)^{|k|} sqrt(2i) (prod k_j! prod_j (k_1+...+k_j+j))^{-1}
/// Gamma(|k| + n/2). Odd n produces one sqrt(pi) factor.
inline ExactCoeff c_coeff(int n, const std::vector<int>& k) {
    if (static_cast<int>(k.size()) != n) throw Error("c_coeff: length(k) != n");
    long abs_k = 0;
    BigInt den = 1;
    long partial = 0;
    for (int j = 0; j < n; ++j) {
        abs_k += k[j];
        partial += k[j];
        den *= factorial(k[j]);
        den *= (partial + j + 1);
    }
    auto g = gamma_half(2 * abs_k + n);
    ExactCoeff out;
    out.q = g.q / Rational(den);
    if (abs_k % 2 != 0) out.q = -out.q;
    out.sqrt_pi_pow = g.sqrt_pi_pow;
    out.carries_sqrt2i = true;
    return out;
}

/// B_x^n: the delta-reparametrization of the Connes-Moscovici coefficients.
/// Nested sum over k_i in [ceil((x_i - s_{i-1})/2), x_i] and s_i in [0, S_i]
/// (i < n), S_i = sum_{l<=i} (2 k_l - x_l), with weight
/// c_{n,k} 2^{2|k|-|x|+|s|} prod C(k_i, x_i - k_i - s_{i-1}) C(S_i, s_i).
inline ExactCoeff B_coeff(int n, const std::vector<int>& x) {
    if (static_cast<int>(x.size()) != n) throw Error("B_coeff: length(x) != n");
    long abs_x = 0;
    for (int xi : x) abs_x += xi;

    ExactCoeff total;
    total.q = 0;

    std::vector<int> k(n);
    std::vector<int> s(n, 0);  // s[i] = s_{i+1} in text; s_0 = 0 implicit

    // depth i walks k_1, s_1, k_2, s_2, ..., k_n
    auto rec = [&](auto&& self, int i, int s_prev, long S_partial, long abs_k, long abs_s,
                   const BigInt& binoms) -> void {
        int lo = (x[i] - s_prev + 1) / 2;  // ceil((x_i - s_prev)/2), nonneg since args >= 0
        if (lo < 0) lo = 0;
        for (k[i] = lo; k[i] <= x[i]; ++k[i]) {
            BigInt b1 = binomial(k[i], x[i] - k[i] - s_prev);
            if (b1 == 0) continue;
            long S_i = S_partial + 2 * k[i] - x[i];
            if (i == n - 1) {
                // s_n = 0, C(S_n, 0) = 1
                std::vector<int> kk(k.begin(), k.end());
                ExactCoeff term = c_coeff(n, kk);
                long e2 = 2 * (abs_k + k[i]) - abs_x + abs_s;
                BigInt pow2 = BigInt(1) << e2;
                term.q *= Rational(binoms * b1 * pow2);
                total += term;
                continue;
            }
            for (int si = 0; si <= S_i; ++si) {
                BigInt b2 = binomial(S_i, si);
                self(self, i + 1, si, S_i, abs_k + k[i], abs_s + si, binoms * b1 * b2);
            }
        }
    };
    rec(rec, 0, 0, 0, 0, 0, BigInt(1));
    if (total.q == 0) {
        // normalize units of an exactly cancelled sum
        total.sqrt_pi_pow = (n % 2 == 0) ? 0 : 1;
        total.carries_sqrt2i = true;
    }
    return total;
}

}  // namespace qdsindex
