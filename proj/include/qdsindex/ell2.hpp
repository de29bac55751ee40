#pragma once

#include "qdsindex/op.hpp"
#include "qdsindex/rational.hpp"

namespace qdsindex {

/// S^n on the M-dimensional truncation of l2(N). S e_n = e_{n-1}; for n < 0
/// this is S*^{|n|}. shift_power(M, 0) is the identity.
inline Op shift_power(const TruncationPtr& ell2, int n) {
    uint32_t M = ell2->dim;
    if (static_cast<uint32_t>(std::abs(n)) >= M) throw Error("shift_power: |n| >= M");
    Op s(ell2);
    if (n >= 0) {
        for (uint32_t k = static_cast<uint32_t>(n); k < M; ++k) s.set(k - n, k, 1.0);
    } else {
        for (uint32_t k = 0; k + static_cast<uint32_t>(-n) < M; ++k) s.set(k - n, k, 1.0);
    }
    return s;
}

inline Op number_op(const TruncationPtr& ell2) {
    Op n(ell2);
    for (uint32_t k = 1; k < ell2->dim; ++k) n.set(k, k, static_cast<double>(k));
    return n;
}

inline Op rank_one(const TruncationPtr& ell2, uint32_t i, uint32_t j) {
    if (i >= ell2->dim || j >= ell2->dim) throw Error("rank_one: index out of range");
    Op p(ell2);
    p.set(i, j, 1.0);
    return p;
}

/// delta_N(c) = [N, c], entrywise (i - j) c_ij.
inline Op delta_N_pow(const Op& c, int x) {
    if (x == 0) return c;
    Op out(c.truncation());
    for (const auto& [k, v] : c.entries()) {
        int w = static_cast<int>(Op::row_of(k)) - static_cast<int>(Op::col_of(k));
        if (w == 0) continue;
        out.set(Op::row_of(k), Op::col_of(k), std::pow(static_cast<double>(w), x) * v);
    }
    return out;
}

/// Tr(c e^{-tN}) over the truncation; the n = 0 mode enters with weight 1.
inline cplx heat_trace_number(const Op& c, double t) {
    cplx acc{};
    for (const auto& [k, v] : c.entries()) {
        uint32_t i = Op::row_of(k);
        if (i != Op::col_of(k)) continue;
        acc += v * std::exp(-t * static_cast<double>(i));
    }
    return acc;
}

/// phi_r(k) = (-1)^r / r! sum_i k_ii i^r, with the convention 0^0 = 1.
inline cplx schwartz_phi(const Op& k, int r) {
    cplx acc{};
    for (const auto& [key, v] : k.entries()) {
        uint32_t i = Op::row_of(key);
        if (i != Op::col_of(key)) continue;
        double ipow = (r == 0) ? 1.0 : std::pow(static_cast<double>(i), r);
        acc += v * ipow;
    }
    double pref = to_double(Rational((r % 2 == 0) ? 1 : -1, factorial(r)));
    return pref * acc;
}

}  // namespace qdsindex
