#pragma once

#include <cmath>

#include "qdsindex/op.hpp"

namespace qdsindex {

/// Spectral data of D in its own eigenbasis: signed eigenvalues per basis
/// index. |D| replaces zero modes by kernel_shift (> 0) and F = sign D is
/// +1 there; see the invertible-double convention.
struct DiracData {
    TruncationPtr truncation;
    std::vector<double> eigenvalues;  // signed, length dim
    double kernel_shift = 1.0;
    int summability_p = 1;

    DiracData(TruncationPtr tr, std::vector<double> evs, int p, double shift = 1.0)
        : truncation(std::move(tr)), eigenvalues(std::move(evs)), kernel_shift(shift), summability_p(p) {
        if (eigenvalues.size() != truncation->dim) throw Error("DiracData: eigenvalue count != dim");
        if (kernel_shift <= 0) throw Error("DiracData: kernel_shift must be positive");
    }

    double abs_eigenvalue(uint32_t i) const {
        double a = std::fabs(eigenvalues[i]);
        return a == 0.0 ? kernel_shift : a;
    }

    double sign_eigenvalue(uint32_t i) const { return eigenvalues[i] < 0 ? -1.0 : 1.0; }

    std::vector<double> abs_spectrum() const {
        std::vector<double> mu(truncation->dim);
        for (uint32_t i = 0; i < truncation->dim; ++i) mu[i] = abs_eigenvalue(i);
        return mu;
    }
};

/// da = [D, a], entrywise (lambda_i - lambda_j) a_ij in the eigenbasis.
inline Op commutator_d(const Op& a, const DiracData& D) {
    require_same_truncation(a.truncation(), D.truncation);
    Op out(a.truncation());
    for (const auto& [k, v] : a.entries()) {
        uint32_t i = Op::row_of(k), j = Op::col_of(k);
        double w = D.eigenvalues[i] - D.eigenvalues[j];
        if (w != 0.0) out.set(i, j, w * v);
    }
    return out;
}

/// delta^x a = [|D|, .]^x applied entrywise: (mu_i - mu_j)^x a_ij.
inline Op delta_pow(const Op& a, const DiracData& D, int x) {
    if (x < 0) throw Error("delta_pow: x must be >= 0");
    require_same_truncation(a.truncation(), D.truncation);
    if (x == 0) return a;
    Op out(a.truncation());
    for (const auto& [k, v] : a.entries()) {
        uint32_t i = Op::row_of(k), j = Op::col_of(k);
        double w = D.abs_eigenvalue(i) - D.abs_eigenvalue(j);
        if (w == 0.0) continue;
        out.set(i, j, std::pow(w, x) * v);
    }
    return out;
}

/// nabla^k a = [D^2, .]^k applied entrywise: (mu_i^2 - mu_j^2)^k a_ij.
inline Op nabla_pow(const Op& a, const DiracData& D, int k) {
    if (k < 0) throw Error("nabla_pow: k must be >= 0");
    require_same_truncation(a.truncation(), D.truncation);
    if (k == 0) return a;
    Op out(a.truncation());
    for (const auto& [kk, v] : a.entries()) {
        uint32_t i = Op::row_of(kk), j = Op::col_of(kk);
        double mi = D.abs_eigenvalue(i), mj = D.abs_eigenvalue(j);
        double w = mi * mi - mj * mj;
        if (w == 0.0) continue;
        out.set(i, j, std::pow(w, k) * v);
    }
    return out;
}

inline Op sign_F(const DiracData& D) {
    Op f(D.truncation);
    for (uint32_t i = 0; i < D.truncation->dim; ++i) f.set(i, i, D.sign_eigenvalue(i));
    return f;
}

/// |D|^s as a diagonal operator. Negative powers require kernel_shift > 0,
/// which DiracData enforces on construction.
inline Op abs_pow(const DiracData& D, double s) {
    Op f(D.truncation);
    for (uint32_t i = 0; i < D.truncation->dim; ++i) f.set(i, i, std::pow(D.abs_eigenvalue(i), s));
    return f;
}

inline Op signed_D_op(const DiracData& D) {
    Op f(D.truncation);
    for (uint32_t i = 0; i < D.truncation->dim; ++i)
        if (D.eigenvalues[i] != 0.0) f.set(i, i, D.eigenvalues[i]);
    return f;
}

}  // namespace qdsindex
