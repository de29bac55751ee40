#pragma once

#include "qdsindex/heat.hpp"

namespace qdsindex {

/// zeta_D^(m)(b) = Res_{z=m/2} Tr(b |D|^{-2z}) extracted from heat
/// coefficients: value = b_{p-m} / (2 Gamma(m)).
struct ResidueReport {
    int m = 0;
    cplx value{};
    bool exact = false;
    double error_budget = 0.0;
};

inline ResidueReport residue_from_series(const AsymptoticSeries& s, int m) {
    if (m < 1 || m > s.p) throw Error("residue_from_series: m out of range 1..p");
    ResidueReport r;
    r.m = m;
    r.value = s.at(s.p - m) / (2.0 * std::tgamma(static_cast<double>(m)));
    r.exact = s.exact;
    r.error_budget = s.fit_residual + s.truncation_bound;
    return r;
}

/// Single-power normalization Res_{z=k} Tr(b |D|^{-z}) = b_{p-k}/Gamma(k);
/// equals twice the |D|^{-2z} residue at the same k.
inline cplx residue_single_from_series(const AsymptoticSeries& s, int k) {
    if (k < 1 || k > s.p) throw Error("residue_single_from_series: k out of range");
    return s.at(s.p - k) / std::tgamma(static_cast<double>(k));
}

/// Value of the zeta function at z = 0: Res_{z=0} z^{-1} Tr(b|D|^{-2z}) = b_p.
inline cplx zeta_at_zero_from_series(const AsymptoticSeries& s) { return s.at(s.p); }

/// Heat-coefficient conversion between the e^{-t^2 D^2} and e^{-t|D|}
/// expansions: b_r = (1/sqrt(pi)) 2^{p-r} Gamma((p-r+1)/2) b'_r, r = 0..p.
inline AsymptoticSeries convert_D2_to_absD(const AsymptoticSeries& gauss) {
    AsymptoticSeries out = gauss;
    out.coeffs.assign(gauss.p + 1, cplx{});
    for (int r = 0; r <= gauss.p; ++r) {
        double f = std::pow(2.0, gauss.p - r) * std::tgamma((gauss.p - r + 1) / 2.0) / std::sqrt(M_PI);
        out.coeffs[r] = gauss.at(r) * f;
        // budgets are inherited; the conversion factor is exact
    }
    return out;
}

inline AsymptoticSeries heat_series_for_residues(const Op& b, const DiracData& D, int p_weight,
                                                 const FitOptions& opt) {
    AsymptoticSeries s = fit_heat_series(b, D, p_weight, opt);
    if (opt.gaussian) {
        double max_factor = std::pow(2.0, p_weight) * std::tgamma((p_weight + 1) / 2.0) / std::sqrt(M_PI);
        auto conv = convert_D2_to_absD(s);
        conv.fit_residual = s.fit_residual * max_factor;
        conv.truncation_bound = s.truncation_bound * max_factor;
        return conv;
    }
    return s;
}

inline ResidueReport zeta_residue(const Op& b, const DiracData& D, int m, const FitOptions& opt) {
    return residue_from_series(heat_series_for_residues(b, D, D.summability_p, opt), m);
}

inline cplx zeta_at_zero(const Op& b, const DiracData& D, const FitOptions& opt) {
    // phi_0-type values depend on the kernel convention, so they are always
    // taken through the |D| route.
    FitOptions o = opt;
    o.gaussian = false;
    return zeta_at_zero_from_series(fit_heat_series(b, D, D.summability_p, o));
}

struct PsiValue {
    cplx value{};
    bool beyond_dimension_spectrum = false;
    double error_budget = 0.0;
};

/// psi_x^k(b0, a_1..a_n) = Res_{z=(n+|x|+k)/2} Tr(b0 delta^{x_1}(a_1) ...
/// delta^{x_n}(a_n) |D|^{-2z}). A grading, when given, left-multiplies b0.
/// Vanishes identically when n+|x|+k exceeds the summability order.
inline PsiValue psi(const std::vector<int>& x, int k, const Op& b0, const std::vector<Op>& ops,
                    const DiracData& D, const Op* grading, const FitOptions& opt) {
    if (x.size() != ops.size()) throw Error("psi: |x| must equal the number of operators");
    int m = static_cast<int>(ops.size()) + k;
    for (int xi : x) m += xi;
    if (m > D.summability_p) return {cplx{}, true, 0.0};
    Op B = grading ? (*grading) * b0 : b0;
    for (size_t i = 0; i < ops.size(); ++i) B = B * delta_pow(ops[i], D, x[i]);
    ResidueReport r = residue_from_series(heat_series_for_residues(B, D, D.summability_p, opt), m);
    return {r.value, false, r.error_budget};
}

}  // namespace qdsindex
