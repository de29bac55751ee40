#pragma once

#include "qdsindex/coeff.hpp"
#include "qdsindex/ell2.hpp"
#include "qdsindex/models/model.hpp"

namespace qdsindex {

/// Quantum double suspension of a model triple at l2(N) truncation size M.
/// D0 = (F (x) 1)(|D| (x) 1 + 1 (x) N): the stored signed spectrum is
/// F_i (mu_i + n); the grading is gamma (x) 1 when the base is even.
/// u/v/w are the base heat series (plain, F-twisted, gamma-twisted) the
/// transfer formulas consume; n_series is exact.
struct SuspendedTriple {
    const models::ModelInstance* base;
    uint32_t M;
    TruncationPtr product;
    TruncationPtr ell2;
    DiracData dirac0;
    std::optional<Op> gamma0;
    std::vector<cplx> u, v, w;  // base series coefficients, absD route
    std::vector<double> n;      // exact l2(N) series
    double series_budget = 0.0;
    FitOptions fit0;     // unit-type elements: window limited by the l2(N) cut
    FitOptions fit0_ak;  // finite-rank l2 legs: only the base cut matters

    int base_p() const { return base->dirac.summability_p; }
    int p0() const { return base_p() + 1; }

    Op realize_ak(const Op& a, const Op& k) const { return tensor(a, k, product); }
    Op realize_shift(int n_) const {
        return tensor(Op::identity(base->truncation), shift_power(ell2, n_), product);
    }
    Op realize_f_unit() const {
        return tensor(sign_F(base->dirac), Op::identity(ell2), product);
    }
    Op realize_gamma_unit() const {
        if (!base->gamma) throw Error("realize_gamma_unit: base is odd");
        return tensor(*base->gamma, Op::identity(ell2), product);
    }
};

namespace detail {

inline std::vector<cplx> base_series_coeffs(const models::ModelInstance& m, const Op& dress,
                                            int degree, double* budget) {
    FitOptions opt = m.fit_absD;
    opt.degree = degree;
    auto s = fit_heat_series(dress, m.dirac, m.dirac.summability_p, opt);
    if (budget) *budget = std::max(*budget, s.fit_residual + s.truncation_bound);
    return s.coeffs;
}

}  // namespace detail

inline SuspendedTriple suspend_triple(const models::ModelInstance& base, uint32_t M) {
    if (M < 2) throw Error("suspend_triple: M >= 2 required");
    int p = base.dirac.summability_p;
    SuspendedTriple T{&base, M, make_product_truncation(base.truncation, M),
                      make_ell2_truncation(M),
                      DiracData(base.truncation, base.dirac.eigenvalues, p),  // placeholder
                      std::nullopt,
                      {},
                      {},
                      {},
                      {},
                      0.0,
                      FitOptions{},
                      FitOptions{}};

    std::vector<double> ev(T.product->dim);
    for (uint32_t i = 0; i < base.truncation->dim; ++i) {
        double mu = base.dirac.abs_eigenvalue(i);
        double sg = base.dirac.sign_eigenvalue(i);
        for (uint32_t n = 0; n < M; ++n) ev[i * M + n] = sg * (mu + n);
    }
    T.dirac0 = DiracData(T.product, std::move(ev), p + 1);

    if (base.gamma) T.gamma0 = tensor(*base.gamma, Op::identity(T.ell2), T.product);

    int deg = p + 3;
    auto one = Op::identity(base.truncation);
    T.u = detail::base_series_coeffs(base, one, std::max(deg, base.fit_absD.degree), &T.series_budget);
    T.v = detail::base_series_coeffs(base, sign_F(base.dirac), std::max(deg, base.fit_absD.degree),
                                     &T.series_budget);
    if (base.gamma)
        T.w = detail::base_series_coeffs(base, *base.gamma, std::max(deg, base.fit_absD.degree),
                                         &T.series_budget);
    auto ns = n_coefficients(p + 3);
    T.n = series_to_doubles(ns);

    double t0 = 25.0 / std::min(base.mu_edge, static_cast<double>(M));
    T.fit0 = FitOptions{.t_min = t0, .t_max = t0 + 1.0, .points = 128, .degree = p + 7};
    double ta = 25.0 / base.mu_edge;
    T.fit0_ak = FitOptions{.t_min = ta, .t_max = ta + 1.0, .points = 128, .degree = p + 7};
    return T;
}

/// Replace the fitted base series by exact expansions where registered.
inline void use_exact_base_series(SuspendedTriple& T, SpectrumDescriptor d) {
    auto e = exact_expansion(d, T.base_p() + 3);
    T.u.assign(e.coeffs.begin(), e.coeffs.end());
}

/// Poisson summation fixes the first three |D|-heat coefficients of the
/// flat 2-torus exactly: 4 pi, 0, 0 (the kernel shift cancels against the
/// lattice constant term). The t^3 coefficient stays fitted.
inline void use_exact_torus_low_orders(SuspendedTriple& T) {
    if (T.u.size() < 4) T.u.resize(4);
    T.u[0] = 4.0 * M_PI;
    T.u[1] = 0.0;
    T.u[2] = 0.0;
}

// ---------------------------------------------------------------------------
// formula routes
// ---------------------------------------------------------------------------

inline cplx convolve_at(const std::vector<cplx>& a, const std::vector<double>& b, int idx) {
    cplx acc{};
    for (int y = 0; y <= idx; ++y) {
        cplx av = y < static_cast<int>(b.size()) ? cplx(b[y]) : cplx{};
        cplx bv = (idx - y) < static_cast<int>(a.size()) ? a[idx - y] : cplx{};
        acc += av * bv;
    }
    return acc;
}

enum class UnitSeries { Plain, F, Gamma };

/// zeta_{D0}^{(s)} of 1, F (x) 1 or gamma (x) 1 for s = 1..p+1, from the
/// convolution of the base series with the exact l2(N) series:
/// value = (conv)_{(p+1)-s} / (2 Gamma(s)). The s = 1 case carvers out the
/// top coefficient (n_0 u_p enters with weight 1/2).
inline cplx zeta0_unit(const SuspendedTriple& T, int s, UnitSeries which) {
    if (s < 1 || s > T.p0()) throw Error("zeta0_unit: s out of range 1..p+1");
    const std::vector<cplx>& series =
        which == UnitSeries::Plain ? T.u : (which == UnitSeries::F ? T.v : T.w);
    if (which == UnitSeries::Gamma && T.w.empty()) throw Error("zeta0_unit: odd base has no gamma");
    return convolve_at(series, T.n, T.p0() - s) / (2.0 * std::tgamma(static_cast<double>(s)));
}

/// zeta_{D0}^{(s)}(b (x) k) for b of filtration degree m and Schwartz k:
/// (1/Gamma(s)) sum_{y=0}^{m-s} Gamma(s+y) zeta_D^{(s+y)}(b) phi_y(k).
/// Returns 0 for s > m.
inline cplx zeta0_bk(const SuspendedTriple& T, int s, const Op& b, int m, const Op& k,
                     double* budget = nullptr) {
    if (s < 1) throw Error("zeta0_bk: s >= 1 required");
    if (s > m) return cplx{};
    FitOptions opt = T.base->residue_fit();
    auto series = heat_series_for_residues(b, T.base->dirac, m, opt);
    if (budget) *budget += series.fit_residual + series.truncation_bound;
    cplx acc{};
    for (int y = 0; y + s <= m; ++y) {
        cplx zeta = series.at(m - (s + y)) / (2.0 * std::tgamma(static_cast<double>(s + y)));
        acc += std::tgamma(static_cast<double>(s + y)) * zeta * schwartz_phi(k, y);
    }
    return acc / std::tgamma(static_cast<double>(s));
}

/// Sigma^2 phi_0 of the unit-type elements through the cached base series:
/// phi_0(1) = (u * n)_{p+1}, and the F/gamma versions alike.
inline cplx sigma2_phi0_unit(const SuspendedTriple& T, UnitSeries which) {
    const std::vector<cplx>& series =
        which == UnitSeries::Plain ? T.u : (which == UnitSeries::F ? T.v : T.w);
    if (which == UnitSeries::Gamma && T.w.empty())
        throw Error("sigma2_phi0_unit: odd base has no gamma");
    return convolve_at(series, T.n, T.p0());
}

struct KPart {
    enum class Kind { Finite, ShiftN, Full } kind;
    Op k;       // Finite
    int n = 0;  // ShiftN

    static KPart finite(Op k_) { return {Kind::Finite, std::move(k_), 0}; }
    static KPart shift(int n_) { return {Kind::ShiftN, Op{}, n_}; }
    static KPart full() { return {Kind::Full, Op{}, 0}; }
};

/// Sigma^2 phi_0 (the zeta value at z = 0) of dress (x) kpart, where dress
/// is a base operator of filtration weight `m` (p for units) carrying any
/// gamma/F dressing already. Transfer route: the t^{m + grade} coefficient
/// of the product expansion; k = S^n with n != 0 contributes exactly 0.
inline cplx sigma2_phi0_formula(const SuspendedTriple& T, const Op& dress, int m,
                                const KPart& kp, double* budget = nullptr) {
    if (kp.kind == KPart::Kind::ShiftN && kp.n != 0) return cplx{};
    FitOptions opt = T.base->fit_absD;
    opt.degree = std::max(opt.degree, m + 3);
    auto series = fit_heat_series(dress, T.base->dirac, m, opt);
    if (budget) *budget += series.fit_residual + series.truncation_bound;
    if (kp.kind == KPart::Kind::Finite) {
        cplx acc{};
        for (int y = 0; y <= m; ++y) acc += schwartz_phi(kp.k, y) * series.at(m - y);
        return acc;
    }
    // k = identity: grade rises by one and the full n-series enters
    cplx acc{};
    for (int y = 0; y <= m + 1; ++y) {
        double ny = y < static_cast<int>(T.n.size()) ? T.n[y] : 0.0;
        acc += ny * series.at(m + 1 - y);
    }
    return acc;
}

/// psi_r^{(l)} on the base at filtration weight m: residue at (n+|r|+l)
/// of b0 prod delta^{r_i}(ops_i), through the t^m-weighted heat series.
inline cplx base_psi_weighted(const std::vector<int>& r, int l, const Op& b0,
                              const std::vector<Op>& ops, const models::ModelInstance& model,
                              int m, double* budget) {
    int mm = static_cast<int>(ops.size()) + l;
    for (int ri : r) mm += ri;
    if (mm > m) return cplx{};
    Op B = b0;
    for (size_t i = 0; i < ops.size(); ++i) B = B * delta_pow(ops[i], model.dirac, r[i]);
    auto series = heat_series_for_residues(B, model.dirac, m, model.residue_fit());
    if (budget) *budget += series.fit_residual + series.truncation_bound;
    return series.at(m - mm) / (2.0 * std::tgamma(static_cast<double>(mm)));
}

/// One argument of a suspension functional: a (x) c with filtration degree,
/// or 1 (x) S^n. Shifts enter the mixed route with a = 1, c = S^n.
struct SuspArg {
    bool is_ak = true;
    Op a;  // base leg (identity for shifts)
    Op c;  // l2 leg (shift power for shifts)
    int m = 0;
    int shift_n = 0;

    static SuspArg ak(Op a_, Op c_, int m_) { return {true, std::move(a_), std::move(c_), m_, 0}; }
};

inline SuspArg make_shift_arg(const SuspendedTriple& T, int n) {
    SuspArg s;
    s.is_ak = false;
    s.a = Op::identity(T.base->truncation);
    s.c = shift_power(T.ell2, n);
    s.m = T.base_p() + 1;
    s.shift_n = n;
    return s;
}

/// Sigma^2 psi_x^{(0)}(b0~, d0(b1~), ..., d0(bn~)) by the transfer formula:
/// the d0 split a^{(1)}=da, a^{(2)}=Fa, a^{(3)}=aF, c^{(1)}=c, c^{(2)}=Nc,
/// c^{(3)}=-cN, the delta_0 binomial split, and base residues paired with
/// phi_k of the l2(N) legs. `gamma_twist` left-multiplies the slot-0 base
/// leg by the base grading. Requires at least one AK argument.
inline cplx sigma2_psi_mixed(const SuspendedTriple& T, const std::vector<int>& x,
                             const std::vector<SuspArg>& args, bool gamma_twist,
                             double* budget = nullptr) {
    int n = static_cast<int>(args.size()) - 1;
    if (n < 1 || static_cast<int>(x.size()) != n)
        throw Error("sigma2_psi_mixed: need n+1 arguments and |x| = n");
    int m = INT32_MAX;
    bool any_ak = false;
    for (const auto& a : args)
        if (a.is_ak) {
            any_ak = true;
            m = std::min(m, a.m);
        }
    if (!any_ak) throw Error("sigma2_psi_mixed: no AK argument; use the shift route");

    int abs_x = 0;
    for (int xi : x) abs_x += xi;
    if (n + abs_x > m) return cplx{};  // beyond the ideal's residue range

    const auto& model = *T.base;
    auto F = sign_F(model.dirac);
    Op a0 = args[0].a;
    if (gamma_twist) {
        if (!model.gamma) throw Error("sigma2_psi_mixed: gamma twist on odd base");
        a0 = (*model.gamma) * a0;
    }
    const Op& c0 = args[0].c;
    auto N = number_op(T.ell2);

    // per-slot split tables
    std::vector<std::array<Op, 3>> aj(n), cj(n);
    for (int i = 0; i < n; ++i) {
        const Op& ai = args[i + 1].a;
        const Op& ci = args[i + 1].c;
        aj[i] = {commutator_d(ai, model.dirac), F * ai, ai * F};
        cj[i] = {ci, N * ci, ci * N * cplx(-1.0)};
    }

    double gamma_top = std::tgamma(static_cast<double>(n + abs_x));
    cplx total{};
    std::vector<int> j(n, 0), r(n, 0);
    auto loop_r = [&](auto&& self, int depth) -> void {
        if (depth == n) {
            int abs_r = 0;
            BigInt binom_prod = 1;
            for (int i = 0; i < n; ++i) {
                abs_r += r[i];
                binom_prod *= binomial(x[i], r[i]);
            }
            if (binom_prod == 0) return;
            std::vector<Op> ops(n);
            Op cprod = c0;
            for (int i = 0; i < n; ++i) {
                ops[i] = aj[i][j[i]];
                cprod = cprod * delta_N_pow(cj[i][j[i]], x[i] - r[i]);
            }
            for (int k = 0; k + n + abs_x <= m; ++k) {
                cplx phik = schwartz_phi(cprod, k);
                if (phik == cplx{}) continue;
                cplx psi = base_psi_weighted(r, k + abs_x - abs_r, a0, ops, model, m, budget);
                double gfac = std::tgamma(static_cast<double>(n + abs_x + k)) / gamma_top;
                total += to_double(Rational(binom_prod)) * gfac * psi * phik;
            }
            return;
        }
        for (r[depth] = 0; r[depth] <= x[depth]; ++r[depth]) self(self, depth + 1);
    };
    auto loop_j = [&](auto&& self, int depth) -> void {
        if (depth == n) {
            loop_r(loop_r, 0);
            return;
        }
        for (j[depth] = 0; j[depth] < 3; ++j[depth]) self(self, depth + 1);
    };
    loop_j(loop_j, 0);
    return total;
}

/// Shift-only arguments: Sigma^2 psi_x^{(0)}(1 (x) S^{m_0}, d0(1 (x) S^{m_1}),
/// ...) = 0 unless sum m_i = 0, in which case it equals
/// (-1)^{n+|x|} prod m_i^{x_i+1} zeta_{D0}^{(n+|x|)}(F (x) 1) for an odd base
/// and the gamma (x) 1 analogue with the grading twist.
inline cplx sigma2_psi_shifts(const SuspendedTriple& T, const std::vector<int>& x,
                              const std::vector<int>& shifts, bool gamma_twist) {
    int n = static_cast<int>(shifts.size()) - 1;
    if (n < 1 || static_cast<int>(x.size()) != n) throw Error("sigma2_psi_shifts: bad arity");
    long sum = 0;
    for (int mi : shifts) sum += mi;
    if (sum != 0) return cplx{};
    int abs_x = 0;
    for (int xi : x) abs_x += xi;
    int s = n + abs_x;
    if (s > T.p0()) return cplx{};
    double prod = 1.0;
    for (int i = 1; i <= n; ++i) prod *= std::pow(static_cast<double>(shifts[i]), x[i - 1] + 1);
    double sign = (s % 2 == 0) ? 1.0 : -1.0;
    cplx zeta = zeta0_unit(T, s, gamma_twist ? UnitSeries::Gamma : UnitSeries::F);
    return sign * prod * zeta;
}

// ---------------------------------------------------------------------------
// direct (brute-force) routes on the product truncation
// ---------------------------------------------------------------------------

inline AsymptoticSeries direct_susp_series(const SuspendedTriple& T, const Op& X,
                                           int p_weight = -1, bool finite_k = false) {
    FitOptions opt = finite_k ? T.fit0_ak : T.fit0;
    if (p_weight < 0) p_weight = T.p0();
    opt.degree = std::max(opt.degree, p_weight + 3);
    return fit_heat_series(X, T.dirac0, p_weight, opt);
}

inline ResidueReport direct_susp_residue(const SuspendedTriple& T, const Op& X, int s,
                                         bool finite_k = false) {
    return residue_from_series(direct_susp_series(T, X, -1, finite_k), s);
}

inline cplx direct_susp_phi0(const SuspendedTriple& T, const Op& X, double* budget = nullptr,
                             bool finite_k = false) {
    auto series = direct_susp_series(T, X, -1, finite_k);
    if (budget) *budget += series.fit_residual + series.truncation_bound;
    return zeta_at_zero_from_series(series);
}

/// Realize b0~ prod delta_0^{x_i}(d0(b_i~)) and take the suspended residue.
inline cplx direct_sigma2_psi(const SuspendedTriple& T, const std::vector<int>& x,
                              const std::vector<SuspArg>& args, bool gamma_twist,
                              double* budget = nullptr) {
    int n = static_cast<int>(args.size()) - 1;
    int abs_x = 0;
    for (int xi : x) abs_x += xi;
    int s = n + abs_x;
    if (s > T.p0()) return cplx{};
    Op B = T.realize_ak(args[0].a, args[0].c);
    if (gamma_twist) B = (*T.gamma0) * B;
    bool finite_k = false;
    for (const auto& a : args) finite_k = finite_k || a.is_ak;
    for (int i = 1; i <= n; ++i) {
        Op el = T.realize_ak(args[i].a, args[i].c);
        B = B * delta_pow(commutator_d(el, T.dirac0), T.dirac0, x[i - 1]);
    }
    auto series = direct_susp_series(T, B, -1, finite_k);
    if (budget) *budget += series.fit_residual + series.truncation_bound;
    return series.at(T.p0() - s) / (2.0 * std::tgamma(static_cast<double>(s)));
}

// ---------------------------------------------------------------------------
// local index cocycle assembly
// ---------------------------------------------------------------------------

/// phi_n on the suspension via the B_x^n coefficients and the transfer
/// formulas; even parity gamma-twists slot 0. The x-sum is finite: terms
/// with n + |x| > p+1 vanish identically.
inline cplx assemble_phi_susp(const SuspendedTriple& T, int n, bool even,
                              const std::vector<SuspArg>& args, double* budget = nullptr) {
    if (static_cast<int>(args.size()) != n + 1) throw Error("assemble_phi_susp: arity mismatch");
    if (even != static_cast<bool>(T.gamma0)) throw Error("assemble_phi_susp: parity mismatch");
    bool all_shift = true;
    for (const auto& a : args) all_shift = all_shift && !a.is_ak;

    cplx total{};
    std::vector<int> x(n, 0);
    int budget_cap = T.p0() - n;
    auto loop = [&](auto&& self, int depth, int remaining) -> void {
        if (depth == n) {
            ExactCoeff B = B_coeff(n, x);
            if (B.is_zero()) return;
            cplx psi;
            if (all_shift) {
                std::vector<int> shifts(n + 1);
                for (int i = 0; i <= n; ++i) shifts[i] = args[i].shift_n;
                psi = sigma2_psi_shifts(T, x, shifts, even);
            } else {
                psi = sigma2_psi_mixed(T, x, args, even, budget);
            }
            total += B.embed() * psi;
            return;
        }
        for (x[depth] = 0; x[depth] <= remaining; ++x[depth])
            self(self, depth + 1, remaining - x[depth]);
    };
    if (budget_cap >= 0) loop(loop, 0, budget_cap);
    return total;
}

/// Brute-force counterpart of assemble_phi_susp on the product truncation.
inline cplx direct_assemble_phi(const SuspendedTriple& T, int n, bool even,
                                const std::vector<SuspArg>& args, double* budget = nullptr) {
    cplx total{};
    std::vector<int> x(n, 0);
    int budget_cap = T.p0() - n;
    auto loop = [&](auto&& self, int depth, int remaining) -> void {
        if (depth == n) {
            ExactCoeff B = B_coeff(n, x);
            if (B.is_zero()) return;
            total += B.embed() * direct_sigma2_psi(T, x, args, even, budget);
            return;
        }
        for (x[depth] = 0; x[depth] <= remaining; ++x[depth])
            self(self, depth + 1, remaining - x[depth]);
    };
    if (budget_cap >= 0) loop(loop, 0, budget_cap);
    return total;
}

}  // namespace qdsindex
