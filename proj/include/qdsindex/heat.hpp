#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>

#include "qdsindex/dirac.hpp"
#include "qdsindex/series.hpp"

namespace qdsindex {

/// Coefficients b_0..b_R of t^p Tr(b e^{-t|D|}) ~ sum b_r t^r, together with
/// the fit quality actually achieved and the truncation-tail budget.
struct AsymptoticSeries {
    int p = 0;
    std::vector<cplx> coeffs;
    double fit_residual = 0.0;
    double truncation_bound = 0.0;
    bool exact = false;

    cplx at(int r) const { return r < static_cast<int>(coeffs.size()) ? coeffs[r] : cplx{}; }
};

struct FitOptions {
    double t_min = 0.3;
    double t_max = 1.0;
    int points = 64;
    int degree = 4;  // R
    bool gaussian = false;  // fit t^p Tr(b e^{-t^2 D^2}) instead of e^{-t|D|}
    double cond_limit = 1e12;
    double truncation_bound = 0.0;
};

inline cplx heat_trace(const Op& b, const DiracData& D, double t) {
    if (t <= 0) throw Error("heat_trace: t must be positive");
    require_same_truncation(b.truncation(), D.truncation);
    cplx acc{};
    for (const auto& [k, v] : b.entries()) {
        uint32_t i = Op::row_of(k);
        if (i != Op::col_of(k)) continue;
        acc += v * std::exp(-t * D.abs_eigenvalue(i));
    }
    return acc;
}

/// Tr(b e^{-t^2 D^2}) using the true signed eigenvalues (no kernel shift:
/// D^2 vanishes on ker D).
inline cplx heat_trace_gaussian(const Op& b, const DiracData& D, double t) {
    if (t <= 0) throw Error("heat_trace_gaussian: t must be positive");
    require_same_truncation(b.truncation(), D.truncation);
    cplx acc{};
    for (const auto& [k, v] : b.entries()) {
        uint32_t i = Op::row_of(k);
        if (i != Op::col_of(k)) continue;
        double lam = D.eigenvalues[i];
        acc += v * std::exp(-t * t * lam * lam);
    }
    return acc;
}

inline std::vector<double> geometric_grid(double t_min, double t_max, int n) {
    if (!(t_min > 0) || t_max <= t_min || n < 2) throw Error("geometric_grid: bad window");
    std::vector<double> ts(n);
    double r = std::pow(t_max / t_min, 1.0 / (n - 1));
    double t = t_min;
    for (int i = 0; i < n; ++i, t *= r) ts[i] = t;
    ts.back() = t_max;
    return ts;
}

/// Weighted least squares for f(t) ~ sum_{r<=R} b_r t^r on a geometric grid.
/// Columns are scaled by t_max^r to control the Vandermonde conditioning.
inline AsymptoticSeries fit_asymptotics(const std::vector<double>& ts, const std::vector<cplx>& fs,
                                        int p, const FitOptions& opt) {
    int n = static_cast<int>(ts.size());
    int cols = opt.degree + 1;
    if (n < 3 * cols) throw FitError("fit_asymptotics: need at least 3(R+1) samples");
    double scale = ts.back();
    Eigen::MatrixXd A(n, cols);
    for (int i = 0; i < n; ++i) {
        double tau = ts[i] / scale, pw = 1.0;
        for (int r = 0; r < cols; ++r, pw *= tau) A(i, r) = pw;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    auto rdiag = qr.matrixQR().diagonal().cwiseAbs();
    double cond = rdiag.maxCoeff() / std::max(rdiag.minCoeff(), 1e-300);
    if (cond > opt.cond_limit) throw FitError("fit_asymptotics: ill-conditioned; shrink R or widen window");

    Eigen::VectorXd fre(n), fim(n);
    for (int i = 0; i < n; ++i) {
        fre(i) = fs[i].real();
        fim(i) = fs[i].imag();
    }
    Eigen::VectorXd bre = qr.solve(fre), bim = qr.solve(fim);

    AsymptoticSeries out;
    out.p = p;
    out.coeffs.resize(cols);
    double pw = 1.0;
    for (int r = 0; r < cols; ++r, pw *= scale) out.coeffs[r] = cplx(bre(r), bim(r)) / pw;

    double resid = 0;
    for (int i = 0; i < n; ++i) {
        cplx fit{};
        double tp = 1.0;
        for (int r = 0; r < cols; ++r, tp *= ts[i]) fit += out.coeffs[r] * tp;
        resid = std::max(resid, std::abs(fit - fs[i]));
    }
    out.fit_residual = resid;
    out.truncation_bound = opt.truncation_bound;
    return out;
}

/// Fit the heat expansion of b directly from its diagonal. `p_weight` is the
/// exponent of the t^p prefactor (the filtration degree for ideal elements).
inline AsymptoticSeries fit_heat_series(const Op& b, const DiracData& D, int p_weight,
                                        const FitOptions& opt) {
    std::vector<std::pair<double, cplx>> diag;
    for (const auto& [k, v] : b.entries()) {
        uint32_t i = Op::row_of(k);
        if (i != Op::col_of(k)) continue;
        double lam = D.eigenvalues[i];
        diag.emplace_back(opt.gaussian ? lam * lam : D.abs_eigenvalue(i), v);
    }
    auto ts = geometric_grid(opt.t_min, opt.t_max, opt.points);
    std::vector<cplx> fs(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) {
        double t = ts[i];
        cplx acc{};
        if (opt.gaussian) {
            double t2 = t * t;
            for (const auto& [l2, v] : diag) acc += v * std::exp(-t2 * l2);
        } else {
            for (const auto& [mu, v] : diag) acc += v * std::exp(-t * mu);
        }
        fs[i] = acc * std::pow(t, p_weight);
    }
    return fit_asymptotics(ts, fs, p_weight, opt);
}

/// Richardson (Neville) extrapolation of f to t = 0 on a geometric subgrid;
/// cross-check for the leading fitted coefficient.
inline cplx richardson_leading(const std::function<cplx(double)>& f, double t0, double ratio,
                               int levels) {
    std::vector<double> ts(levels);
    std::vector<cplx> vals(levels);
    for (int i = 0; i < levels; ++i) {
        ts[i] = t0 * std::pow(ratio, i);
        vals[i] = f(ts[i]);
    }
    for (int j = 1; j < levels; ++j)
        for (int i = levels - 1; i >= j; --i)
            vals[i] = vals[i] + (vals[i] - vals[i - 1]) * (ts[i] / (ts[i - j] - ts[i]));
    return vals[levels - 1];
}

/// Upper incomplete gamma for integer q >= 1.
inline double upper_gamma_int(int q, double x) {
    double fact = 1.0, sum = 1.0, xp = 1.0;
    for (int k = 1; k < q; ++k) {
        fact *= k;
        xp *= x;
        sum += xp / fact;
    }
    return fact * std::exp(-x) * sum;
}

/// Smallest t such that the omitted spectral tail, estimated from the
/// counting bound N(lambda) <= C lambda^q, stays below eps_tail. Returns
/// (t_min, t_max); throws when the window is empty (truncation too small).
inline std::pair<double, double> truncation_window(double mu_max, double C, int q, double eps_tail,
                                                   double t_max = 1.0) {
    if (eps_tail == std::numeric_limits<double>::infinity()) return {0.0, t_max};
    auto tail = [&](double t) { return C * q * upper_gamma_int(q, t * mu_max) / std::pow(t, q); };
    if (tail(t_max) >= eps_tail)
        throw Error("truncation_window: window empty; increase the truncation");
    double lo = 1e-8, hi = t_max;
    if (tail(lo) < eps_tail) return {lo, t_max};
    for (int it = 0; it < 200; ++it) {
        double mid = std::sqrt(lo * hi);
        (tail(mid) < eps_tail ? hi : lo) = mid;
    }
    return {hi, t_max};
}

enum class SpectrumDescriptor { Ell2N, CircleAbsD, SphereAbsD, TorusGaussian };

/// Closed-form expansions for the registered spectra, computed through the
/// exact series engine. CircleAbsD reflects the kernel-shift convention
/// (the n = 0 mode sits at |D| = 1).
inline AsymptoticSeries exact_expansion(SpectrumDescriptor d, int R) {
    AsymptoticSeries out;
    out.exact = true;
    switch (d) {
        case SpectrumDescriptor::Ell2N: {
            out.p = 1;
            out.coeffs.resize(R + 1);
            auto n = n_coefficients(R);
            for (int r = 0; r <= R; ++r) out.coeffs[r] = to_double(n.c[r]);
            return out;
        }
        case SpectrumDescriptor::CircleAbsD: {
            // t e^{-t} + 2 e^{-t} * t/(1-e^{-t})
            out.p = 1;
            out.coeffs.resize(R + 1);
            auto em = exp_series(-1, R);
            auto n = n_coefficients(R);
            auto tail = series_scale(series_mul(em, n), 2);
            for (int r = 0; r <= R; ++r) {
                Rational c = tail.c[r];
                if (r >= 1) c += em.c[r - 1];
                out.coeffs[r] = to_double(c);
            }
            return out;
        }
        case SpectrumDescriptor::SphereAbsD: {
            // 4 t^2 e^{-t}/(1-e^{-t})^2 = 4 e^{-t} (t/(1-e^{-t}))^2
            out.p = 2;
            out.coeffs.resize(R + 1);
            auto em = exp_series(-1, R);
            auto n = n_coefficients(R);
            auto s = series_scale(series_mul(em, series_mul(n, n)), 4);
            for (int r = 0; r <= R; ++r) out.coeffs[r] = to_double(s.c[r]);
            return out;
        }
        case SpectrumDescriptor::TorusGaussian: {
            // t^2 Tr(e^{-t^2 Delta}) = 2*pi up to exponentially small terms
            out.p = 2;
            out.coeffs.assign(R + 1, cplx{});
            out.coeffs[0] = 2.0 * M_PI;
            return out;
        }
    }
    throw Error("exact_expansion: unknown descriptor");
}

}  // namespace qdsindex
