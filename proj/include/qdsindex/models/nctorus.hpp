#pragma once

#include "qdsindex/models/model.hpp"

namespace qdsindex::models {

/// Irrational rotation algebra represented on l2(Z^2) (+) l2(Z^2), with the
/// off-diagonal Dirac built from T_{m+in}. The stored basis diagonalizes D:
/// per (m, n) the block eigenvectors are ((m-in)/|m+in|, +-1)/sqrt(2) with
/// eigenvalues +-sqrt(m^2+n^2); the (0,0) block keeps the plain basis.
struct TorusModel {
    ModelInstance base;
    int Lambda;
    double theta;
    Op Q;  // columns are D-eigenvectors in the plain (m, n, copy) basis

    const TruncationPtr& truncation() const { return base.truncation; }
    const DiracData& dirac() const { return base.dirac; }

    uint32_t plain_index(int m, int n, int copy) const {
        int L = Lambda;
        uint32_t cell = static_cast<uint32_t>((m + L) * (2 * L + 1) + (n + L));
        return 2 * cell + copy;
    }
    // eigenbasis index: sigma slot 0 = +, 1 = -
    uint32_t eigen_index(int m, int n, int sigma_slot) const {
        return plain_index(m, n, sigma_slot);
    }

    bool in_range(int m, int n) const { return std::abs(m) <= Lambda && std::abs(n) <= Lambda; }

    /// U^alpha V^beta transported to the eigenbasis. The plain-basis action
    /// is e_{m,n} -> e^{-2 pi i beta m theta} e_{m+alpha, n+beta} on both
    /// copies, which realizes U V = e^{2 pi i theta} V U.
    Op monomial(int alpha, int beta) const {
        Op a(truncation());
        for (int m = -Lambda; m <= Lambda; ++m) {
            if (!in_range(m + alpha, 0)) continue;
            for (int n = -Lambda; n <= Lambda; ++n) {
                if (!in_range(m + alpha, n + beta)) continue;
                double arg = -2.0 * M_PI * beta * m * theta;
                cplx ph(std::cos(arg), std::sin(arg));
                for (int c : {0, 1}) a.set(plain_index(m + alpha, n + beta, c), plain_index(m, n, c), ph);
            }
        }
        return Q.adjoint() * a * Q;
    }

    /// T_f for a per-site symbol f(m, n); diagonal in both bases.
    template <typename F>
    Op t_op(F f) const {
        Op a(truncation());
        for (int m = -Lambda; m <= Lambda; ++m)
            for (int n = -Lambda; n <= Lambda; ++n)
                for (int c : {0, 1}) {
                    cplx v = f(m, n);
                    if (v != cplx{}) a.set(plain_index(m, n, c), plain_index(m, n, c), v);
                }
        return a;
    }
};

inline TorusModel nctorus_model(double theta, int Lambda) {
    if (Lambda < 4) throw Error("nctorus_model: Lambda >= 4 required");
    int side = 2 * Lambda + 1;
    uint32_t dim = static_cast<uint32_t>(2 * side * side);
    std::vector<BasisLabel> labels(dim);
    std::vector<double> ev(dim);

    auto plain = [&](int m, int n, int c) {
        return static_cast<uint32_t>(2 * ((m + Lambda) * side + (n + Lambda)) + c);
    };
    for (int m = -Lambda; m <= Lambda; ++m)
        for (int n = -Lambda; n <= Lambda; ++n) {
            double r = std::hypot(m, n);
            labels[plain(m, n, 0)] = {m, n, +1, 0};
            labels[plain(m, n, 1)] = {m, n, -1, 0};
            ev[plain(m, n, 0)] = r;
            ev[plain(m, n, 1)] = -r;
        }
    auto tr = std::make_shared<HilbertTruncation>(
        "nctorus(L=" + std::to_string(Lambda) + ")", std::move(labels));

    TorusModel tm{ModelInstance("nctorus", tr, DiracData(tr, std::move(ev), 2)), Lambda, theta,
                  Op(tr)};

    // eigenvector matrix: columns (m,n,+|-) in plain coordinates
    Op Q(tr);
    double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int m = -Lambda; m <= Lambda; ++m)
        for (int n = -Lambda; n <= Lambda; ++n) {
            if (m == 0 && n == 0) {
                Q.set(plain(0, 0, 0), plain(0, 0, 0), 1.0);
                Q.set(plain(0, 0, 1), plain(0, 0, 1), 1.0);
                continue;
            }
            double r = std::hypot(m, n);
            cplx wbar_unit(m / r, -n / r);
            for (int slot : {0, 1}) {
                double sg = slot == 0 ? 1.0 : -1.0;
                Q.set(plain(m, n, 0), plain(m, n, slot), wbar_unit * inv_sqrt2);
                Q.set(plain(m, n, 1), plain(m, n, slot), sg * inv_sqrt2);
            }
        }
    tm.Q = Q;

    // grading: diag(+1, -1) over the two copies, transported
    Op gam_plain(tr);
    for (int m = -Lambda; m <= Lambda; ++m)
        for (int n = -Lambda; n <= Lambda; ++n) {
            gam_plain.set(plain(m, n, 0), plain(m, n, 0), 1.0);
            gam_plain.set(plain(m, n, 1), plain(m, n, 1), -1.0);
        }
    tm.base.gamma = Q.adjoint() * gam_plain * Q;

    tm.base.generators["U"] = tm.monomial(1, 0);
    tm.base.generators["V"] = tm.monomial(0, 1);
    tm.base.generators["U*"] = tm.monomial(-1, 0);
    tm.base.generators["V*"] = tm.monomial(0, -1);
    for (auto key : {"U", "V", "U*", "V*"}) tm.base.filtration[key] = 2;

    tm.base.growth_C = 9.0;
    tm.base.growth_q = 2;
    tm.base.mu_edge = Lambda;
    // windows scale with the truncation so tails stay below rounding
    double ta = 25.0 / Lambda;
    double tg = 6.5 / Lambda;
    tm.base.fit_absD = FitOptions{.t_min = ta, .t_max = ta + 0.95, .points = 96, .degree = 8};
    // theta-function corrections e^{-pi^2/t^2} surface past t ~ 0.55
    tm.base.fit_gauss =
        FitOptions{.t_min = tg, .t_max = 0.5, .points = 96, .degree = 6, .gaussian = true};
    tm.base.prefer_gaussian = true;
    int L = Lambda;
    auto trunc = tm.base.truncation;
    tm.base.interior = [trunc, L](uint32_t i, int margin) {
        return std::abs(trunc->labels[i][0]) <= L - margin &&
               std::abs(trunc->labels[i][1]) <= L - margin;
    };
    return tm;
}

enum class TorusClosedKind { PropV, PropX, PropW, Phi2 };

/// Closed-form residue values for monomial triples a_i = U^{alpha_i} V^{beta_i}.
/// The normalization is anchored by t^2 Tr(e^{-t^2 Delta}) -> 2 pi, which
/// fixes Res_{z=1} Tr(Delta^{-z}) = 2 pi on the doubled space: the top
/// residue of gamma a_0 da_1 da_2 is 2 pi i (a1^b2 - a2^b1) e^{-2 pi i
/// theta (a1 b0 + a2 b0 + a2 b1)} when both total degrees vanish.
inline cplx nctorus_closed_value(TorusClosedKind kind, const std::array<int, 3>& alpha,
                                 const std::array<int, 3>& beta, double theta) {
    switch (kind) {
        case TorusClosedKind::PropV:
        case TorusClosedKind::PropX:
            return cplx{};
        case TorusClosedKind::PropW:
        case TorusClosedKind::Phi2: {
            if (alpha[0] + alpha[1] + alpha[2] != 0 || beta[0] + beta[1] + beta[2] != 0)
                return cplx{};
            double arg = -2.0 * M_PI * theta *
                         (alpha[1] * beta[0] + alpha[2] * beta[0] + alpha[2] * beta[1]);
            cplx phase(std::cos(arg), std::sin(arg));
            double antisym = alpha[1] * beta[2] - alpha[2] * beta[1];
            if (kind == TorusClosedKind::PropW) return 2.0 * M_PI * cplx(0.0, 1.0) * antisym * phase;
            // B^2_{(0,0)} * top residue = pi (i - 1) * antisym * phase
            return M_PI * cplx(-1.0, 1.0) * antisym * phase;
        }
    }
    throw Error("nctorus_closed_value: unknown kind");
}

}  // namespace qdsindex::models
