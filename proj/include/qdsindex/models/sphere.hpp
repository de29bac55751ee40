#pragma once

#include "qdsindex/models/model.hpp"
#include "qdsindex/sphere_harmonics.hpp"

namespace qdsindex::models {

/// Sign convention linking the grading to the orientation of the volume
/// form; fixed once against the independent quadrature of a0 da1 ^ da2.
inline constexpr double kSphereGammaSign = -1.0;

namespace detail {

/// Basis index for the spinor eigenbasis (k, m, sigma): j = k - 1/2,
/// m = -j..j (doubled), sigma = +-1 with D e = sigma k e.
struct SphereIndexer {
    int Lmax;
    uint32_t index(int k, int tm, int sigma) const {
        // offset of the k block: sum_{l<k} 2*(2l) = 4 * k(k-1)/2
        uint32_t block = static_cast<uint32_t>(2 * k * (k - 1));
        uint32_t mslot = static_cast<uint32_t>((tm + (2 * k - 1)) / 2);
        return block + 2 * mslot + (sigma > 0 ? 0 : 1);
    }
    uint32_t dim() const { return static_cast<uint32_t>(2 * Lmax * (Lmax + 1)); }
};

}  // namespace detail

/// Spinor Dirac triple on the round 2-sphere, truncated at |D| <= Lmax.
/// Spectrum +-k with multiplicity 2k per sign; generators are multiplication
/// by x, y, z realized through spin-weight +-1/2 harmonics; 2-summable.
inline ModelInstance sphere_model(int Lmax) {
    if (Lmax < 3) throw Error("sphere_model: Lmax >= 3 required");
    detail::SphereIndexer ix{Lmax};
    std::vector<BasisLabel> labels(ix.dim());
    std::vector<double> ev(ix.dim());
    for (int k = 1; k <= Lmax; ++k) {
        int tj = 2 * k - 1;
        for (int tm = -tj; tm <= tj; tm += 2)
            for (int sigma : {+1, -1}) {
                uint32_t i = ix.index(k, tm, sigma);
                labels[i] = {tj, tm, sigma, 0};
                ev[i] = sigma * k;
            }
    }
    auto tr = std::make_shared<HilbertTruncation>("sphere(L=" + std::to_string(Lmax) + ")",
                                                  std::move(labels));
    ModelInstance m("sphere", tr, DiracData(tr, std::move(ev), 2));

    // gamma swaps the sign of D within each (j, m): gamma e^sigma = e^{-sigma}
    Op gam(tr);
    for (int k = 1; k <= Lmax; ++k)
        for (int tm = -(2 * k - 1); tm <= 2 * k - 1; tm += 2) {
            gam.set(ix.index(k, tm, -1), ix.index(k, tm, +1), kSphereGammaSign);
            gam.set(ix.index(k, tm, +1), ix.index(k, tm, -1), kSphereGammaSign);
        }
    m.gamma = gam;

    // Multiplication operator for a finite harmonic expansion. Chirality
    // components carry spin weights +1/2 (u) and -1/2 (v); in the eigenbasis
    // <e^{s'}|f|e^{s}> = (U + s s' V)/2 with U, V the same-weight elements.
    auto mult_op = [&](const SphereFunction& f) {
        Op a(tr);
        for (const auto& term : f.terms) {
            for (int k = 1; k <= Lmax; ++k) {
                int tj = 2 * k - 1;
                for (int kp = std::max(1, k - term.L); kp <= std::min(Lmax, k + term.L); ++kp) {
                    int tjp = 2 * kp - 1;
                    for (int tm = -tj; tm <= tj; tm += 2) {
                        int tmp = tm + 2 * term.M;
                        if (std::abs(tmp) > tjp) continue;
                        double U = sw_element(+1, tjp, tmp, term.L, term.M, tj, tm);
                        double V = sw_element(-1, tjp, tmp, term.L, term.M, tj, tm);
                        for (int sp : {+1, -1})
                            for (int s : {+1, -1}) {
                                cplx val = term.coeff * (0.5 * (U + sp * s * V));
                                if (val != cplx{})
                                    a.add(ix.index(kp, tmp, sp), ix.index(k, tm, s), val);
                            }
                    }
                }
            }
        }
        return a;
    };

    m.generators["x"] = mult_op(sphere_x());
    m.generators["y"] = mult_op(sphere_y());
    m.generators["z"] = mult_op(sphere_z());
    for (auto key : {"x", "y", "z"}) m.filtration[key] = 2;  // I_2 = B

    m.growth_C = 4.0;
    m.growth_q = 2;
    m.mu_edge = Lmax + 1;
    // windows scale with the truncation so tails stay below rounding
    double ta = 25.0 / (Lmax + 1);
    double tg = 6.0 / (Lmax + 1);
    m.fit_absD = FitOptions{.t_min = ta, .t_max = ta + 1.1, .points = 96, .degree = 8};
    // Euler-Maclaurin corrections grow past t ~ 0.55; stretch only when the
    // truncation forces a higher t_min
    m.fit_gauss = FitOptions{
        .t_min = tg, .t_max = std::max(0.55, 1.7 * tg), .points = 96, .degree = 10, .gaussian = true};
    m.prefer_gaussian = true;
    m.interior = [tr, Lmax](uint32_t i, int margin) {
        return tr->labels[i][0] <= 2 * (Lmax - margin) - 1;
    };
    return m;
}

/// Multiplication operator for an arbitrary expansion on an existing sphere
/// model (used by oracles and the verification campaign).
inline Op sphere_mult_op(const ModelInstance& m, const SphereFunction& f) {
    int Lmax = 0;
    for (const auto& l : m.truncation->labels) Lmax = std::max(Lmax, (l[0] + 1) / 2);
    detail::SphereIndexer ix{Lmax};
    Op a(m.truncation);
    for (const auto& term : f.terms)
        for (int k = 1; k <= Lmax; ++k) {
            int tj = 2 * k - 1;
            for (int kp = std::max(1, k - term.L); kp <= std::min(Lmax, k + term.L); ++kp) {
                int tjp = 2 * kp - 1;
                for (int tm = -tj; tm <= tj; tm += 2) {
                    int tmp = tm + 2 * term.M;
                    if (std::abs(tmp) > tjp) continue;
                    double U = sw_element(+1, tjp, tmp, term.L, term.M, tj, tm);
                    double V = sw_element(-1, tjp, tmp, term.L, term.M, tj, tm);
                    for (int sp : {+1, -1})
                        for (int s : {+1, -1}) {
                            cplx val = term.coeff * (0.5 * (U + sp * s * V));
                            if (val != cplx{}) a.add(ix.index(kp, tmp, sp), ix.index(k, tm, s), val);
                        }
                }
            }
        }
    return a;
}

}  // namespace qdsindex::models
