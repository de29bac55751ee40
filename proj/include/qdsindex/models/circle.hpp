#pragma once

#include "qdsindex/models/model.hpp"

namespace qdsindex::models {

/// Odd smoke-test triple: D = n on l2(Z) truncated to |n| <= Lambda, algebra
/// generated by the bilateral shift z e_n = e_{n+1}. 1-summable.
inline ModelInstance circle_model(int Lambda) {
    if (Lambda < 4) throw Error("circle_model: Lambda >= 4 required");
    std::vector<BasisLabel> labels;
    std::vector<double> ev;
    labels.reserve(2 * Lambda + 1);
    for (int n = -Lambda; n <= Lambda; ++n) {
        labels.push_back({n, 0, 0, 0});
        ev.push_back(n);
    }
    auto tr = std::make_shared<HilbertTruncation>("circle(L=" + std::to_string(Lambda) + ")",
                                                  std::move(labels));
    ModelInstance m("circle", tr, DiracData(tr, std::move(ev), 1));

    auto idx = [Lambda](int n) { return static_cast<uint32_t>(n + Lambda); };
    Op z(tr);
    for (int n = -Lambda; n < Lambda; ++n) z.set(idx(n + 1), idx(n), 1.0);
    m.generators["z"] = z;
    m.generators["z*"] = z.adjoint();
    m.filtration["z"] = 1;
    m.filtration["z*"] = 1;
    m.growth_C = 3.0;
    m.growth_q = 1;
    m.mu_edge = Lambda;
    // window scaled so the omitted spectral tail sits below double rounding
    double t0 = 27.0 / Lambda;
    m.fit_absD = FitOptions{.t_min = t0, .t_max = t0 + 1.0, .points = 96, .degree = 8};
    m.fit_gauss =
        FitOptions{.t_min = 6.0 / Lambda, .t_max = 0.5, .points = 96, .degree = 4, .gaussian = true};
    m.prefer_gaussian = false;
    m.interior = [tr, Lambda](uint32_t i, int margin) {
        return std::abs(tr->labels[i][0]) <= Lambda - margin;
    };
    return m;
}

}  // namespace qdsindex::models
