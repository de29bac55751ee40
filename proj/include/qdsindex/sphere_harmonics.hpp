#pragma once

#include <vector>

#include "qdsindex/op.hpp"
#include "qdsindex/wigner.hpp"

namespace qdsindex {

/// Wigner small-d via the Jacobi-polynomial representation, stable for the
/// half-integer orders used by the spinor basis. Doubled arguments.
inline double wigner_d_2(int tj, int tm, int tk, double theta) {
    if ((tj + tm) % 2 != 0 || (tj + tk) % 2 != 0) throw Error("wigner_d_2: parity mismatch");
    if (std::abs(tm) > tj || std::abs(tk) > tj) return 0.0;
    int mu = std::abs(tm - tk) / 2, nu = std::abs(tm + tk) / 2;
    int a = (tj - std::max(std::abs(tm), std::abs(tk))) / 2;
    double x = std::cos(theta), sh = std::sin(theta / 2), ch = std::cos(theta / 2);

    // Jacobi P_a^{(mu,nu)}(x) by the three-term recurrence
    double p0 = 1.0, p1 = 0.0;
    if (a >= 1) p1 = 0.5 * (mu - nu) + 0.5 * (mu + nu + 2) * x;
    double pa = (a == 0) ? p0 : p1;
    for (int n = 2; n <= a; ++n) {
        double A = 2.0 * n * (n + mu + nu) * (2.0 * n + mu + nu - 2);
        double B = (2.0 * n + mu + nu - 1) *
                   ((2.0 * n + mu + nu) * (2.0 * n + mu + nu - 2) * x + mu * mu - nu * nu);
        double C = 2.0 * (n + mu - 1) * (n + nu - 1) * (2.0 * n + mu + nu);
        pa = (B * p1 - C * p0) / A;
        p0 = p1;
        p1 = pa;
    }

    double norm = std::sqrt(to_double(Rational(factorial(a) * factorial(a + mu + nu),
                                               factorial(a + mu) * factorial(a + nu))));
    double xi = (tk >= tm || ((tm - tk) / 2) % 2 == 0) ? 1.0 : -1.0;
    return xi * norm * std::pow(sh, mu) * std::pow(ch, nu) * pa;
}

/// Spin-weighted spherical harmonic sY_{jm}(theta, phi) =
/// sqrt((2j+1)/4pi) e^{im phi} d^j_{m,-s}(theta). Doubled arguments.
inline cplx sw_harmonic(int ts, int tj, int tm, double theta, double phi) {
    double d = wigner_d_2(tj, tm, -ts, theta);
    double amp = std::sqrt((tj + 1) / (4.0 * M_PI)) * d;
    double arg = 0.5 * tm * phi;
    return cplx(amp * std::cos(arg), amp * std::sin(arg));
}

/// <sY_{j'm'} | Y_{LM} | sY_{jm}>, all angular momenta doubled except (L, M).
/// Derived from the triple-d integral; equals the quadrature of
/// conj(sY_{j'm'}) Y_{LM} sY_{jm} over the sphere.
inline double sw_element(int ts, int tjp, int tmp, int L, int M, int tj, int tm) {
    if (tmp != tm + 2 * M) return 0.0;
    double pref = std::sqrt((tjp + 1.0) * (2.0 * L + 1.0) * (tj + 1.0) / (4.0 * M_PI));
    double w1 = wigner3j_2(tjp, 2 * L, tj, -tmp, 2 * M, tm);
    double w2 = wigner3j_2(tjp, 2 * L, tj, ts, 0, -ts);
    double sign = (((tmp + ts) / 2) % 2 == 0) ? 1.0 : -1.0;
    return sign * pref * w1 * w2;
}

struct GaussLegendre {
    std::vector<double> x, w;
};

inline GaussLegendre gauss_legendre(int n) {
    GaussLegendre g;
    g.x.resize(n);
    g.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        g.x[i] = x;
        g.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return g;
}

/// Quadrature route for the same matrix element, independent of the 3j path:
/// Gauss-Legendre in cos(theta) x uniform trapezoid in phi.
inline cplx sw_element_quadrature(int ts, int tjp, int tmp, int L, int M, int tj, int tm,
                                  int n_theta = 96, int n_phi = 256) {
    auto gl = gauss_legendre(n_theta);
    cplx acc{};
    for (int i = 0; i < n_theta; ++i) {
        double theta = std::acos(gl.x[i]);
        cplx inner{};
        for (int j = 0; j < n_phi; ++j) {
            double phi = 2.0 * M_PI * j / n_phi;
            cplx bra = std::conj(sw_harmonic(ts, tjp, tmp, theta, phi));
            cplx mid = sw_harmonic(0, 2 * L, 2 * M, theta, phi);
            cplx ket = sw_harmonic(ts, tj, tm, theta, phi);
            inner += bra * mid * ket;
        }
        acc += gl.w[i] * inner * (2.0 * M_PI / n_phi);
    }
    return acc;
}

/// Finite expansion over scalar spherical harmonics: sum of coeff * Y_{LM}.
struct SphereFunction {
    struct Term {
        int L;
        int M;
        cplx coeff;
    };
    std::vector<Term> terms;
};

inline cplx scalar_Y(int L, int M, double theta, double phi) {
    return sw_harmonic(0, 2 * L, 2 * M, theta, phi);
}

inline cplx sphere_eval(const SphereFunction& f, double theta, double phi) {
    cplx acc{};
    for (const auto& t : f.terms) {
        if (t.L < 0 || std::abs(t.M) > t.L) throw Error("sphere_eval: bad descriptor");
        acc += t.coeff * scalar_Y(t.L, t.M, theta, phi);
    }
    return acc;
}

/// dY_{LM}/dtheta = (1/2)[A Y_{L,M+1} e^{-i phi} - B Y_{L,M-1} e^{i phi}],
/// A = sqrt((L-M)(L+M+1)), B = sqrt((L+M)(L-M+1)).
inline cplx sphere_eval_dtheta(const SphereFunction& f, double theta, double phi) {
    cplx acc{};
    cplx em(std::cos(phi), -std::sin(phi)), ep = std::conj(em);
    for (const auto& t : f.terms) {
        double A = std::sqrt(static_cast<double>(t.L - t.M) * (t.L + t.M + 1));
        double B = std::sqrt(static_cast<double>(t.L + t.M) * (t.L - t.M + 1));
        cplx d{};
        if (t.M + 1 <= t.L) d += 0.5 * A * scalar_Y(t.L, t.M + 1, theta, phi) * em;
        if (t.M - 1 >= -t.L) d -= 0.5 * B * scalar_Y(t.L, t.M - 1, theta, phi) * ep;
        acc += t.coeff * d;
    }
    return acc;
}

inline cplx sphere_eval_dphi(const SphereFunction& f, double theta, double phi) {
    cplx acc{};
    for (const auto& t : f.terms)
        acc += t.coeff * cplx(0.0, static_cast<double>(t.M)) * scalar_Y(t.L, t.M, theta, phi);
    return acc;
}

inline SphereFunction sphere_x() {
    double c = std::sqrt(2.0 * M_PI / 3.0);
    return {{{1, -1, c}, {1, 1, -c}}};
}
inline SphereFunction sphere_y() {
    cplx c(0.0, std::sqrt(2.0 * M_PI / 3.0));
    return {{{1, -1, c}, {1, 1, c}}};
}
inline SphereFunction sphere_z() {
    return {{{1, 0, std::sqrt(4.0 * M_PI / 3.0)}}};
}

/// Integral of the 2-form a0 da1 ^ da2 over the sphere with the standard
/// orientation, by product quadrature. Exact to rounding for finite
/// harmonic expansions.
inline cplx sphere_form_integral(const SphereFunction& a0, const SphereFunction& a1,
                                 const SphereFunction& a2, int n_theta = 96, int n_phi = 256) {
    auto gl = gauss_legendre(n_theta);
    cplx acc{};
    for (int i = 0; i < n_theta; ++i) {
        double theta = std::acos(gl.x[i]);
        double inv_sin = 1.0 / std::sin(theta);
        cplx inner{};
        for (int j = 0; j < n_phi; ++j) {
            double phi = 2.0 * M_PI * j / n_phi;
            cplx jac = sphere_eval_dtheta(a1, theta, phi) * sphere_eval_dphi(a2, theta, phi) -
                       sphere_eval_dphi(a1, theta, phi) * sphere_eval_dtheta(a2, theta, phi);
            inner += sphere_eval(a0, theta, phi) * jac;
        }
        // dtheta dphi = dx dphi / sin(theta); the 2-form has a sin(theta)
        // factor so the integrand stays regular at the poles.
        acc += gl.w[i] * inv_sin * inner * (2.0 * M_PI / n_phi);
    }
    return acc;
}

}  // namespace qdsindex
