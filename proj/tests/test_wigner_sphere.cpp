#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "qdsindex/sphere_harmonics.hpp"

using namespace qdsindex;

TEST_CASE("wigner3j reference values") {
    REQUIRE(wigner3j(1, 1, 0, 0, 0, 0) == Catch::Approx(-1.0 / std::sqrt(3.0)).margin(1e-14));
    REQUIRE(wigner3j(2, 1, 1, 0, 0, 0) == Catch::Approx(std::sqrt(2.0 / 15.0)).margin(1e-14));
    // (j j 0; m -m 0) = (-1)^{j-m}/sqrt(2j+1)
    for (int tj : {1, 3, 5, 8}) {
        for (int tm = -tj; tm <= tj; tm += 2) {
            double expect = 1.0 / std::sqrt(tj + 1.0);
            if (((tj - tm) / 2) % 2 != 0) expect = -expect;
            REQUIRE(wigner3j_2(tj, tj, 0, tm, -tm, 0) == Catch::Approx(expect).margin(1e-13));
        }
    }
}

TEST_CASE("wigner3j selection rules") {
    REQUIRE(wigner3j(1, 1, 3, 0, 0, 0) == 0.0);           // triangle
    REQUIRE(wigner3j(1, 1, 1, 1, 1, -1) == 0.0);          // m-sum
    REQUIRE(wigner3j(0.5, 0.5, 0.5, 0.5, -0.5, 0) == 0.0);  // integer perimeter
    REQUIRE_THROWS_AS(wigner3j(0.3, 1, 1, 0, 0, 0), Error);
}

TEST_CASE("wigner3j orthogonality") {
    // sum_{m1,m2} (2 j3 + 1) 3j(j1 j2 j3; m1 m2 m3)^2 = 1
    int tj1 = 3, tj2 = 4;  // j1 = 3/2, j2 = 2
    for (int tj3 = std::abs(tj1 - tj2); tj3 <= tj1 + tj2; tj3 += 2) {
        for (int tm3 = -tj3; tm3 <= tj3; tm3 += 2) {
            double acc = 0;
            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
                int tm2 = -tm3 - tm1;
                if (std::abs(tm2) > tj2) continue;
                double w = wigner3j_2(tj1, tj2, tj3, tm1, tm2, tm3);
                acc += (tj3 + 1) * w * w;
            }
            REQUIRE(acc == Catch::Approx(1.0).margin(1e-12));
        }
    }
}

TEST_CASE("wigner d: explicit spin-1/2 block and orthogonality") {
    double th = 0.7;
    REQUIRE(wigner_d_2(1, 1, 1, th) == Catch::Approx(std::cos(th / 2)).margin(1e-14));
    REQUIRE(wigner_d_2(1, 1, -1, th) == Catch::Approx(-std::sin(th / 2)).margin(1e-14));
    REQUIRE(wigner_d_2(1, -1, 1, th) == Catch::Approx(std::sin(th / 2)).margin(1e-14));
    REQUIRE(wigner_d_2(1, -1, -1, th) == Catch::Approx(std::cos(th / 2)).margin(1e-14));

    // int_0^pi d^j_{mk}^2 sin = 2/(2j+1) via Gauss-Legendre
    auto gl = gauss_legendre(64);
    for (auto [tj, tm, tk] : std::vector<std::array<int, 3>>{{5, 3, -1}, {9, -5, 1}, {16, 4, 2}}) {
        double acc = 0;
        for (size_t i = 0; i < gl.x.size(); ++i) {
            double d = wigner_d_2(tj, tm, tk, std::acos(gl.x[i]));
            acc += gl.w[i] * d * d;
        }
        REQUIRE(acc == Catch::Approx(2.0 / (tj + 1)).margin(1e-12));
    }
}

TEST_CASE("spin-weighted elements: 3j path vs quadrature on 50 elements") {
    std::mt19937 gen(2026);
    int checked = 0;
    double worst = 0;
    while (checked < 50) {
        int tj = 1 + 2 * static_cast<int>(gen() % 6);        // j in 1/2..11/2
        int tjp = 1 + 2 * static_cast<int>(gen() % 6);
        int L = static_cast<int>(gen() % 3);                 // L in 0..2
        if (tjp > tj + 2 * L || tjp < std::abs(tj - 2 * L)) continue;
        int tm = -tj + 2 * static_cast<int>(gen() % (tj + 1));
        int M = static_cast<int>(gen() % (2 * L + 1)) - L;
        int tmp = tm + 2 * M;
        if (std::abs(tmp) > tjp) continue;
        int ts = (gen() % 2) ? 1 : -1;
        double a = sw_element(ts, tjp, tmp, L, M, tj, tm);
        cplx b = sw_element_quadrature(ts, tjp, tmp, L, M, tj, tm);
        worst = std::max(worst, std::abs(b - cplx(a)));
        ++checked;
    }
    REQUIRE(worst < 1e-8);
}

TEST_CASE("sphere form integral") {
    SECTION("exact form integrates to zero: a0 = 1") {
        SphereFunction one{{{0, 0, std::sqrt(4.0 * M_PI)}}};
        auto v = sphere_form_integral(one, sphere_x(), sphere_y());
        // integral of dx ^ dy over the closed surface vanishes... it does not:
        // dx ^ dy is exact only against closed forms; Stokes applies to
        // d(a1 da2) so int da1 ^ da2 = 0.
        auto w = sphere_form_integral(one, sphere_x(), sphere_x());
        REQUIRE(std::abs(w) < 1e-12);
        (void)v;
    }
    SECTION("int z dx ^ dy = 4 pi / 3") {
        auto v = sphere_form_integral(sphere_z(), sphere_x(), sphere_y());
        REQUIRE(v.real() == Catch::Approx(4.0 * M_PI / 3).margin(1e-10));
        REQUIRE(std::abs(v.imag()) < 1e-12);
    }
    SECTION("antisymmetry under a1 <-> a2") {
        auto v = sphere_form_integral(sphere_z(), sphere_x(), sphere_y());
        auto w = sphere_form_integral(sphere_z(), sphere_y(), sphere_x());
        REQUIRE(std::abs(v + w) < 1e-12);
    }
    SECTION("cyclic invariance x dy ^ dz") {
        auto v = sphere_form_integral(sphere_x(), sphere_y(), sphere_z());
        REQUIRE(v.real() == Catch::Approx(4.0 * M_PI / 3).margin(1e-10));
    }
    SECTION("bad descriptor throws") {
        SphereFunction bad{{{1, 2, 1.0}}};
        REQUIRE_THROWS_AS(sphere_form_integral(bad, sphere_x(), sphere_y()), Error);
    }
}

TEST_CASE("stokes: int da1 ^ da2 = 0 for several pairs") {
    SphereFunction one{{{0, 0, std::sqrt(4.0 * M_PI)}}};
    std::vector<SphereFunction> fs{sphere_x(), sphere_y(), sphere_z(),
                                   SphereFunction{{{2, 1, cplx(0.3, 0.4)}, {1, 0, 1.2}}}};
    for (const auto& f : fs)
        for (const auto& g : fs) {
            auto v = sphere_form_integral(one, f, g);
            REQUIRE(std::abs(v) < 1e-10);
        }
}
