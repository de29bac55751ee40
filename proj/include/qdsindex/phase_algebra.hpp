#pragma once

#include <map>
#include <variant>

#include "qdsindex/cocycle.hpp"

namespace qdsindex {

/// Exact arithmetic in Q[i], used for the symbolic cocycle-condition checks.
struct GaussianRational {
    Rational re, im;

    bool is_zero() const { return re == 0 && im == 0; }
    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    cplx embed() const { return {to_double(re), to_double(im)}; }
};

/// Exact element of Q[i][e^{2 pi i theta q} : q in Z]: a finite map from the
/// phase exponent q to its Gaussian-rational coefficient. theta irrational
/// makes the monomials independent, so zero means every coefficient zero.
struct PhaseScalar {
    std::map<long, GaussianRational> terms;

    static PhaseScalar one() { return unit_phase(0); }
    static PhaseScalar unit_phase(long q) {
        PhaseScalar s;
        s.terms[q] = {1, 0};
        return s;
    }

    bool is_zero() const {
        for (const auto& [q, c] : terms)
            if (!c.is_zero()) return false;
        return true;
    }

    void add_term(long q, const GaussianRational& c) {
        auto [it, inserted] = terms.try_emplace(q, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    friend PhaseScalar operator+(const PhaseScalar& a, const PhaseScalar& b) {
        PhaseScalar out = a;
        for (const auto& [q, c] : b.terms) out.add_term(q, c);
        return out;
    }
    friend PhaseScalar operator-(const PhaseScalar& a, const PhaseScalar& b) {
        PhaseScalar out = a;
        for (const auto& [q, c] : b.terms) out.add_term(q, GaussianRational{} - c);
        return out;
    }
    friend PhaseScalar operator*(const PhaseScalar& a, const PhaseScalar& b) {
        PhaseScalar out;
        for (const auto& [qa, ca] : a.terms)
            for (const auto& [qb, cb] : b.terms) out.add_term(qa + qb, ca * cb);
        return out;
    }

    cplx embed(double theta) const {
        cplx acc{};
        for (const auto& [q, c] : terms) {
            double arg = 2.0 * M_PI * theta * q;
            acc += c.embed() * cplx(std::cos(arg), std::sin(arg));
        }
        return acc;
    }
};

/// The l2(N)-leg of a suspension monomial: either a pure shift power S^m or
/// a finite matrix with exact entries. Shift products pick up finite-rank
/// corrections (S* S = 1 - p0 and its powers), kept explicitly.
struct FiniteMat {
    std::map<std::pair<int, int>, GaussianRational> e;

    bool is_zero() const {
        for (const auto& [k, v] : e)
            if (!v.is_zero()) return false;
        return true;
    }
    void add(int i, int j, const GaussianRational& v) {
        auto [it, ins] = e.try_emplace({i, j}, v);
        if (!ins) {
            it->second = it->second + v;
            if (it->second.is_zero()) e.erase(it);
        }
    }
    GaussianRational trace() const {
        GaussianRational t{};
        for (const auto& [k, v] : e)
            if (k.first == k.second) t = t + v;
        return t;
    }
};

struct CPart {
    // monostate not used; variant index 0 = shift power, 1 = finite matrix
    std::variant<int, FiniteMat> v;

    static CPart shift(int m) { return {m}; }
    static CPart fin(FiniteMat f) { return {std::move(f)}; }
    bool is_shift() const { return v.index() == 0; }
    int shift_power() const { return std::get<0>(v); }
    const FiniteMat& fin_mat() const { return std::get<1>(v); }
};

/// S^m k as a finite matrix: rows move down by m.
inline FiniteMat shift_times_fin(int m, const FiniteMat& k) {
    FiniteMat out;
    for (const auto& [ij, v] : k.e) {
        int i = ij.first - m;
        if (i >= 0) out.add(i, ij.second, v);
    }
    return out;
}

inline FiniteMat fin_times_shift(const FiniteMat& k, int m) {
    FiniteMat out;
    for (const auto& [ij, v] : k.e) {
        int j = ij.second + m;
        if (j >= 0) out.add(ij.first, j, v);
    }
    return out;
}

inline FiniteMat fin_times_fin(const FiniteMat& a, const FiniteMat& b) {
    FiniteMat out;
    for (const auto& [ij, va] : a.e)
        for (const auto& [kl, vb] : b.e)
            if (ij.second == kl.first) out.add(ij.first, kl.second, va * vb);
    return out;
}

/// One monomial of the suspension algebra: coeff * u^alpha v^beta (x) c.
struct SuspTerm {
    int alpha = 0, beta = 0;
    PhaseScalar coeff = PhaseScalar::one();
    CPart c = CPart::shift(0);
};

/// Finite sum of monomials; closed under products.
struct SuspSym {
    std::vector<SuspTerm> terms;

    static SuspSym unit() { return {{SuspTerm{}}}; }
    static SuspSym shift(int m) { return {{SuspTerm{0, 0, PhaseScalar::one(), CPart::shift(m)}}}; }
    static SuspSym ak(int alpha, int beta, FiniteMat k) {
        return {{SuspTerm{alpha, beta, PhaseScalar::one(), CPart::fin(std::move(k))}}};
    }
};

inline SuspSym susp_mul(const SuspSym& A, const SuspSym& B) {
    SuspSym out;
    for (const auto& a : A.terms)
        for (const auto& b : B.terms) {
            // v^beta u^alpha' = e^{-2 pi i theta alpha' beta} u^alpha' v^beta
            PhaseScalar coeff =
                a.coeff * b.coeff * PhaseScalar::unit_phase(-static_cast<long>(a.beta) * b.alpha);
            int alpha = a.alpha + b.alpha, beta = a.beta + b.beta;
            if (a.c.is_shift() && b.c.is_shift()) {
                int p = a.c.shift_power(), q = b.c.shift_power();
                out.terms.push_back({alpha, beta, coeff, CPart::shift(p + q)});
                if (p < 0 && q > 0) {
                    // S^p S^q = S^{p+q}(1 - P_{<q}): subtract the finite part
                    FiniteMat corr;
                    for (int n = 0; n < q; ++n) {
                        int i = n - (p + q);
                        if (i >= 0) corr.add(i, n, {-1, 0});
                    }
                    if (!corr.is_zero())
                        out.terms.push_back({alpha, beta, coeff, CPart::fin(std::move(corr))});
                }
            } else if (a.c.is_shift()) {
                out.terms.push_back(
                    {alpha, beta, coeff, CPart::fin(shift_times_fin(a.c.shift_power(), b.c.fin_mat()))});
            } else if (b.c.is_shift()) {
                out.terms.push_back(
                    {alpha, beta, coeff, CPart::fin(fin_times_shift(a.c.fin_mat(), b.c.shift_power()))});
            } else {
                out.terms.push_back(
                    {alpha, beta, coeff, CPart::fin(fin_times_fin(a.c.fin_mat(), b.c.fin_mat()))});
            }
        }
    return out;
}

/// Product in the l2(N) leg alone (no torus reordering phases).
inline std::vector<CPart> cpart_mul(const std::vector<CPart>& A, const std::vector<CPart>& B) {
    std::vector<CPart> out;
    for (const auto& a : A)
        for (const auto& b : B) {
            if (a.is_shift() && b.is_shift()) {
                int p = a.shift_power(), q = b.shift_power();
                out.push_back(CPart::shift(p + q));
                if (p < 0 && q > 0) {
                    // S^p S^q = S^{p+q}(1 - P_{<q})
                    FiniteMat corr;
                    for (int n = 0; n < q; ++n) {
                        int i = n - (p + q);
                        if (i >= 0) corr.add(i, n, {-1, 0});
                    }
                    if (!corr.is_zero()) out.push_back(CPart::fin(std::move(corr)));
                }
            } else if (a.is_shift()) {
                out.push_back(CPart::fin(shift_times_fin(a.shift_power(), b.fin_mat())));
            } else if (b.is_shift()) {
                out.push_back(CPart::fin(fin_times_shift(a.fin_mat(), b.shift_power())));
            } else {
                out.push_back(CPart::fin(fin_times_fin(a.fin_mat(), b.fin_mat())));
            }
        }
    return out;
}

/// Closed-form Sigma^2 phi_2 on the suspended rotation algebra, as an exact
/// PhaseScalar with the global unit sqrt(2) pi i^{3/2} factored out:
/// value = (alpha_1 beta_2 - alpha_2 beta_1) e^{-2 pi i theta (a1 b0 + a2 b0
/// + a2 b1)} Tr(c_0 c_1 c_2) when both total degrees vanish, else 0.
/// Pure-shift triples trace away to zero.
inline PhaseScalar torus_phi2_symbolic(const SuspSym& a0, const SuspSym& a1, const SuspSym& a2) {
    PhaseScalar acc;
    for (const auto& t0 : a0.terms)
        for (const auto& t1 : a1.terms)
            for (const auto& t2 : a2.terms) {
                if (t0.alpha + t1.alpha + t2.alpha != 0) continue;
                if (t0.beta + t1.beta + t2.beta != 0) continue;
                long antisym = static_cast<long>(t1.alpha) * t2.beta -
                               static_cast<long>(t2.alpha) * t1.beta;
                if (antisym == 0) continue;
                if (t0.c.is_shift() && t1.c.is_shift() && t2.c.is_shift()) continue;
                GaussianRational tr{};
                for (const auto& p : cpart_mul(cpart_mul({t0.c}, {t1.c}), {t2.c})) {
                    if (p.is_shift()) continue;  // has at least one finite factor
                    tr = tr + p.fin_mat().trace();
                }
                if (tr.is_zero()) continue;
                long qexp = -(static_cast<long>(t1.alpha) * t0.beta +
                              static_cast<long>(t2.alpha) * t0.beta +
                              static_cast<long>(t2.alpha) * t1.beta);
                PhaseScalar factor =
                    t0.coeff * t1.coeff * t2.coeff * PhaseScalar::unit_phase(qexp);
                GaussianRational weight = GaussianRational{Rational(antisym), 0} * tr;
                for (auto& [q, cval] : factor.terms) cval = cval * weight;
                acc = acc + factor;
            }
    return acc;
}

}  // namespace qdsindex
