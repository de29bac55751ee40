#pragma once

#include <functional>
#include <span>

#include "qdsindex/coeff.hpp"

namespace qdsindex {

/// Multilinear functional over an abstract unital algebra, for the (b,B)
/// coboundary checks. `slots` is the number of arguments (phi_n has n+1).
template <typename Elem, typename Value>
struct MultilinearFunctional {
    int slots = 1;
    std::function<Value(std::span<const Elem>)> eval;
};

/// Hochschild coboundary: (b phi)(a_0..a_{n+1}) =
/// sum_j (-1)^j phi(a_0,..,a_j a_{j+1},..) + (-1)^{n+1} phi(a_{n+1} a_0, ..).
template <typename Elem, typename Value, typename Mul>
MultilinearFunctional<Elem, Value> hochschild_b(const MultilinearFunctional<Elem, Value>& phi,
                                                Mul mul) {
    int n = phi.slots - 1;
    MultilinearFunctional<Elem, Value> out;
    out.slots = phi.slots + 1;
    out.eval = [phi, mul, n](std::span<const Elem> a) -> Value {
        Value acc{};
        for (int j = 0; j <= n; ++j) {
            std::vector<Elem> args;
            args.reserve(n + 1);
            for (int i = 0; i < j; ++i) args.push_back(a[i]);
            args.push_back(mul(a[j], a[j + 1]));
            for (int i = j + 2; i <= n + 1; ++i) args.push_back(a[i]);
            Value v = phi.eval(args);
            acc = (j % 2 == 0) ? acc + v : acc - v;
        }
        std::vector<Elem> wrap;
        wrap.reserve(n + 1);
        wrap.push_back(mul(a[n + 1], a[0]));
        for (int i = 1; i <= n; ++i) wrap.push_back(a[i]);
        Value v = phi.eval(wrap);
        acc = ((n + 1) % 2 == 0) ? acc + v : acc - v;
        return acc;
    };
    return out;
}

/// Connes coboundary B = A B_0 with B_0 inserting the unit in slot 0 and A
/// the signed cyclic antisymmetrization. Undefined on phi_0.
template <typename Elem, typename Value>
MultilinearFunctional<Elem, Value> connes_B(const MultilinearFunctional<Elem, Value>& phi,
                                            const Elem& unit) {
    if (phi.slots < 2) throw Error("connes_B: undefined on 0-cochains");
    int m = phi.slots - 1;  // resulting slot count
    MultilinearFunctional<Elem, Value> out;
    out.slots = m;
    out.eval = [phi, unit, m](std::span<const Elem> a) -> Value {
        Value acc{};
        for (int j = 0; j < m; ++j) {
            std::vector<Elem> args;
            args.reserve(m + 1);
            args.push_back(unit);
            for (int i = 0; i < m; ++i) args.push_back(a[(j + i) % m]);
            Value v = phi.eval(args);
            bool neg = ((m - 1) * j) % 2 != 0;
            acc = neg ? acc - v : acc + v;
        }
        return acc;
    };
    return out;
}

}  // namespace qdsindex
