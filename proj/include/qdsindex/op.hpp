#pragma once

#include <complex>
#include <map>
#include <vector>

#include "qdsindex/truncation.hpp"

namespace qdsindex {

using cplx = std::complex<double>;

/// Sparse operator on a HilbertTruncation, stored as (row,col) -> value.
/// Keys are packed row-major so iteration order is deterministic.
class Op {
public:
    Op() = default;
    explicit Op(TruncationPtr tr) : tr_(std::move(tr)) {}

    const TruncationPtr& truncation() const { return tr_; }
    uint32_t dim() const { return tr_ ? tr_->dim : 0; }
    size_t nnz() const { return entries_.size(); }

    static uint64_t key(uint32_t i, uint32_t j) { return (static_cast<uint64_t>(i) << 32) | j; }
    static uint32_t row_of(uint64_t k) { return static_cast<uint32_t>(k >> 32); }
    static uint32_t col_of(uint64_t k) { return static_cast<uint32_t>(k & 0xffffffffu); }

    void add(uint32_t i, uint32_t j, cplx v) {
        if (i >= dim() || j >= dim()) throw Error("Op::add: index out of range");
        if (v == cplx{}) return;
        auto [it, inserted] = entries_.try_emplace(key(i, j), v);
        if (!inserted) {
            it->second += v;
            if (it->second == cplx{}) entries_.erase(it);
        }
    }

    void set(uint32_t i, uint32_t j, cplx v) {
        if (i >= dim() || j >= dim()) throw Error("Op::set: index out of range");
        if (v == cplx{})
            entries_.erase(key(i, j));
        else
            entries_[key(i, j)] = v;
    }

    cplx get(uint32_t i, uint32_t j) const {
        auto it = entries_.find(key(i, j));
        return it == entries_.end() ? cplx{} : it->second;
    }

    const std::map<uint64_t, cplx>& entries() const { return entries_; }
    std::map<uint64_t, cplx>& entries() { return entries_; }

    static Op identity(const TruncationPtr& tr) {
        Op a(tr);
        for (uint32_t i = 0; i < tr->dim; ++i) a.entries_[key(i, i)] = 1.0;
        return a;
    }

    static Op diagonal(const TruncationPtr& tr, const std::vector<cplx>& d) {
        Op a(tr);
        for (uint32_t i = 0; i < tr->dim; ++i)
            if (d[i] != cplx{}) a.entries_[key(i, i)] = d[i];
        return a;
    }

    Op adjoint() const {
        Op a(tr_);
        for (const auto& [k, v] : entries_) a.entries_[key(col_of(k), row_of(k))] = std::conj(v);
        return a;
    }

    std::vector<cplx> diag() const {
        std::vector<cplx> d(dim());
        for (const auto& [k, v] : entries_)
            if (row_of(k) == col_of(k)) d[row_of(k)] = v;
        return d;
    }

    cplx trace() const {
        cplx t{};
        for (const auto& [k, v] : entries_)
            if (row_of(k) == col_of(k)) t += v;
        return t;
    }

    double max_abs() const {
        double m = 0;
        for (const auto& [k, v] : entries_) m = std::max(m, std::abs(v));
        return m;
    }

    friend Op operator+(const Op& a, const Op& b) {
        require_same_truncation(a.tr_, b.tr_);
        Op out = a;
        for (const auto& [k, v] : b.entries_) {
            auto [it, inserted] = out.entries_.try_emplace(k, v);
            if (!inserted) {
                it->second += v;
                if (it->second == cplx{}) out.entries_.erase(it);
            }
        }
        return out;
    }

    friend Op operator-(const Op& a, const Op& b) { return a + (b * cplx(-1.0)); }

    friend Op operator*(const Op& a, cplx s) {
        Op out = a;
        if (s == cplx{}) {
            out.entries_.clear();
            return out;
        }
        for (auto& [k, v] : out.entries_) v *= s;
        return out;
    }
    friend Op operator*(cplx s, const Op& a) { return a * s; }

    friend Op operator*(const Op& a, const Op& b) {
        require_same_truncation(a.tr_, b.tr_);
        Op out(a.tr_);
        auto bit = b.entries_.begin();
        // row slices of b, found on demand (both maps are row-major ordered)
        for (const auto& [ka, va] : a.entries_) {
            uint32_t i = row_of(ka), kcol = col_of(ka);
            auto lo = b.entries_.lower_bound(key(kcol, 0));
            auto hi = b.entries_.lower_bound(key(kcol + 1, 0));
            for (auto it = lo; it != hi; ++it) {
                uint32_t j = col_of(it->first);
                auto [oit, inserted] = out.entries_.try_emplace(key(i, j), va * it->second);
                if (!inserted) {
                    oit->second += va * it->second;
                    if (oit->second == cplx{}) out.entries_.erase(oit);
                }
            }
        }
        (void)bit;
        return out;
    }

private:
    TruncationPtr tr_;
    std::map<uint64_t, cplx> entries_;
};

inline Op commutator(const Op& a, const Op& b) { return a * b - b * a; }

/// Kronecker product on a registered product truncation (base dim x M).
/// Row index (i, n) maps to i*M + n.
inline Op tensor(const Op& a, const Op& c, const TruncationPtr& product) {
    uint32_t M = c.dim();
    if (static_cast<uint64_t>(a.dim()) * M != product->dim)
        throw TruncationMismatch("tensor: product truncation does not match factors");
    Op out(product);
    for (const auto& [ka, va] : a.entries()) {
        uint32_t i = Op::row_of(ka), j = Op::col_of(ka);
        for (const auto& [kc, vc] : c.entries()) {
            uint32_t n = Op::row_of(kc), m = Op::col_of(kc);
            out.add(i * M + n, j * M + m, va * vc);
        }
    }
    return out;
}

/// Entrywise max |A - B| restricted to rows/cols accepted by the predicates.
template <typename PredR, typename PredC>
double max_interior_abs_diff(const Op& a, const Op& b, PredR interior_row, PredC interior_col) {
    require_same_truncation(a.truncation(), b.truncation());
    double m = 0;
    auto scan = [&](const Op& x, const Op& y) {
        for (const auto& [k, v] : x.entries()) {
            uint32_t i = Op::row_of(k), j = Op::col_of(k);
            if (!interior_row(i) || !interior_col(j)) continue;
            m = std::max(m, std::abs(v - y.get(i, j)));
        }
    };
    scan(a, b);
    scan(b, a);
    return m;
}

}  // namespace qdsindex
