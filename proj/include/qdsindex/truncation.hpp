#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdsindex {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TruncationMismatch : Error {
    using Error::Error;
};
struct FitError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

/// Basis label; meaning is model-specific. Sphere stores half-integers
/// doubled, e.g. (2j, 2m, sigma); torus stores (m, n, block); l2(N) stores n.
using BasisLabel = std::array<int32_t, 4>;

/// A labeled finite orthonormal basis. Operators carry a pointer to their
/// truncation; mixing truncations is an error.
struct HilbertTruncation {
    std::string id;
    uint32_t dim = 0;
    std::vector<BasisLabel> labels;

    HilbertTruncation(std::string id_, std::vector<BasisLabel> labels_)
        : id(std::move(id_)), dim(static_cast<uint32_t>(labels_.size())), labels(std::move(labels_)) {}
};

using TruncationPtr = std::shared_ptr<const HilbertTruncation>;

inline void require_same_truncation(const TruncationPtr& a, const TruncationPtr& b) {
    if (a.get() == b.get()) return;
    if (!a || !b || a->id != b->id || a->dim != b->dim)
        throw TruncationMismatch("operators live on different truncations");
}

/// Product truncation for a (x) c with label (base index, l2 index).
inline TruncationPtr make_product_truncation(const TruncationPtr& base, uint32_t M) {
    std::vector<BasisLabel> labels;
    labels.reserve(static_cast<size_t>(base->dim) * M);
    for (uint32_t i = 0; i < base->dim; ++i)
        for (uint32_t n = 0; n < M; ++n)
            labels.push_back({static_cast<int32_t>(i), static_cast<int32_t>(n), 0, 0});
    return std::make_shared<HilbertTruncation>(
        base->id + "(x)ell2(" + std::to_string(M) + ")", std::move(labels));
}

inline TruncationPtr make_ell2_truncation(uint32_t M) {
    std::vector<BasisLabel> labels(M);
    for (uint32_t n = 0; n < M; ++n) labels[n] = {static_cast<int32_t>(n), 0, 0, 0};
    return std::make_shared<HilbertTruncation>("ell2(" + std::to_string(M) + ")", std::move(labels));
}

}  // namespace qdsindex
