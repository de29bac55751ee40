#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "qdsindex/zeta.hpp"

namespace qdsindex::models {

/// A concrete spectral triple at desk scale: truncation, Dirac spectrum in
/// its own eigenbasis, generators transported to that basis, filtration
/// metadata, eigenvalue-counting bound and tuned fit windows.
struct ModelInstance {
    std::string name;
    TruncationPtr truncation;
    DiracData dirac;
    std::optional<Op> gamma;
    std::map<std::string, Op> generators;
    std::map<std::string, int> filtration;
    double growth_C = 1.0;
    int growth_q = 1;
    double mu_edge = 1.0;  // eigenvalue scale at the truncation boundary
    FitOptions fit_absD;
    FitOptions fit_gauss;
    bool prefer_gaussian = false;
    std::function<bool(uint32_t, int)> interior;  // (basis index, margin)

    ModelInstance(std::string n, TruncationPtr tr, DiracData d)
        : name(std::move(n)), truncation(std::move(tr)), dirac(std::move(d)) {}

    const Op& generator(const std::string& key) const {
        auto it = generators.find(key);
        if (it == generators.end()) throw Error("unknown generator: " + key);
        return it->second;
    }

    FitOptions residue_fit() const { return prefer_gaussian ? fit_gauss : fit_absD; }
};

}  // namespace qdsindex::models
