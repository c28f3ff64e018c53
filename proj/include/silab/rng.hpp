#pragma once

#include <cstdint>
#include <random>

#include "silab/field.hpp"
#include "silab/linalg.hpp"

namespace silab {

// Seeded generator with explicit bounded sampling so that sequences are
// reproducible across platforms (std distributions are not portable).
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }

    i64 below(i64 n) { return static_cast<i64>(next() % static_cast<uint64_t>(n)); }

    i64 residue(i64 p) { return below(p); }

    FpVec vec(i64 p, int d) {
        FpVec v = FpVec::zero(p, d);
        for (auto& x : v.c) x = residue(p);
        return v;
    }

    FpVec nonzero_vec(i64 p, int d) {
        for (;;) {
            FpVec v = vec(p, d);
            if (!v.is_zero()) return v;
        }
    }

    Subspace subspace(i64 p, int d, int dim) {
        for (;;) {
            std::vector<FpVec> gens;
            for (int i = 0; i < dim; i++) gens.push_back(vec(p, d));
            Subspace s = Subspace::span(p, d, gens);
            if (s.dim() == dim) return s;
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace silab
