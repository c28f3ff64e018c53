#pragma once

#include "silab/freiman.hpp"

namespace silab {

// Symmetric-residue interval membership: x lies in I_L for L = num/den when
// -L < tau(x) < L with tau the representative in (-p/2, p/2].
bool in_symmetric_interval(i64 p, i64 x, i64 num, i64 den);

// Bounded shift set C0 (homogeneous polynomials containing 0, pairwise
// non-congruent modulo the base ideal of M) together with an obstruction
// union Y of at most C subspaces of dimension at most D.
struct StructureObstaclePair {
    std::vector<Poly> C0;
    std::vector<Subspace> Y;
    int K = 0;
    int C = 0;
    int D = 0;

    static StructureObstaclePair trivial(i64 p, int d, int s);

    bool validate(const QuadForm& M, int s, std::string* why = nullptr) const;
    std::string to_json() const;
};

// Independent re-check of the decomposition invariants; never trusted from
// the search path that produced the candidate.
struct SOVerification {
    bool dims = false;
    bool trivial_intersection = false;
    bool spanning = false;
    bool ideal_avoids_C0 = false;
    bool avoids_Y = false;
    bool full_rank = false;

    bool all() const {
        return dims && trivial_intersection && spanning && ideal_avoids_C0 && avoids_Y &&
               full_rank;
    }
};

// (T, U) with dim T = d', dim U = d'', T ⊕ U = F_p^d, the degree-graded ideal
// of U avoiding every nonzero shift in C0, U meeting Y trivially, and M
// restricted to U of full rank.
struct SODecomposition {
    Subspace T;
    Subspace U;
    SOVerification verification;

    std::string to_json() const;
};

SOVerification verify_so_decomposition(const QuadForm& M, const StructureObstaclePair& pair,
                                       const Subspace& T, const Subspace& U, int s, int d1,
                                       int d2);

// Linear map Phi: F_p^k -> F_p^{|J|} such that every c in J either lies in V
// or has V disjoint from c + Phi^{-1}(I^{|J|}_{p/10}). Row i corresponds to
// the i-th point of the J ordering used at construction time.
struct SeparationMap {
    FpMat Phi;

    int k() const { return Phi.cols; }
    int rows() const { return Phi.rows; }
    FpVec apply(const FpVec& n) const { return mat_vec(Phi, n); }
};

// Per point c: the zero row when c in V; otherwise extend a basis of V by c,
// and send the c-coordinate t to -a*t for a fixed a outside I_{p/10}.
SeparationMap build_separation_map(const Subspace& V, const std::vector<FpVec>& J);

// Exhaustive check of the separation disjunction over all of V.
bool check_separation(const SeparationMap& sep, const Subspace& V,
                      const std::vector<FpVec>& J, size_t budget = 1000000);

// Randomized decomposition search: T candidates are rejection-sampled to stay
// independent of the earlier ones; U candidates are graphs of linear maps
// from the T-complement coordinates into T, which forces dim U = d'' and
// U ∩ T = {0} by construction. Rejection counters record which invariant
// killed each candidate.
struct SOSearchReport {
    bool ok = false;
    bool dim_hypothesis = false;  // d' >= max{D,3}, d'' >= (R-1)d', d >= 4
    i64 p = 0;                    // the asymptotic threshold is implicit; p is recorded
    std::vector<SODecomposition> decs;
    long long samples = 0;
    long long rejected_rank = 0;
    long long rejected_obstruction = 0;
    long long rejected_shift = 0;
    uint64_t seed = 0;
    std::string failure;

    std::string to_json() const;
};

SOSearchReport find_so_decomposition(const QuadForm& M, const StructureObstaclePair& pair,
                                     int s, int d1, int d2, int R, uint64_t seed = 1,
                                     long long max_samples = 100000);

// Rejection-rate measurement over a fixed number of U candidates (no early
// stop), for checking that the rejected fraction shrinks as p grows.
struct SORejectionStats {
    long long samples = 0;
    long long rejected = 0;
    long long rejected_rank = 0;
    long long rejected_obstruction = 0;
    long long rejected_shift = 0;

    double fraction() const {
        return samples == 0 ? 0.0 : static_cast<double>(rejected) / static_cast<double>(samples);
    }
};

SORejectionStats sample_rejection_stats(const QuadForm& M, const StructureObstaclePair& pair,
                                        int s, int d1, int d2, long long samples,
                                        uint64_t seed = 1);

// Cube-pigeonhole subset extraction: flatten xi values through the degree-s
// coefficient map, separate the shifts from the flattened ideal with a
// separation map, cover the target by cubes of side p/80, and keep the
// largest fiber. The kept subset carries the lower bound |W'| >= |W|/80^{K+1}
// and a sampled order-16 additivity spot check.
struct FreimanSubsetReport {
    bool ok = false;
    std::vector<FpVec> W_prime;
    std::vector<int> cube;  // cube index per separation coordinate
    bool size_bound_ok = false;
    FreimanHomReport order16;
    std::string failure;

    std::string to_json() const;
};

FreimanSubsetReport extract_freiman_subset(const std::vector<FpVec>& W,
                                           const StructureObstaclePair& pair,
                                           const Subspace& V, const XiMap& xi,
                                           const QuadForm& M, int s, uint64_t seed = 1,
                                           size_t budget = 200000);

}  // namespace silab
