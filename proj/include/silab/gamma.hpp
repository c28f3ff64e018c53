#pragma once

#include <functional>
#include <optional>

#include "silab/mideal.hpp"

namespace silab {

// One element (h, J^M_V + f) with h in V and f homogeneous of degree s.
// f is stored canonically reduced modulo the degree-graded basis of J^M_V,
// so structural equality of two elements implies relatedness.
class GammaElement {
public:
    GammaElement(QuadForm M, int s, FpVec h, Subspace V, const Poly& f);

    const QuadForm& M() const { return M_; }
    int s() const { return s_; }
    const FpVec& h() const { return h_; }
    const Subspace& V() const { return V_; }
    const Poly& f() const { return f_; }

    MIdeal ideal() const { return MIdeal(M_, V_); }

    // h != 0 requires dim(V) <= k; h == 0 requires dim(V) <= k-1.
    bool in_gamma_k(int k) const;

    bool operator==(const GammaElement& o) const;
    bool operator<(const GammaElement& o) const;  // (h, V, f) lexicographic

    std::string to_json() const;
    static GammaElement from_json(const QuadForm& M, int s, const std::string& text);

private:
    QuadForm M_;
    int s_;
    FpVec h_;
    Subspace V_;
    Poly f_;  // reduced representative
};

// (h+h', V+V', f+f') and (h-h', V+V', f-f'), both canonically reduced.
GammaElement hat_add(const GammaElement& a, const GammaElement& b);
GammaElement hat_sub(const GammaElement& a, const GammaElement& b);

// a ~ b iff h-components agree and f_a - f_b lies in J^M_{V_a+V_b}.
bool related(const GammaElement& a, const GammaElement& b);

// Multiset with structural deduplication and a fiber index over the
// projection h. Never dedups up to ~ (which is not transitive).
class GammaSet {
public:
    GammaSet(QuadForm M, int s);

    const QuadForm& M() const { return M_; }
    int s() const { return s_; }

    bool insert(const GammaElement& e);  // false if structurally present
    size_t size() const { return elems_.size(); }
    const std::vector<GammaElement>& elements() const { return elems_; }
    std::vector<GammaElement> fiber(const FpVec& h) const;
    std::vector<FpVec> projections() const;  // sorted distinct h values

    std::string to_json() const;

private:
    QuadForm M_;
    int s_;
    std::vector<GammaElement> elems_;  // kept sorted by (h, V, f)
};

enum class SumSign { Plus, Minus };
GammaSet sumset(const GammaSet& A, const GammaSet& B, SumSign sign, size_t budget = 1000000);
GammaSet iterated_sumset(const GammaSet& A, int k, int l, size_t budget = 1000000);  // kA -^ lA

// Equivalence-class classification of a single pi-fiber.
struct ClassifyResult {
    enum Kind { NotClass, Weak, Strong } kind = NotClass;
    std::optional<GammaElement> witness;  // set when Strong
};
ClassifyResult classify_equivalence(const std::vector<GammaElement>& X);

// Dichotomy check: either the fiber is a strong equivalence class, or there is
// a low-dimensional obstruction subspace Y meeting every member's V beyond
// span{h}. The search mirrors the greedy independent-subspace argument.
struct GwtsReport {
    bool dim_hypothesis = false;  // d >= 2k+2(s+1)(k-2)+5 (+7 when h != 0)
    bool strong_branch = false;
    std::optional<GammaElement> witness;
    Subspace Y;  // obstruction subspace (strong_branch == false)
    int y_dim_bound = 0;
    bool obstruction_verified = false;  // V cap Y != span{h} for all members
};
GwtsReport gwts_check(const std::vector<GammaElement>& X, int k, int s);

// Greedy dichotomy on a collection of subspaces, each containing U: either m
// of them are linearly independent modulo U, or a subspace W of dimension at
// most k'+(m-1)(k-k') containing U meets every member beyond U.
struct SubspaceDichotomy {
    bool independent_branch = false;
    std::vector<int> chosen;  // indices of the independent members
    Subspace W;
};
SubspaceDichotomy gweakdic_search(const std::vector<Subspace>& Us, const Subspace& U, int m);

// Directed M-energy graph on H^2: edge ((h1,h2),(h3,h4)) iff
// xi1~(h1) -^ xi2~(h2) ~ xi3~(h3) -^ xi4~(h4), with xi~(h) = (h, J^M_h + xi(h)).
struct MEnergyGraph {
    int n = 0;  // |H|^2 nodes; node (i,j) has index i*|H|+j
    std::vector<uint8_t> adj;
    long long energy = 0;
    bool has_edge(int a, int b) const { return adj[static_cast<size_t>(a) * n + b] != 0; }
};
using XiMap = std::function<Poly(const FpVec&)>;
MEnergyGraph m_energy(const QuadForm& M, int s, const std::vector<FpVec>& H, const XiMap& xi1,
                      const XiMap& xi2, const XiMap& xi3, const XiMap& xi4,
                      size_t edge_budget = 25000000);

}  // namespace silab
