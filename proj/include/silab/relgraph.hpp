#pragma once

#include "silab/gamma.hpp"

namespace silab {

// Simple undirected graph (no self-loops) with optional gamma-element
// payloads. When built from a single projection fiber of a GammaSet, the
// edge relation is exactly ~ between distinct members.
class RelGraph {
public:
    RelGraph() = default;
    explicit RelGraph(int n);

    static RelGraph from_fiber(const std::vector<GammaElement>& X);

    int n() const { return n_; }
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const {
        return adj_[static_cast<size_t>(u) * n_ + v] != 0;
    }
    int degree(int v) const;
    long long edge_count() const;

    bool has_payload() const { return !payload_.empty(); }
    const GammaElement& payload(int v) const { return payload_.at(v); }

    RelGraph complement() const;
    RelGraph induced(const std::vector<int>& vs) const;
    bool is_triangle_free() const;

    // DIMACS-like edge list ("p edge n m" header, 1-based "e u v" lines)
    // plus a JSON sidecar mapping vertex indices to element payloads.
    std::string to_edge_list() const;
    static RelGraph parse_edge_list(const std::string& text);
    std::string payload_json() const;

    bool operator==(const RelGraph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

private:
    int n_ = 0;
    std::vector<uint8_t> adj_;
    std::vector<GammaElement> payload_;
};

// Bipartite graph over the vertices of a RelGraph and an abstract right set.
struct AuxGraph {
    int left = 0;
    int right = 0;
    std::vector<uint8_t> edges;  // left x right

    AuxGraph() = default;
    AuxGraph(int left, int right);
    bool has_edge(int x, int y) const {
        return edges[static_cast<size_t>(x) * right + y] != 0;
    }
    void add_edge(int x, int y);
    int left_degree(int x) const;

    // Every common right-neighborhood must induce a clique in G.
    bool is_auxiliary_for(const RelGraph& G) const;
    // Every left vertex has at least (num/den)*right neighbors.
    bool is_dense(long long num, long long den) const;
};

// Right-side replication by an integral factor (density preserving).
AuxGraph replicate_right(const AuxGraph& A, int factor);

// Exhaustive list of all maximal cliques (pivoted Bron-Kerbosch).
std::vector<std::vector<int>> maximal_cliques(const RelGraph& G);

struct CliqueCoverResult {
    bool exact = false;
    int value = 0;  // exact when exact, else the upper bound
    int lower = 0;
    int upper = 0;
    std::vector<std::vector<int>> partition;  // validated clique partition
};
// Minimum clique cover = chromatic number of the complement, by
// branch-and-bound coloring. Above the budget only (greedy upper,
// max-independent-set lower) bounds are produced.
CliqueCoverResult cc_number(const RelGraph& G, int budget = 40);

struct DensityDependenceResult {
    bool exact = false;
    int value = 0;
    int lower = 0;
    int upper = 0;
    std::string t_star;       // optimal min-coverage fraction "num/den"
    AuxGraph certificate;     // t_star-dense auxiliary graph (exact mode)
    std::vector<int> clique_of_right;  // index into maximal_cliques(G)
};
// Smallest C admitting a (1/C)-dense auxiliary graph. Exact mode solves the
// min-coverage maximization over clique multisets as a rational LP on the
// maximal-clique incidence system and returns ceil(1/t*); above the budget
// the bounds come from dd <= cc and clique-size pigeonholing.
DensityDependenceResult dd_number(const RelGraph& G, int budget = 40);

// Definition-level search over auxiliary graphs with right side of size at
// most max_right, for cross-validating the LP on graphs with <= 8 vertices.
int dd_brute_force(const RelGraph& G, int max_right = 8);

int independence_number(const RelGraph& G);

// Vertices X ⊔ X' ⊔ {a}; edges E ∪ {{x,y'}: {x,y} in E} ∪ {{y',a}}.
// Vertex i' = n + i, a = 2n.
RelGraph mycielskian(const RelGraph& G);

// Exact isomorphism test by permutation backtracking (small graphs only).
bool is_isomorphic(const RelGraph& A, const RelGraph& B);

// Decomposition of a pi = 0 fiber into a good part with a small validated
// clique cover and a bad part trapped by a low-dimensional subspace union.
struct WeakCoreReport {
    bool dim_hypothesis = false;  // d >= 2(k-2)s+6k-1 (vacuous for k == 1)
    std::vector<std::vector<int>> cliques;  // partition of the good part
    std::vector<int> bad;                   // indices into the input fiber
    std::vector<Subspace> Y;
    int clique_count = 0;     // achieved C
    int subspace_count = 0;   // achieved N
    int y_dim_bound = 0;      // (s+2k-2)(k-1)
    bool cliques_verified = false;      // every clique edge re-checked by ~
    bool obstruction_verified = false;  // every bad member meets some Y part
};
WeakCoreReport weak_core_decompose(const std::vector<GammaElement>& X, int D, int k, int s);

// Structure-obstacle classification: every fiber member either meets the
// obstruction Y or is related to a representative shift in C0.
struct ClassificationReport {
    bool holds = false;
    int violating_index = -1;
};
ClassificationReport classification_check(const std::vector<GammaElement>& X,
                                          const std::vector<Poly>& C0,
                                          const std::vector<Subspace>& Y, int K, int C,
                                          int D);

}  // namespace silab
