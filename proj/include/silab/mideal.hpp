#pragma once

#include <memory>

#include "silab/quadform.hpp"

namespace silab {

// Two generator conventions for the ideal attached to (M, V):
//  - PairingForm: generators are M itself and the linear forms n -> (hA).n
//    for h over a basis of V (the basis-independent definition).
//  - DifferenceForm: generators are M and the affine forms
//    L_h(n) = M(n+h) - M(n) = 2(hA).n + M(h).
// The two spans agree exactly when M vanishes on the chosen basis vectors;
// they are kept separate because the constant M(h) is a genuine obstruction.
enum class GenConvention { PairingForm, DifferenceForm };

// The ideal J^M_V for a homogeneous quadratic form M and subspace V, in its
// canonical (RREF-basis) representation.
class MIdeal {
public:
    MIdeal(QuadForm M, Subspace V);

    const QuadForm& M() const { return M_; }
    const Subspace& V() const { return V_; }
    i64 p() const { return M_.p(); }
    int d() const { return M_.d(); }

    // The i-th linear/affine generator (i indexes the canonical basis of V).
    Poly generator(int i, GenConvention conv) const;

    bool operator==(const MIdeal& o) const { return M_ == o.M_ && V_ == o.V_; }

private:
    QuadForm M_;
    Subspace V_;
};

// J^M_V + J^M_{V'} = J^M_{V+V'} (generator spans add).
MIdeal sum(const MIdeal& a, const MIdeal& b);

// Span of all ideal members of degree <= s inside the monomial-coefficient
// space: span{ M q : deg q <= s-2 } + span{ g_i q : deg q <= s-1 } with g_i
// the degree-1 generators of the chosen convention.
struct GradedIdealBasis {
    i64 p = 0;
    int d = 0;
    int s = 0;
    GenConvention conv = GenConvention::PairingForm;
    std::vector<Monomial> cols;  // monomials_up_to(d, s), descending order
    FpMat rows;                  // canonical RREF of the raw product rows

    // Raw generator products with provenance, kept for certificates.
    struct Provenance {
        int gen;     // 0 = the quadratic form M, i >= 1 = i-th generator of V
        Monomial q;  // the multiplier monomial
    };
    FpMat raw;
    std::vector<Provenance> prov;

    int rank() const { return rows.rows; }
    bool spans(const FpVec& coords) const;
    // Reduce a coordinate vector modulo the row space (fixed pivot order).
    FpVec reduce(const FpVec& coords) const;
};

// Cached per (M, V, s, convention); safe for concurrent readers.
std::shared_ptr<const GradedIdealBasis> graded_basis(
    const MIdeal& I, int s, GenConvention conv = GenConvention::PairingForm);

struct MembershipResult {
    bool member = false;
    Poly P0;                 // multiplier of M
    std::vector<Poly> Pi;    // multipliers of the degree-1 generators
};

// Degree-graded membership with a re-verified certificate: on a positive
// answer, f == M*P0 + sum_i g_i*Pi holds exactly (checked before returning).
MembershipResult contains(const MIdeal& I, const Poly& f, int s_hint,
                          GenConvention conv = GenConvention::PairingForm);

// Secondary oracle: does f vanish on the zero set of the generators?
//  - PairingForm: the set {n in V^{perp_M} : M(n) = 0}, enumerated through a
//    parametrization of V^{perp_M}.
//  - DifferenceForm: {n : M(n) = 0 and M(n+h_i) = 0 for all basis h_i},
//    enumerated over the full grid.
bool vanishes_on_zero_set(const MIdeal& I, const Poly& f,
                          GenConvention conv = GenConvention::PairingForm,
                          size_t budget = 100000000);

// Sunflower intersection of subspaces: whether cap_i (V + V_i) == V.
struct SunflowerReport {
    bool vs_independent = false;
    Subspace intersection;
    bool equals_core = false;
};
SunflowerReport verify_intersection_subspaces(const Subspace& V,
                                              const std::vector<Subspace>& Vs);

// Intersection property for ideals: f in cap_i J^M_{V+V_i} <=> f in J^M_V,
// under N >= s+m+1 and a rank condition on M restricted to V^{perp_M}.
struct IdealIntersectionReport {
    int N = 0, m = 0, r = 0;
    bool vs_independent = false;
    int rank_on_perp = 0;
    bool rank_condition = false;   // rank(M|_{V^perp}) >= 2N(r-1)+7
    bool dim_condition = false;    // d >= 2m+2N(r-1)+7
    bool count_condition = false;  // N >= s+m+1
    bool hypothesis_met = false;
    bool in_all = false;
    bool in_base = false;
    bool biconditional = false;
};
IdealIntersectionReport verify_intersection_ideals(const QuadForm& M, const Subspace& V,
                                                   const std::vector<Subspace>& Vs,
                                                   const Poly& f, int s);

// Density version: if f in J^M_{span{h_1..h_m}+V} for every admissible
// m-tuple from P (admissible: (h_1..h_m, U_i, V) independent for each U_i,
// including the trivial U_0), then f in J^M_V.
struct DensityIntersectionReport {
    bool dim_condition = false;  // d' >= max{dim V+m+s, dim U_k+dim V+m, 2dim V+2m+5}
    long long tuples_checked = 0;
    long long tuples_admissible = 0;
    bool hypothesis_holds = true;
    std::vector<FpVec> failure_witness;  // first admissible tuple violating it
    bool conclusion_holds = false;
    bool implication_ok = false;
};
DensityIntersectionReport verify_grm(const QuadForm& M, const Subspace& V,
                                     const std::vector<Subspace>& Us,
                                     const std::vector<FpVec>& P, const Poly& f, int m,
                                     int dprime, long long max_tuples, uint64_t seed);

}  // namespace silab
