#pragma once

#include "silab/linalg.hpp"
#include "silab/poly.hpp"

namespace silab {

// Quadratic form M(n) = (nA).n + n.u + v with A symmetric. Odd p is required
// throughout so the factor 2 appearing in difference forms is invertible.
class QuadForm {
public:
    QuadForm(i64 p, FpMat A, FpVec u, i64 v);

    // M(n) = n.n (identity matrix, homogeneous)
    static QuadForm dot_self(i64 p, int d);
    static QuadForm diagonal(i64 p, const std::vector<i64>& diag);

    i64 p() const { return p_; }
    int d() const { return A_.rows; }
    const FpMat& A() const { return A_; }
    const FpVec& u() const { return u_; }
    i64 v() const { return v_; }

    bool is_pure() const { return u_.is_zero(); }
    bool is_homogeneous() const { return u_.is_zero() && v_ == 0; }
    bool non_degenerate() const;
    int rank_of_form() const;  // rank(A)

    i64 eval(const FpVec& n) const;
    Poly as_poly() const;

    // The ideal generator (hA).n  (a homogeneous linear form).
    Poly gen_linear(const FpVec& h) const;
    // The difference form L_h(n) = M(n+h) - M(n). For homogeneous M this is
    // 2(hA).n + (hA).h, i.e. gen_linear doubled plus a constant.
    Poly diff_form(const FpVec& h) const;
    // The quadratic form n -> M(n + h).
    QuadForm translate(const FpVec& h) const;

    bool operator==(const QuadForm& o) const {
        return p_ == o.p_ && A_ == o.A_ && u_ == o.u_ && v_ == o.v_;
    }

private:
    i64 p_;
    FpMat A_;
    FpVec u_;
    i64 v_;
};

// V^{perp_M} = {n : (mA).n = 0 for all m in V}.
Subspace perp(const QuadForm& M, const Subspace& V);

bool is_isotropic(const QuadForm& M, const Subspace& V);
bool is_isotropic_tuple(const QuadForm& M, const std::vector<FpVec>& hs);

// rank of M restricted to the affine subspace V+c, computed through an
// explicit parametrization of V (valid for any M).
int restricted_rank(const QuadForm& M, const Subspace& V, const FpVec& c);
// dim(V) - dim(V cap V^{perp_M}); agrees with restricted_rank when M is
// non-degenerate.
int restricted_rank_closed_form(const QuadForm& M, const Subspace& V);

struct AffineCountReport {
    long long count = 0;
    long long main_term = 0;  // p^{d-r-1} with r the co-dimension of V
    int codim = 0;
    int restricted_rank = 0;
    // (count - main)/main as an exact rational "num/den" in lowest terms
    std::string normalized_deviation;
};

AffineCountReport count_variety_affine(const QuadForm& M, const Subspace& V, const FpVec& c,
                                       size_t budget = 100000000);

struct CommonCountReport {
    long long count = 0;
    long long main_term = 0;  // p^{d-r-1}
    int r = 0;
    bool hs_independent = true;  // warning flag is !hs_independent
    bool estimate_applies = false;  // d - 2r >= 3 and hs independent
    std::string normalized_deviation;
};

// |V(M)^{h_1..h_r}| by exact enumeration.
CommonCountReport count_common_variety(const QuadForm& M, const std::vector<FpVec>& hs,
                                       size_t budget = 100000000);

struct IsotropicFractionReport {
    bool exact = false;
    long long isotropic = 0;
    long long total = 0;  // tuples examined (p^{kd} in exact mode)
    std::string fraction;  // "isotropic/total"
};

// Fraction of k-tuples spanning an isotropic subspace. A tuple containing the
// zero vector counts as isotropic. Exact when p^{kd} fits the budget,
// otherwise seeded Monte Carlo.
IsotropicFractionReport isotropic_tuple_fraction(const QuadForm& M, int k, long long samples,
                                                 uint64_t seed, size_t budget = 20000000);

std::string quadform_to_json(const QuadForm& M);
QuadForm quadform_from_json(const std::string& text);

}  // namespace silab
