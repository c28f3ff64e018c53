#pragma once

#include <array>
#include <boost/rational.hpp>
#include <optional>

#include "silab/gamma.hpp"

namespace silab {

using Rat = boost::rational<long long>;

// Generalized arithmetic progression a + (-L,L).v over F_p^d with exact
// rational lengths. Index tuples range over the integers strictly inside
// (-L_i, L_i); properness (all sums distinct) is decided by enumeration.
class Gap {
public:
    Gap(FpVec base, std::vector<FpVec> gens, std::vector<Rat> lengths);

    i64 p() const { return base_.p; }
    int d() const { return base_.d(); }
    int rank() const { return static_cast<int>(gens_.size()); }
    const FpVec& base() const { return base_; }
    const std::vector<FpVec>& gens() const { return gens_; }
    const std::vector<Rat>& lengths() const { return lengths_; }

    bool is_homogeneous() const { return base_.is_zero(); }
    // Largest admissible |l_i| per axis (greatest integer strictly below L_i).
    std::vector<long long> index_caps() const;
    long long tuple_count() const;

    FpVec point(const std::vector<long long>& l) const;
    std::vector<std::vector<long long>> index_tuples(size_t budget = 20000000) const;
    // Points in tuple order; contains duplicates exactly when improper.
    std::vector<FpVec> elements(size_t budget = 20000000) const;
    bool is_proper(size_t budget = 20000000) const;

    std::string to_json() const;

private:
    FpVec base_;
    std::vector<FpVec> gens_;
    std::vector<Rat> lengths_;
};

// P(c): same base and generators, lengths scaled by c in (0,1]. Asserts the
// rescaled-cardinality bound |P(c)| >= (c/(c+2))^D |P| by exact enumeration.
Gap scale_gap(const Gap& P, const Rat& c, size_t budget = 20000000);

// Index-arithmetic check of P(c)+P(c') subset of P(c+c') (needs c+c' <= 1).
bool check_gap_sum_containment(const Gap& P, const Rat& c1, const Rat& c2,
                               size_t budget = 20000000);

// xi(l_1 v_1 + ... + l_D v_D) = f0 + l_1 f_1 + ... + l_D f_D on a proper
// homogeneous progression, every coefficient homogeneous of one degree.
struct LocallyLinearMap {
    Gap P;
    Poly f0;
    std::vector<Poly> f;  // one per generator

    Poly eval_index(const std::vector<long long>& l) const;
};

struct LocalLinearFit {
    bool feasible = false;
    Poly f0;
    std::vector<Poly> f;
    std::optional<FpVec> witness;  // first point whose constraint block breaks
    long long rows = 0;
};
// Solve for homogeneous degree-s coefficients f0..fD with
// xi(h) - (f0 + sum l_i f_i) in J^M_h for every h in P. Rejects improper P.
LocalLinearFit fit_locally_linear(const XiMap& xi, const Gap& P, const QuadForm& M, int s,
                                  size_t budget = 20000000);

// Bohr set B(S, rho) = {h : min-residue(alpha.h) < rho p for all alpha in S},
// enumerated exactly; rho in (0, 1/2).
struct BohrSet {
    std::vector<FpVec> freqs;
    Rat rho;
    i64 p = 0;
    int d = 0;
    std::vector<FpVec> elements;
    bool size_bound_ok = false;  // |B| >= rho^{|S|} p^d

    std::string to_json() const;
};
BohrSet bohr_set(const std::vector<FpVec>& S, const Rat& rho, i64 p, int d,
                 size_t budget = 100000000);

// |{(h1,h2,h3,h4) in H^4 : h1+h2-h3-h4 = h}| via pair-sum tabulation, with a
// quadruple-loop oracle for cross-checks.
long long count_R(const std::vector<FpVec>& H, const FpVec& h, size_t budget = 20000000);
long long count_R_naive(const std::vector<FpVec>& H, const FpVec& h, size_t budget = 20000000);

// Sum of terms {alpha_i . tau(h)} beta_i with alpha_i in ((1/p)Z/Z)^d and
// beta_i in (1/p)Z/Z, stored through their numerators. All arithmetic is in
// exact rationals; a point is admissible only when the value mod Z has
// denominator dividing p.
class AlmostLinearFn {
public:
    // alpha numerators as residue vectors, beta numerators as residues.
    AlmostLinearFn(i64 p, std::vector<std::pair<FpVec, i64>> terms);

    i64 p() const { return p_; }
    int complexity() const { return static_cast<int>(terms_.size()); }

    bool defined_at(const FpVec& h) const;
    Rat frac_value(const FpVec& h) const;  // value in [0,1) with denominator | p
    i64 field_value(const FpVec& h) const;  // iota(p * frac_value)

    struct FreimanZReport {
        bool holds = true;
        long long quads = 0;
        std::array<FpVec, 4> counterexample;
    };
    // xi(h1)+xi(h2) = xi(h3)+xi(h4) mod Z on all additive quadruples of H.
    FreimanZReport check_freiman_property(const std::vector<FpVec>& H,
                                          size_t budget = 20000000) const;

private:
    i64 p_;
    std::vector<std::pair<FpVec, i64>> terms_;
};

// Map HP_d(1)^k -> HP_d(s): sum over multi-indices |i| <= s of
// C_i f_1^{i_1} ... f_k^{i_k} with C_i homogeneous of degree s - |i|.
class SuperPoly {
public:
    SuperPoly(i64 p, int d, int arity, int s);

    i64 p() const { return p_; }
    int d() const { return d_; }
    int arity() const { return arity_; }
    int s() const { return s_; }

    void set_coeff(const std::vector<int>& idx, const Poly& C);
    Poly coeff(const std::vector<int>& idx) const;  // zero if absent
    const std::vector<std::pair<std::vector<int>, Poly>>& coeffs() const { return c_; }

    // Largest |i| with C_i != 0; the zero map reports s (every degree).
    int degree() const;
    bool is_zero() const { return c_.empty(); }
    bool is_symmetric() const;
    bool is_homogeneous() const;  // C_i = 0 away from the top total degree

    Poly eval(const std::vector<Poly>& args) const;

private:
    i64 p_;
    int d_;
    int arity_;
    int s_;
    std::vector<std::pair<std::vector<int>, Poly>> c_;  // sorted by index
};

// All multi-indices of the given arity with |i| <= s, lexicographic.
std::vector<std::vector<int>> multi_indices(int arity, int s);

// Order-2^n Freiman M-homomorphism check: over additive 2^n-tuples from H
// (first half sums to second half), the xi-sums must agree modulo the ideal
// of the first 2^n - 1 tuple entries. Exhaustive for n <= 2 within budget,
// seeded sampling otherwise (n <= 4).
struct FreimanHomReport {
    bool holds = true;
    std::string mode;  // "exhaustive" or "sampled"
    long long tuples_checked = 0;
    std::vector<FpVec> counterexample;  // full 2^n tuple when violated
    uint64_t seed = 0;
    std::string to_json() const;
};
FreimanHomReport is_freiman_hom(const XiMap& xi, const std::vector<FpVec>& H,
                                const QuadForm& M, int s, int n, uint64_t seed = 1,
                                size_t budget = 200000);

// N(s) = (2s+16)(15s+453), the complexity bound used by the linearization
// pipeline; N(0) = 7248, N(1) = 8424.
long long freiman_complexity_bound(int s);

// Forward / tiny-inverse validation of the cocycle-equation lemmas. Forward
// mode builds data in the conclusion's shape and asserts the hypothesis
// congruences; inverse modes re-derive the conclusion by linear solving.
struct CocycleReport {
    std::string lemma;
    std::string mode;  // "forward" or "inverse"
    bool dim_hypothesis = false;
    bool hypothesis_holds = false;
    bool conclusion_holds = false;
    long long checks = 0;
    std::string detail;
};
CocycleReport verify_cocycle_lemmas(const std::string& which, const QuadForm& M, int s,
                                    uint64_t seed = 1, int points = 8);

}  // namespace silab
