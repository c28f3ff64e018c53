#pragma once

#include <optional>
#include <variant>

#include "silab/field.hpp"

namespace silab {

// Row-reduce A in place; returns pivot column indices. Rows below the rank are
// zeroed but not removed.
std::vector<int> rref_inplace(FpMat& A);

int rank(FpMat A);

// Basis of {x : A x = 0}, returned as rows of a canonical RREF matrix.
FpMat kernel_basis(const FpMat& A);

// Subspace of F_p^d represented by its unique reduced row echelon basis, so
// structural equality is span equality.
class Subspace {
public:
    Subspace() = default;
    Subspace(i64 p, int d);  // trivial subspace {0}

    static Subspace span(i64 p, int d, const std::vector<FpVec>& vectors);
    static Subspace from_rows(const FpMat& rows);  // canonicalizes
    static Subspace full(i64 p, int d);

    i64 p() const { return p_; }
    int ambient_dim() const { return d_; }
    int dim() const { return basis_.rows; }
    const FpMat& basis() const { return basis_; }
    FpVec basis_vector(int i) const { return basis_.row(i); }

    bool contains(const FpVec& v) const;
    bool contains_subspace(const Subspace& w) const;
    // Reduce v modulo the row space (subtract the pivot-matched combination).
    FpVec reduce(const FpVec& v) const;

    bool is_trivial() const { return basis_.rows == 0; }
    bool is_full() const { return basis_.rows == d_; }

    // Deterministic enumeration of all p^dim elements (lexicographic in the
    // coefficient vector). Intended for desk-scale dims only.
    std::vector<FpVec> enumerate() const;

    bool operator==(const Subspace& o) const {
        return p_ == o.p_ && d_ == o.d_ && basis_ == o.basis_;
    }
    bool operator<(const Subspace& o) const;

private:
    i64 p_ = 0;
    int d_ = 0;
    FpMat basis_;  // canonical RREF, no zero rows
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

struct LinSolveResult {
    bool feasible = false;
    FpVec particular;   // one solution of A x = b when feasible
    Subspace kernel;    // solution set = particular + kernel
};

LinSolveResult solve_linear(const FpMat& A, const FpVec& b);

using TupleItem = std::variant<FpVec, Subspace>;

// Linear independence of a tuple of vectors and subspaces: the only
// representation of 0 as a sum of one member from each item is all-zero.
// Convention: the zero vector is dependent with everything; the trivial
// subspace is independent with everything. With `modulo` set, every
// representation of 0 must have all its contributions inside that subspace.
bool is_independent_tuple(const std::vector<TupleItem>& items,
                          const std::optional<Subspace>& modulo = std::nullopt);

}  // namespace silab
