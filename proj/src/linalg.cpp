#include "silab/linalg.hpp"

#include <algorithm>

namespace silab {

std::vector<int> rref_inplace(FpMat& A) {
    Fp f(A.p);
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < A.cols && r < A.rows; c++) {
        int sel = -1;
        for (int i = r; i < A.rows; i++)
            if (A.at(i, c) != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        for (int j = 0; j < A.cols; j++) std::swap(A.at(sel, j), A.at(r, j));
        i64 inv = f.inv(A.at(r, c));
        for (int j = c; j < A.cols; j++) A.at(r, j) = f.mul(A.at(r, j), inv);
        for (int i = 0; i < A.rows; i++) {
            if (i == r || A.at(i, c) == 0) continue;
            i64 m = A.at(i, c);
            for (int j = c; j < A.cols; j++)
                A.at(i, j) = f.sub(A.at(i, j), f.mul(m, A.at(r, j)));
        }
        pivots.push_back(c);
        r++;
    }
    return pivots;
}

int rank(FpMat A) { return static_cast<int>(rref_inplace(A).size()); }

FpMat kernel_basis(const FpMat& A) {
    FpMat R = A;
    std::vector<int> pivots = rref_inplace(R);
    Fp f(A.p);
    std::vector<bool> is_pivot(A.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < A.cols; c++)
        if (!is_pivot[c]) free_cols.push_back(c);
    FpMat K(A.p, static_cast<int>(free_cols.size()), A.cols);
    for (size_t k = 0; k < free_cols.size(); k++) {
        int fc = free_cols[k];
        K.at(static_cast<int>(k), fc) = 1;
        for (size_t i = 0; i < pivots.size(); i++)
            K.at(static_cast<int>(k), pivots[i]) = f.neg(R.at(static_cast<int>(i), fc));
    }
    // Already in echelon shape up to row order; canonicalize anyway.
    rref_inplace(K);
    return K;
}

Subspace::Subspace(i64 p, int d) : p_(p), d_(d), basis_(p, 0, d) { Fp check(p); }

Subspace Subspace::from_rows(const FpMat& rows) {
    FpMat R = rows;
    std::vector<int> pivots = rref_inplace(R);
    Subspace s(rows.p, rows.cols);
    FpMat B(rows.p, static_cast<int>(pivots.size()), rows.cols);
    for (size_t i = 0; i < pivots.size(); i++)
        for (int j = 0; j < rows.cols; j++) B.at(static_cast<int>(i), j) = R.at(static_cast<int>(i), j);
    s.basis_ = B;
    return s;
}

Subspace Subspace::span(i64 p, int d, const std::vector<FpVec>& vectors) {
    FpMat rows(p, static_cast<int>(vectors.size()), d);
    for (size_t i = 0; i < vectors.size(); i++) {
        require_same_field(p, vectors[i].p);
        if (vectors[i].d() != d) throw_mismatch("span ambient dimension");
        rows.set_row(static_cast<int>(i), vectors[i]);
    }
    return from_rows(rows);
}

Subspace Subspace::full(i64 p, int d) { return from_rows(FpMat::identity(p, d)); }

FpVec Subspace::reduce(const FpVec& v) const {
    require_same_field(p_, v.p);
    if (v.d() != d_) throw_mismatch("reduce ambient dimension");
    Fp f(p_);
    FpVec r = v;
    for (int i = 0; i < basis_.rows; i++) {
        int piv = 0;
        while (piv < d_ && basis_.at(i, piv) == 0) piv++;
        if (piv == d_) continue;
        i64 m = r.c[piv];
        if (m == 0) continue;
        for (int j = piv; j < d_; j++) r.c[j] = f.sub(r.c[j], f.mul(m, basis_.at(i, j)));
    }
    return r;
}

bool Subspace::contains(const FpVec& v) const { return reduce(v).is_zero(); }

bool Subspace::contains_subspace(const Subspace& w) const {
    for (int i = 0; i < w.dim(); i++)
        if (!contains(w.basis_vector(i))) return false;
    return true;
}

std::vector<FpVec> Subspace::enumerate() const {
    std::vector<FpVec> out;
    int r = dim();
    size_t total = 1;
    for (int i = 0; i < r; i++) total *= static_cast<size_t>(p_);
    out.reserve(total);
    Fp f(p_);
    std::vector<i64> coef(r, 0);
    for (size_t idx = 0; idx < total; idx++) {
        FpVec v = FpVec::zero(p_, d_);
        for (int i = 0; i < r; i++) {
            if (coef[i] == 0) continue;
            for (int j = 0; j < d_; j++)
                v.c[j] = f.add(v.c[j], f.mul(coef[i], basis_.at(i, j)));
        }
        out.push_back(std::move(v));
        for (int i = r - 1; i >= 0; i--) {
            if (++coef[i] < p_) break;
            coef[i] = 0;
        }
    }
    return out;
}

bool Subspace::operator<(const Subspace& o) const {
    if (basis_.rows != o.basis_.rows) return basis_.rows < o.basis_.rows;
    return basis_.a < o.basis_.a;
}

Subspace sum(const Subspace& a, const Subspace& b) {
    require_same_field(a.p(), b.p());
    if (a.ambient_dim() != b.ambient_dim()) throw_mismatch("subspace sum ambient");
    FpMat rows(a.p(), a.dim() + b.dim(), a.ambient_dim());
    for (int i = 0; i < a.dim(); i++) rows.set_row(i, a.basis_vector(i));
    for (int i = 0; i < b.dim(); i++) rows.set_row(a.dim() + i, b.basis_vector(i));
    return Subspace::from_rows(rows);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    require_same_field(a.p(), b.p());
    if (a.ambient_dim() != b.ambient_dim()) throw_mismatch("subspace intersect ambient");
    int d = a.ambient_dim();
    int ra = a.dim(), rb = b.dim();
    // Solve B_a^T x = B_b^T y; columns are basis vectors of a then b.
    FpMat A(a.p(), d, ra + rb);
    Fp f(a.p());
    for (int i = 0; i < ra; i++)
        for (int j = 0; j < d; j++) A.at(j, i) = a.basis().at(i, j);
    for (int i = 0; i < rb; i++)
        for (int j = 0; j < d; j++) A.at(j, ra + i) = f.neg(b.basis().at(i, j));
    FpMat K = kernel_basis(A);
    std::vector<FpVec> gens;
    for (int k = 0; k < K.rows; k++) {
        FpVec v = FpVec::zero(a.p(), d);
        for (int i = 0; i < ra; i++) {
            i64 coef = K.at(k, i);
            if (coef == 0) continue;
            for (int j = 0; j < d; j++) v.c[j] = f.add(v.c[j], f.mul(coef, a.basis().at(i, j)));
        }
        gens.push_back(std::move(v));
    }
    return Subspace::span(a.p(), d, gens);
}

LinSolveResult solve_linear(const FpMat& A, const FpVec& b) {
    require_same_field(A.p, b.p);
    if (A.rows != b.d()) throw_mismatch("solve shape");
    FpMat aug(A.p, A.rows, A.cols + 1);
    for (int i = 0; i < A.rows; i++) {
        for (int j = 0; j < A.cols; j++) aug.at(i, j) = A.at(i, j);
        aug.at(i, A.cols) = b.c[i];
    }
    std::vector<int> pivots = rref_inplace(aug);
    LinSolveResult res;
    for (int c : pivots)
        if (c == A.cols) return res;  // inconsistent row 0 ... 0 | 1
    res.feasible = true;
    res.particular = FpVec::zero(A.p, A.cols);
    for (size_t i = 0; i < pivots.size(); i++)
        res.particular.c[pivots[i]] = aug.at(static_cast<int>(i), A.cols);
    res.kernel = Subspace::from_rows(kernel_basis(A));
    return res;
}

bool is_independent_tuple(const std::vector<TupleItem>& items,
                          const std::optional<Subspace>& modulo) {
    if (items.empty()) return true;
    i64 p = 0;
    int d = -1;
    auto note = [&](i64 ip, int id) {
        if (p == 0) {
            p = ip;
            d = id;
        } else {
            require_same_field(p, ip);
            if (d != id) throw_mismatch("tuple ambient dimension");
        }
    };
    for (const auto& it : items) {
        if (std::holds_alternative<FpVec>(it)) {
            const auto& v = std::get<FpVec>(it);
            note(v.p, v.d());
        } else {
            const auto& s = std::get<Subspace>(it);
            note(s.p(), s.ambient_dim());
        }
    }
    // Columns: one per vector item, dim(S) per subspace item.
    std::vector<std::pair<int, int>> blocks;  // (start col, ncols) per item
    int m = 0;
    for (const auto& it : items) {
        int w = std::holds_alternative<FpVec>(it) ? 1 : std::get<Subspace>(it).dim();
        blocks.push_back({m, w});
        m += w;
    }
    FpMat A(p, d, m);
    for (size_t t = 0; t < items.size(); t++) {
        int base = blocks[t].first;
        if (std::holds_alternative<FpVec>(items[t])) {
            const auto& v = std::get<FpVec>(items[t]);
            for (int j = 0; j < d; j++) A.at(j, base) = v.c[j];
        } else {
            const auto& s = std::get<Subspace>(items[t]);
            for (int i = 0; i < s.dim(); i++)
                for (int j = 0; j < d; j++) A.at(j, base + i) = s.basis().at(i, j);
        }
    }
    FpMat K = kernel_basis(A);
    if (!modulo) return K.rows == 0;
    Fp f(p);
    for (int k = 0; k < K.rows; k++) {
        for (size_t t = 0; t < items.size(); t++) {
            FpVec contrib = FpVec::zero(p, d);
            int base = blocks[t].first, w = blocks[t].second;
            if (std::holds_alternative<FpVec>(items[t])) {
                contrib = scale(K.at(k, base), std::get<FpVec>(items[t]));
            } else {
                const auto& s = std::get<Subspace>(items[t]);
                for (int i = 0; i < w; i++) {
                    i64 coef = K.at(k, base + i);
                    if (coef == 0) continue;
                    for (int j = 0; j < d; j++)
                        contrib.c[j] = f.add(contrib.c[j], f.mul(coef, s.basis().at(i, j)));
                }
            }
            if (!modulo->contains(contrib)) return false;
        }
    }
    return true;
}

}  // namespace silab
