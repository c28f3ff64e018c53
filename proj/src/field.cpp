#include "silab/field.hpp"

namespace silab {

bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (i64 q = 3; q * q <= n; q += 2)
        if (n % q == 0) return false;
    return true;
}

Fp::Fp(i64 p) : p_(p) {
    if (p < 3 || p >= (i64{1} << 31))
        throw std::invalid_argument("modulus must be an odd prime < 2^31, got " + std::to_string(p));
    if (!is_prime(p))
        throw std::invalid_argument("modulus is not prime: " + std::to_string(p));
}

i64 Fp::pow(i64 a, i64 e) const {
    a = norm(a);
    i64 r = 1;
    while (e > 0) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

i64 Fp::inv(i64 a) const {
    a = norm(a);
    if (a == 0) throw std::domain_error("division by zero in F_p");
    return pow(a, p_ - 2);
}

FpVec::FpVec(i64 p_, std::vector<i64> coords) : p(p_), c(std::move(coords)) {
    Fp f(p);
    for (auto& x : c) x = f.norm(x);
}

FpVec FpVec::zero(i64 p, int d) {
    FpVec v;
    v.p = p;
    v.c.assign(d, 0);
    return v;
}

FpVec FpVec::unit(i64 p, int d, int i) {
    FpVec v = zero(p, d);
    v.c[i] = 1;
    return v;
}

bool FpVec::is_zero() const {
    for (i64 x : c)
        if (x != 0) return false;
    return true;
}

FpVec add(const FpVec& a, const FpVec& b) {
    require_same_field(a.p, b.p);
    if (a.d() != b.d()) throw_mismatch("vector dimension");
    Fp f(a.p);
    FpVec r = a;
    for (int i = 0; i < a.d(); i++) r.c[i] = f.add(a.c[i], b.c[i]);
    return r;
}

FpVec sub(const FpVec& a, const FpVec& b) {
    require_same_field(a.p, b.p);
    if (a.d() != b.d()) throw_mismatch("vector dimension");
    Fp f(a.p);
    FpVec r = a;
    for (int i = 0; i < a.d(); i++) r.c[i] = f.sub(a.c[i], b.c[i]);
    return r;
}

FpVec scale(i64 s, const FpVec& a) {
    Fp f(a.p);
    s = f.norm(s);
    FpVec r = a;
    for (auto& x : r.c) x = f.mul(s, x);
    return r;
}

i64 dot(const FpVec& a, const FpVec& b) {
    require_same_field(a.p, b.p);
    if (a.d() != b.d()) throw_mismatch("vector dimension");
    Fp f(a.p);
    i64 s = 0;
    for (int i = 0; i < a.d(); i++) s = f.add(s, f.mul(a.c[i], b.c[i]));
    return s;
}

FpMat::FpMat(i64 p_, int r, int c) : p(p_), rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

FpMat FpMat::identity(i64 p, int n) {
    FpMat m(p, n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = 1;
    return m;
}

FpVec FpMat::row(int r) const {
    FpVec v;
    v.p = p;
    v.c.assign(a.begin() + static_cast<size_t>(r) * cols, a.begin() + static_cast<size_t>(r + 1) * cols);
    return v;
}

void FpMat::set_row(int r, const FpVec& v) {
    require_same_field(p, v.p);
    if (v.d() != cols) throw_mismatch("row width");
    std::copy(v.c.begin(), v.c.end(), a.begin() + static_cast<size_t>(r) * cols);
}

FpMat mat_mul(const FpMat& A, const FpMat& B) {
    require_same_field(A.p, B.p);
    if (A.cols != B.rows) throw_mismatch("matrix product shape");
    Fp f(A.p);
    FpMat C(A.p, A.rows, B.cols);
    for (int i = 0; i < A.rows; i++)
        for (int k = 0; k < A.cols; k++) {
            i64 v = A.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < B.cols; j++)
                C.at(i, j) = f.add(C.at(i, j), f.mul(v, B.at(k, j)));
        }
    return C;
}

FpMat transpose(const FpMat& A) {
    FpMat T(A.p, A.cols, A.rows);
    for (int i = 0; i < A.rows; i++)
        for (int j = 0; j < A.cols; j++) T.at(j, i) = A.at(i, j);
    return T;
}

FpVec mat_vec(const FpMat& A, const FpVec& x) {
    require_same_field(A.p, x.p);
    if (A.cols != x.d()) throw_mismatch("matrix-vector shape");
    Fp f(A.p);
    FpVec r = FpVec::zero(A.p, A.rows);
    for (int i = 0; i < A.rows; i++) {
        i64 s = 0;
        for (int j = 0; j < A.cols; j++) s = f.add(s, f.mul(A.at(i, j), x.c[j]));
        r.c[i] = s;
    }
    return r;
}

FpVec vec_mat(const FpVec& x, const FpMat& A) {
    require_same_field(A.p, x.p);
    if (A.rows != x.d()) throw_mismatch("vector-matrix shape");
    Fp f(A.p);
    FpVec r = FpVec::zero(A.p, A.cols);
    for (int j = 0; j < A.cols; j++) {
        i64 s = 0;
        for (int i = 0; i < A.rows; i++) s = f.add(s, f.mul(x.c[i], A.at(i, j)));
        r.c[j] = s;
    }
    return r;
}

void throw_mismatch(const std::string& what) {
    throw std::invalid_argument("dimension mismatch: " + what);
}

}  // namespace silab
