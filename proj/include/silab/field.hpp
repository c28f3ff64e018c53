#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace silab {

using i64 = long long;

// Trial-division primality check; intended for the small odd primes this
// library supports, not for cryptographic sizes.
bool is_prime(i64 n);

// Arithmetic context for F_p. Residues are plain machine integers in [0, p);
// the modulus travels with containers, not with each scalar.
class Fp {
public:
    explicit Fp(i64 p);

    i64 p() const { return p_; }

    i64 norm(i64 x) const {
        x %= p_;
        return x < 0 ? x + p_ : x;
    }
    i64 add(i64 a, i64 b) const { return (a + b) % p_; }
    i64 sub(i64 a, i64 b) const { return norm(a - b); }
    i64 mul(i64 a, i64 b) const { return (a * b) % p_; }
    i64 neg(i64 a) const { return a == 0 ? 0 : p_ - a; }
    i64 pow(i64 a, i64 e) const;
    i64 inv(i64 a) const;

    bool operator==(const Fp& o) const { return p_ == o.p_; }

private:
    i64 p_;
};

// Vector over F_p. All coordinates share the container's modulus.
struct FpVec {
    i64 p = 0;
    std::vector<i64> c;

    FpVec() = default;
    FpVec(i64 p, std::vector<i64> coords);
    static FpVec zero(i64 p, int d);
    static FpVec unit(i64 p, int d, int i);

    int d() const { return static_cast<int>(c.size()); }
    bool is_zero() const;
    bool operator==(const FpVec& o) const { return p == o.p && c == o.c; }
    bool operator<(const FpVec& o) const { return c < o.c; }
};

FpVec add(const FpVec& a, const FpVec& b);
FpVec sub(const FpVec& a, const FpVec& b);
FpVec scale(i64 s, const FpVec& a);
i64 dot(const FpVec& a, const FpVec& b);

// Dense row-major matrix over F_p.
struct FpMat {
    i64 p = 0;
    int rows = 0;
    int cols = 0;
    std::vector<i64> a;

    FpMat() = default;
    FpMat(i64 p, int rows, int cols);
    static FpMat identity(i64 p, int n);

    i64& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    i64 at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
    FpVec row(int r) const;
    void set_row(int r, const FpVec& v);
    bool operator==(const FpMat& o) const {
        return p == o.p && rows == o.rows && cols == o.cols && a == o.a;
    }
};

FpMat mat_mul(const FpMat& A, const FpMat& B);
FpMat transpose(const FpMat& A);
FpVec mat_vec(const FpMat& A, const FpVec& x);  // A * x (x as column)
FpVec vec_mat(const FpVec& x, const FpMat& A);  // x * A (x as row)

[[noreturn]] void throw_mismatch(const std::string& what);

inline void require_same_field(i64 p, i64 q) {
    if (p != q) throw_mismatch("mixed moduli");
}

}  // namespace silab
