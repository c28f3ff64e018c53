#pragma once

#include <map>
#include <string>

#include "silab/field.hpp"

namespace silab {

// Exponent vector of length d; degree is the exponent sum.
struct Monomial {
    std::vector<int> e;

    int d() const { return static_cast<int>(e.size()); }
    int degree() const;
    static Monomial one(int d) { return Monomial{std::vector<int>(d, 0)}; }
    bool operator==(const Monomial& o) const { return e == o.e; }
};

// Graded lexicographic order: compare by total degree first, then
// lexicographically on the exponent vector. Fixed globally so every
// serialization and basis in the library is reproducible.
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

Monomial mono_mul(const Monomial& a, const Monomial& b);

// All monomials in d variables of exact degree s (resp. degree <= s), listed
// in descending graded-lex order.
std::vector<Monomial> monomials_of_degree(int d, int s);
std::vector<Monomial> monomials_up_to(int d, int s);

// Default cap on polynomial degrees; guards against runaway products.
int poly_degree_cap();
void set_poly_degree_cap(int cap);

// Multivariate polynomial over F_p. Zero coefficients are never stored, so the
// zero polynomial has an empty map. Per the library convention the zero
// polynomial has every degree; degree() returns -1 for it as a sentinel.
class Poly {
public:
    Poly() = default;
    Poly(i64 p, int d);

    static Poly constant(i64 p, int d, i64 c);
    static Poly variable(i64 p, int d, int i);
    // Linear form v . n
    static Poly linear_form(i64 p, const FpVec& v);
    static Poly monomial(i64 p, int d, const Monomial& m, i64 coef);

    i64 p() const { return p_; }
    int d() const { return d_; }
    const std::map<Monomial, i64, GrlexLess>& terms() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    int degree() const;  // -1 for the zero polynomial
    i64 coeff(const Monomial& m) const;
    void set_coeff(const Monomial& m, i64 v);

    Poly homogeneous_component(int s) const;
    // True iff every stored monomial has degree exactly s. The zero polynomial
    // is homogeneous of every degree; for s < 0 only zero qualifies.
    bool is_homogeneous(int s) const;

    i64 eval(const FpVec& n) const;

    bool operator==(const Poly& o) const { return p_ == o.p_ && d_ == o.d_ && c_ == o.c_; }
    bool operator<(const Poly& o) const;

    std::string to_string() const;
    static Poly parse(i64 p, int d, const std::string& text);

private:
    i64 p_ = 0;
    int d_ = 0;
    std::map<Monomial, i64, GrlexLess> c_;
};

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly neg(const Poly& a);
Poly scale(i64 s, const Poly& a);
Poly mul(const Poly& a, const Poly& b);
Poly pow(const Poly& a, int e);
// f(n + h)
Poly shift(const Poly& f, const FpVec& h);
// Restrict f through the affine parametrization t -> t B + c (B is m x d):
// the result is a polynomial in m variables.
Poly compose_affine(const Poly& f, const FpMat& B, const FpVec& c);

// Deterministic point enumeration of F_p^d (odometer, last coordinate fastest).
std::vector<FpVec> enumerate_points(i64 p, int d, size_t budget = 100000000);

// Exact variety by full enumeration.
std::vector<FpVec> variety(const Poly& f, size_t budget = 100000000);

struct ZeroVerdict {
    enum Kind { ZeroStructural, ZeroSampled, Nonzero } kind;
    FpVec witness;          // set when Nonzero
    int trials = 0;         // sampling trials used (0 for structural/enumerated)
    std::string failure_bound;  // "(deg/p)^trials" style bound for sampled zero claims
};

// One-sided polynomial identity test (Schwartz-Zippel style). Requires
// deg(f) < p for the sampling bound to be meaningful.
ZeroVerdict is_zero_by_sampling(const Poly& f, int trials, uint64_t seed);

// Coefficient vector of f with respect to a fixed monomial column list.
FpVec poly_to_coords(const Poly& f, const std::vector<Monomial>& cols);
Poly coords_to_poly(i64 p, int d, const FpVec& coords, const std::vector<Monomial>& cols);

}  // namespace silab
