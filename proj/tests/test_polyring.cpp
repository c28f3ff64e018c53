#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "silab/poly.hpp"
#include "silab/rng.hpp"

using namespace silab;

static Poly random_poly(Rng& rng, i64 p, int d, int maxdeg, int terms) {
    Poly f(p, d);
    auto monos = monomials_up_to(d, maxdeg);
    for (int t = 0; t < terms; t++) {
        const Monomial& m = monos[rng.below(static_cast<i64>(monos.size()))];
        Fp fld(p);
        f.set_coeff(m, fld.add(f.coeff(m), rng.residue(p)));
    }
    return f;
}

TEST_CASE("graded-lex monomial order") {
    GrlexLess less;
    Monomial a{{2, 0, 0}}, b{{1, 1, 0}}, c{{0, 0, 1}};
    CHECK(less(c, b));  // lower degree first
    CHECK(less(b, a));  // same degree: x1^2 > x1 x2
    auto deg2 = monomials_of_degree(3, 2);
    CHECK(deg2.size() == 6);
    CHECK(deg2.front() == a);  // descending order, x1^2 leads
    for (size_t i = 0; i + 1 < deg2.size(); i++) CHECK(less(deg2[i + 1], deg2[i]));
    CHECK(monomials_up_to(3, 2).size() == 10);
}

TEST_CASE("eval basics") {
    i64 p = 7;
    Poly zero(p, 3);
    CHECK(zero.eval(FpVec(p, {1, 2, 3})) == 0);
    Poly x1x2 = mul(Poly::variable(p, 3, 0), Poly::variable(p, 3, 1));
    CHECK(x1x2.eval(FpVec(p, {2, 3, 0})) == 6);
    CHECK(add(x1x2, x1x2).eval(FpVec(p, {2, 3, 0})) == 5);
}

TEST_CASE("eval matches term-by-term oracle") {
    Rng rng(31);
    i64 p = 5;
    int d = 3;
    Fp fld(p);
    for (int trial = 0; trial < 40; trial++) {
        Poly f = random_poly(rng, p, d, 4, 6);
        FpVec n = rng.vec(p, d);
        i64 want = 0;
        for (const auto& [m, c] : f.terms()) {
            i64 t = c;
            for (int i = 0; i < d; i++)
                for (int k = 0; k < m.e[i]; k++) t = fld.mul(t, n.c[i]);
            want = fld.add(want, t);
        }
        CHECK(f.eval(n) == want);
    }
}

TEST_CASE("ring axioms on random triples") {
    Rng rng(32);
    for (i64 p : {3, 5, 7}) {
        for (int trial = 0; trial < 15; trial++) {
            int d = 1 + static_cast<int>(rng.below(3));
            Poly a = random_poly(rng, p, d, 2, 4);
            Poly b = random_poly(rng, p, d, 2, 4);
            Poly c = random_poly(rng, p, d, 2, 4);
            CHECK(add(a, b) == add(b, a));
            CHECK(add(add(a, b), c) == add(a, add(b, c)));
            CHECK(mul(a, b) == mul(b, a));
            CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
            CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
        }
    }
}

TEST_CASE("variety enumeration") {
    i64 p = 5;
    Poly zero(p, 2);
    CHECK(variety(zero).size() == 25);
    CHECK(variety(Poly::variable(p, 2, 0)).size() == 5);
    Poly circle = add(pow(Poly::variable(p, 2, 0), 2), pow(Poly::variable(p, 2, 1), 2));
    CHECK(variety(circle).size() == 9);
    CHECK_THROWS(enumerate_points(5, 20, 1000));
}

TEST_CASE("nonzero variety bound deg * p^(d-1)") {
    Rng rng(33);
    for (i64 p : {5, 7}) {
        for (int trial = 0; trial < 20; trial++) {
            int d = 2 + static_cast<int>(rng.below(2));
            Poly f = random_poly(rng, p, d, 3, 5);
            if (f.is_zero()) continue;
            size_t bound = static_cast<size_t>(f.degree());
            for (int i = 0; i < d - 1; i++) bound *= p;
            CHECK(variety(f).size() <= bound);
        }
    }
}

TEST_CASE("homogeneous decomposition is exact") {
    Rng rng(34);
    Poly f = random_poly(rng, 7, 3, 4, 10);
    Poly rebuilt(7, 3);
    for (int s = 0; s <= 4; s++) {
        Poly comp = f.homogeneous_component(s);
        CHECK(comp.is_homogeneous(s));
        rebuilt = add(rebuilt, comp);
    }
    CHECK(rebuilt == f);
    CHECK(Poly(7, 3).is_homogeneous(-2));
    CHECK(f.homogeneous_component(-1).is_zero());
}

TEST_CASE("zero test verdicts") {
    i64 p = 11;
    Poly z(p, 3);
    CHECK(is_zero_by_sampling(z, 10, 1).kind == ZeroVerdict::ZeroStructural);
    auto v = is_zero_by_sampling(Poly::variable(p, 3, 0), 50, 2);
    CHECK(v.kind == ZeroVerdict::Nonzero);
    CHECK(v.witness.c[0] != 0);
    Rng rng(35);
    for (int trial = 0; trial < 10; trial++) {
        Poly f = random_poly(rng, p, 3, 3, 4);
        if (f.is_zero()) continue;
        auto verdict = is_zero_by_sampling(f, 20, 100 + trial);
        bool truly_zero = variety(f).size() == 11 * 11 * 11;
        CHECK(!truly_zero);
        if (verdict.kind == ZeroVerdict::ZeroSampled) CHECK(!verdict.failure_bound.empty());
    }
    set_poly_degree_cap(20);
    Poly high = pow(Poly::variable(p, 1, 0), 12);
    CHECK_THROWS(is_zero_by_sampling(high, 3, 1));  // deg >= p unsupported
    set_poly_degree_cap(8);
}

TEST_CASE("text round trip is bit exact") {
    Rng rng(36);
    for (int trial = 0; trial < 50; trial++) {
        i64 p = (trial % 2) ? 7 : 11;
        int d = 1 + static_cast<int>(rng.below(4));
        Poly f = random_poly(rng, p, d, 4, 6);
        std::string text = f.to_string();
        Poly g = Poly::parse(p, d, text);
        CHECK(g == f);
        CHECK(g.to_string() == text);
    }
    CHECK(Poly::parse(7, 2, "0").is_zero());
    CHECK(Poly::parse(7, 2, "3*x1^2*x2^1").to_string() == "3*x1^2*x2^1");
    CHECK_THROWS(Poly::parse(7, 2, "3*y1"));
    CHECK_THROWS(Poly::parse(7, 2, ""));
}

TEST_CASE("degree cap enforced") {
    CHECK(poly_degree_cap() == 8);
    CHECK_THROWS(pow(Poly::variable(7, 2, 0), 9));
    set_poly_degree_cap(10);
    CHECK_NOTHROW(pow(Poly::variable(7, 2, 0), 9));
    set_poly_degree_cap(8);
}

TEST_CASE("shift substitutes n+h") {
    i64 p = 7;
    // M(n) = x1^2, shift by e1: (x1+1)^2 = x1^2 + 2 x1 + 1
    Poly f = pow(Poly::variable(p, 2, 0), 2);
    Poly g = shift(f, FpVec(p, {1, 0}));
    Poly want = Poly::parse(p, 2, "1*x1^2+2*x1^1+1");
    CHECK(g == want);
    Rng rng(37);
    for (int trial = 0; trial < 20; trial++) {
        Poly h = random_poly(rng, p, 2, 3, 4);
        FpVec w = rng.vec(p, 2);
        FpVec n = rng.vec(p, 2);
        CHECK(shift(h, w).eval(n) == h.eval(add(n, w)));
    }
}

TEST_CASE("coefficient vectorization round trips") {
    Rng rng(38);
    auto cols = monomials_up_to(3, 3);
    for (int trial = 0; trial < 20; trial++) {
        Poly f = random_poly(rng, 5, 3, 3, 5);
        FpVec v = poly_to_coords(f, cols);
        CHECK(coords_to_poly(5, 3, v, cols) == f);
    }
    Poly outside = pow(Poly::variable(5, 3, 0), 4);
    CHECK_THROWS(poly_to_coords(outside, cols));
}
