#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "silab/quadform.hpp"
#include "silab/rng.hpp"

using namespace silab;

static QuadForm random_form(Rng& rng, i64 p, int d, bool homogeneous = true) {
    FpMat A(p, d, d);
    for (int i = 0; i < d; i++)
        for (int j = i; j < d; j++) {
            i64 x = rng.residue(p);
            A.at(i, j) = x;
            A.at(j, i) = x;
        }
    FpVec u = homogeneous ? FpVec::zero(p, d) : rng.vec(p, d);
    i64 v = homogeneous ? 0 : rng.residue(p);
    return QuadForm(p, A, u, v);
}

static QuadForm random_nondeg(Rng& rng, i64 p, int d) {
    for (;;) {
        QuadForm M = random_form(rng, p, d);
        if (M.non_degenerate()) return M;
    }
}

TEST_CASE("construction validation") {
    FpMat bad(7, 2, 2);
    bad.at(0, 1) = 1;  // not symmetric
    CHECK_THROWS(QuadForm(7, bad, FpVec::zero(7, 2), 0));
    CHECK_THROWS(QuadForm::dot_self(2, 3));  // odd primes only
    CHECK_THROWS(QuadForm::dot_self(9, 3));
    CHECK_NOTHROW(QuadForm::dot_self(3, 3));
}

TEST_CASE("rank of the form") {
    CHECK(QuadForm::dot_self(7, 4).rank_of_form() == 4);
    CHECK(QuadForm::dot_self(7, 4).non_degenerate());
    CHECK(QuadForm(5, FpMat(5, 3, 3), FpVec::zero(5, 3), 0).rank_of_form() == 0);
    CHECK(QuadForm::diagonal(5, {1, 1, 0}).rank_of_form() == 2);
    CHECK_FALSE(QuadForm::diagonal(5, {1, 1, 0}).non_degenerate());
}

TEST_CASE("evaluation agrees with the polynomial view") {
    Rng rng(41);
    for (int trial = 0; trial < 30; trial++) {
        i64 p = (trial % 2) ? 7 : 11;
        int d = 2 + static_cast<int>(rng.below(3));
        QuadForm M = random_form(rng, p, d, false);
        Poly f = M.as_poly();
        for (int probe = 0; probe < 10; probe++) {
            FpVec n = rng.vec(p, d);
            CHECK(M.eval(n) == f.eval(n));
        }
    }
}

TEST_CASE("translate matches shifted evaluation") {
    Rng rng(42);
    i64 p = 7;
    for (int trial = 0; trial < 20; trial++) {
        QuadForm M = random_form(rng, p, 4, false);
        FpVec h = rng.vec(p, 4);
        QuadForm T = M.translate(h);
        for (int probe = 0; probe < 10; probe++) {
            FpVec n = rng.vec(p, 4);
            CHECK(T.eval(n) == M.eval(add(n, h)));
        }
    }
}

TEST_CASE("generator form versus difference form") {
    Rng rng(43);
    i64 p = 11;
    int d = 4;
    for (int trial = 0; trial < 20; trial++) {
        QuadForm M = random_form(rng, p, d, false);
        FpVec h = rng.vec(p, d);
        Poly gen = M.gen_linear(h);
        CHECK(gen.is_homogeneous(1));
        // M(n+h) - M(n) = 2(hA).n + (hA).h + u.h
        Fp fld(p);
        FpVec hA = vec_mat(h, M.A());
        Poly want = add(scale(2, gen),
                        Poly::constant(p, d, fld.add(dot(hA, h), dot(M.u(), h))));
        CHECK(M.diff_form(h) == want);
        // the two differ exactly by the constant M(h) - M(0) for homogeneous M
        if (M.is_homogeneous()) {
            Poly delta = sub(M.diff_form(h), scale(2, gen));
            CHECK(delta == Poly::constant(p, d, M.eval(h)));
        }
    }
}

TEST_CASE("perp coordinate examples") {
    i64 p = 7;
    int d = 4;
    QuadForm M = QuadForm::dot_self(p, d);
    CHECK(perp(M, Subspace(p, d)) == Subspace::full(p, d));
    Subspace e1 = Subspace::span(p, d, {FpVec::unit(p, d, 0)});
    Subspace want = Subspace::span(
        p, d, {FpVec::unit(p, d, 1), FpVec::unit(p, d, 2), FpVec::unit(p, d, 3)});
    CHECK(perp(M, e1) == want);
}

TEST_CASE("perp matches pointwise orthogonality oracle") {
    Rng rng(44);
    i64 p = 5;
    int d = 4;
    auto points = enumerate_points(p, d);
    for (int trial = 0; trial < 15; trial++) {
        QuadForm M = random_form(rng, p, d);
        Subspace V = rng.subspace(p, d, 1 + static_cast<int>(rng.below(3)));
        Subspace P = perp(M, V);
        std::vector<FpVec> brute;
        for (const auto& n : points) {
            bool ortho = true;
            for (int i = 0; i < V.dim() && ortho; i++)
                ortho = dot(vec_mat(V.basis_vector(i), M.A()), n) == 0;
            if (ortho) brute.push_back(n);
        }
        Subspace bruteSpan = Subspace::span(p, d, brute);
        CHECK(P == bruteSpan);
        size_t sz = 1;
        for (int i = 0; i < P.dim(); i++) sz *= p;
        CHECK(brute.size() == sz);  // the orthogonal set is exactly a subspace
        CHECK(is_isotropic(M, V) == (intersect(V, P).dim() > 0));
    }
}

TEST_CASE("restricted rank basics and parametrization independence") {
    Rng rng(45);
    i64 p = 7;
    int d = 5;
    for (int trial = 0; trial < 20; trial++) {
        QuadForm M = random_nondeg(rng, p, d);
        FpVec c = rng.vec(p, d);
        CHECK(restricted_rank(M, Subspace::full(p, d), c) == d);
        CHECK(restricted_rank(M, Subspace(p, d), c) == 0);
        Subspace V = rng.subspace(p, d, 1 + static_cast<int>(rng.below(4)));
        int r1 = restricted_rank(M, V, c);
        CHECK(r1 == restricted_rank_closed_form(M, V));
        CHECK(r1 == restricted_rank(M, V, FpVec::zero(p, d)));  // c-independent
        // an alternative parametrization C.B of V gives the same rank
        int m = V.dim();
        FpMat C(p, m, m);
        do {
            for (auto& x : C.a) x = rng.residue(p);
        } while (rank(C) != m);
        FpMat B2 = mat_mul(C, V.basis());
        CHECK(rank(mat_mul(mat_mul(B2, M.A()), transpose(B2))) == r1);
    }
}

TEST_CASE("isotropy dimension bound dim(V cap perp) <= min{d-rank+r, d-r}") {
    Rng rng(46);
    for (i64 p : {5, 7}) {
        for (int trial = 0; trial < 40; trial++) {
            int d = 3 + static_cast<int>(rng.below(3));
            QuadForm M = random_form(rng, p, d);
            int dimV = 1 + static_cast<int>(rng.below(d));
            Subspace V = rng.subspace(p, d, dimV);
            int r = d - dimV;
            int iso = intersect(V, perp(M, V)).dim();
            CHECK(iso <= std::min(d - M.rank_of_form() + r, d - r));
        }
    }
}

TEST_CASE("restricted rank window and non-isotropy criterion") {
    Rng rng(47);
    for (i64 p : {5, 7}) {
        for (int trial = 0; trial < 40; trial++) {
            int d = 3 + static_cast<int>(rng.below(4));  // d <= 6
            QuadForm M = random_nondeg(rng, p, d);
            int dimV = 1 + static_cast<int>(rng.below(d));
            Subspace V = rng.subspace(p, d, dimV);
            int r = d - dimV;
            FpVec c = rng.vec(p, d);
            int rr = restricted_rank(M, V, c);
            CHECK(rr >= std::max(0, M.rank_of_form() - 2 * r));
            CHECK(rr <= d - r);
            CHECK((rr == d - r) == !is_isotropic(M, V));
        }
    }
}

TEST_CASE("rank after cutting by a second perp") {
    Rng rng(48);
    i64 p = 5;
    int d = 6;
    int hit = 0;
    for (int trial = 0; trial < 200 && hit < 25; trial++) {
        QuadForm M = random_nondeg(rng, p, d);
        int dimV = 1 + static_cast<int>(rng.below(3));
        int dimW = 1 + static_cast<int>(rng.below(2));
        Subspace V = rng.subspace(p, d, dimV);
        Subspace W = rng.subspace(p, d, dimW);
        int r = d - dimV, r2 = d - dimW;
        (void)r2;
        // hypothesis: M restricted to V^perp has full expected rank d - r
        if (restricted_rank(M, perp(M, V), FpVec::zero(p, d)) != d - r) continue;
        hit++;
        Subspace VW = perp(M, sum(V, W));
        int got = restricted_rank(M, VW, FpVec::zero(p, d));
        CHECK(got >= d - r - 2 * dimW);
    }
    CHECK(hit >= 25);
}

TEST_CASE("affine variety counts") {
    i64 p = 5;
    QuadForm zero(p, FpMat(p, 3, 3), FpVec::zero(p, 3), 0);
    Subspace plane = Subspace::span(p, 3, {FpVec::unit(p, 3, 0), FpVec::unit(p, 3, 1)});
    auto z = count_variety_affine(zero, plane, FpVec::zero(p, 3));
    CHECK(z.count == 25);  // the zero form vanishes everywhere

    QuadForm M = QuadForm::dot_self(p, 4);
    auto full = count_variety_affine(M, Subspace::full(p, 4), FpVec::zero(p, 4));
    CHECK(full.main_term == 125);
    CHECK(std::llabs(full.count - 125) <= 25);  // p^{d-1} +- p^{d/2}

    CHECK_THROWS(count_variety_affine(M, Subspace(p, 4), FpVec::zero(p, 4)));
    CHECK_THROWS(count_variety_affine(M, Subspace::full(p, 4), FpVec::zero(p, 4), 10));
}

TEST_CASE("affine counts on non-isotropic hyperplanes stay near the main term") {
    Rng rng(49);
    i64 p = 7;
    int d = 5;
    int done = 0;
    for (int trial = 0; trial < 100 && done < 10; trial++) {
        QuadForm M = random_nondeg(rng, p, d);
        Subspace V = rng.subspace(p, d, 4);
        if (is_isotropic(M, V)) continue;
        done++;
        for (int cs = 0; cs < 2; cs++) {
            FpVec c = cs == 0 ? FpVec::zero(p, d) : rng.vec(p, d);
            auto rep = count_variety_affine(M, V, c);
            CHECK(rep.codim == 1);
            // deviation <= 2 p^{-1/2}
            double dev = std::fabs(static_cast<double>(rep.count - rep.main_term)) /
                         static_cast<double>(rep.main_term);
            CHECK(dev <= 2.0 / std::sqrt(static_cast<double>(p)));
        }
    }
    CHECK(done == 10);
}

TEST_CASE("common variety counts") {
    i64 p = 7;
    int d = 5;
    QuadForm M = QuadForm::dot_self(p, d);
    auto r0 = count_common_variety(M, {});
    CHECK(r0.r == 0);
    CHECK(r0.count == static_cast<long long>(variety(M.as_poly()).size()));

    auto r1 = count_common_variety(M, {FpVec::unit(p, d, 0)});
    CHECK(r1.hs_independent);
    CHECK(r1.estimate_applies);
    CHECK(r1.main_term == 343);
    CHECK(std::fabs(static_cast<double>(r1.count) - 343.0) <= std::pow(7.0, 2.5));

    FpVec h1 = FpVec::unit(p, d, 0);
    auto dep = count_common_variety(M, {h1, scale(2, h1)});
    CHECK_FALSE(dep.hs_independent);
    CHECK_FALSE(dep.estimate_applies);
    CHECK(dep.count >= 0);

    // brute-force oracle on a small instance
    QuadForm S = QuadForm::dot_self(5, 3);
    std::vector<FpVec> hs = {FpVec::unit(5, 3, 1)};
    auto rep = count_common_variety(S, hs);
    long long brute = 0;
    for (const auto& n : enumerate_points(5, 3))
        if (S.eval(n) == 0 && S.eval(add(n, hs[0])) == 0) brute++;
    CHECK(rep.count == brute);
}

TEST_CASE("isotropic tuple conventions and exact fraction") {
    i64 p = 5;
    int d = 4;
    QuadForm M = QuadForm::dot_self(p, d);
    CHECK(is_isotropic_tuple(M, {FpVec::zero(p, d)}));
    CHECK(is_isotropic_tuple(M, {FpVec::unit(p, d, 0), FpVec::zero(p, d)}));

    auto rep = isotropic_tuple_fraction(M, 1, 0, 1);
    CHECK(rep.exact);
    CHECK(rep.total == 625);
    // oracle: zero tuple plus nonzero h with (hA).h = 0
    long long brute = 0;
    for (const auto& h : enumerate_points(p, d))
        if (h.is_zero() || dot(vec_mat(h, M.A()), h) == 0) brute++;
    CHECK(rep.isotropic == brute);
}

TEST_CASE("sampled pair-isotropy fraction decays like 1/p") {
    int d = 4;
    for (i64 p : {5, 7, 11}) {
        Rng rng(50 + p);
        QuadForm M = random_nondeg(rng, p, d);
        auto rep = isotropic_tuple_fraction(M, 2, 4000, 1234 + static_cast<uint64_t>(p), 100000);
        CHECK_FALSE(rep.exact);
        double frac = static_cast<double>(rep.isotropic) / static_cast<double>(rep.total);
        CHECK(frac <= 4.0 / static_cast<double>(p));
    }
}

TEST_CASE("json round trip") {
    Rng rng(51);
    for (int trial = 0; trial < 10; trial++) {
        QuadForm M = random_form(rng, 11, 3, false);
        QuadForm back = quadform_from_json(quadform_to_json(M));
        CHECK(back == M);
        CHECK(quadform_to_json(back) == quadform_to_json(M));
    }
    CHECK_THROWS(quadform_from_json("{\"p\":7,\"d\":2,\"A\":[1,0,0],\"u\":[0,0],\"v\":0}"));
}
