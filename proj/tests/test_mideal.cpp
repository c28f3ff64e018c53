#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "silab/mideal.hpp"
#include "silab/rng.hpp"

using namespace silab;

static QuadForm random_nondeg(Rng& rng, i64 p, int d) {
    for (;;) {
        FpMat A(p, d, d);
        for (int i = 0; i < d; i++)
            for (int j = i; j < d; j++) {
                i64 x = rng.residue(p);
                A.at(i, j) = x;
                A.at(j, i) = x;
            }
        QuadForm M(p, A, FpVec::zero(p, d), 0);
        if (M.non_degenerate()) return M;
    }
}

static Poly random_poly(Rng& rng, i64 p, int d, int maxdeg, int terms) {
    Poly f(p, d);
    auto monos = monomials_up_to(d, maxdeg);
    if (monos.empty()) return f;
    Fp fld(p);
    for (int t = 0; t < terms; t++) {
        const Monomial& m = monos[rng.below(static_cast<i64>(monos.size()))];
        f.set_coeff(m, fld.add(f.coeff(m), rng.residue(p)));
    }
    return f;
}

// A random ideal member of degree <= s, built from explicit multipliers.
static Poly random_member(Rng& rng, const MIdeal& I, int s, GenConvention conv) {
    Poly f = mul(I.M().as_poly(), random_poly(rng, I.p(), I.d(), s - 2, 3));
    for (int i = 0; i < I.V().dim(); i++)
        f = add(f, mul(I.generator(i, conv), random_poly(rng, I.p(), I.d(), s - 1, 3)));
    return f;
}

TEST_CASE("construction requires homogeneous form") {
    i64 p = 7;
    CHECK_THROWS(MIdeal(QuadForm(p, FpMat::identity(p, 3), FpVec::unit(p, 3, 0), 0),
                        Subspace(p, 3)));
    CHECK_NOTHROW(MIdeal(QuadForm::dot_self(p, 3), Subspace(p, 3)));
}

TEST_CASE("trivial subspace at degree one has empty graded basis") {
    i64 p = 11;
    int d = 5;
    MIdeal I(QuadForm::dot_self(p, d), Subspace(p, d));
    auto gb = graded_basis(I, 1);
    CHECK(gb->rank() == 0);
    CHECK(contains(I, Poly(p, d), 1).member);
    CHECK_FALSE(contains(I, Poly::variable(p, d, 0), 1).member);
}

TEST_CASE("degree-one slice of a line ideal is the matching linear form") {
    i64 p = 11;
    int d = 7;
    MIdeal I(QuadForm::dot_self(p, d),
             Subspace::span(p, d, {FpVec::unit(p, d, 0)}));
    auto gb = graded_basis(I, 1);
    REQUIRE(gb->rank() == 1);
    CHECK(coords_to_poly(p, d, gb->rows.row(0), gb->cols) == Poly::variable(p, d, 0));
    CHECK_FALSE(contains(I, Poly::variable(p, d, 1), 1).member);
    for (i64 c = 1; c < p; c++)
        CHECK(contains(I, scale(c, Poly::variable(p, d, 0)), 1).member);
}

TEST_CASE("degree-two slice contains the form and the pivot cross terms") {
    i64 p = 11;
    int d = 5;
    QuadForm M = QuadForm::dot_self(p, d);
    MIdeal I(M, Subspace::span(p, d, {FpVec::unit(p, d, 0)}));
    auto gb = graded_basis(I, 2);
    CHECK(gb->spans(poly_to_coords(M.as_poly(), gb->cols)));
    for (int j = 0; j < d; j++) {
        Poly cross = mul(Poly::variable(p, d, 0), Poly::variable(p, d, j));
        CHECK(gb->spans(poly_to_coords(cross, gb->cols)));
        CHECK(vanishes_on_zero_set(I, cross));
    }
    CHECK_FALSE(gb->spans(poly_to_coords(mul(Poly::variable(p, d, 1), Poly::variable(p, d, 2)),
                                         gb->cols)));
}

TEST_CASE("constructed member carries the expected certificate") {
    i64 p = 11;
    int d = 5;
    QuadForm M = QuadForm::dot_self(p, d);
    MIdeal I(M, Subspace::span(p, d, {FpVec::unit(p, d, 0)}));
    for (GenConvention conv : {GenConvention::PairingForm, GenConvention::DifferenceForm}) {
        Poly f = add(mul(M.as_poly(), Poly::variable(p, d, 2)),
                     mul(I.generator(0, conv), pow(Poly::variable(p, d, 1), 2)));
        auto res = contains(I, f, 3, conv);
        REQUIRE(res.member);
        // certificate recombines exactly (library re-verifies internally too)
        Poly rebuilt = add(mul(M.as_poly(), res.P0), mul(I.generator(0, conv), res.Pi[0]));
        CHECK(rebuilt == f);
        CHECK(res.P0.degree() <= 1);
        CHECK(res.Pi[0].degree() <= 2);
    }
}

TEST_CASE("decompose basics: the form itself and a single generator product") {
    i64 p = 7;
    int d = 5;
    QuadForm M = QuadForm::dot_self(p, d);
    // V trivial: the only generator is M, so the multiplier is forced.
    MIdeal J0(M, Subspace(p, d));
    auto r0 = contains(J0, M.as_poly(), 2);
    REQUIRE(r0.member);
    CHECK(r0.P0 == Poly::constant(p, d, 1));

    MIdeal I(M, Subspace::span(p, d, {FpVec::unit(p, d, 0)}));
    Poly f = mul(I.generator(0, GenConvention::PairingForm), Poly::variable(p, d, 1));
    auto r1 = contains(I, f, 2);
    REQUIRE(r1.member);
    Poly rebuilt = add(mul(M.as_poly(), r1.P0),
                       mul(I.generator(0, GenConvention::PairingForm), r1.Pi[0]));
    CHECK(rebuilt == f);
}

TEST_CASE("random members round trip with degree-bounded multipliers") {
    Rng rng(61);
    i64 p = 7;
    int d = 5;
    for (int trial = 0; trial < 30; trial++) {
        QuadForm M = random_nondeg(rng, p, d);
        MIdeal I(M, rng.subspace(p, d, 1 + static_cast<int>(rng.below(2))));
        int s = 2 + static_cast<int>(rng.below(2));
        GenConvention conv =
            trial % 2 ? GenConvention::DifferenceForm : GenConvention::PairingForm;
        Poly f = random_member(rng, I, s, conv);
        auto res = contains(I, f, s, conv);
        REQUIRE(res.member);
        CHECK(res.P0.degree() <= s - 2);
        for (const auto& Pi : res.Pi) CHECK(Pi.degree() <= s - 1);
    }
}

TEST_CASE("sum law and monotonicity of graded bases") {
    Rng rng(62);
    i64 p = 7;
    int d = 5;
    for (int trial = 0; trial < 15; trial++) {
        QuadForm M = random_nondeg(rng, p, d);
        Subspace V = rng.subspace(p, d, 1);
        Subspace W = rng.subspace(p, d, 1 + static_cast<int>(rng.below(2)));
        MIdeal IV(M, V), IW(M, W);
        MIdeal IS = sum(IV, IW);
        CHECK(IS.V() == sum(V, W));
        int s = 2;
        auto gV = graded_basis(IV, s);
        auto gW = graded_basis(IW, s);
        auto gS = graded_basis(IS, s);
        // row space of the union of generators equals that of the sum ideal
        FpMat stacked(p, gV->raw.rows + gW->raw.rows, gV->raw.cols);
        for (int r = 0; r < gV->raw.rows; r++) stacked.set_row(r, gV->raw.row(r));
        for (int r = 0; r < gW->raw.rows; r++) stacked.set_row(gV->raw.rows + r, gW->raw.row(r));
        CHECK(Subspace::from_rows(stacked).basis() == gS->rows);
        // inclusion: every row of the smaller ideal lies in the bigger span
        for (int r = 0; r < gV->rows.rows; r++) CHECK(gS->spans(gV->rows.row(r)));
    }
}

TEST_CASE("generator conventions agree exactly on isotropic bases") {
    i64 p = 5;
    int d = 6;
    QuadForm M = QuadForm::dot_self(p, d);
    // non-isotropic h = e1: the difference form carries the constant M(e1) = 1
    MIdeal I1(M, Subspace::span(p, d, {FpVec::unit(p, d, 0)}));
    auto pair1 = graded_basis(I1, 1, GenConvention::PairingForm);
    auto diff1 = graded_basis(I1, 1, GenConvention::DifferenceForm);
    CHECK_FALSE(pair1->rows == diff1->rows);
    CHECK_FALSE(pair1->spans(poly_to_coords(I1.generator(0, GenConvention::DifferenceForm),
                                            pair1->cols)));
    // isotropic h = (1,2,0,...): M(h) = 1+4 = 0 mod 5, so the spans coincide
    FpVec h(p, {1, 2, 0, 0, 0, 0});
    CHECK(M.eval(h) == 0);
    MIdeal I2(M, Subspace::span(p, d, {h}));
    for (int s = 1; s <= 3; s++) {
        CHECK(graded_basis(I2, s, GenConvention::PairingForm)->rows ==
              graded_basis(I2, s, GenConvention::DifferenceForm)->rows);
    }
}

TEST_CASE("span membership agrees with the vanishing oracle on 500 instances") {
    Rng rng(63);
    i64 p = 11;
    int d = 7;
    int disagreements = 0;
    for (int trial = 0; trial < 500; trial++) {
        QuadForm M = random_nondeg(rng, p, d);
        Subspace V = rng.subspace(p, d, 3);
        if (restricted_rank(M, perp(M, V), FpVec::zero(p, d)) < 3) continue;
        MIdeal I(M, V);
        int s = 1 + static_cast<int>(rng.below(3));
        Poly f = (trial % 2) ? random_member(rng, I, s, GenConvention::PairingForm)
                             : random_poly(rng, p, d, s, 4);
        bool span_member = contains(I, f, s).member;
        bool vanishes = vanishes_on_zero_set(I, f);
        if (span_member != vanishes) disagreements++;
    }
    CHECK(disagreements == 0);
}

TEST_CASE("a generator factor can be cancelled from ideal products") {
    Rng rng(64);
    i64 p = 11;
    int d = 7;  // d >= 2k+5 with k = 1
    int in_trials = 0, out_trials = 0;
    while (in_trials + out_trials < 100) {
        QuadForm M = random_nondeg(rng, p, d);
        FpVec h = rng.nonzero_vec(p, d), h1 = rng.nonzero_vec(p, d);
        if (Subspace::span(p, d, {h, h1}).dim() != 2) continue;
        MIdeal J(M, Subspace::span(p, d, {h1}));
        int s = 1 + static_cast<int>(rng.below(2));
        Poly L = M.gen_linear(h);
        if (in_trials < 50) {
            Poly f = random_member(rng, J, s, GenConvention::PairingForm);
            CHECK(contains(J, mul(L, f), s + 1).member);
            CHECK(contains(J, f, s).member);
            in_trials++;
        } else {
            Poly f = random_poly(rng, p, d, s, 4);
            if (contains(J, f, s).member) continue;
            // contrapositive: the product must not be in the ideal either
            CHECK_FALSE(contains(J, mul(L, f), s + 1).member);
            out_trials++;
        }
    }
    CHECK(in_trials == 50);
    CHECK(out_trials == 50);
}

TEST_CASE("sunflower intersection of subspaces") {
    i64 p = 5;
    int d = 8;
    FpVec e1 = FpVec::unit(p, d, 0), e2 = FpVec::unit(p, d, 1);
    Subspace V = Subspace::span(p, d, {e1});
    Subspace V1 = Subspace::span(p, d, {e2});
    Subspace V2 = Subspace::span(p, d, {add(e1, e2)});
    auto two = verify_intersection_subspaces(V, {V1, V2});
    CHECK(two.vs_independent);
    CHECK(two.intersection == Subspace::span(p, d, {e1, e2}));
    CHECK_FALSE(two.equals_core);

    Subspace V3 = Subspace::span(p, d, {FpVec::unit(p, d, 2)});
    auto three = verify_intersection_subspaces(V, {V1, V2, V3});
    CHECK(three.vs_independent);
    CHECK(three.equals_core);

    Rng rng(65);
    for (int trial = 0; trial < 100; trial++) {
        Subspace core = rng.subspace(p, d, 1 + static_cast<int>(rng.below(3)));
        int N = core.dim() + 2;
        std::vector<Subspace> petals;
        for (;;) {
            petals.clear();
            for (int i = 0; i < N; i++)
                petals.push_back(Subspace::span(p, d, {rng.nonzero_vec(p, d)}));
            std::vector<TupleItem> items(petals.begin(), petals.end());
            if (is_independent_tuple(items)) break;
        }
        auto rep = verify_intersection_subspaces(core, petals);
        CHECK(rep.vs_independent);
        CHECK(rep.equals_core);
    }
}

TEST_CASE("ideal intersection property: backward direction and random lines") {
    Rng rng(66);
    i64 p = 11;
    int d = 7;
    QuadForm M = QuadForm::dot_self(p, d);
    Subspace V0(p, d);

    // f in J^M_V implies membership on both sides, unconditionally
    MIdeal base(M, Subspace::span(p, d, {FpVec::unit(p, d, 0)}));
    Poly member = random_member(rng, base, 2, GenConvention::PairingForm);
    std::vector<Subspace> petals = {Subspace::span(p, d, {FpVec::unit(p, d, 1)}),
                                    Subspace::span(p, d, {FpVec::unit(p, d, 2)}),
                                    Subspace::span(p, d, {FpVec::unit(p, d, 3)})};
    auto back = verify_intersection_ideals(M, base.V(), petals, member, 2);
    CHECK(back.in_base);
    CHECK(back.in_all);
    CHECK(back.biconditional);

    // s=1, r=1, m=0, N=2: linear f against two random independent lines
    for (int trial = 0; trial < 100; trial++) {
        FpVec a = rng.nonzero_vec(p, d), b = rng.nonzero_vec(p, d);
        if (Subspace::span(p, d, {a, b}).dim() != 2) continue;
        Poly f = Poly::variable(p, d, static_cast<int>(rng.below(d)));
        auto rep = verify_intersection_ideals(
            M, V0, {Subspace::span(p, d, {a}), Subspace::span(p, d, {b})}, f, 1);
        CHECK(rep.vs_independent);
        CHECK(rep.count_condition);
        CHECK(rep.rank_condition);  // rank(M|_{full}) = 7 >= 7
        CHECK(rep.hypothesis_met);
        CHECK(rep.biconditional);
    }

    // violated independence: V1 = V2, f a shared generator not in J^M_V
    Subspace line = Subspace::span(p, d, {FpVec::unit(p, d, 0)});
    auto bad = verify_intersection_ideals(M, V0, {line, line}, Poly::variable(p, d, 0), 1);
    CHECK_FALSE(bad.vs_independent);
    CHECK_FALSE(bad.hypothesis_met);
    CHECK(bad.in_all);
    CHECK_FALSE(bad.in_base);
    CHECK_FALSE(bad.biconditional);
}

TEST_CASE("density intersection property") {
    Rng rng(67);
    i64 p = 7;
    int d = 7;
    QuadForm M = QuadForm::dot_self(p, d);
    Subspace V0(p, d);
    std::vector<FpVec> P;
    for (int i = 0; i < 2000; i++) P.push_back(rng.vec(p, d));

    // f in J^M: hypothesis and conclusion both hold
    Poly f1 = mul(M.as_poly(), Poly::variable(p, d, 0));
    auto good = verify_grm(M, V0, {}, P, f1, 1, d, 200, 7);
    CHECK(good.hypothesis_holds);
    CHECK(good.conclusion_holds);
    CHECK(good.implication_ok);
    CHECK(good.tuples_admissible > 0);

    // random linear f not in J^M: some admissible witness must fail
    Poly f2 = Poly::variable(p, d, 0);
    auto bad = verify_grm(M, V0, {}, P, f2, 1, d, 200, 8);
    CHECK_FALSE(bad.hypothesis_holds);
    REQUIRE(bad.failure_witness.size() == 1);
    // the witness really is admissible and really fails
    CHECK_FALSE(contains(MIdeal(M, Subspace::span(p, d, {bad.failure_witness[0]})), f2, 1).member);
    CHECK_FALSE(bad.conclusion_holds);
    CHECK(bad.implication_ok);
}
