#include "silab/mideal.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "silab/rng.hpp"

namespace silab {

MIdeal::MIdeal(QuadForm M, Subspace V) : M_(std::move(M)), V_(std::move(V)) {
    require_same_field(M_.p(), V_.p());
    if (V_.ambient_dim() != M_.d()) throw_mismatch("ideal subspace ambient dimension");
    if (!M_.is_homogeneous()) throw_mismatch("ideal requires a homogeneous quadratic form");
}

Poly MIdeal::generator(int i, GenConvention conv) const {
    FpVec h = V_.basis_vector(i);
    return conv == GenConvention::PairingForm ? M_.gen_linear(h) : M_.diff_form(h);
}

MIdeal sum(const MIdeal& a, const MIdeal& b) {
    if (!(a.M() == b.M())) throw_mismatch("ideal sum needs a common quadratic form");
    return MIdeal(a.M(), sum(a.V(), b.V()));
}

FpVec GradedIdealBasis::reduce(const FpVec& coords) const {
    if (coords.d() != static_cast<int>(cols.size())) throw_mismatch("coordinate length");
    Fp fld(p);
    FpVec v = coords;
    for (int r = 0; r < rows.rows; r++) {
        int pivot = -1;
        for (int c = 0; c < rows.cols; c++)
            if (rows.at(r, c) != 0) {
                pivot = c;
                break;
            }
        if (pivot < 0 || v.c[pivot] == 0) continue;
        i64 factor = v.c[pivot];  // pivot entry is 1 in RREF
        for (int c = 0; c < rows.cols; c++)
            v.c[c] = fld.sub(v.c[c], fld.mul(factor, rows.at(r, c)));
    }
    return v;
}

bool GradedIdealBasis::spans(const FpVec& coords) const { return reduce(coords).is_zero(); }

namespace {

std::string basis_cache_key(const MIdeal& I, int s, GenConvention conv) {
    std::ostringstream os;
    os << quadform_to_json(I.M()) << '|' << s << '|' << static_cast<int>(conv) << '|';
    for (i64 x : I.V().basis().a) os << x << ',';
    os << I.V().dim();
    return os.str();
}

std::mutex g_cache_mu;
std::map<std::string, std::shared_ptr<const GradedIdealBasis>> g_cache;

}  // namespace

std::shared_ptr<const GradedIdealBasis> graded_basis(const MIdeal& I, int s, GenConvention conv) {
    if (s > poly_degree_cap()) throw std::invalid_argument("graded degree exceeds cap");
    std::string key = basis_cache_key(I, s, conv);
    {
        std::lock_guard<std::mutex> lock(g_cache_mu);
        auto it = g_cache.find(key);
        if (it != g_cache.end()) return it->second;
    }

    auto gb = std::make_shared<GradedIdealBasis>();
    gb->p = I.p();
    gb->d = I.d();
    gb->s = s;
    gb->conv = conv;
    gb->cols = monomials_up_to(gb->d, s);

    std::vector<FpVec> rows;
    Poly Mf = I.M().as_poly();
    for (const auto& q : monomials_up_to(gb->d, s - 2)) {
        rows.push_back(poly_to_coords(mul(Mf, Poly::monomial(gb->p, gb->d, q, 1)), gb->cols));
        gb->prov.push_back({0, q});
    }
    for (int i = 0; i < I.V().dim(); i++) {
        Poly g = I.generator(i, conv);
        for (const auto& q : monomials_up_to(gb->d, s - 1)) {
            rows.push_back(poly_to_coords(mul(g, Poly::monomial(gb->p, gb->d, q, 1)), gb->cols));
            gb->prov.push_back({i + 1, q});
        }
    }

    gb->raw = FpMat(gb->p, static_cast<int>(rows.size()), static_cast<int>(gb->cols.size()));
    for (size_t r = 0; r < rows.size(); r++) gb->raw.set_row(static_cast<int>(r), rows[r]);
    FpMat rr = gb->raw;
    rref_inplace(rr);
    gb->rows = Subspace::from_rows(rr).basis();

    std::lock_guard<std::mutex> lock(g_cache_mu);
    auto [it, ignored] = g_cache.emplace(key, std::move(gb));
    return it->second;
}

MembershipResult contains(const MIdeal& I, const Poly& f, int s_hint, GenConvention conv) {
    require_same_field(I.p(), f.p());
    if (f.d() != I.d()) throw_mismatch("polynomial arity");
    if (f.degree() > s_hint) throw std::invalid_argument("degree above hint");
    auto gb = graded_basis(I, s_hint, conv);

    MembershipResult res;
    res.P0 = Poly(I.p(), I.d());
    res.Pi.assign(I.V().dim(), Poly(I.p(), I.d()));

    FpVec coords = poly_to_coords(f, gb->cols);
    if (gb->raw.rows == 0) {
        res.member = f.is_zero();
        return res;
    }
    if (!gb->spans(coords)) return res;

    // Solve raw^T x = coords for the multiplier coefficients.
    FpMat A(gb->p, gb->raw.cols, gb->raw.rows);
    for (int r = 0; r < gb->raw.rows; r++)
        for (int c = 0; c < gb->raw.cols; c++) A.at(c, r) = gb->raw.at(r, c);
    auto sol = solve_linear(A, coords);
    if (!sol.feasible) throw std::logic_error("span test and solver disagree");

    Fp fld(gb->p);
    for (int r = 0; r < gb->raw.rows; r++) {
        i64 c = sol.particular.c[r];
        if (c == 0) continue;
        const auto& pv = gb->prov[r];
        Poly* target = pv.gen == 0 ? &res.P0 : &res.Pi[pv.gen - 1];
        target->set_coeff(pv.q, fld.add(target->coeff(pv.q), c));
    }
    res.member = true;

    // Re-verify the certificate before handing it out.
    Poly rebuilt = mul(I.M().as_poly(), res.P0);
    for (int i = 0; i < I.V().dim(); i++)
        rebuilt = add(rebuilt, mul(I.generator(i, conv), res.Pi[i]));
    if (!(rebuilt == f)) throw std::logic_error("membership certificate failed re-verification");
    return res;
}

bool vanishes_on_zero_set(const MIdeal& I, const Poly& f, GenConvention conv, size_t budget) {
    require_same_field(I.p(), f.p());
    i64 p = I.p();
    int d = I.d();
    if (conv == GenConvention::PairingForm) {
        Subspace P = perp(I.M(), I.V());
        if (P.is_trivial()) return f.eval(FpVec::zero(p, d)) == 0;
        Poly g = compose_affine(f, P.basis(), FpVec::zero(p, d));
        Poly gM = compose_affine(I.M().as_poly(), P.basis(), FpVec::zero(p, d));
        for (const auto& t : enumerate_points(p, P.dim(), budget))
            if (gM.eval(t) == 0 && g.eval(t) != 0) return false;
        return true;
    }
    // Difference convention: full-grid enumeration of the common zero set.
    Fp fld(p);
    std::vector<FpVec> ws;
    std::vector<i64> cs;
    for (int i = 0; i < I.V().dim(); i++) {
        FpVec hA = vec_mat(I.V().basis_vector(i), I.M().A());
        ws.push_back(scale(2, hA));
        cs.push_back(dot(hA, I.V().basis_vector(i)));
    }
    for (const auto& n : enumerate_points(p, d, budget)) {
        if (I.M().eval(n) != 0) continue;
        bool in_set = true;
        for (size_t i = 0; i < ws.size() && in_set; i++)
            in_set = fld.add(dot(ws[i], n), cs[i]) == 0;
        if (in_set && f.eval(n) != 0) return false;
    }
    return true;
}

SunflowerReport verify_intersection_subspaces(const Subspace& V, const std::vector<Subspace>& Vs) {
    SunflowerReport rep;
    std::vector<TupleItem> items(Vs.begin(), Vs.end());
    rep.vs_independent = is_independent_tuple(items);
    rep.intersection = Vs.empty() ? Subspace::full(V.p(), V.ambient_dim()) : sum(V, Vs[0]);
    for (size_t i = 1; i < Vs.size(); i++) rep.intersection = intersect(rep.intersection, sum(V, Vs[i]));
    rep.equals_core = rep.intersection == V;
    return rep;
}

IdealIntersectionReport verify_intersection_ideals(const QuadForm& M, const Subspace& V,
                                                   const std::vector<Subspace>& Vs, const Poly& f,
                                                   int s) {
    IdealIntersectionReport rep;
    rep.N = static_cast<int>(Vs.size());
    rep.m = V.dim();
    rep.r = 1;
    for (const auto& W : Vs) rep.r = std::max(rep.r, W.dim());
    std::vector<TupleItem> items(Vs.begin(), Vs.end());
    rep.vs_independent = is_independent_tuple(items);
    rep.rank_on_perp = restricted_rank(M, perp(M, V), FpVec::zero(M.p(), M.d()));
    rep.rank_condition = rep.rank_on_perp >= 2 * rep.N * (rep.r - 1) + 7;
    rep.dim_condition = M.d() >= 2 * rep.m + 2 * rep.N * (rep.r - 1) + 7;
    rep.count_condition = rep.N >= s + rep.m + 1;
    rep.hypothesis_met =
        rep.vs_independent && rep.count_condition && (rep.rank_condition || rep.dim_condition);

    rep.in_all = true;
    for (const auto& W : Vs)
        if (!contains(MIdeal(M, sum(V, W)), f, s).member) {
            rep.in_all = false;
            break;
        }
    rep.in_base = contains(MIdeal(M, V), f, s).member;
    rep.biconditional = rep.in_all == rep.in_base;
    return rep;
}

DensityIntersectionReport verify_grm(const QuadForm& M, const Subspace& V,
                                     const std::vector<Subspace>& Us, const std::vector<FpVec>& P,
                                     const Poly& f, int m, int dprime, long long max_tuples,
                                     uint64_t seed) {
    DensityIntersectionReport rep;
    int s = std::max(f.degree(), 0);
    int dimUk = Us.empty() ? 0 : Us.back().dim();
    rep.dim_condition = dprime >= std::max({V.dim() + m + s, dimUk + V.dim() + m,
                                            2 * V.dim() + 2 * m + 5});
    rep.conclusion_holds = contains(MIdeal(M, V), f, s).member;

    auto check_tuple = [&](const std::vector<FpVec>& hs) {
        std::vector<TupleItem> base(hs.begin(), hs.end());
        base.emplace_back(V);
        if (!is_independent_tuple(base)) return;  // inadmissible (covers trivial U_0)
        for (const auto& U : Us) {
            std::vector<TupleItem> items(hs.begin(), hs.end());
            items.emplace_back(U);
            items.emplace_back(V);
            if (!is_independent_tuple(items)) return;
        }
        rep.tuples_admissible++;
        if (!rep.hypothesis_holds) return;
        Subspace VW = sum(Subspace::span(M.p(), M.d(), hs), V);
        if (!contains(MIdeal(M, VW), f, s).member) {
            rep.hypothesis_holds = false;
            rep.failure_witness = hs;
        }
    };

    double total = 1;
    for (int i = 0; i < m; i++) total *= static_cast<double>(P.size());
    if (total <= static_cast<double>(max_tuples)) {
        std::vector<size_t> idx(static_cast<size_t>(m), 0);
        bool done = P.empty() && m > 0;
        while (!done) {
            std::vector<FpVec> hs;
            for (int i = 0; i < m; i++) hs.push_back(P[idx[i]]);
            rep.tuples_checked++;
            check_tuple(hs);
            int i = m - 1;
            for (; i >= 0; i--) {
                if (++idx[i] < P.size()) break;
                idx[i] = 0;
            }
            if (i < 0) break;
        }
    } else {
        Rng rng(seed);
        for (long long t = 0; t < max_tuples; t++) {
            std::vector<FpVec> hs;
            for (int i = 0; i < m; i++)
                hs.push_back(P[static_cast<size_t>(rng.below(static_cast<i64>(P.size())))]);
            rep.tuples_checked++;
            check_tuple(hs);
        }
    }
    rep.implication_ok = !rep.hypothesis_holds || rep.conclusion_holds;
    return rep;
}

}  // namespace silab
