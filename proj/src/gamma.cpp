#include "silab/gamma.hpp"

#include <algorithm>
#include <json.hpp>

namespace silab {

GammaElement::GammaElement(QuadForm M, int s, FpVec h, Subspace V, const Poly& f)
    : M_(std::move(M)), s_(s), h_(std::move(h)), V_(std::move(V)) {
    require_same_field(M_.p(), h_.p);
    require_same_field(M_.p(), f.p());
    if (s_ < 0) throw std::invalid_argument("negative degree");
    if (!V_.contains(h_)) throw_mismatch("shift vector must lie in its subspace");
    if (!f.is_homogeneous(s_)) throw_mismatch("shift polynomial must be homogeneous of the set degree");
    auto gb = graded_basis(MIdeal(M_, V_), s_);
    f_ = coords_to_poly(M_.p(), M_.d(), gb->reduce(poly_to_coords(f, gb->cols)), gb->cols);
}

bool GammaElement::in_gamma_k(int k) const {
    return h_.is_zero() ? V_.dim() <= k - 1 : V_.dim() <= k;
}

bool GammaElement::operator==(const GammaElement& o) const {
    return M_ == o.M_ && s_ == o.s_ && h_ == o.h_ && V_ == o.V_ && f_ == o.f_;
}

bool GammaElement::operator<(const GammaElement& o) const {
    if (!(h_ == o.h_)) return h_ < o.h_;
    if (!(V_ == o.V_)) return V_ < o.V_;
    return f_ < o.f_;
}

std::string GammaElement::to_json() const {
    nlohmann::json j;
    j["h"] = h_.c;
    std::vector<std::vector<i64>> rows;
    for (int i = 0; i < V_.dim(); i++) rows.push_back(V_.basis_vector(i).c);
    j["V_basis"] = rows;
    j["f_text"] = f_.to_string();
    return j.dump();
}

GammaElement GammaElement::from_json(const QuadForm& M, int s, const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    FpVec h(M.p(), j.at("h").get<std::vector<i64>>());
    std::vector<FpVec> rows;
    for (const auto& r : j.at("V_basis")) rows.emplace_back(M.p(), r.get<std::vector<i64>>());
    Subspace V = Subspace::span(M.p(), M.d(), rows);
    Poly f = Poly::parse(M.p(), M.d(), j.at("f_text").get<std::string>());
    return GammaElement(M, s, h, V, f);
}

static void require_same_context(const GammaElement& a, const GammaElement& b) {
    if (!(a.M() == b.M()) || a.s() != b.s()) throw_mismatch("gamma elements from different contexts");
}

GammaElement hat_add(const GammaElement& a, const GammaElement& b) {
    require_same_context(a, b);
    return GammaElement(a.M(), a.s(), add(a.h(), b.h()), sum(a.V(), b.V()), add(a.f(), b.f()));
}

GammaElement hat_sub(const GammaElement& a, const GammaElement& b) {
    require_same_context(a, b);
    return GammaElement(a.M(), a.s(), sub(a.h(), b.h()), sum(a.V(), b.V()), sub(a.f(), b.f()));
}

bool related(const GammaElement& a, const GammaElement& b) {
    require_same_context(a, b);
    if (!(a.h() == b.h())) return false;
    return contains(MIdeal(a.M(), sum(a.V(), b.V())), sub(a.f(), b.f()), a.s()).member;
}

GammaSet::GammaSet(QuadForm M, int s) : M_(std::move(M)), s_(s) {}

bool GammaSet::insert(const GammaElement& e) {
    if (!(e.M() == M_) || e.s() != s_) throw_mismatch("element context mismatch");
    auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
    if (it != elems_.end() && *it == e) return false;
    elems_.insert(it, e);
    return true;
}

std::vector<GammaElement> GammaSet::fiber(const FpVec& h) const {
    std::vector<GammaElement> out;
    for (const auto& e : elems_)
        if (e.h() == h) out.push_back(e);
    return out;
}

std::vector<FpVec> GammaSet::projections() const {
    std::vector<FpVec> out;
    for (const auto& e : elems_)
        if (out.empty() || !(out.back() == e.h())) out.push_back(e.h());
    return out;
}

std::string GammaSet::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : elems_) arr.push_back(nlohmann::json::parse(e.to_json()));
    return arr.dump();
}

GammaSet sumset(const GammaSet& A, const GammaSet& B, SumSign sign, size_t budget) {
    if (!(A.M() == B.M()) || A.s() != B.s()) throw_mismatch("sumset context mismatch");
    if (A.size() * B.size() > budget) throw std::runtime_error("sumset budget exceeded");
    GammaSet out(A.M(), A.s());
    for (const auto& a : A.elements())
        for (const auto& b : B.elements())
            out.insert(sign == SumSign::Plus ? hat_add(a, b) : hat_sub(a, b));
    return out;
}

GammaSet iterated_sumset(const GammaSet& A, int k, int l, size_t budget) {
    if (k < 1) throw std::invalid_argument("need at least one positive fold");
    GammaSet acc = A;
    for (int i = 1; i < k; i++) acc = sumset(acc, A, SumSign::Plus, budget);
    for (int i = 0; i < l; i++) acc = sumset(acc, A, SumSign::Minus, budget);
    return acc;
}

ClassifyResult classify_equivalence(const std::vector<GammaElement>& X) {
    if (X.empty()) throw std::invalid_argument("empty fiber");
    const QuadForm& M = X[0].M();
    int s = X[0].s();
    i64 p = M.p();
    int d = M.d();
    const FpVec& h = X[0].h();
    for (const auto& x : X)
        if (!(x.h() == h)) throw_mismatch("fiber must share the projection value");

    ClassifyResult res;
    for (size_t i = 0; i < X.size(); i++)
        for (size_t j = i + 1; j < X.size(); j++)
            if (!related(X[i], X[j])) return res;  // NotClass
    res.kind = ClassifyResult::Weak;

    // Strong witness u = (h, J^M_{span h} + f'): since h lies in every V_i this
    // needs f' - f_i in J^M_{V_i} at degree s. Solve the stacked linear system
    // reduce_i(f') = reduce_i(f_i) for a homogeneous f' of degree s.
    auto unknowns = monomials_of_degree(d, s);
    std::vector<std::shared_ptr<const GradedIdealBasis>> gbs;
    for (const auto& x : X) gbs.push_back(graded_basis(MIdeal(M, x.V()), s));
    int nm = static_cast<int>(gbs[0]->cols.size());
    FpMat A(p, static_cast<int>(X.size()) * nm, static_cast<int>(unknowns.size()));
    FpVec b = FpVec::zero(p, static_cast<int>(X.size()) * nm);
    for (size_t i = 0; i < X.size(); i++) {
        for (size_t u = 0; u < unknowns.size(); u++) {
            FpVec unit = poly_to_coords(Poly::monomial(p, d, unknowns[u], 1), gbs[i]->cols);
            FpVec red = gbs[i]->reduce(unit);
            for (int r = 0; r < nm; r++) A.at(static_cast<int>(i) * nm + r, static_cast<int>(u)) = red.c[r];
        }
        FpVec red = gbs[i]->reduce(poly_to_coords(X[i].f(), gbs[i]->cols));
        for (int r = 0; r < nm; r++) b.c[static_cast<int>(i) * nm + r] = red.c[r];
    }
    auto sol = solve_linear(A, b);
    if (!sol.feasible) return res;  // weak only

    Poly fprime(p, d);
    Fp fld(p);
    for (size_t u = 0; u < unknowns.size(); u++)
        fprime.set_coeff(unknowns[u], sol.particular.c[u]);
    GammaElement witness(M, s, h, Subspace::span(p, d, {h}), fprime);
    for (const auto& x : X)
        if (!related(witness, x)) throw std::logic_error("strong witness failed re-verification");
    res.kind = ClassifyResult::Strong;
    res.witness = witness;
    return res;
}

SubspaceDichotomy gweakdic_search(const std::vector<Subspace>& Us, const Subspace& U, int m) {
    SubspaceDichotomy out;
    std::vector<TupleItem> chosen_items;
    for (;;) {
        if (static_cast<int>(out.chosen.size()) == m) {
            out.independent_branch = true;
            return out;
        }
        bool extended = false;
        for (size_t i = 0; i < Us.size() && !extended; i++) {
            std::vector<TupleItem> items = chosen_items;
            items.emplace_back(Us[i]);
            if (is_independent_tuple(items, U)) {
                out.chosen.push_back(static_cast<int>(i));
                chosen_items = std::move(items);
                extended = true;
            }
        }
        if (!extended) break;
    }
    out.W = U;
    for (int idx : out.chosen) out.W = sum(out.W, Us[idx]);
    return out;
}

GwtsReport gwts_check(const std::vector<GammaElement>& X, int k, int s) {
    if (X.empty()) throw std::invalid_argument("empty fiber");
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    const QuadForm& M = X[0].M();
    i64 p = M.p();
    int d = M.d();
    const FpVec& h = X[0].h();
    for (const auto& x : X) {
        if (!(x.h() == h)) throw_mismatch("fiber must share the projection value");
        if (!x.in_gamma_k(k)) throw_mismatch("fiber member outside the declared gamma level");
    }

    GwtsReport rep;
    bool zero = h.is_zero();
    rep.dim_hypothesis = d >= 2 * k + 2 * (s + 1) * (k - 2) + (zero ? 5 : 7);

    Subspace U = zero ? Subspace(p, d) : Subspace::span(p, d, {h});
    int m = zero ? s + k : s + k + 1;
    std::vector<Subspace> Vs;
    for (const auto& x : X) Vs.push_back(x.V());
    auto dich = gweakdic_search(Vs, U, m);
    rep.y_dim_bound = U.dim() + (m - 1) * (k - U.dim());

    if (dich.independent_branch) {
        auto cls = classify_equivalence(X);
        rep.strong_branch = cls.kind == ClassifyResult::Strong;
        rep.witness = cls.witness;
        return rep;
    }
    rep.Y = dich.W;
    rep.obstruction_verified = true;
    for (const auto& x : X) {
        Subspace meet = intersect(x.V(), rep.Y);
        bool beyond = zero ? meet.dim() > 0 : !(meet == U);
        if (!beyond) rep.obstruction_verified = false;
    }
    return rep;
}

MEnergyGraph m_energy(const QuadForm& M, int s, const std::vector<FpVec>& H, const XiMap& xi1,
                      const XiMap& xi2, const XiMap& xi3, const XiMap& xi4, size_t edge_budget) {
    size_t nH = H.size();
    size_t nodes = nH * nH;
    if (nodes * nodes > edge_budget) throw std::runtime_error("energy edge budget exceeded");

    auto lift = [&](const XiMap& xi) {
        std::vector<GammaElement> out;
        for (const auto& h : H)
            out.emplace_back(M, s, h, Subspace::span(M.p(), M.d(), {h}), xi(h));
        return out;
    };
    auto t1 = lift(xi1), t2 = lift(xi2), t3 = lift(xi3), t4 = lift(xi4);

    std::vector<GammaElement> left, right;
    left.reserve(nodes);
    right.reserve(nodes);
    for (size_t i = 0; i < nH; i++)
        for (size_t j = 0; j < nH; j++) {
            left.push_back(hat_sub(t1[i], t2[j]));
            right.push_back(hat_sub(t3[i], t4[j]));
        }

    MEnergyGraph g;
    g.n = static_cast<int>(nodes);
    g.adj.assign(nodes * nodes, 0);
    for (size_t a = 0; a < nodes; a++)
        for (size_t b = 0; b < nodes; b++)
            if (related(left[a], right[b])) {
                g.adj[a * nodes + b] = 1;
                g.energy++;
            }
    return g;
}

}  // namespace silab
