#include "silab/structure.hpp"

#include <json.hpp>

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <stdexcept>

#include "silab/rng.hpp"

namespace silab {

using boost::multiprecision::cpp_int;

bool in_symmetric_interval(i64 p, i64 x, i64 num, i64 den) {
    Fp F(p);
    i64 r = F.norm(x);
    if (2 * r > p) r -= p;  // representative in (-p/2, p/2]
    i64 mag = r < 0 ? -r : r;
    return mag * den < num;
}

StructureObstaclePair StructureObstaclePair::trivial(i64 p, int d, int s) {
    StructureObstaclePair pair;
    pair.C0 = {Poly(p, d)};
    pair.K = 0;
    pair.C = 0;
    pair.D = 0;
    (void)s;
    return pair;
}

bool StructureObstaclePair::validate(const QuadForm& M, int s, std::string* why) const {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (C0.empty()) return fail("shift set is empty");
    if (static_cast<int>(C0.size()) > K + 1) return fail("shift set exceeds K+1 members");
    bool has_zero = false;
    for (const auto& f : C0) {
        if (f.is_zero()) has_zero = true;
        else if (!f.is_homogeneous(s)) return fail("shift " + f.to_string() + " is not homogeneous of the working degree");
    }
    if (!has_zero) return fail("shift set does not contain 0");
    MIdeal base(M, Subspace(M.p(), M.d()));
    for (size_t i = 0; i < C0.size(); i++)
        for (size_t j = i + 1; j < C0.size(); j++)
            if (contains(base, sub(C0[i], C0[j]), s).member)
                return fail("shifts " + std::to_string(i) + " and " + std::to_string(j) +
                            " are congruent modulo the base ideal");
    if (static_cast<int>(Y.size()) > C) return fail("obstruction union exceeds C parts");
    for (const auto& part : Y)
        if (part.dim() > D) return fail("obstruction part of dimension above D");
    return true;
}

std::string StructureObstaclePair::to_json() const {
    nlohmann::json j;
    std::vector<std::string> shifts;
    for (const auto& f : C0) shifts.push_back(f.to_string());
    j["C0"] = shifts;
    std::vector<std::vector<std::vector<i64>>> parts;
    for (const auto& part : Y) {
        std::vector<std::vector<i64>> rows;
        for (int i = 0; i < part.dim(); i++) rows.push_back(part.basis_vector(i).c);
        parts.push_back(rows);
    }
    j["Y"] = parts;
    j["K"] = K;
    j["C"] = C;
    j["D"] = D;
    return j.dump();
}

SOVerification verify_so_decomposition(const QuadForm& M, const StructureObstaclePair& pair,
                                       const Subspace& T, const Subspace& U, int s, int d1,
                                       int d2) {
    SOVerification v;
    v.dims = T.dim() == d1 && U.dim() == d2;
    v.trivial_intersection = intersect(T, U).is_trivial();
    v.spanning = sum(T, U).is_full();
    v.full_rank = restricted_rank(M, U, FpVec::zero(M.p(), M.d())) == U.dim();
    v.ideal_avoids_C0 = true;
    MIdeal I(M, U);
    for (const auto& f : pair.C0)
        if (!f.is_zero() && contains(I, f, s).member) v.ideal_avoids_C0 = false;
    v.avoids_Y = true;
    for (const auto& part : pair.Y)
        if (!intersect(U, part).is_trivial()) v.avoids_Y = false;
    return v;
}

static nlohmann::json basis_json(const Subspace& W) {
    std::vector<std::vector<i64>> rows;
    for (int i = 0; i < W.dim(); i++) rows.push_back(W.basis_vector(i).c);
    return rows;
}

std::string SODecomposition::to_json() const {
    nlohmann::json j;
    j["T_basis"] = basis_json(T);
    j["U_basis"] = basis_json(U);
    nlohmann::json ver;
    ver["dims"] = verification.dims;
    ver["trivial_intersection"] = verification.trivial_intersection;
    ver["spanning"] = verification.spanning;
    ver["ideal_avoids_C0"] = verification.ideal_avoids_C0;
    ver["avoids_Y"] = verification.avoids_Y;
    ver["full_rank"] = verification.full_rank;
    j["verification"] = ver;
    return j.dump();
}

namespace {

// Smallest positive residue outside I_{p/10}.
i64 separation_scalar(i64 p) {
    i64 a = (p + 9) / 10;
    if (a < 1) a = 1;
    return a;
}

// Rows: a basis of T followed by unit vectors completing it to all of F_p^d.
FpMat completed_basis(const Subspace& T) {
    i64 p = T.p();
    int d = T.ambient_dim();
    std::vector<FpVec> rows;
    for (int i = 0; i < T.dim(); i++) rows.push_back(T.basis_vector(i));
    Subspace cur = T;
    for (int i = 0; i < d && static_cast<int>(rows.size()) < d; i++) {
        FpVec e = FpVec::unit(p, d, i);
        if (cur.contains(e)) continue;
        rows.push_back(e);
        std::vector<FpVec> gens = rows;
        cur = Subspace::span(p, d, gens);
    }
    FpMat B(p, d, d);
    for (int i = 0; i < d; i++) B.set_row(i, rows[static_cast<size_t>(i)]);
    return B;
}

}  // namespace

SeparationMap build_separation_map(const Subspace& V, const std::vector<FpVec>& J) {
    i64 p = V.p();
    int k = V.ambient_dim();
    bool has_zero = false;
    for (const auto& c : J) {
        require_same_field(p, c.p);
        if (c.d() != k) throw_mismatch("separation point dimension");
        if (c.is_zero()) has_zero = true;
    }
    if (!has_zero) throw std::invalid_argument("separation point set must contain 0");

    i64 a = separation_scalar(p);
    SeparationMap sep;
    sep.Phi = FpMat(p, static_cast<int>(J.size()), k);
    Fp F(p);
    for (size_t i = 0; i < J.size(); i++) {
        const FpVec& c = J[i];
        if (V.contains(c)) continue;  // zero row
        // Basis of F_p^k: basis of V, then c, then completing unit vectors.
        std::vector<FpVec> gens;
        for (int r = 0; r < V.dim(); r++) gens.push_back(V.basis_vector(r));
        gens.push_back(c);
        Subspace Vc = Subspace::span(p, k, gens);
        FpMat rows(p, k, k);
        int pos = 0;
        for (int r = 0; r < V.dim(); r++) rows.set_row(pos++, V.basis_vector(r));
        int c_slot = pos;
        rows.set_row(pos++, c);
        {
            Subspace grow = Vc;
            for (int r = 0; r < k && pos < k; r++) {
                FpVec e = FpVec::unit(p, k, r);
                if (grow.contains(e)) continue;
                rows.set_row(pos++, e);
                std::vector<FpVec> gs;
                for (int q = 0; q < pos; q++) gs.push_back(rows.row(q));
                grow = Subspace::span(p, k, gs);
            }
        }
        // phi(v_j) = 0, phi(c) = -a, phi(u_j) = 0: solve rows * w = -a e_{c_slot}.
        FpVec target = FpVec::zero(p, k);
        target.c[static_cast<size_t>(c_slot)] = F.neg(a);
        LinSolveResult sol = solve_linear(rows, target);
        if (!sol.feasible) throw std::logic_error("separation basis is singular");
        sep.Phi.set_row(static_cast<int>(i), sol.particular);
    }
    return sep;
}

bool check_separation(const SeparationMap& sep, const Subspace& V,
                      const std::vector<FpVec>& J, size_t budget) {
    i64 p = V.p();
    cpp_int total = 1;
    for (int i = 0; i < V.dim(); i++) total *= p;
    if (total > cpp_int(budget)) throw std::invalid_argument("separation check budget exceeded");
    std::vector<FpVec> pts = V.enumerate();
    for (size_t i = 0; i < J.size(); i++) {
        const FpVec& c = J[i];
        if (V.contains(c)) continue;
        for (const auto& v : pts) {
            FpVec y = sep.apply(sub(v, c));
            bool inside = true;
            for (i64 x : y.c)
                if (!in_symmetric_interval(p, x, p, 10)) { inside = false; break; }
            if (inside) return false;  // v lies in c + Phi^{-1}(I^{|J|}_{p/10})
        }
    }
    return true;
}

namespace {

struct USample {
    Subspace U;
    int reject = 0;  // 0 ok, 1 rank, 2 obstruction, 3 shift
};

USample try_u_candidate(const QuadForm& M, const StructureObstaclePair& pair, int s,
                        const FpMat& B, int d1, int d2, Rng& rng) {
    i64 p = M.p();
    int d = M.d();
    USample out;
    std::vector<FpVec> rows;
    for (int j = 0; j < d2; j++) {
        FpVec r = B.row(d1 + j);
        for (int l = 0; l < d1; l++) {
            i64 t = rng.residue(p);
            if (t != 0) r = add(r, scale(t, B.row(l)));
        }
        rows.push_back(r);
    }
    out.U = Subspace::span(p, d, rows);
    if (restricted_rank(M, out.U, FpVec::zero(p, d)) != d2) {
        out.reject = 1;
        return out;
    }
    for (const auto& part : pair.Y)
        if (!intersect(out.U, part).is_trivial()) {
            out.reject = 2;
            return out;
        }
    MIdeal I(M, out.U);
    for (const auto& f : pair.C0)
        if (!f.is_zero() && contains(I, f, s).member) {
            out.reject = 3;
            return out;
        }
    return out;
}

}  // namespace

SOSearchReport find_so_decomposition(const QuadForm& M, const StructureObstaclePair& pair,
                                     int s, int d1, int d2, int R, uint64_t seed,
                                     long long max_samples) {
    int d = M.d();
    if (d1 < 0 || d2 < 0 || d1 + d2 != d) throw std::invalid_argument("dimensions must split the ambient space");
    if (R < 1) throw std::invalid_argument("decomposition count must be positive");
    if (static_cast<long long>(R) * d1 > d)
        throw std::invalid_argument("too many independent parts for the ambient dimension");

    SOSearchReport rep;
    rep.p = M.p();
    rep.seed = seed;
    rep.dim_hypothesis = d1 >= std::max(pair.D, 3) && d2 >= (R - 1) * d1 && d >= 4;

    // An obstruction part of dimension above d - d'' meets every candidate U.
    for (const auto& part : pair.Y)
        if (part.dim() + d2 > d) {
            rep.failure = "obstruction part of dimension " + std::to_string(part.dim()) +
                          " forces a nontrivial intersection with every subspace of dimension " +
                          std::to_string(d2);
            return rep;
        }

    Rng rng(seed);
    i64 p = M.p();
    std::vector<TupleItem> ts;
    for (int i = 0; i < R; i++) {
        Subspace T;
        for (;;) {
            T = rng.subspace(p, d, d1);
            std::vector<TupleItem> probe = ts;
            probe.emplace_back(T);
            if (is_independent_tuple(probe)) break;
        }
        ts.emplace_back(T);
        FpMat B = completed_basis(T);
        bool found = false;
        while (rep.samples < max_samples) {
            rep.samples++;
            USample cand = try_u_candidate(M, pair, s, B, d1, d2, rng);
            if (cand.reject == 1) { rep.rejected_rank++; continue; }
            if (cand.reject == 2) { rep.rejected_obstruction++; continue; }
            if (cand.reject == 3) { rep.rejected_shift++; continue; }
            SOVerification v = verify_so_decomposition(M, pair, T, cand.U, s, d1, d2);
            if (!v.all()) throw std::logic_error("search candidate failed independent re-verification");
            rep.decs.push_back(SODecomposition{T, cand.U, v});
            found = true;
            break;
        }
        if (!found) {
            rep.failure = "sample budget exhausted at part " + std::to_string(i + 1) + " of " +
                          std::to_string(R);
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

SORejectionStats sample_rejection_stats(const QuadForm& M, const StructureObstaclePair& pair,
                                        int s, int d1, int d2, long long samples,
                                        uint64_t seed) {
    int d = M.d();
    if (d1 < 0 || d2 < 0 || d1 + d2 != d) throw std::invalid_argument("dimensions must split the ambient space");
    Rng rng(seed);
    Subspace T = rng.subspace(M.p(), d, d1);
    FpMat B = completed_basis(T);
    SORejectionStats st;
    for (long long i = 0; i < samples; i++) {
        st.samples++;
        USample cand = try_u_candidate(M, pair, s, B, d1, d2, rng);
        if (cand.reject != 0) st.rejected++;
        if (cand.reject == 1) st.rejected_rank++;
        if (cand.reject == 2) st.rejected_obstruction++;
        if (cand.reject == 3) st.rejected_shift++;
    }
    return st;
}

std::string SOSearchReport::to_json() const {
    nlohmann::json j;
    j["ok"] = ok;
    j["dim_hypothesis"] = dim_hypothesis;
    j["p"] = p;
    std::vector<nlohmann::json> ds;
    for (const auto& dec : decs) ds.push_back(nlohmann::json::parse(dec.to_json()));
    j["decompositions"] = ds;
    j["samples"] = samples;
    j["rejected_rank"] = rejected_rank;
    j["rejected_obstruction"] = rejected_obstruction;
    j["rejected_shift"] = rejected_shift;
    j["seed"] = seed;
    if (!failure.empty()) j["failure"] = failure;
    return j.dump();
}

std::string FreimanSubsetReport::to_json() const {
    nlohmann::json j;
    j["ok"] = ok;
    std::vector<std::vector<i64>> pts;
    for (const auto& w : W_prime) pts.push_back(w.c);
    j["W_prime"] = pts;
    j["cube"] = cube;
    j["size_bound_ok"] = size_bound_ok;
    j["order16"] = nlohmann::json::parse(order16.to_json());
    if (!failure.empty()) j["failure"] = failure;
    return j.dump();
}

FreimanSubsetReport extract_freiman_subset(const std::vector<FpVec>& W,
                                           const StructureObstaclePair& pair,
                                           const Subspace& V, const XiMap& xi,
                                           const QuadForm& M, int s, uint64_t seed,
                                           size_t budget) {
    i64 p = M.p();
    int d = M.d();
    FreimanSubsetReport rep;
    auto fail = [&](const std::string& msg) {
        rep.failure = msg;
        return rep;
    };
    if (W.empty()) return fail("empty input set");
    for (const auto& w : W) {
        require_same_field(p, w.p);
        if (!V.contains(w)) return fail("input point " + std::to_string(&w - &W[0]) + " lies outside the carrier subspace");
    }
    MIdeal IV(M, V);
    for (const auto& f : pair.C0)
        if (!f.is_zero() && contains(IV, f, s).member)
            return fail("shift " + f.to_string() + " lies in the carrier ideal");
    for (const auto& part : pair.Y)
        if (!intersect(V, part).is_trivial())
            return fail("carrier subspace meets an obstruction part");

    // Degree-s coefficient flattening.
    std::vector<Monomial> cols = monomials_of_degree(d, s);
    int S = static_cast<int>(cols.size());
    auto theta = [&](const Poly& f) { return poly_to_coords(f.homogeneous_component(s), cols); };

    // Flattened degree-s slice of the carrier ideal: kernel of the graded
    // reduction restricted to the homogeneous coefficient space.
    auto gb = graded_basis(IV, s);
    FpMat A(p, static_cast<int>(gb->cols.size()), S);
    for (int jcol = 0; jcol < S; jcol++) {
        Poly unit = Poly::monomial(p, d, cols[static_cast<size_t>(jcol)], 1);
        FpVec red = gb->reduce(poly_to_coords(unit, gb->cols));
        for (int r = 0; r < A.rows; r++) A.at(r, jcol) = red.c[static_cast<size_t>(r)];
    }
    Subspace Vt = Subspace::from_rows(kernel_basis(A));

    std::vector<FpVec> Jpts;
    for (const auto& f : pair.C0) Jpts.push_back(theta(f));
    SeparationMap sep = build_separation_map(Vt, Jpts);

    // Bucket by the cube tuple of the separated flattened values.
    std::map<std::vector<int>, std::vector<FpVec>> buckets;
    for (const auto& w : W) {
        FpVec y = sep.apply(theta(xi(w)));
        std::vector<int> key;
        for (i64 x : y.c) key.push_back(static_cast<int>((80 * x) / p));
        buckets[key].push_back(w);
    }
    size_t best = 0;
    for (const auto& [key, pts] : buckets)
        if (pts.size() > best) {
            best = pts.size();
            rep.cube = key;
            rep.W_prime = pts;
        }

    cpp_int cubes = 1;
    for (int i = 0; i <= pair.K; i++) cubes *= 80;
    rep.size_bound_ok = cpp_int(rep.W_prime.size()) * cubes >= cpp_int(W.size());

    rep.order16 = is_freiman_hom(xi, rep.W_prime, M, s, 4, seed, budget);
    rep.ok = rep.size_bound_ok && rep.order16.holds;
    return rep;
}

}  // namespace silab
