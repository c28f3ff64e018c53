#include "silab/quadform.hpp"

#include <json.hpp>
#include <numeric>
#include <thread>

#include "silab/parallel.hpp"
#include "silab/rng.hpp"

namespace silab {

QuadForm::QuadForm(i64 p, FpMat A, FpVec u, i64 v) : p_(p), A_(std::move(A)), u_(std::move(u)) {
    Fp fld(p);  // validates that p is an odd prime
    if (A_.rows != A_.cols) throw_mismatch("quadratic form matrix must be square");
    if (A_.p != p || u_.p != p) throw_mismatch("mixed moduli in quadratic form");
    if (u_.d() != A_.rows) throw_mismatch("linear part dimension mismatch");
    for (auto& x : A_.a) x = fld.norm(x);
    for (auto& x : u_.c) x = fld.norm(x);
    v_ = fld.norm(v);
    for (int i = 0; i < A_.rows; i++)
        for (int j = i + 1; j < A_.cols; j++)
            if (A_.at(i, j) != A_.at(j, i)) throw_mismatch("quadratic form matrix must be symmetric");
}

QuadForm QuadForm::dot_self(i64 p, int d) {
    return QuadForm(p, FpMat::identity(p, d), FpVec::zero(p, d), 0);
}

QuadForm QuadForm::diagonal(i64 p, const std::vector<i64>& diag) {
    int d = static_cast<int>(diag.size());
    FpMat A(p, d, d);
    for (int i = 0; i < d; i++) A.at(i, i) = diag[i];
    return QuadForm(p, A, FpVec::zero(p, d), 0);
}

bool QuadForm::non_degenerate() const { return rank_of_form() == d(); }

int QuadForm::rank_of_form() const { return rank(A_); }

i64 QuadForm::eval(const FpVec& n) const {
    require_same_field(p_, n.p);
    if (n.d() != d()) throw_mismatch("evaluation point dimension mismatch");
    Fp fld(p_);
    i64 acc = v_;
    for (int i = 0; i < d(); i++) {
        i64 row = 0;
        for (int j = 0; j < d(); j++) row = fld.add(row, fld.mul(A_.at(i, j), n.c[j]));
        acc = fld.add(acc, fld.mul(n.c[i], row));
        acc = fld.add(acc, fld.mul(u_.c[i], n.c[i]));
    }
    return acc;
}

Poly QuadForm::as_poly() const {
    Fp fld(p_);
    Poly f = Poly::constant(p_, d(), v_);
    for (int i = 0; i < d(); i++) {
        Monomial m = Monomial::one(d());
        m.e[i] = 1;
        f.set_coeff(m, fld.add(f.coeff(m), u_.c[i]));
        for (int j = i; j < d(); j++) {
            Monomial q = Monomial::one(d());
            q.e[i] += 1;
            q.e[j] += 1;
            i64 c = (i == j) ? A_.at(i, i) : fld.add(A_.at(i, j), A_.at(j, i));
            f.set_coeff(q, fld.add(f.coeff(q), c));
        }
    }
    return f;
}

Poly QuadForm::gen_linear(const FpVec& h) const {
    require_same_field(p_, h.p);
    return Poly::linear_form(p_, vec_mat(h, A_));
}

Poly QuadForm::diff_form(const FpVec& h) const {
    Poly f = as_poly();
    return sub(shift(f, h), f);
}

QuadForm QuadForm::translate(const FpVec& h) const {
    require_same_field(p_, h.p);
    Fp fld(p_);
    FpVec hA = vec_mat(h, A_);
    FpVec u2 = add(u_, scale(2, hA));
    i64 v2 = fld.add(v_, fld.add(dot(hA, h), dot(u_, h)));
    return QuadForm(p_, A_, u2, v2);
}

Subspace perp(const QuadForm& M, const Subspace& V) {
    require_same_field(M.p(), V.p());
    if (V.is_trivial()) return Subspace::full(M.p(), M.d());
    FpMat rows = mat_mul(V.basis(), M.A());
    return Subspace::from_rows(kernel_basis(rows));
}

bool is_isotropic(const QuadForm& M, const Subspace& V) {
    return intersect(V, perp(M, V)).dim() > 0;
}

bool is_isotropic_tuple(const QuadForm& M, const std::vector<FpVec>& hs) {
    for (const auto& h : hs)
        if (h.is_zero()) return true;
    Subspace V = Subspace::span(M.p(), M.d(), hs);
    return is_isotropic(M, V);
}

int restricted_rank(const QuadForm& M, const Subspace& V, const FpVec& c) {
    require_same_field(M.p(), V.p());
    (void)c;  // the quadratic part of M(phi(t)+c) does not depend on c
    if (V.is_trivial()) return 0;
    FpMat B = V.basis();
    return rank(mat_mul(mat_mul(B, M.A()), transpose(B)));
}

int restricted_rank_closed_form(const QuadForm& M, const Subspace& V) {
    return V.dim() - intersect(V, perp(M, V)).dim();
}

namespace {

std::string exact_ratio(long long num, long long den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    return std::to_string(num / g) + "/" + std::to_string(den / g);
}

long long ipow(long long base, int e) {
    long long r = 1;
    for (int i = 0; i < e; i++) r *= base;
    return r;
}

// Count zeros of an evaluator over F_p^m, sharding the first coordinate.
template <typename Eval>
long long count_zeros_grid(i64 p, int m, size_t budget, Eval eval) {
    double total = 1;
    for (int i = 0; i < m; i++) total *= static_cast<double>(p);
    if (total > static_cast<double>(budget)) throw std::runtime_error("enumeration budget exceeded");
    if (m == 0) return eval(FpVec::zero(p, 0)) ? 1 : 0;

    auto shard = [&](i64 lo, i64 hi) {
        long long cnt = 0;
        FpVec n = FpVec::zero(p, m);
        for (i64 first = lo; first < hi; first++) {
            n.c[0] = first;
            std::fill(n.c.begin() + 1, n.c.end(), 0);
            for (;;) {
                if (eval(n)) cnt++;
                int i = m - 1;
                for (; i >= 1; i--) {
                    if (++n.c[i] < p) break;
                    n.c[i] = 0;
                }
                if (i < 1) break;
            }
        }
        return cnt;
    };

    int workers = std::min<int>(worker_count(), static_cast<int>(p));
    if (workers <= 1) return shard(0, p);
    std::vector<long long> parts(workers, 0);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; w++) {
        i64 lo = p * w / workers, hi = p * (w + 1) / workers;
        pool.emplace_back([&, w, lo, hi] { parts[w] = shard(lo, hi); });
    }
    for (auto& t : pool) t.join();
    long long cnt = 0;
    for (long long x : parts) cnt += x;
    return cnt;
}

}  // namespace

AffineCountReport count_variety_affine(const QuadForm& M, const Subspace& V, const FpVec& c,
                                       size_t budget) {
    require_same_field(M.p(), V.p());
    require_same_field(M.p(), c.p);
    if (V.dim() == 0) throw std::invalid_argument("affine count needs dim(V) >= 1");
    i64 p = M.p();
    int m = V.dim();
    const FpMat& B = V.basis();

    AffineCountReport rep;
    rep.codim = M.d() - m;
    rep.restricted_rank = restricted_rank(M, V, c);
    rep.main_term = ipow(p, m - 1);
    rep.count = count_zeros_grid(p, m, budget, [&](const FpVec& t) {
        FpVec n = c;
        for (int i = 0; i < m; i++) n = add(n, scale(t.c[i], B.row(i)));
        return M.eval(n) == 0;
    });
    rep.normalized_deviation = exact_ratio(rep.count - rep.main_term, rep.main_term);
    return rep;
}

CommonCountReport count_common_variety(const QuadForm& M, const std::vector<FpVec>& hs,
                                       size_t budget) {
    i64 p = M.p();
    int d = M.d();
    int r = static_cast<int>(hs.size());
    if (r >= d) throw std::invalid_argument("need fewer shifts than the ambient dimension");

    CommonCountReport rep;
    rep.r = r;
    rep.hs_independent = Subspace::span(p, d, hs).dim() == r;
    rep.estimate_applies = rep.hs_independent && d - 2 * r >= 3;
    rep.main_term = ipow(p, d - r - 1);

    // M(n+h)=0 and M(n)=0 iff M(n)=0 and the affine-linear difference
    // 2(hA).n + (hA).h + u.h vanishes.
    Fp fld(p);
    std::vector<FpVec> ws;
    std::vector<i64> cs;
    for (const auto& h : hs) {
        require_same_field(p, h.p);
        FpVec hA = vec_mat(h, M.A());
        ws.push_back(scale(2, hA));
        cs.push_back(fld.add(dot(hA, h), dot(M.u(), h)));
    }
    rep.count = count_zeros_grid(p, d, budget, [&](const FpVec& n) {
        if (M.eval(n) != 0) return false;
        for (size_t i = 0; i < ws.size(); i++)
            if (fld.add(dot(ws[i], n), cs[i]) != 0) return false;
        return true;
    });
    rep.normalized_deviation = exact_ratio(rep.count - rep.main_term, rep.main_term);
    return rep;
}

IsotropicFractionReport isotropic_tuple_fraction(const QuadForm& M, int k, long long samples,
                                                 uint64_t seed, size_t budget) {
    i64 p = M.p();
    int d = M.d();
    IsotropicFractionReport rep;

    double total = 1;
    for (int i = 0; i < k * d; i++) total *= static_cast<double>(p);
    auto tuple_of = [&](const FpVec& flat) {
        std::vector<FpVec> hs;
        for (int i = 0; i < k; i++) {
            FpVec h = FpVec::zero(p, d);
            for (int j = 0; j < d; j++) h.c[j] = flat.c[i * d + j];
            hs.push_back(h);
        }
        return hs;
    };

    if (total <= static_cast<double>(budget)) {
        rep.exact = true;
        rep.total = ipow(p, k * d);
        rep.isotropic = count_zeros_grid(p, k * d, budget, [&](const FpVec& flat) {
            return is_isotropic_tuple(M, tuple_of(flat));
        });
    } else {
        rep.exact = false;
        rep.total = samples;
        Rng rng(seed);
        for (long long s = 0; s < samples; s++)
            if (is_isotropic_tuple(M, tuple_of(rng.vec(p, k * d)))) rep.isotropic++;
    }
    rep.fraction = exact_ratio(rep.isotropic, rep.total);
    return rep;
}

std::string quadform_to_json(const QuadForm& M) {
    nlohmann::json j;
    j["p"] = M.p();
    j["d"] = M.d();
    j["A"] = M.A().a;
    j["u"] = M.u().c;
    j["v"] = M.v();
    return j.dump();
}

QuadForm quadform_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    i64 p = j.at("p").get<i64>();
    int d = j.at("d").get<int>();
    FpMat A(p, d, d);
    A.a = j.at("A").get<std::vector<i64>>();
    if (A.a.size() != static_cast<size_t>(d) * d) throw_mismatch("matrix payload size mismatch");
    FpVec u(p, j.at("u").get<std::vector<i64>>());
    if (u.d() != d) throw_mismatch("linear payload size mismatch");
    return QuadForm(p, A, u, j.at("v").get<i64>());
}

}  // namespace silab
