#include "silab/poly.hpp"

#include <algorithm>

#include "silab/rng.hpp"

namespace silab {

int Monomial::degree() const {
    int s = 0;
    for (int x : e) s += x;
    return s;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.e < b.e;  // within a degree, plain lex on the exponent vector
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    if (a.d() != b.d()) throw_mismatch("monomial arity");
    Monomial m = a;
    for (int i = 0; i < b.d(); i++) m.e[i] += b.e[i];
    return m;
}

static void collect_degree(int d, int s, int idx, Monomial& cur, std::vector<Monomial>& out) {
    if (idx == d - 1) {
        cur.e[idx] = s;
        out.push_back(cur);
        cur.e[idx] = 0;
        return;
    }
    for (int k = s; k >= 0; k--) {
        cur.e[idx] = k;
        collect_degree(d, s - k, idx + 1, cur, out);
    }
    cur.e[idx] = 0;
}

std::vector<Monomial> monomials_of_degree(int d, int s) {
    std::vector<Monomial> out;
    if (s < 0) return out;
    Monomial cur = Monomial::one(d);
    collect_degree(d, s, 0, cur, out);
    return out;  // descending lex within the degree = descending grlex
}

std::vector<Monomial> monomials_up_to(int d, int s) {
    std::vector<Monomial> out;
    for (int k = s; k >= 0; k--) {
        auto part = monomials_of_degree(d, k);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;  // descending grlex overall
}

static int g_degree_cap = 8;
int poly_degree_cap() { return g_degree_cap; }
void set_poly_degree_cap(int cap) { g_degree_cap = cap; }

Poly::Poly(i64 p, int d) : p_(p), d_(d) { Fp check(p); }

Poly Poly::constant(i64 p, int d, i64 c) {
    Poly f(p, d);
    f.set_coeff(Monomial::one(d), c);
    return f;
}

Poly Poly::variable(i64 p, int d, int i) {
    Poly f(p, d);
    Monomial m = Monomial::one(d);
    m.e[i] = 1;
    f.set_coeff(m, 1);
    return f;
}

Poly Poly::linear_form(i64 p, const FpVec& v) {
    require_same_field(p, v.p);
    Poly f(p, v.d());
    for (int i = 0; i < v.d(); i++) {
        if (v.c[i] == 0) continue;
        Monomial m = Monomial::one(v.d());
        m.e[i] = 1;
        f.set_coeff(m, v.c[i]);
    }
    return f;
}

Poly Poly::monomial(i64 p, int d, const Monomial& m, i64 coef) {
    Poly f(p, d);
    f.set_coeff(m, coef);
    return f;
}

int Poly::degree() const {
    int s = -1;
    for (const auto& [m, c] : c_) s = std::max(s, m.degree());
    return s;
}

i64 Poly::coeff(const Monomial& m) const {
    auto it = c_.find(m);
    return it == c_.end() ? 0 : it->second;
}

void Poly::set_coeff(const Monomial& m, i64 v) {
    if (m.d() != d_) throw_mismatch("monomial arity vs polynomial");
    if (m.degree() > g_degree_cap)
        throw std::invalid_argument("monomial degree exceeds configured cap (" +
                                    std::to_string(g_degree_cap) + ")");
    Fp f(p_);
    v = f.norm(v);
    if (v == 0)
        c_.erase(m);
    else
        c_[m] = v;
}

Poly Poly::homogeneous_component(int s) const {
    Poly out(p_, d_);
    if (s < 0) return out;
    for (const auto& [m, c] : c_)
        if (m.degree() == s) out.c_[m] = c;
    return out;
}

bool Poly::is_homogeneous(int s) const {
    for (const auto& [m, c] : c_)
        if (m.degree() != s) return false;
    return true;
}

i64 Poly::eval(const FpVec& n) const {
    require_same_field(p_, n.p);
    if (n.d() != d_) throw_mismatch("evaluation point dimension");
    Fp f(p_);
    i64 acc = 0;
    for (const auto& [m, c] : c_) {
        i64 t = c;
        for (int i = 0; i < d_ && t != 0; i++) {
            if (m.e[i] == 0) continue;
            t = f.mul(t, f.pow(n.c[i], m.e[i]));
        }
        acc = f.add(acc, t);
    }
    return acc;
}

bool Poly::operator<(const Poly& o) const {
    GrlexLess less;
    auto it = c_.begin();
    auto jt = o.c_.begin();
    for (; it != c_.end() && jt != o.c_.end(); ++it, ++jt) {
        if (less(it->first, jt->first)) return true;
        if (less(jt->first, it->first)) return false;
        if (it->second != jt->second) return it->second < jt->second;
    }
    return it == c_.end() && jt != o.c_.end();
}

std::string Poly::to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    // Leading (largest grlex) term first.
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        if (!out.empty()) out += "+";
        out += std::to_string(it->second);
        for (int i = 0; i < d_; i++)
            if (it->first.e[i] > 0)
                out += "*x" + std::to_string(i + 1) + "^" + std::to_string(it->first.e[i]);
    }
    return out;
}

Poly Poly::parse(i64 p, int d, const std::string& text) {
    Poly f(p, d);
    Fp fld(p);
    if (text.empty()) throw std::invalid_argument("empty polynomial text");
    if (text == "0") return f;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t plus = text.find('+', pos);
        std::string term = text.substr(pos, plus == std::string::npos ? plus : plus - pos);
        if (term.empty()) throw std::invalid_argument("empty term in polynomial text");
        size_t tpos = 0;
        size_t star = term.find('*', tpos);
        std::string coef_str = term.substr(tpos, star == std::string::npos ? star : star - tpos);
        i64 coef;
        try {
            size_t used = 0;
            coef = std::stoll(coef_str, &used);
            if (used != coef_str.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw std::invalid_argument("bad coefficient '" + coef_str + "'");
        }
        Monomial m = Monomial::one(d);
        while (star != std::string::npos) {
            tpos = star + 1;
            star = term.find('*', tpos);
            std::string factor = term.substr(tpos, star == std::string::npos ? star : star - tpos);
            if (factor.size() < 2 || factor[0] != 'x')
                throw std::invalid_argument("bad factor '" + factor + "'");
            size_t caret = factor.find('^');
            int var, exp;
            try {
                var = std::stoi(factor.substr(1, caret == std::string::npos ? caret : caret - 1));
                exp = caret == std::string::npos ? 1 : std::stoi(factor.substr(caret + 1));
            } catch (const std::exception&) {
                throw std::invalid_argument("bad factor '" + factor + "'");
            }
            if (var < 1 || var > d) throw std::invalid_argument("variable index out of range");
            if (exp < 0) throw std::invalid_argument("negative exponent");
            m.e[var - 1] += exp;
        }
        f.set_coeff(m, fld.add(f.coeff(m), fld.norm(coef)));
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    return f;
}

Poly add(const Poly& a, const Poly& b) {
    require_same_field(a.p(), b.p());
    if (a.d() != b.d()) throw_mismatch("polynomial arity");
    Fp f(a.p());
    Poly out = a;
    for (const auto& [m, c] : b.terms()) out.set_coeff(m, f.add(out.coeff(m), c));
    return out;
}

Poly sub(const Poly& a, const Poly& b) { return add(a, neg(b)); }

Poly neg(const Poly& a) {
    Fp f(a.p());
    Poly out(a.p(), a.d());
    for (const auto& [m, c] : a.terms()) out.set_coeff(m, f.neg(c));
    return out;
}

Poly scale(i64 s, const Poly& a) {
    Fp f(a.p());
    s = f.norm(s);
    Poly out(a.p(), a.d());
    for (const auto& [m, c] : a.terms()) out.set_coeff(m, f.mul(s, c));
    return out;
}

Poly mul(const Poly& a, const Poly& b) {
    require_same_field(a.p(), b.p());
    if (a.d() != b.d()) throw_mismatch("polynomial arity");
    Fp f(a.p());
    Poly out(a.p(), a.d());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            Monomial m = mono_mul(ma, mb);
            out.set_coeff(m, f.add(out.coeff(m), f.mul(ca, cb)));
        }
    return out;
}

Poly pow(const Poly& a, int e) {
    Poly out = Poly::constant(a.p(), a.d(), 1);
    for (int i = 0; i < e; i++) out = mul(out, a);
    return out;
}

Poly shift(const Poly& f, const FpVec& h) {
    require_same_field(f.p(), h.p);
    if (h.d() != f.d()) throw_mismatch("shift vector dimension");
    // Substitute x_i -> x_i + h_i.
    Poly out(f.p(), f.d());
    for (const auto& [m, c] : f.terms()) {
        Poly term = Poly::constant(f.p(), f.d(), c);
        for (int i = 0; i < f.d(); i++) {
            if (m.e[i] == 0) continue;
            Poly base = add(Poly::variable(f.p(), f.d(), i), Poly::constant(f.p(), f.d(), h.c[i]));
            term = mul(term, pow(base, m.e[i]));
        }
        out = add(out, term);
    }
    return out;
}

Poly compose_affine(const Poly& f, const FpMat& B, const FpVec& c) {
    require_same_field(f.p(), B.p);
    require_same_field(f.p(), c.p);
    if (B.cols != f.d() || c.d() != f.d()) throw_mismatch("composition dimension");
    int m = B.rows;
    // x_j -> sum_i t_i B[i][j] + c_j
    std::vector<Poly> subs;
    for (int j = 0; j < f.d(); j++) {
        FpVec col = FpVec::zero(f.p(), m);
        for (int i = 0; i < m; i++) col.c[i] = B.at(i, j);
        subs.push_back(add(Poly::linear_form(f.p(), col), Poly::constant(f.p(), m, c.c[j])));
    }
    Poly out(f.p(), m);
    for (const auto& [mono, coef] : f.terms()) {
        Poly term = Poly::constant(f.p(), m, coef);
        for (int j = 0; j < f.d(); j++)
            if (mono.e[j] > 0) term = mul(term, pow(subs[j], mono.e[j]));
        out = add(out, term);
    }
    return out;
}

std::vector<FpVec> enumerate_points(i64 p, int d, size_t budget) {
    size_t total = 1;
    for (int i = 0; i < d; i++) {
        total *= static_cast<size_t>(p);
        if (total > budget)
            throw std::runtime_error("enumeration budget exceeded: need p^" + std::to_string(d));
    }
    std::vector<FpVec> out;
    out.reserve(total);
    FpVec v = FpVec::zero(p, d);
    for (size_t i = 0; i < total; i++) {
        out.push_back(v);
        for (int j = d - 1; j >= 0; j--) {
            if (++v.c[j] < p) break;
            v.c[j] = 0;
        }
    }
    return out;
}

std::vector<FpVec> variety(const Poly& f, size_t budget) {
    std::vector<FpVec> out;
    for (const auto& n : enumerate_points(f.p(), f.d(), budget))
        if (f.eval(n) == 0) out.push_back(n);
    return out;
}

ZeroVerdict is_zero_by_sampling(const Poly& f, int trials, uint64_t seed) {
    ZeroVerdict v;
    if (f.is_zero()) {
        v.kind = ZeroVerdict::ZeroStructural;
        return v;
    }
    int deg = f.degree();
    if (deg >= f.p())
        throw std::domain_error("is_zero_by_sampling requires deg(f) < p");
    Rng rng(seed);
    for (int t = 0; t < trials; t++) {
        FpVec n = rng.vec(f.p(), f.d());
        if (f.eval(n) != 0) {
            v.kind = ZeroVerdict::Nonzero;
            v.witness = n;
            v.trials = t + 1;
            return v;
        }
    }
    v.kind = ZeroVerdict::ZeroSampled;
    v.trials = trials;
    v.failure_bound = "(" + std::to_string(deg) + "/" + std::to_string(f.p()) + ")^" +
                      std::to_string(trials);
    return v;
}

FpVec poly_to_coords(const Poly& f, const std::vector<Monomial>& cols) {
    FpVec v = FpVec::zero(f.p(), static_cast<int>(cols.size()));
    for (size_t i = 0; i < cols.size(); i++) v.c[i] = f.coeff(cols[i]);
    // Every stored term must be representable in the column list.
    size_t nonzero = 0;
    for (i64 x : v.c)
        if (x != 0) nonzero++;
    if (nonzero != f.terms().size())
        throw std::invalid_argument("polynomial has terms outside the monomial column list");
    return v;
}

Poly coords_to_poly(i64 p, int d, const FpVec& coords, const std::vector<Monomial>& cols) {
    if (coords.c.size() != cols.size()) throw_mismatch("coords vs columns");
    Poly f(p, d);
    for (size_t i = 0; i < cols.size(); i++) f.set_coeff(cols[i], coords.c[i]);
    return f;
}

}  // namespace silab
