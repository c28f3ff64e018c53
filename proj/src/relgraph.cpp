#include "silab/relgraph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <json.hpp>

namespace silab {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::rational<BigInt>;

RelGraph::RelGraph(int n) : n_(n) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
    adj_.assign(static_cast<size_t>(n) * n, 0);
}

RelGraph RelGraph::from_fiber(const std::vector<GammaElement>& X) {
    RelGraph g(static_cast<int>(X.size()));
    if (!X.empty()) {
        const FpVec& h = X[0].h();
        for (const auto& x : X)
            if (!(x.h() == h)) throw_mismatch("fiber must share the projection value");
    }
    g.payload_ = X;
    for (int u = 0; u < g.n_; u++)
        for (int v = u + 1; v < g.n_; v++)
            if (related(X[u], X[v])) g.add_edge(u, v);
    return g;
}

void RelGraph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("vertex id");
    if (u == v) throw std::invalid_argument("self-loop");
    adj_[static_cast<size_t>(u) * n_ + v] = 1;
    adj_[static_cast<size_t>(v) * n_ + u] = 1;
}

int RelGraph::degree(int v) const {
    int deg = 0;
    for (int u = 0; u < n_; u++) deg += has_edge(v, u) ? 1 : 0;
    return deg;
}

long long RelGraph::edge_count() const {
    long long m = 0;
    for (int u = 0; u < n_; u++)
        for (int v = u + 1; v < n_; v++) m += has_edge(u, v) ? 1 : 0;
    return m;
}

RelGraph RelGraph::complement() const {
    RelGraph g(n_);
    for (int u = 0; u < n_; u++)
        for (int v = u + 1; v < n_; v++)
            if (!has_edge(u, v)) g.add_edge(u, v);
    return g;
}

RelGraph RelGraph::induced(const std::vector<int>& vs) const {
    RelGraph g(static_cast<int>(vs.size()));
    for (size_t i = 0; i < vs.size(); i++)
        for (size_t j = i + 1; j < vs.size(); j++)
            if (has_edge(vs[i], vs[j])) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    if (!payload_.empty())
        for (int v : vs) g.payload_.push_back(payload_.at(v));
    return g;
}

bool RelGraph::is_triangle_free() const {
    for (int a = 0; a < n_; a++)
        for (int b = a + 1; b < n_; b++) {
            if (!has_edge(a, b)) continue;
            for (int c = b + 1; c < n_; c++)
                if (has_edge(a, c) && has_edge(b, c)) return false;
        }
    return true;
}

std::string RelGraph::to_edge_list() const {
    std::ostringstream os;
    os << "p edge " << n_ << ' ' << edge_count() << '\n';
    for (int u = 0; u < n_; u++)
        for (int v = u + 1; v < n_; v++)
            if (has_edge(u, v)) os << "e " << u + 1 << ' ' << v + 1 << '\n';
    return os.str();
}

RelGraph RelGraph::parse_edge_list(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    RelGraph g;
    bool have_header = false;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag == "p") {
            std::string fmt;
            int n = 0;
            long long m = 0;
            if (!(ls >> fmt >> n >> m) || fmt != "edge") throw std::invalid_argument("bad header");
            g = RelGraph(n);
            have_header = true;
        } else if (tag == "e") {
            if (!have_header) throw std::invalid_argument("edge before header");
            int u = 0, v = 0;
            if (!(ls >> u >> v)) throw std::invalid_argument("bad edge line");
            g.add_edge(u - 1, v - 1);
        } else {
            throw std::invalid_argument("unknown line tag");
        }
    }
    if (!have_header) throw std::invalid_argument("missing header");
    return g;
}

std::string RelGraph::payload_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (size_t i = 0; i < payload_.size(); i++)
        j[std::to_string(i)] = nlohmann::json::parse(payload_[i].to_json());
    return j.dump();
}

AuxGraph::AuxGraph(int left, int right) : left(left), right(right) {
    if (left < 0 || right < 0) throw std::invalid_argument("negative side size");
    edges.assign(static_cast<size_t>(left) * right, 0);
}

void AuxGraph::add_edge(int x, int y) {
    if (x < 0 || y < 0 || x >= left || y >= right) throw std::out_of_range("vertex id");
    edges[static_cast<size_t>(x) * right + y] = 1;
}

int AuxGraph::left_degree(int x) const {
    int deg = 0;
    for (int y = 0; y < right; y++) deg += has_edge(x, y) ? 1 : 0;
    return deg;
}

bool AuxGraph::is_auxiliary_for(const RelGraph& G) const {
    if (left != G.n()) throw_mismatch("auxiliary graph left side");
    for (int y = 0; y < right; y++)
        for (int x = 0; x < left; x++) {
            if (!has_edge(x, y)) continue;
            for (int x2 = x + 1; x2 < left; x2++)
                if (has_edge(x2, y) && !G.has_edge(x, x2)) return false;
        }
    return true;
}

bool AuxGraph::is_dense(long long num, long long den) const {
    if (den <= 0 || num < 0) throw std::invalid_argument("bad density fraction");
    for (int x = 0; x < left; x++)
        if (static_cast<long long>(left_degree(x)) * den < num * right) return false;
    return true;
}

AuxGraph replicate_right(const AuxGraph& A, int factor) {
    if (factor < 1) throw std::invalid_argument("replication factor");
    AuxGraph B(A.left, A.right * factor);
    for (int x = 0; x < A.left; x++)
        for (int y = 0; y < A.right; y++)
            if (A.has_edge(x, y))
                for (int k = 0; k < factor; k++) B.add_edge(x, k * A.right + y);
    return B;
}

namespace {

void bron_kerbosch(const RelGraph& G, std::vector<int>& R, std::vector<int> P,
                   std::vector<int> X, std::vector<std::vector<int>>& out) {
    if (P.empty() && X.empty()) {
        out.push_back(R);
        return;
    }
    // Pivot: vertex of P ∪ X with the most neighbors in P.
    int pivot = -1, best = -1;
    for (int cand : P) {
        int cnt = 0;
        for (int v : P) cnt += G.has_edge(cand, v) ? 1 : 0;
        if (cnt > best) best = cnt, pivot = cand;
    }
    for (int cand : X) {
        int cnt = 0;
        for (int v : P) cnt += G.has_edge(cand, v) ? 1 : 0;
        if (cnt > best) best = cnt, pivot = cand;
    }
    std::vector<int> ext;
    for (int v : P)
        if (pivot < 0 || !G.has_edge(pivot, v)) ext.push_back(v);
    for (int v : ext) {
        std::vector<int> P2, X2;
        for (int u : P)
            if (G.has_edge(v, u)) P2.push_back(u);
        for (int u : X)
            if (G.has_edge(v, u)) X2.push_back(u);
        R.push_back(v);
        bron_kerbosch(G, R, std::move(P2), std::move(X2), out);
        R.pop_back();
        P.erase(std::find(P.begin(), P.end(), v));
        X.push_back(v);
    }
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const RelGraph& G) {
    std::vector<std::vector<int>> out;
    std::vector<int> R, P(G.n());
    std::iota(P.begin(), P.end(), 0);
    bron_kerbosch(G, R, std::move(P), {}, out);
    for (auto& c : out) std::sort(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Tomita-style max clique: greedy coloring bound plus branch and bound.
struct MaxCliqueSolver {
    const RelGraph& G;
    std::vector<int> best, cur;

    explicit MaxCliqueSolver(const RelGraph& g) : G(g) {}

    void expand(std::vector<int> P) {
        // Greedy-color P; process in reverse color order with pruning.
        std::vector<int> color(P.size(), 0), order;
        std::vector<std::vector<int>> classes;
        for (int v : P) {
            size_t k = 0;
            for (; k < classes.size(); k++) {
                bool ok = true;
                for (int u : classes[k]) ok = ok && !G.has_edge(u, v);
                if (ok) break;
            }
            if (k == classes.size()) classes.emplace_back();
            classes[k].push_back(v);
        }
        order.clear();
        color.clear();
        for (size_t k = 0; k < classes.size(); k++)
            for (int v : classes[k]) {
                order.push_back(v);
                color.push_back(static_cast<int>(k) + 1);
            }
        for (int i = static_cast<int>(order.size()) - 1; i >= 0; i--) {
            if (cur.size() + color[i] <= best.size()) return;
            int v = order[i];
            cur.push_back(v);
            std::vector<int> P2;
            for (int j = 0; j < i; j++)
                if (G.has_edge(v, order[j])) P2.push_back(order[j]);
            if (P2.empty()) {
                if (cur.size() > best.size()) best = cur;
            } else {
                expand(std::move(P2));
            }
            cur.pop_back();
        }
    }

    std::vector<int> solve() {
        std::vector<int> P(G.n());
        std::iota(P.begin(), P.end(), 0);
        std::sort(P.begin(), P.end(),
                  [&](int a, int b) { return G.degree(a) > G.degree(b); });
        expand(std::move(P));
        return best;
    }
};

// Greedy coloring (largest-degree-first); returns color classes.
std::vector<std::vector<int>> greedy_coloring(const RelGraph& G) {
    std::vector<int> order(G.n());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return G.degree(a) > G.degree(b); });
    std::vector<std::vector<int>> classes;
    for (int v : order) {
        size_t k = 0;
        for (; k < classes.size(); k++) {
            bool ok = true;
            for (int u : classes[k]) ok = ok && !G.has_edge(u, v);
            if (ok) break;
        }
        if (k == classes.size()) classes.emplace_back();
        classes[k].push_back(v);
    }
    return classes;
}

// Exact k-colorability by backtracking; fills the assignment on success.
bool color_with(const RelGraph& G, int k, const std::vector<int>& order, size_t idx,
                std::vector<int>& assign, int used) {
    if (idx == order.size()) return true;
    int v = order[idx];
    int cap = std::min(k, used + 1);
    for (int c = 0; c < cap; c++) {
        bool ok = true;
        for (int u = 0; u < G.n() && ok; u++)
            if (assign[u] == c && G.has_edge(u, v)) ok = false;
        if (!ok) continue;
        assign[v] = c;
        if (color_with(G, k, order, idx + 1, assign, std::max(used, c + 1))) return true;
        assign[v] = -1;
    }
    return false;
}

}  // namespace

int independence_number(const RelGraph& G) {
    if (G.n() == 0) return 0;
    RelGraph comp = G.complement();
    MaxCliqueSolver s(comp);
    return static_cast<int>(s.solve().size());
}

CliqueCoverResult cc_number(const RelGraph& G, int budget) {
    CliqueCoverResult res;
    if (G.n() == 0) {
        res.exact = true;
        return res;
    }
    RelGraph comp = G.complement();
    auto greedy = greedy_coloring(comp);  // color classes = cliques of G
    res.upper = static_cast<int>(greedy.size());
    res.lower = independence_number(G);
    if (G.n() > budget) {
        res.value = res.upper;
        res.partition = greedy;
        return res;
    }
    std::vector<int> order(G.n());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return comp.degree(a) > comp.degree(b); });
    res.partition = greedy;
    for (int k = res.lower; k < res.upper; k++) {
        std::vector<int> assign(G.n(), -1);
        if (color_with(comp, k, order, 0, assign, 0)) {
            res.partition.assign(k, {});
            for (int v = 0; v < G.n(); v++) res.partition[assign[v]].push_back(v);
            res.upper = k;
            break;
        }
    }
    res.exact = true;
    res.value = res.upper;
    res.lower = res.value;
    // Validate the certificate: a partition into cliques of G.
    std::vector<int> seen(G.n(), 0);
    for (const auto& part : res.partition)
        for (size_t i = 0; i < part.size(); i++) {
            seen[part[i]]++;
            for (size_t j = i + 1; j < part.size(); j++)
                if (!G.has_edge(part[i], part[j]))
                    throw std::logic_error("clique cover certificate invalid");
        }
    for (int v = 0; v < G.n(); v++)
        if (seen[v] != 1) throw std::logic_error("clique cover is not a partition");
    return res;
}

namespace {

// Dense exact-rational simplex (Bland's rule), minimizing c.x over Ax = b,
// x >= 0, starting from a given basic feasible tableau.
struct Simplex {
    int rows, cols;                  // constraint rows, variable count
    std::vector<std::vector<Rat>> T; // rows x (cols+1), last column = b
    std::vector<Rat> z;              // reduced cost row, size cols+1
    std::vector<int> basis;          // basic variable per row

    void price(const std::vector<Rat>& c) {
        z.assign(cols + 1, Rat(0));
        for (int j = 0; j <= cols; j++) {
            Rat acc = j < cols ? c[j] : Rat(0);
            for (int i = 0; i < rows; i++) acc -= c[basis[i]] * T[i][j];
            z[j] = acc;
        }
    }

    void pivot(int r, int e) {
        Rat inv = T[r][e];
        for (int j = 0; j <= cols; j++) T[r][j] /= inv;
        for (int i = 0; i < rows; i++) {
            if (i == r || T[i][e] == Rat(0)) continue;
            Rat f = T[i][e];
            for (int j = 0; j <= cols; j++) T[i][j] -= f * T[r][j];
        }
        Rat fz = z[e];
        if (fz != Rat(0))
            for (int j = 0; j <= cols; j++) z[j] -= fz * T[r][j];
        basis[r] = e;
    }

    // Returns the optimal objective value; fills x.
    Rat minimize(const std::vector<Rat>& c, std::vector<Rat>& x) {
        price(c);
        for (;;) {
            int e = -1;
            for (int j = 0; j < cols; j++)
                if (z[j] < Rat(0)) {
                    e = j;
                    break;
                }
            if (e < 0) break;
            int r = -1;
            for (int i = 0; i < rows; i++) {
                if (T[i][e] <= Rat(0)) continue;
                if (r < 0) {
                    r = i;
                    continue;
                }
                Rat cur = T[i][cols] / T[i][e], best = T[r][cols] / T[r][e];
                if (cur < best || (cur == best && basis[i] < basis[r])) r = i;
            }
            if (r < 0) throw std::logic_error("unbounded linear program");
            pivot(r, e);
        }
        x.assign(cols, Rat(0));
        for (int i = 0; i < rows; i++) x[basis[i]] = T[i][cols];
        Rat obj(0);
        for (int j = 0; j < cols; j++) obj += c[j] * x[j];
        return obj;
    }
};

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << r.numerator() << '/' << r.denominator();
    return os.str();
}

}  // namespace

DensityDependenceResult dd_number(const RelGraph& G, int budget) {
    DensityDependenceResult res;
    if (G.n() == 0) {
        res.exact = true;
        return res;
    }
    if (G.n() > budget) {
        auto cc = cc_number(G, budget);
        res.upper = cc.value;  // dd <= cc
        // Any subset holds a clique of size >= |X'|/dd, so dd >= n/omega;
        // the greedy chromatic number bounds omega from above.
        int chi = static_cast<int>(greedy_coloring(G).size());
        res.lower = std::max(1, (G.n() + chi - 1) / chi);
        res.value = res.upper;
        return res;
    }
    auto cliques = maximal_cliques(G);
    int m = static_cast<int>(cliques.size());
    int n = G.n();

    // Maximize t subject to: sum_{Q ni v} y_Q - t >= 0 for each vertex v,
    // sum_Q y_Q = 1, y >= 0. Variables: y_0..y_{m-1}, t, slacks s_0..s_{n-1}.
    Simplex sx;
    sx.rows = n + 1;
    sx.cols = m + 1 + n;
    sx.T.assign(sx.rows, std::vector<Rat>(sx.cols + 1, Rat(0)));
    for (int v = 0; v < n; v++) {
        // Stored negated so the slack enters with +1: s_v + t - sum y_Q = 0.
        for (int q = 0; q < m; q++)
            if (std::binary_search(cliques[q].begin(), cliques[q].end(), v))
                sx.T[v][q] = Rat(-1);
        sx.T[v][m] = Rat(1);
        sx.T[v][m + 1 + v] = Rat(1);
    }
    for (int q = 0; q < m; q++) sx.T[n][q] = Rat(1);
    sx.T[n][sx.cols] = Rat(1);
    sx.basis.resize(sx.rows);
    for (int v = 0; v < n; v++) sx.basis[v] = m + 1 + v;
    sx.basis[n] = 0;  // enter y_0 manually: feasible start y_0 = 1, t = 0
    for (int v = 0; v < n; v++) {
        Rat f = sx.T[v][0];
        if (f != Rat(0))
            for (int j = 0; j <= sx.cols; j++) sx.T[v][j] -= f * sx.T[n][j];
    }
    std::vector<Rat> c(sx.cols, Rat(0));
    c[m] = Rat(-1);  // minimize -t
    std::vector<Rat> x;
    Rat t_star = -sx.minimize(c, x);
    if (t_star <= Rat(0)) throw std::logic_error("degenerate clique system");
    res.t_star = rat_to_string(t_star);

    // dd = ceil(1/t*).
    BigInt num = t_star.denominator(), den = t_star.numerator();
    BigInt dd = num / den + (num % den == 0 ? 0 : 1);
    res.value = static_cast<int>(dd);
    res.lower = res.upper = res.value;
    res.exact = true;

    // Materialize the certificate: scale the clique weights to integers.
    BigInt lcm(1);
    for (int q = 0; q < m; q++) {
        BigInt dq = x[q].denominator();
        lcm = lcm / boost::multiprecision::gcd(lcm, dq) * dq;
    }
    if (lcm <= BigInt(100000)) {
        int total = 0;
        std::vector<int> counts(m, 0);
        for (int q = 0; q < m; q++) {
            counts[q] = static_cast<int>(x[q].numerator() * (lcm / x[q].denominator()));
            total += counts[q];
        }
        res.certificate = AuxGraph(n, total);
        int y = 0;
        for (int q = 0; q < m; q++)
            for (int rep = 0; rep < counts[q]; rep++, y++) {
                res.clique_of_right.push_back(q);
                for (int v : cliques[q]) res.certificate.add_edge(v, y);
            }
        if (!res.certificate.is_auxiliary_for(G))
            throw std::logic_error("density certificate is not auxiliary");
        if (!res.certificate.is_dense(1, res.value))
            throw std::logic_error("density certificate below target density");
    }
    return res;
}

int dd_brute_force(const RelGraph& G, int max_right) {
    if (G.n() == 0) return 0;
    auto cliques = maximal_cliques(G);
    int m = static_cast<int>(cliques.size());
    int n = G.n();
    // Best min-coverage fraction over clique multisets of size <= max_right.
    long long best_num = 0, best_den = 1;
    std::vector<int> cover(n, 0), pick;
    long long work = 0;
    std::function<void(int, int, int)> rec = [&](int start, int left, int size) {
        if (++work > 20000000) throw std::runtime_error("brute-force budget exceeded");
        if (left == 0) {
            int mincov = *std::min_element(cover.begin(), cover.end());
            if (static_cast<long long>(mincov) * best_den > best_num * size) {
                best_num = mincov;
                best_den = size;
            }
            return;
        }
        for (int q = start; q < m; q++) {
            for (int v : cliques[q]) cover[v]++;
            rec(q, left - 1, size);
            for (int v : cliques[q]) cover[v]--;
        }
    };
    for (int N = 1; N <= max_right; N++) rec(0, N, N);
    if (best_num == 0) throw std::logic_error("no covering multiset found");
    // Smallest C with best >= 1/C.
    return static_cast<int>((best_den + best_num - 1) / best_num);
}

RelGraph mycielskian(const RelGraph& G) {
    int n = G.n();
    RelGraph g(2 * n + 1);
    for (int u = 0; u < n; u++)
        for (int v = u + 1; v < n; v++)
            if (G.has_edge(u, v)) {
                g.add_edge(u, v);
                g.add_edge(u, n + v);
                g.add_edge(v, n + u);
            }
    for (int v = 0; v < n; v++) g.add_edge(n + v, 2 * n);
    return g;
}

namespace {

bool iso_extend(const RelGraph& A, const RelGraph& B, std::vector<int>& map,
                std::vector<char>& used, int v) {
    if (v == A.n()) return true;
    for (int w = 0; w < B.n(); w++) {
        if (used[w] || A.degree(v) != B.degree(w)) continue;
        bool ok = true;
        for (int u = 0; u < v && ok; u++)
            if (A.has_edge(u, v) != B.has_edge(map[u], w)) ok = false;
        if (!ok) continue;
        map[v] = w;
        used[w] = 1;
        if (iso_extend(A, B, map, used, v + 1)) return true;
        used[w] = 0;
    }
    return false;
}

}  // namespace

bool is_isomorphic(const RelGraph& A, const RelGraph& B) {
    if (A.n() != B.n() || A.edge_count() != B.edge_count()) return false;
    std::vector<int> da, db;
    for (int v = 0; v < A.n(); v++) da.push_back(A.degree(v)), db.push_back(B.degree(v));
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;
    std::vector<int> map(A.n(), -1);
    std::vector<char> used(A.n(), 0);
    return iso_extend(A, B, map, used, 0);
}

namespace {

struct CoreScratch {
    const std::vector<GammaElement>& X;
    int k, s, K;
    std::vector<std::vector<int>> cliques;
    std::vector<int> bad;
    std::vector<Subspace> Y;

    // Recursive decomposition of the sub-fiber given by sorted indices.
    void decompose(std::vector<int> idx, int D) {
        if (idx.empty()) return;
        if (D <= 0) throw std::invalid_argument("density dependence bound violated");

        if (k == 1 || D == 1) {
            // Transitive regime: split into mutual-relation classes.
            std::vector<std::vector<int>> classes;
            for (int i : idx) {
                bool placed = false;
                for (auto& cls : classes)
                    if (related(X[cls[0]], X[i])) {
                        cls.push_back(i);
                        placed = true;
                        break;
                    }
                if (!placed) classes.push_back({i});
            }
            if (D == 1 && classes.size() > 1)
                throw std::invalid_argument("density dependence bound violated");
            for (auto& cls : classes) cliques.push_back(std::move(cls));
            return;
        }

        // Greedy chain x_1..x_r with independent V's forming a mutual class.
        std::vector<int> chain{idx[0]};
        Subspace W = X[idx[0]].V();
        for (;;) {
            if (static_cast<int>(chain.size()) == K) break;
            int next = -1;
            for (int i : idx) {
                bool in_b1 = true;
                for (int c : chain) in_b1 = in_b1 && related(X[c], X[i]);
                if (!in_b1) continue;
                // A trivial V never blocks the stop condition, so such a
                // member (possibly already in the chain) keeps extending.
                if (intersect(W, X[i].V()).is_trivial()) {
                    next = i;
                    break;
                }
            }
            if (next < 0) break;
            chain.push_back(next);
            W = sum(W, X[next].V());
        }
        int r = static_cast<int>(chain.size());

        std::vector<int> B1, B2;
        for (int i : idx) {
            bool in_b1 = true;
            for (int c : chain) in_b1 = in_b1 && related(X[c], X[i]);
            (in_b1 ? B1 : B2).push_back(i);
        }

        // Members failing relation with x_j have dd bound D-1 when pooled
        // with x_j as an isolated vertex (lonely-vertex argument); recurse.
        std::vector<std::vector<int>> groups(r);
        for (int i : B2)
            for (int j = 0; j < r; j++)
                if (!related(X[chain[j]], X[i])) {
                    groups[j].push_back(i);
                    break;
                }
        for (auto& grp : groups) decompose(std::move(grp), D - 1);

        if (r < K) {
            // Every remaining member meets the accumulated span nontrivially.
            // When the trapped set happens to be mutually related it is still
            // a valid clique, so prefer that over marking it obstructed.
            bool clique = true;
            for (size_t i = 0; i < B1.size() && clique; i++)
                for (size_t j = i + 1; j < B1.size() && clique; j++)
                    clique = related(X[B1[i]], X[B1[j]]);
            if (clique) {
                cliques.push_back(B1);
            } else {
                Y.push_back(W);
                for (int i : B1) bad.push_back(i);
            }
        } else {
            cliques.push_back(B1);
        }
    }
};

}  // namespace

WeakCoreReport weak_core_decompose(const std::vector<GammaElement>& X, int D, int k, int s) {
    if (X.empty()) throw std::invalid_argument("empty fiber");
    if (D < 1 || k < 1 || s < 0) throw std::invalid_argument("bad parameters");
    const QuadForm& M = X[0].M();
    for (const auto& x : X) {
        if (!x.h().is_zero()) throw_mismatch("decomposition needs the zero fiber");
        if (!x.in_gamma_k(k)) throw_mismatch("fiber member outside the declared gamma level");
    }

    WeakCoreReport rep;
    rep.dim_hypothesis = k < 2 || M.d() >= 2 * (k - 2) * s + 6 * k - 1;
    rep.y_dim_bound = (s + 2 * k - 2) * (k - 1);

    CoreScratch scratch{X, k, s, s + 2 * k - 1, {}, {}, {}};
    std::vector<int> idx(X.size());
    std::iota(idx.begin(), idx.end(), 0);
    // Reproducible "arbitrary" picks: smallest canonical element first.
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return X[a] < X[b]; });
    scratch.decompose(std::move(idx), D);

    rep.cliques = std::move(scratch.cliques);
    rep.bad = std::move(scratch.bad);
    rep.Y = std::move(scratch.Y);
    std::sort(rep.bad.begin(), rep.bad.end());
    rep.clique_count = static_cast<int>(rep.cliques.size());
    rep.subspace_count = static_cast<int>(rep.Y.size());

    rep.cliques_verified = true;
    for (const auto& cl : rep.cliques)
        for (size_t i = 0; i < cl.size(); i++)
            for (size_t j = i + 1; j < cl.size(); j++)
                if (!related(X[cl[i]], X[cl[j]])) rep.cliques_verified = false;
    rep.obstruction_verified = true;
    for (int i : rep.bad) {
        bool hit = false;
        for (const auto& W : rep.Y)
            if (!intersect(X[i].V(), W).is_trivial()) hit = true;
        if (!hit) rep.obstruction_verified = false;
    }
    for (const auto& W : rep.Y)
        if (W.dim() > rep.y_dim_bound) rep.obstruction_verified = false;
    return rep;
}

ClassificationReport classification_check(const std::vector<GammaElement>& X,
                                          const std::vector<Poly>& C0,
                                          const std::vector<Subspace>& Y, int K, int C,
                                          int D) {
    if (X.empty()) throw std::invalid_argument("empty fiber");
    const QuadForm& M = X[0].M();
    i64 p = M.p();
    int d = M.d();
    int s = X[0].s();
    for (const auto& x : X)
        if (!x.h().is_zero()) throw_mismatch("classification needs the zero fiber");

    bool has_zero = false;
    for (const auto& f : C0) has_zero = has_zero || f.is_zero();
    if (!has_zero) throw std::invalid_argument("representative set must contain zero");
    if (static_cast<int>(C0.size()) > K + 1)
        throw std::invalid_argument("too many representatives");
    MIdeal base(M, Subspace(p, d));
    for (size_t i = 0; i < C0.size(); i++) {
        if (!(C0[i].is_zero() || C0[i].is_homogeneous(s)))
            throw std::invalid_argument("representative of wrong degree");
        for (size_t j = i + 1; j < C0.size(); j++)
            if (contains(base, sub(C0[i], C0[j]), s).member)
                throw std::invalid_argument("representatives congruent modulo the form ideal");
    }
    if (static_cast<int>(Y.size()) > C) throw std::invalid_argument("too many obstruction parts");
    for (const auto& W : Y)
        if (W.dim() > D) throw std::invalid_argument("obstruction part too large");

    ClassificationReport rep;
    rep.holds = true;
    for (size_t i = 0; i < X.size(); i++) {
        bool meets = false;
        for (const auto& W : Y) meets = meets || !intersect(X[i].V(), W).is_trivial();
        if (meets) continue;
        bool matched = false;
        for (const auto& g : C0)
            matched = matched || contains(MIdeal(M, X[i].V()), sub(X[i].f(), g), s).member;
        if (!matched) {
            rep.holds = false;
            rep.violating_index = static_cast<int>(i);
            return rep;
        }
    }
    return rep;
}

}  // namespace silab
