#include "ssg/isograph.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>
#include <sstream>

#include "json.hpp"

#include "ssg/parallel.hpp"
#include "ssg/search.hpp"

namespace ssg {

bool label_less(const Label& x, const Label& y) {
    bool xr = x.b != 0, yr = y.b != 0;
    if (xr != yr) return !xr;
    return x < y;
}

size_t IsogenyGraph::index_of(const Label& j) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), j, label_less);
    if (it == vertices.end() || *it != j) throw Error(ErrorCode::InvalidInput, "label is not a vertex");
    return size_t(it - vertices.begin());
}

u64 IsogenyGraph::multiplicity(const Label& a, const Label& b) const {
    auto it = edges.find({a, b});
    return it == edges.end() ? 0 : it->second;
}

u64 IsogenyGraph::out_degree(const Label& j) const {
    u64 s = 0;
    for (auto it = edges.lower_bound({j, Label{0, 0}}); it != edges.end() && it->first.first == j; ++it) s += it->second;
    return s;
}

bool operator==(const IsogenyGraph& a, const IsogenyGraph& b) {
    return a.p == b.p && a.ell == b.ell && a.nonresidue == b.nonresidue && a.vertices == b.vertices &&
           a.edges == b.edges;
}

void canonicalize(IsogenyGraph& G) {
    std::sort(G.vertices.begin(), G.vertices.end(), label_less);
    G.vertices.erase(std::unique(G.vertices.begin(), G.vertices.end()), G.vertices.end());
    for (auto it = G.edges.begin(); it != G.edges.end();) {
        if (it->second == 0)
            it = G.edges.erase(it);
        else
            ++it;
    }
}

namespace {

u64 vertex_seed(u64 seed, const Label& j) {
    SplitMix64 h(seed ^ (j.a * 0x9e3779b97f4a7c15ULL) ^ (j.b * 0xc2b2ae3d27d4eb4fULL));
    return h.next();
}

Label to_label(const Fp2Field&, const Fp2Elem& x) { return x; }
Label to_label(const TowerField& K, const TowerElem& x) { return K.to_base(x); }

Fp2Elem lift(const Fp2Field&, u64 a) { return {a, 0}; }
TowerElem lift(const TowerField& K, u64 a) { return K.embed({a, 0}); }

// Breadth-first walk; expand(model) returns the codomain models, one per
// kernel.  Layers are expanded in parallel and merged in frontier order.
template <class F, class Expand>
IsogenyGraph walk(const F& K, const CurveModel<F>& start, u64 p, u64 ell, Expand expand) {
    IsogenyGraph G;
    G.p = p;
    G.ell = ell;
    G.nonresidue = least_nonresidue(p);
    std::set<Label> seen;
    std::vector<std::pair<Label, CurveModel<F>>> frontier;
    Label j0 = to_label(K, j_invariant(K, start));
    seen.insert(j0);
    frontier.push_back({j0, start});
    while (!frontier.empty()) {
        std::vector<std::vector<std::pair<Label, CurveModel<F>>>> out(frontier.size());
        parallel_for(frontier.size(), [&](size_t i) {
            for (auto& m : expand(frontier[i].first, frontier[i].second))
                out[i].push_back({to_label(K, j_invariant(K, m)), m});
        });
        std::vector<std::pair<Label, CurveModel<F>>> next;
        for (size_t i = 0; i < frontier.size(); ++i) {
            for (auto& [j, m] : out[i]) {
                ++G.edges[{frontier[i].first, j}];
                if (seen.insert(j).second) next.push_back({j, m});
            }
        }
        frontier = std::move(next);
    }
    G.vertices.assign(seen.begin(), seen.end());
    canonicalize(G);
    return G;
}

template <class F>
IsogenyGraph velu_walk(const F& K, u64 p, u64 ell, int n, u64 seed) {
    auto found = find_supersingular(p);
    PrimeField Fp(p);
    auto S = to_short(Fp, found.model);
    CurveModel<F> E{Shape::Short, lift(K, S.c1), lift(K, S.c2)};
    u64 pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    u64 NE = (n % 2) ? pn + 1 : pn - 1;
    u64 NT = (n % 2) ? pn - 1 : pn + 1;
    u64 N = NE;
    if (NE % ell != 0) {
        if (NT % ell != 0) throw Error(ErrorCode::WrongGroupStructure, "ell divides neither p^n + 1 nor p^n - 1");
        E = quadratic_twist(K, E);
        N = NT;
    }
    auto expand = [&](const Label& j, const CurveModel<F>& m) {
        SplitMix64 rng(vertex_seed(seed, j));
        auto basis = torsion_subgroups(K, m, ell, N, rng);
        std::vector<CurveModel<F>> res;
        for (auto& P : basis.subgroups) res.push_back(velu_quotient(K, m, P, ell));
        return res;
    };
    return walk(K, E, p, ell, expand);
}

}  // namespace

IsogenyGraph graph_method(u64 p, u64 ell, u64 seed, u128 field_cap) {
    if (p <= 3 || !is_prime(p)) throw Error(ErrorCode::InvalidInput, "graph_method needs a prime p > 3");
    if (ell < 2 || !is_prime(ell)) throw Error(ErrorCode::InvalidInput, "ell must be prime");
    if (p == ell) throw Error(ErrorCode::EqualPrimes, "p == ell");
    if (u128(p) * p >= field_cap) throw Error(ErrorCode::FieldTooLarge, "F_{p^2} exceeds the field cap");
    if (ell == 2) {
        Fp2Field K(p);
        auto found = find_supersingular(p);
        CurveModel<Fp2Field> start{Shape::TwoTor, K.from_fp(found.model.c1), K.from_fp(found.model.c2)};
        auto expand = [&](const Label&, const CurveModel<Fp2Field>& m) {
            auto three = two_isogeny_step(K, m);
            return std::vector<CurveModel<Fp2Field>>(three.begin(), three.end());
        };
        return walk(K, start, p, ell, expand);
    }
    int n = int(minimal_torsion_field(p, ell));
    if (n == 1) return velu_walk(Fp2Field(p), p, ell, 1, seed);
    auto T = TowerField::build(p, n, field_cap);
    return velu_walk(T, p, ell, n, seed);
}

const std::vector<Label>& supersingular_set(u64 p) {
    static std::mutex mu;
    static std::map<u64, std::vector<Label>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(p);
        if (it != cache.end()) return it->second;
    }
    std::vector<Label> S;
    if (p == 2 || p == 3)
        S = {Label{0, 0}};
    else
        S = graph_method(p, 2).vertices;
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(p, std::move(S)).first->second;
}

bool is_supersingular_j(const Label& j, u64 p) {
    auto& S = supersingular_set(p);
    return std::binary_search(S.begin(), S.end(), j, label_less);
}

u64 aut_weight(const Label& j, u64 p) {
    if (j == Label{0, 0}) return 3;
    if (j == Label{1728 % p, 0}) return 2;
    return 1;
}

Adjacency adjacency_matrix(const IsogenyGraph& G) {
    Adjacency A;
    size_t n = G.vertices.size();
    A.M.assign(n, std::vector<u64>(n, 0));
    for (auto& [e, m] : G.edges) A.M[G.index_of(e.first)][G.index_of(e.second)] += m;
    for (size_t i = 0; i < n; ++i) A.trace += A.M[i][i];
    return A;
}

IsogenyGraph complete_self_loops(IsogenyGraph G) {
    for (auto& v : G.vertices) {
        u64 d = G.out_degree(v);
        if (d > G.ell + 1)
            throw Error(ErrorCode::OverfullVertex, "vertex out-degree " + std::to_string(d) + " exceeds ell + 1");
        if (d < G.ell + 1) G.edges[{v, v}] += G.ell + 1 - d;
    }
    return G;
}

StructuralReport structural_checks(const IsogenyGraph& G) {
    if (G.vertices.empty()) throw Error(ErrorCode::InvalidInput, "empty graph");
    StructuralReport r;
    r.regular = std::all_of(G.vertices.begin(), G.vertices.end(),
                            [&](const Label& v) { return G.out_degree(v) == G.ell + 1; });
    // strong connectivity: everything reachable from vertex 0 both ways
    auto reach = [&](bool forward) {
        std::set<Label> seen{G.vertices[0]};
        std::deque<Label> q{G.vertices[0]};
        while (!q.empty()) {
            Label u = q.front();
            q.pop_front();
            for (auto& [e, m] : G.edges) {
                if (!m) continue;
                const Label& from = forward ? e.first : e.second;
                const Label& to = forward ? e.second : e.first;
                if (from == u && seen.insert(to).second) q.push_back(to);
            }
        }
        return seen.size() == G.vertices.size();
    };
    r.connected = reach(true) && reach(false);
    u64 p = G.p;
    auto conj = [&](const Label& x) { return Label{x.a, x.b ? p - x.b : 0}; };
    r.conjugation_symmetric = true;
    for (auto& v : G.vertices)
        if (!std::binary_search(G.vertices.begin(), G.vertices.end(), conj(v), label_less))
            r.conjugation_symmetric = false;
    for (auto& [e, m] : G.edges)
        if (G.multiplicity(conj(e.first), conj(e.second)) != m) r.conjugation_symmetric = false;
    r.aut_weight_consistent = true;
    for (auto& [e, m] : G.edges)
        if (m * aut_weight(e.second, p) != G.multiplicity(e.second, e.first) * aut_weight(e.first, p))
            r.aut_weight_consistent = false;
    return r;
}

std::string render_label(const Fp2Field& K, const Label& j) { return K.render(j); }

namespace {

std::string plain_label(const Label& j) {
    if (j.b == 0) return std::to_string(j.a);
    return std::to_string(j.a) + "+" + std::to_string(j.b) + "*w";
}

std::vector<std::tuple<size_t, size_t, u64>> sorted_edges(const IsogenyGraph& G) {
    std::vector<std::tuple<size_t, size_t, u64>> es;
    for (auto& [e, m] : G.edges)
        if (m) es.emplace_back(G.index_of(e.first), G.index_of(e.second), m);
    std::sort(es.begin(), es.end());
    return es;
}

}  // namespace

std::string graph_to_json(const IsogenyGraph& G) {
    nlohmann::ordered_json j;
    j["schema"] = "ssgraph.graph/1";
    j["p"] = G.p;
    j["ell"] = G.ell;
    j["nonresidue"] = G.nonresidue;
    auto vs = nlohmann::ordered_json::array();
    for (auto& v : G.vertices) vs.push_back(plain_label(v));
    j["vertices"] = vs;
    auto es = nlohmann::ordered_json::array();
    for (auto& [s, t, m] : sorted_edges(G))
        es.push_back({plain_label(G.vertices[s]), plain_label(G.vertices[t]), m});
    j["edges"] = es;
    return j.dump() + "\n";
}

IsogenyGraph graph_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw Error(ErrorCode::InvalidInput, std::string("graph JSON: ") + e.what());
    }
    try {
        IsogenyGraph G;
        G.p = j.at("p").get<u64>();
        G.ell = j.at("ell").get<u64>();
        G.nonresidue = j.at("nonresidue").get<u64>();
        Fp2Field K(G.p, G.nonresidue);
        for (auto& v : j.at("vertices")) G.vertices.push_back(K.parse(v.get<std::string>()));
        for (auto& e : j.at("edges"))
            G.edges[{K.parse(e.at(0).get<std::string>()), K.parse(e.at(1).get<std::string>())}] += e.at(2).get<u64>();
        canonicalize(G);
        return G;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidInput, std::string("graph JSON: ") + e.what());
    }
}

std::string graph_to_dot(const IsogenyGraph& G) {
    auto node = [&](const Label& v) {
        auto s = plain_label(v);
        return v.b == 0 ? s : "\"" + s + "\"";
    };
    std::ostringstream os;
    os << "digraph G_" << G.p << "_" << G.ell << " {\n";
    for (auto& v : G.vertices) os << "  " << node(v) << ";\n";
    for (auto& [s, t, m] : sorted_edges(G))
        for (u64 k = 0; k < m; ++k) os << "  " << node(G.vertices[s]) << " -> " << node(G.vertices[t]) << ";\n";
    os << "}\n";
    return os.str();
}

std::string graph_to_csv(const IsogenyGraph& G) {
    auto A = adjacency_matrix(G);
    std::ostringstream os;
    for (auto& row : A.M) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    return os.str();
}

}  // namespace ssg
