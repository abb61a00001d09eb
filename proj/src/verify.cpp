#include "ssg/verify.hpp"

#include <chrono>

#include "json.hpp"
#include "ssg/mcmethod.hpp"
#include "ssg/modular_data.hpp"

namespace ssg {

namespace {

template <class Fn>
auto timed(VerifyCase& c, const char* name, Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    auto out = fn();
    auto t1 = std::chrono::steady_clock::now();
    c.timings_ms.emplace_back(name, std::chrono::duration<double, std::milli>(t1 - t0).count());
    return out;
}

bool loops_agree(const IsogenyGraph& G, const std::map<Label, u64>& L) {
    if (L.size() != G.vertices.size()) return false;
    for (auto& v : G.vertices) {
        auto it = L.find(v);
        if (it == L.end() || it->second != G.loops(v)) return false;
    }
    return true;
}

}  // namespace

VerifyCase verify_case(u64 p, u64 ell, const VerifyOptions& opt) {
    if (p <= 3 || !is_prime(p)) throw Error(ErrorCode::InvalidInput, "verify needs a prime p > 3");
    if (!is_prime(ell)) throw Error(ErrorCode::InvalidInput, "ell must be prime");
    if (p == ell) throw Error(ErrorCode::EqualPrimes, "p == ell");
    VerifyCase c;
    c.p = p;
    c.ell = ell;
    if (!atkin_available(int(ell)))
        throw Error(ErrorCode::MissingData, "no Atkin data for level " + std::to_string(ell));

    auto G = timed(c, "modular", [&] { return mc_method(p, int(ell)); });
    c.methods.push_back("modular");
    c.graphs_equal = true;
    try {
        auto V = timed(c, "velu", [&] { return graph_method(p, ell, opt.seed, opt.field_cap); });
        c.methods.push_back("velu");
        c.graphs_equal = c.graphs_equal && V == G;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::FieldTooLarge) throw;
        c.velu_note = e.what();
    }
    if (has_hauptmodul(int(ell))) {
        auto H = timed(c, "hauptmodul", [&] { return hauptmodul_graph(p, int(ell)); });
        c.methods.push_back("hauptmodul");
        c.graphs_equal = c.graphs_equal && H == G;
    }

    auto S = structural_checks(G);
    c.regularity = S.regular;
    c.connectivity = S.connected;
    c.conjugation_symmetry = S.conjugation_symmetric;
    c.aut_weight_consistent = S.aut_weight_consistent;

    c.graph_trace = adjacency_matrix(G).trace;
    c.predicted_trace = timed(c, "trace", [&] { return trace_predict(p, ell); });
    c.trace_match = c.predicted_trace == i64(c.graph_trace);
    try {
        c.literal_trace = std::to_string(trace_predict(p, ell, TraceStrategy::Literal));
    } catch (const Error& e) {
        c.literal_trace = error_name(e.code());
    }

    c.loops_match = timed(c, "loops", [&] {
        return loops_agree(G, self_loops_per_vertex(p, ell, LoopStrategy::Delta)) &&
               loops_agree(G, self_loops_per_vertex(p, ell, LoopStrategy::ClassPoly));
    });
    return c;
}

bool VerifyReport::ok() const {
    for (auto& c : cases)
        if (!c.ok()) return false;
    return true;
}

VerifyReport verify(const std::vector<u64>& ps, const std::vector<u64>& ells, const VerifyOptions& opt) {
    VerifyReport R;
    for (u64 p : ps)
        for (u64 ell : ells)
            if (p != ell) R.cases.push_back(verify_case(p, ell, opt));
    return R;
}

std::string report_to_json(const VerifyReport& R, const VerifyOptions& opt) {
    nlohmann::ordered_json j;
    j["schema"] = "ssgraph.verify/1";
    j["seed"] = opt.seed;
    j["certified_strategy"] = strategy_name(TraceStrategy::Balanced);
    auto cases = nlohmann::ordered_json::array();
    for (auto& c : R.cases) {
        nlohmann::ordered_json k;
        k["p"] = c.p;
        k["ell"] = c.ell;
        k["methods"] = c.methods;
        if (!c.velu_note.empty()) k["velu_skipped"] = c.velu_note;
        k["graphs_equal"] = c.graphs_equal;
        k["trace_match"] = c.trace_match;
        k["loops_match"] = c.loops_match;
        k["regularity"] = c.regularity;
        k["connectivity"] = c.connectivity;
        k["conjugation_symmetry"] = c.conjugation_symmetry;
        k["aut_weight_consistent"] = c.aut_weight_consistent;
        k["graph_trace"] = c.graph_trace;
        k["predicted_trace"] = c.predicted_trace;
        k["literal_trace"] = c.literal_trace;
        if (opt.timings) {
            nlohmann::ordered_json t;
            for (auto& [name, ms] : c.timings_ms) t[name] = ms;
            k["timings_ms"] = t;
        }
        cases.push_back(k);
    }
    j["cases"] = cases;
    j["all_true"] = R.ok();
    return j.dump(2) + "\n";
}

}  // namespace ssg
