#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "ssg/mcmethod.hpp"
#include "ssg/modular_data.hpp"
#include "ssg/parallel.hpp"
#include "ssg/search.hpp"
#include "ssg/tracecalc.hpp"
#include "ssg/verify.hpp"

using namespace ssg;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { Ok = 0, Usage = 1, Validation = 2, Missing = 3, VerifyFailed = 4 };

int exit_code(ErrorCode c) {
    switch (c) {
    case ErrorCode::UnknownLevel:
    case ErrorCode::MissingData:
    case ErrorCode::MissingClassNumber:
        return Missing;
    case ErrorCode::OverfullVertex:
    case ErrorCode::InconsistentTable:
    case ErrorCode::NormalizationFailure:
    case ErrorCode::StrategyMismatch:
    case ErrorCode::WrongGroupStructure:
    case ErrorCode::ExactDivisionFailure:
        return VerifyFailed;
    default:
        return Validation;
    }
}

struct Globals {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string seed = std::to_string(kDefaultSeed);
    std::string data;
    std::string field_cap = "2^64";
    std::string out;
};

u64 parse_seed(const std::string& s) {
    try {
        size_t pos = 0;
        u64 v = std::stoull(s, &pos, 0);
        if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidInput, "bad seed '" + s + "'");
}

u128 parse_cap(const std::string& s) {
    auto bad = [&] { return Error(ErrorCode::InvalidInput, "bad field cap '" + s + "'"); };
    if (s.rfind("2^", 0) == 0) {
        int k = 0;
        try {
            k = std::stoi(s.substr(2));
        } catch (const std::exception&) {
            throw bad();
        }
        if (k < 1 || k > 127) throw bad();
        return u128(1) << k;
    }
    if (s.empty()) throw bad();
    u128 v = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9') throw bad();
        v = v * 10 + u128(ch - '0');
    }
    return v;
}

void require_prime(u64 v, u64 min, const char* what) {
    if (v < min || !is_prime(v))
        throw Error(ErrorCode::InvalidInput, std::string(what) + " must be a prime >= " + std::to_string(min));
}

void require_pair(u64 p, u64 ell, u128 cap) {
    require_prime(p, 5, "p");
    require_prime(ell, 2, "ell");
    if (p == ell) throw Error(ErrorCode::EqualPrimes, "p == ell");
    if (u128(p) * p > cap) throw Error(ErrorCode::FieldTooLarge, "field cap is below p^2");
}

void emit(const std::string& bytes, const std::string& out) {
    if (out.empty() || out == "-") {
        std::fwrite(bytes.data(), 1, bytes.size(), stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + out);
    f << bytes;
}

std::string emit_graph(const IsogenyGraph& G, const std::string& format) {
    if (format == "json") return graph_to_json(G);
    if (format == "dot") return graph_to_dot(G);
    if (format == "csv") return graph_to_csv(G);
    throw Error(ErrorCode::UnsupportedFormat, "unknown format '" + format + "'");
}

const std::vector<u64> kSupersingularPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 47, 59, 71};

ojson schema_obj(const std::string& id, ojson props, std::vector<std::string> required) {
    ojson s;
    s["$id"] = id;
    s["type"] = "object";
    s["properties"] = std::move(props);
    s["required"] = std::move(required);
    return s;
}

ojson t(const char* type) { return ojson{{"type", type}}; }
ojson konst(const char* v) { return ojson{{"const", v}}; }

std::string describe() {
    ojson label = t("string");
    label["pattern"] = "^[0-9]+(\\+[0-9]+\\*w)?$";
    ojson edge{{"type", "array"}, {"prefixItems", ojson::array({label, label, t("integer")})}};
    ojson out;
    out["schema"] = "ssgraph.describe/1";
    out["graph"] = schema_obj("ssgraph.graph/1",
                              {{"schema", konst("ssgraph.graph/1")},
                               {"p", t("integer")},
                               {"ell", t("integer")},
                               {"nonresidue", t("integer")},
                               {"vertices", {{"type", "array"}, {"items", label}}},
                               {"edges", {{"type", "array"}, {"items", edge}}}},
                              {"schema", "p", "ell", "nonresidue", "vertices", "edges"});
    out["find"] = schema_obj("ssgraph.find/1",
                             {{"schema", konst("ssgraph.find/1")},
                              {"p", t("integer")},
                              {"model", t("string")},
                              {"a", t("integer")},
                              {"b", t("integer")},
                              {"j0", t("integer")},
                              {"c", t("integer")},
                              {"d", t("integer")}},
                             {"schema", "p", "model", "j0"});
    out["ob"] = schema_obj("ssgraph.ob/1",
                           {{"schema", konst("ssgraph.ob/1")}, {"p", t("integer")}, {"ell", t("integer")}, {"ob", t("integer")}},
                           {"schema", "p", "ell", "ob"});
    out["trace"] = schema_obj("ssgraph.trace/1",
                              {{"schema", konst("ssgraph.trace/1")},
                               {"p", t("integer")},
                               {"ell", t("integer")},
                               {"strategy", {{"enum", {"balanced", "literal"}}}},
                               {"trace", t("integer")},
                               {"epsilon", t("integer")},
                               {"loops_strategy", {{"enum", {"delta", "classpoly"}}}},
                               {"loops", {{"type", "object"}, {"additionalProperties", t("integer")}}}},
                              {"schema", "p", "ell", "strategy", "trace", "loops"});
    ojson vcase{{"type", "object"},
                {"properties",
                 {{"p", t("integer")},
                  {"ell", t("integer")},
                  {"methods", {{"type", "array"}, {"items", {{"enum", {"modular", "velu", "hauptmodul"}}}}}},
                  {"velu_skipped", t("string")},
                  {"graphs_equal", t("boolean")},
                  {"trace_match", t("boolean")},
                  {"loops_match", t("boolean")},
                  {"regularity", t("boolean")},
                  {"connectivity", t("boolean")},
                  {"conjugation_symmetry", t("boolean")},
                  {"aut_weight_consistent", t("boolean")},
                  {"graph_trace", t("integer")},
                  {"predicted_trace", t("integer")},
                  {"literal_trace", t("string")},
                  {"timings_ms", {{"type", "object"}, {"additionalProperties", t("number")}}}}}};
    out["verify"] = schema_obj("ssgraph.verify/1",
                               {{"schema", konst("ssgraph.verify/1")},
                                {"seed", t("integer")},
                                {"certified_strategy", konst("balanced")},
                                {"cases", {{"type", "array"}, {"items", vcase}}},
                                {"all_true", t("boolean")}},
                               {"schema", "cases", "all_true"});
    out["csv"] = {
        {"graph", "adjacency matrix rows in vertex order, comma separated, no header"},
        {"ob-table", "header 'ell\\p,<p>...'; one row per level; '-' where p == ell"},
        {"frobtable", "header 'j,abs_trace'; one row per j in F_ell; ordinary j = 0 / 1728 list their traces joined by ';'"},
    };
    return out.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Supersingular isogeny graphs over finite fields"};
    app.fallthrough();
    Globals g;
    bool want_describe = false;
    app.add_flag("--describe", want_describe, "Print the JSON schemas of every output and exit");
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--seed", g.seed, "PRNG seed for the Velu walk")->envname("SSGRAPH_SEED");
    app.add_option("--data", g.data, "Directory with atkin/ell_L.json files")->envname("SSGRAPH_DATA");
    app.add_option("--field-cap", g.field_cap, "Largest field order the Velu walk may build (N or 2^k)");
    app.add_option("--out", g.out, "Output file (default stdout)");

    u64 p = 0, ell = 0;
    std::string method = "modular", format = "json", strategy = "balanced", loops = "delta", set = "supersingular";
    u64 max = 19;
    bool skip_missing = false, timings = false;
    std::vector<u64> ps, ells;

    auto* graph = app.add_subcommand("graph", "Build Gamma_{p,ell}");
    graph->add_option("--p", p)->required();
    graph->add_option("--ell", ell)->required();
    graph->add_option("--method", method)->check(CLI::IsMember({"modular", "velu", "hauptmodul"}));
    graph->add_option("--format", format);

    auto* obc = app.add_subcommand("ob", "Ob(p, ell)");
    obc->add_option("--p", p)->required();
    obc->add_option("--ell", ell)->required();

    auto* obt = app.add_subcommand("ob-table", "Ob over a set of primes, as CSV");
    obt->add_option("--set", set)->check(CLI::IsMember({"supersingular"}));
    obt->add_option("--max", max);
    obt->add_flag("--skip-missing", skip_missing, "Drop levels without Atkin data instead of failing");

    auto* find = app.add_subcommand("find", "A supersingular curve over F_p");
    find->add_option("--p", p)->required();

    auto* frob = app.add_subcommand("frobtable", "Frobenius-trace census over F_ell, as CSV");
    frob->add_option("--ell", ell)->required();

    auto* trace = app.add_subcommand("trace", "Predicted number of loops");
    trace->add_option("--p", p)->required();
    trace->add_option("--ell", ell)->required();
    trace->add_option("--strategy", strategy)->check(CLI::IsMember({"balanced", "literal"}));
    trace->add_option("--loops", loops)->check(CLI::IsMember({"delta", "classpoly"}));

    auto* ver = app.add_subcommand("verify", "Cross-method agreement report");
    ver->add_option("--p", ps)->required()->delimiter(',');
    ver->add_option("--ell", ells)->required()->delimiter(',');
    ver->add_flag("--timings", timings, "Include wall-clock timings (breaks byte stability)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : Usage;
    }

    try {
        if (want_describe) {
            emit(describe(), g.out);
            return Ok;
        }
        if (app.get_subcommands().empty()) {
            std::cerr << app.help();
            return Usage;
        }
        set_threads(g.threads);
        if (!g.data.empty()) set_data_dir(g.data);
        const u64 seed = parse_seed(g.seed);
        const u128 cap = parse_cap(g.field_cap);

        if (graph->parsed()) {
            require_pair(p, ell, cap);
            IsogenyGraph G;
            if (method == "velu")
                G = graph_method(p, ell, seed, cap);
            else if (method == "hauptmodul")
                G = hauptmodul_graph(p, int(ell));
            else
                G = mc_method(p, int(ell));
            emit(emit_graph(G, format), g.out);
        } else if (obc->parsed()) {
            require_prime(p, 2, "p");
            require_prime(ell, 2, "ell");
            ojson j;
            j["schema"] = "ssgraph.ob/1";
            j["p"] = p;
            j["ell"] = ell;
            j["ob"] = ob(p, int(ell));
            emit(j.dump() + "\n", g.out);
        } else if (obt->parsed()) {
            std::vector<u64> cols, rows, missing;
            for (u64 q : kSupersingularPrimes)
                if (q <= max) cols.push_back(q);
            for (u64 q : cols) (atkin_available(int(q)) ? rows : missing).push_back(q);
            if (!missing.empty()) {
                std::string list;
                for (u64 q : missing) list += " " + std::to_string(q);
                if (!skip_missing) throw Error(ErrorCode::MissingData, "no Atkin data for levels" + list);
                std::cerr << "skipping levels without Atkin data:" << list << "\n";
            }
            auto T = ob_table(rows, cols);
            emit(T.csv(), g.out);
            if (!T.symmetric) {
                for (auto [l, q] : T.asymmetric) std::cerr << "asymmetric: Ob(" << q << "," << l << ")\n";
                return VerifyFailed;
            }
        } else if (find->parsed()) {
            require_prime(p, 5, "p");
            auto s = find_supersingular(p);
            PrimeField K(p);
            ojson j;
            j["schema"] = "ssgraph.find/1";
            j["p"] = p;
            j["model"] = render_model(K, s.model);
            j["a"] = s.model.c1;
            j["b"] = s.model.c2;
            j["j0"] = s.j0;
            j["c"] = s.c;
            j["d"] = s.d;
            emit(j.dump() + "\n", g.out);
        } else if (frob->parsed()) {
            require_prime(ell, 2, "ell");
            emit(frobenius_trace_table(ell).csv(), g.out);
        } else if (trace->parsed()) {
            require_pair(p, ell, cap);
            auto st = parse_strategy(strategy);
            auto ls = loops == "classpoly" ? LoopStrategy::ClassPoly : LoopStrategy::Delta;
            ojson j;
            j["schema"] = "ssgraph.trace/1";
            j["p"] = p;
            j["ell"] = ell;
            j["strategy"] = strategy_name(st);
            j["trace"] = trace_predict(p, ell, st);
            j["epsilon"] = epsilon(p, ell);
            j["loops_strategy"] = loop_strategy_name(ls);
            ojson lj = ojson::object();
            Fp2Field K(p);
            for (auto& [v, n] : self_loops_per_vertex(p, ell, ls)) lj[render_label(K, v)] = n;
            j["loops"] = lj;
            emit(j.dump() + "\n", g.out);
        } else if (ver->parsed()) {
            for (u64 q : ps) require_prime(q, 5, "p");
            for (u64 l : ells) require_prime(l, 2, "ell");
            for (u64 q : ps)
                if (u128(q) * q > cap) throw Error(ErrorCode::FieldTooLarge, "field cap is below p^2");
            VerifyOptions opt;
            opt.seed = seed;
            opt.field_cap = cap;
            opt.timings = timings;
            auto R = verify(ps, ells, opt);
            emit(report_to_json(R, opt), g.out);
            return R.ok() ? Ok : VerifyFailed;
        }
        return Ok;
    } catch (const Error& e) {
        std::cerr << "ssgraph: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "ssgraph: " << e.what() << "\n";
        return Validation;
    }
}
