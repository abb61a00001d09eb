// One PASS/FAIL line per acceptance criterion.  Exit status is nonzero when
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "ssg/mcmethod.hpp"
#include "ssg/modular_data.hpp"
#include "ssg/parallel.hpp"
#include "ssg/tracecalc.hpp"
#include "ssg/verify.hpp"
#include "unit/oracles.hpp"

using namespace ssg;
using namespace ssg::poly;

namespace {

// Tolerances.  Every comparison below is exact; only wall-clock budgets vary.
constexpr double kCrossMethodBudgetSec = 300.0;
constexpr double kPropertyBudgetSec = 60.0;
constexpr int kSqrtTrials = 10000;
constexpr int kPolyTrials = 1000;

const std::vector<u64> kLevels{2, 3, 5, 7, 11, 13, 17, 19};
const std::vector<u64> kSSPrimes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 47, 59, 71};

// Ob(p, ell) as printed: rows ell, columns p, both in kSSPrimes order.
const int kObTable[15][15] = {
    {-1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 1},
    {0, -1, 0, 0, 0, 0, 0, 1, 0, 0, 2, 1, 1, 2, 2},
    {0, 0, -1, 0, 0, 1, 2, 0, 2, 1, 1, 2, 5, 3, 4},
    {0, 0, 0, -1, 1, 1, 0, 2, 2, 3, 3, 2, 3, 5, 9},
    {0, 0, 0, 1, -1, 1, 3, 2, 5, 4, 4, 6, 10, 12, 15},
    {0, 0, 1, 1, 1, -1, 2, 4, 2, 5, 8, 11, 9, 12, 16},
    {0, 0, 2, 0, 3, 2, -1, 5, 5, 10, 7, 15, 12, 18, 22},
    {0, 1, 0, 2, 2, 4, 5, -1, 7, 5, 10, 11, 16, 17, 20},
    {0, 0, 2, 2, 5, 2, 5, 7, -1, 12, 12, 16, 21, 27, 33},
    {1, 0, 1, 3, 4, 5, 10, 5, 12, -1, 12, 24, 26, 28, 38},
    {0, 2, 1, 3, 4, 8, 7, 10, 12, 12, -1, 17, 28, 34, 39},
    {1, 1, 2, 2, 6, 11, 15, 11, 16, 24, 17, -1, 36, 46, 51},
    {0, 1, 5, 3, 10, 9, 12, 16, 21, 26, 28, 36, -1, 56, 67},
    {1, 2, 3, 5, 12, 12, 18, 17, 27, 28, 34, 46, 56, -1, 83},
    {1, 2, 4, 9, 15, 16, 22, 20, 33, 38, 39, 51, 67, 83, -1},
};

int expected_ob(u64 ell, u64 p) {
    auto idx = [](u64 q) { return int(std::find(kSSPrimes.begin(), kSSPrimes.end(), q) - kSSPrimes.begin()); };
    return kObTable[idx(ell)][idx(p)];
}

std::vector<u64> primes_in(u64 lo, u64 hi) {
    std::vector<u64> out;
    for (u64 p = lo; p < hi; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Result {
    bool pass = true;
    std::ostringstream detail;
    std::string failures;
    void fail(const std::string& why) {
        failures += (pass ? "" : "; ") + why;
        pass = false;
    }
};

int failures = 0;

void report(int n, const std::string& title, const std::function<void(Result&)>& body) {
    Result r;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.fail(std::string("exception: ") + e.what());
    }
    if (!r.pass) ++failures;
    std::string info = r.detail.str();
    if (!r.failures.empty()) info += (info.empty() ? "" : "; ") + std::string("failed: ") + r.failures;
    std::printf("criterion %d: %s  %s (%.1fs)%s%s\n", n, r.pass ? "PASS" : "FAIL", title.c_str(), seconds_since(t0),
                info.empty() ? "" : "  ", info.c_str());
    std::fflush(stdout);
}

std::string run_capture(const std::string& cmd, int& status) {
    std::string out;
    FILE* f = popen(cmd.c_str(), "r");
    if (!f) {
        status = -1;
        return out;
    }
    char buf[4096];
    size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    status = pclose(f);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";
    set_threads(std::max(1u, std::thread::hardware_concurrency()));

    report(1, "cross-method graph equality, 5 <= p < 200", [](Result& r) {
        auto t0 = std::chrono::steady_clock::now();
        int pairs = 0, velu = 0, bad = 0;
        for (u64 p : primes_in(5, 200))
            for (u64 ell : kLevels) {
                if (p == ell) continue;
                ++pairs;
                auto G = mc_method(p, int(ell));
                if (minimal_torsion_field(p, ell) > 2) continue;
                ++velu;
                if (graph_method(p, ell) != G) {
                    ++bad;
                    r.fail("differs at (" + std::to_string(p) + "," + std::to_string(ell) + ")");
                }
            }
        double dt = seconds_since(t0);
        r.detail << pairs << " pairs, " << velu << " Velu comparisons, " << bad << " mismatches";
        if (dt > kCrossMethodBudgetSec) r.fail("over the time budget");
    });

    report(2, "ob table reproduction and symmetry", [](Result& r) {
        std::vector<u64> levels;
        for (u64 q : kSSPrimes)
            if (atkin_available(int(q))) levels.push_back(q);
        auto T = ob_table(levels, kSSPrimes);
        int core = 0, extra = 0;
        for (u64 ell : levels)
            for (u64 p : kSSPrimes) {
                if (p == ell) continue;
                int got = T.at(ell, p), want = expected_ob(ell, p);
                if (got != want)
                    r.fail("Ob(" + std::to_string(p) + "," + std::to_string(ell) + ") = " + std::to_string(got) +
                           ", printed " + std::to_string(want));
                (ell <= 19 && p <= 19 ? core : extra)++;
            }
        if (core != 56) r.fail("expected 56 core pairs, compared " + std::to_string(core));
        if (!T.symmetric) r.fail("asymmetric on " + std::to_string(T.asymmetric.size()) + " pairs");
        r.detail << core << " core pairs, " << extra << " further pairs with available data, levels";
        for (u64 l : levels) r.detail << " " << l;
    });

    report(3, "two-vertex sets, s_37 and adjacency shapes", [](Result& r) {
        auto check_set = [&](u64 p, std::vector<Label> want) {
            const auto& S = supersingular_set(p);
            if (S != want) {
                std::string got;
                for (auto& j : S) got += (got.empty() ? "" : ",") + std::to_string(j.a);
                r.fail("S_" + std::to_string(p) + " = {" + got + "}");
            }
        };
        check_set(11, {{0, 0}, {1, 0}});
        check_set(17, {{0, 0}, {3, 0}});
        check_set(19, {{7, 0}, {18, 0}});
        Fp2Field K(37);
        std::vector<u64> s37 = ss_poly(37);
        PrimeField F(37);
        auto want = mul(F, x_minus(F, u64(8)), Poly<PrimeField>{F.from_int(-6), F.from_int(-6), 1});
        if (s37 != want) r.fail("s_37 is not (x-8)(x^2-6x-6)");
        int shapes = 0;
        for (u64 p : {11, 17, 19})
            for (u64 ell : kLevels) {
                if (p == ell) continue;
                auto M = adjacency_matrix(mc_method(p, int(ell))).M;
                i64 L1 = i64(ell) + 1, a = i64(M[0][1]);
                std::vector<std::vector<i64>> shape;
                if (p == 11) {
                    a /= 3;
                    shape = {{L1 - 3 * a, 3 * a}, {2 * a, L1 - 2 * a}};
                } else if (p == 17) {
                    a /= 3;
                    shape = {{L1 - 3 * a, 3 * a}, {a, L1 - a}};
                } else {
                    shape = {{L1 - a, a}, {2 * a, L1 - 2 * a}};
                }
                bool ok = true;
                for (int i = 0; i < 2; ++i)
                    for (int k = 0; k < 2; ++k) ok = ok && shape[i][k] == i64(M[i][k]);
                if (!ok) r.fail("M_" + std::to_string(p) + "," + std::to_string(ell) + " off shape");
                auto sol = two_vertex_solve(p, ell);
                if (i64(sol.a) != a) r.fail("trace solve disagrees at (" + std::to_string(p) + "," + std::to_string(ell) + ")");
                ++shapes;
            }
        r.detail << shapes << " matrices checked";
    });

    report(4, "modular polynomial identities", [](Result& r) {
        auto lin = [](long c) { return ZPoly{c, 1}; };
        ZPoly d2{1};
        for (auto f : {lin(-1728), lin(-8000), lin(3375), lin(3375)}) d2 = zmul(d2, f);
        ZPoly d3{0, 1};
        for (auto f : {lin(-54000), lin(-8000), lin(-8000), lin(32768), lin(32768)}) d3 = zmul(d3, f);
        if (diagonal(classical_modular_poly(2)) != d2) r.fail("F_2(x,x)");
        if (diagonal(classical_modular_poly(3)) != d3) r.fail("F_3(x,x)");
        for (u64 ell : kLevels) {
            auto d = delta_poly(int(ell));
            if (d.size() != 2 * ell + 1) r.fail("deg Delta_" + std::to_string(ell));
            if (!is_symmetric(classical_modular_poly(int(ell)))) r.fail("F_" + std::to_string(ell) + " asymmetric");
            if (ell < 5) continue;
            std::vector<u64> want(2 * ell + 1, 0);
            want[2] = 1;
            want[ell + 1] = ell - 2;
            want[2 * ell] = 1;
            if (zreduce(d, ell) != want) r.fail("Kronecker congruence at " + std::to_string(ell));
        }
        r.detail << "levels 2..19";
    });

    report(5, "trace suite against graph traces", [](Result& r) {
        int pairs = 0, eps_pos = 0;
        for (u64 p : primes_in(5, 200))
            for (u64 ell : kLevels) {
                if (p == ell) continue;
                ++pairs;
                auto G = mc_method(p, int(ell));
                auto tag = "(" + std::to_string(p) + "," + std::to_string(ell) + ")";
                if (trace_predict(p, ell) != i64(adjacency_matrix(G).trace)) r.fail("trace " + tag);
                for (auto s : {LoopStrategy::Delta, LoopStrategy::ClassPoly}) {
                    auto L = self_loops_per_vertex(p, ell, s);
                    for (auto& v : G.vertices)
                        if (L.at(v) != G.loops(v)) {
                            r.fail(std::string(loop_strategy_name(s)) + " loops " + tag);
                            break;
                        }
                }
                i64 e = epsilon(p, ell);
                if (e < 0) r.fail("negative epsilon " + tag);
                bool divides = false;
                for (auto& s : supp(ell)) divides |= s.m % p == 0;
                if (!divides && e != 0) r.fail("epsilon nonzero " + tag);
                eps_pos += e > 0;
            }
        r.detail << pairs << " pairs, balanced strategy, " << eps_pos << " with epsilon > 0";
    });

    report(6, "Frobenius census", [](Result& r) {
        for (u64 ell : {5, 7, 11, 13, 17, 19, 23, 29, 31}) {
            auto T = frobenius_trace_table(ell);
            std::set<u64> want;
            for (auto& j : supersingular_set(ell))
                if (j.b == 0) want.insert(j.a);
            if (T.by_trace[0] != want) r.fail("by_trace[0] at " + std::to_string(ell));
        }
        for (u64 ell : {5, 7, 11, 13, 17, 19}) {
            i64 s = 0;
            for (auto& [d, c] : c_ell_all(ell)) s += c;
            if (s != i64(ell)) r.fail("sum c at " + std::to_string(ell));
        }
    });

    report(7, "Ob zero patterns", [](Result& r) {
        auto zeros = [](u64 ell) {
            std::set<u64> z;
            for (u64 p : kSSPrimes)
                if (p != ell && ob(p, int(ell)) == 0) z.insert(p);
            return z;
        };
        if (zeros(5) != std::set<u64>{2, 3, 7, 11, 19}) r.fail("row 5");
        std::set<u64> want7;
        for (u64 p : kSSPrimes)
            if (p != 7 && expected_ob(7, p) == 0) want7.insert(p);
        if (zeros(7) != want7) r.fail("row 7");
        int checked = 0;
        for (u64 p : {37, 43, 53, 61, 67, 73, 79, 83, 89, 97})
            for (u64 ell : kLevels) {
                ++checked;
                if (ob(p, int(ell)) <= 0) r.fail("Ob(" + std::to_string(p) + "," + std::to_string(ell) + ") = 0");
            }
        r.detail << checked << " non-supersingular pairs";
    });

    report(8, "field and polynomial properties", [](Result& r) {
        auto t0 = std::chrono::steady_clock::now();
        auto roundtrip = [&](const auto& K, u64 seed, const char* name) {
            SplitMix64 rng(seed);
            for (int i = 0; i < kSqrtTrials; ++i) {
                auto t = K.random(rng);
                auto s = K.sqr(t);
                auto q = K.sqrt(s);
                if (!q || !(K.eq(*q, t) || K.eq(*q, K.neg(t)))) {
                    r.fail(std::string("sqrt in ") + name);
                    return;
                }
            }
        };
        roundtrip(PrimeField(1000003), 1, "F_p");
        roundtrip(Fp2Field(1009), 2, "F_p2");
        roundtrip(build_tower(13, 2), 3, "F_p4");
        roundtrip(build_tower(7, 3), 4, "F_p6");
        for (u64 p : primes_in(5, 98)) {
            PrimeField K(p);
            for (u64 A = 0; A < p; ++A)
                for (u64 B = 0; B < p; ++B) {
                    CurveModel<PrimeField> E{Shape::Short, A, B};
                    if (!is_valid(K, E)) continue;
                    if (count_points_fp(K, E) + count_points_fp(K, quadratic_twist(K, E)) != i64(2 * (p + 1))) {
                        r.fail("twist identity at p = " + std::to_string(p));
                        A = p;
                        break;
                    }
                }
        }
        SplitMix64 rng(77);
        for (int i = 0; i < kPolyTrials; ++i) {
            PrimeField K(std::vector<u64>{3, 7, 101, 65537}[i % 4]);
            auto rnd = [&](int d) {
                Poly<PrimeField> f(d + 1);
                for (auto& c : f) c = K.random(rng);
                f.back() = 1 + rng.below(K.p() - 1);
                return f;
            };
            int m = 1 + int(rng.below(6)), n = 1 + int(rng.below(6));
            auto f = rnd(m), g = rnd(n);
            auto a = resultant(K, f, g), b = resultant(K, g, f);
            if (a != ((m * n) % 2 ? K.neg(b) : b)) r.fail("resultant antisymmetry");
            auto h = mul(K, mul(K, f, f), g);
            auto rad = radical(K, h);
            if (radical(K, rad) != rad || !is_squarefree(K, rad) || !mod(K, h, rad).empty()) r.fail("radical");
        }
        double dt = seconds_since(t0);
        if (dt > kPropertyBudgetSec) r.fail("over the time budget");
        r.detail << kSqrtTrials << " roots per field, twists for p <= 97, " << kPolyTrials << " polynomial instances";
    });

    report(9, "determinism across thread counts", [&](Result& r) {
        VerifyOptions opt;
        std::vector<u64> ps{11, 19, 37, 101}, ells{2, 3, 5, 7, 13};
        set_threads(1);
        auto a = report_to_json(verify(ps, ells, opt), opt);
        auto g1 = graph_to_json(graph_method(101, 5));
        set_threads(4);
        auto b = report_to_json(verify(ps, ells, opt), opt);
        auto g4 = graph_to_json(graph_method(101, 5));
        if (a != b) r.fail("library report differs");
        if (g1 != g4) r.fail("graph differs");
        if (cli.empty()) {
            r.fail("no CLI path given");
            return;
        }
        std::string args = " verify --p 11,19,37,101 --ell 2,3,5,7,13";
        int s1 = 0, s4 = 0;
        auto c1 = run_capture(cli + " --threads 1" + args, s1);
        auto c4 = run_capture(cli + " --threads 4" + args, s4);
        if (s1 != 0 || s4 != 0) r.fail("CLI verify exited nonzero");
        if (c1 != c4 || c1.empty()) r.fail("CLI reports differ");
        if (c1 != a) r.fail("CLI report differs from the library report");
        r.detail << c1.size() << " bytes compared";
    });

    return failures ? 1 : 0;
}
