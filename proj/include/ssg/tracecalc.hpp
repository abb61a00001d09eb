#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ssg/isograph.hpp"

namespace ssg {

// Frobenius-trace census over F_ell.
struct FrobTable {
    u64 ell = 0;
    std::map<u64, std::set<u64>> by_trace;  // |a| -> j in F_ell
    bool zero_supersingular = false;        // j = 0 sits in by_trace[0]
    bool j1728_supersingular = false;       // j = 1728 sits in by_trace[0]
    std::vector<u64> A3;                    // traces of j = 0 when ordinary
    std::vector<u64> A4;                    // traces of j = 1728 when ordinary
    std::vector<int> abs_trace;             // per j, -1 for ordinary 0 / 1728

    std::string csv() const;
};

FrobTable frobenius_trace_table(u64 ell);

// a^2 - 4 ell = -d m^2 with -d fundamental.
struct SuppEntry {
    u64 a = 0;
    u64 d = 0;
    u64 m = 0;
};

std::vector<SuppEntry> supp(u64 ell);

int chi_ell(u64 ell, u64 d);  // 0 iff ell | d
u64 unit_count(u64 d);        // |O_d^x|
u64 phi_d(u64 d, u64 n);

struct DegreeLedger {
    u64 ell = 0;
    std::vector<SuppEntry> entries;
    std::map<u64, u64> h1;                     // d -> h_{-d}(1)
    std::map<std::pair<u64, u64>, u64> hm;     // (d, m) -> h_{-d}(m) for supp entries
};

// h_{-d}(1) (1 + (2/|O^x|) sum_{1 < n | m} phi(n)).
u64 h_dm(u64 d, u64 m, const DegreeLedger& L);
u64 h_dm_from(u64 d, u64 m, u64 h1);

DegreeLedger class_numbers_from_table(const FrobTable& T);
// Census-based for ell > 3, the explicit factor tables for ell in {2, 3}.
const DegreeLedger& degree_ledger(u64 ell);

// Sum over supp of (1 + chi) h(m), minus the j = 0 / 1728 prefactors.
i64 delta_degree(const DegreeLedger& L);
// Degree contribution of -d, halved; NormalizationFailure unless sum = ell.
std::map<u64, i64> c_ell_all(u64 ell);
i64 c_ell(u64 ell, u64 d);

i64 epsilon(u64 p, u64 ell);

enum class TraceStrategy { Balanced, Literal };
const char* strategy_name(TraceStrategy s);
TraceStrategy parse_strategy(const std::string& s);

// Number of loops of Gamma_{p,ell}, from degree bookkeeping alone.
i64 trace_predict(u64 p, u64 ell, TraceStrategy s = TraceStrategy::Balanced);
// ell - sum (-d/p) c(-d) - epsilon.
i64 trace_from_c(u64 p, u64 ell);

enum class LoopStrategy { Delta, ClassPoly };
const char* loop_strategy_name(LoopStrategy s);
std::map<Label, u64> self_loops_per_vertex(u64 p, u64 ell, LoopStrategy s = LoopStrategy::Delta);

struct TwoVertexSolution {
    u64 a = 0;
    i64 trace = 0;
    std::vector<std::vector<u64>> M;
};
TwoVertexSolution two_vertex_solve(u64 p, u64 ell);

struct Difficulty {
    u64 gm = 0;
    u64 mc = 0;
    u64 tr = 0;
};
Difficulty difficulty(u64 p, u64 ell);

}  // namespace ssg
