#pragma once

#include <string>
#include <vector>

#include "ssg/tracecalc.hpp"

namespace ssg {

struct VerifyCase {
    u64 p = 0;
    u64 ell = 0;
    std::vector<std::string> methods;  // graph builders that ran
    std::string velu_note;             // why the Velu walk was skipped, if it was
    bool graphs_equal = false;
    bool trace_match = false;
    bool loops_match = false;
    bool regularity = false;
    bool connectivity = false;
    bool conjugation_symmetry = false;
    bool aut_weight_consistent = false;
    u64 graph_trace = 0;
    i64 predicted_trace = 0;
    std::string literal_trace;  // integer, or the error it raised
    std::vector<std::pair<std::string, double>> timings_ms;

    bool ok() const {
        return graphs_equal && trace_match && loops_match && regularity && connectivity && conjugation_symmetry &&
               aut_weight_consistent;
    }
};

struct VerifyOptions {
    u64 seed = kDefaultSeed;
    u128 field_cap = u128(1) << 64;
    bool timings = false;
};

VerifyCase verify_case(u64 p, u64 ell, const VerifyOptions& opt);

struct VerifyReport {
    std::vector<VerifyCase> cases;
    bool ok() const;
};

VerifyReport verify(const std::vector<u64>& ps, const std::vector<u64>& ells, const VerifyOptions& opt);
std::string report_to_json(const VerifyReport& R, const VerifyOptions& opt);

}  // namespace ssg
