#pragma once

#include <cstdint>
#include <vector>

#include "ssg/curves.hpp"

namespace ssg {

struct SearchOutcome {
    CurveModel<PrimeField> model;  // TwoTor(a, b)
    u64 j0 = 0;
    u64 c = 0;  // 0 for the p = 3 mod 4 shortcut
    u64 d = 0;
};

// v_0[x] = (x/p) and w_d[x] = ((x^2 - d)/p) for x in [0, p).
std::pair<std::vector<int8_t>, std::vector<int8_t>> legendre_vectors(u64 p, u64 d);

// A supersingular curve over F_p with a rational 2-torsion point at 0.
SearchOutcome find_supersingular(u64 p);

}  // namespace ssg
