#pragma once

#include <map>
#include <string>
#include <vector>

#include "ssg/isograph.hpp"
#include "ssg/poly.hpp"

namespace ssg {

// Counts of y-line points of X_0(ell)^+ over F_{p^2} landing on each
// unordered pair {j1, j2} of distinct supersingular j (key j1 < j2 in label
// order).  Every pair is present, possibly with count 0.
struct EdgeCounts {
    std::map<std::pair<Label, Label>, u64> counts;
};

EdgeCounts scan_counts(u64 p, const BiPolyAtkin& R);

// Algorithm-4 style graph: scan counts, Aut-weighted directed edges, then
// self-loop completion.
IsogenyGraph mc_method(u64 p, const BiPolyAtkin& R);
IsogenyGraph mc_method(u64 p, int ell);

// Gamma*_{p,ell} from the hauptmodul: w(j1) * #{t : j(t) = j1, j(n/t) = j2},
// completed with loops.  ell in {2, 3, 5, 7, 13}.
IsogenyGraph hauptmodul_graph(u64 p, int ell);

// prod_{j in S_p} (x - j) with coefficients in F_p.
std::vector<u64> ss_poly(u64 p);

// rad(prod_{j in S_p} R(j, y)) over F_p; checked to divide y^{p^2} - y.
std::vector<u64> ss_plus_poly(u64 p, const BiPolyAtkin& R);

int ob(u64 p, const BiPolyAtkin& R);
int ob(u64 p, int ell);

struct ObTable {
    std::vector<u64> rows;  // ell
    std::vector<u64> cols;  // p
    std::vector<std::vector<int>> value;  // -1 on the diagonal p == ell
    bool symmetric = true;
    std::vector<std::pair<u64, u64>> asymmetric;  // (ell, p) with Ob(p,ell) != Ob(ell,p)
    int at(u64 ell, u64 p) const;
    std::string csv() const;
};

// Rows are levels (need Atkin data), columns primes.  Symmetry is checked on
// every pair where both orders were computed.
ObTable ob_table(const std::vector<u64>& levels, const std::vector<u64>& primes);

}  // namespace ssg
