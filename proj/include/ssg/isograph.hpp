#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ssg/curves.hpp"
#include "ssg/fields.hpp"

namespace ssg {

using Label = Fp2Elem;

// F_p labels first (ascending), then the rest by (a, b), so conjugate pairs
// a +- b w sit next to each other.
bool label_less(const Label& x, const Label& y);

struct IsogenyGraph {
    u64 p = 0;
    u64 ell = 0;
    u64 nonresidue = 0;
    std::vector<Label> vertices;
    std::map<std::pair<Label, Label>, u64> edges;

    size_t index_of(const Label& j) const;
    u64 multiplicity(const Label& a, const Label& b) const;
    u64 out_degree(const Label& j) const;
    u64 loops(const Label& j) const { return multiplicity(j, j); }
};

bool operator==(const IsogenyGraph& a, const IsogenyGraph& b);
inline bool operator!=(const IsogenyGraph& a, const IsogenyGraph& b) { return !(a == b); }

void canonicalize(IsogenyGraph& G);

// Algorithm-3 style walk over explicit models (2-isogeny steps for ell = 2,
// Velu over F_{p^{2n}} otherwise).  Edges are recorded as observed.
IsogenyGraph graph_method(u64 p, u64 ell, u64 seed = kDefaultSeed, u128 field_cap = u128(1) << 64);

// S_p in canonical order; cached.  p in {2, 3} gives {0}.
const std::vector<Label>& supersingular_set(u64 p);
bool is_supersingular_j(const Label& j, u64 p);

// |Aut(E)|/2 for p > 3.
u64 aut_weight(const Label& j, u64 p);

struct Adjacency {
    std::vector<std::vector<u64>> M;
    u64 trace = 0;
};
Adjacency adjacency_matrix(const IsogenyGraph& G);

IsogenyGraph complete_self_loops(IsogenyGraph G);

struct StructuralReport {
    bool regular = false;
    bool connected = false;
    bool conjugation_symmetric = false;
    bool aut_weight_consistent = false;
    bool all() const { return regular && connected && conjugation_symmetric && aut_weight_consistent; }
};
StructuralReport structural_checks(const IsogenyGraph& G);

std::string render_label(const Fp2Field& K, const Label& j);

std::string graph_to_json(const IsogenyGraph& G);
IsogenyGraph graph_from_json(const std::string& text);
std::string graph_to_dot(const IsogenyGraph& G);
std::string graph_to_csv(const IsogenyGraph& G);

}  // namespace ssg
