#include "doctest.h"
#include "oracles.hpp"
#include "ssg/isograph.hpp"
#include "ssg/mcmethod.hpp"

using namespace ssg;

namespace {

std::vector<std::vector<u64>> M(const IsogenyGraph& G) { return adjacency_matrix(G).M; }

}  // namespace

TEST_CASE("supersingular sets") {
    auto eq = [](u64 p, std::vector<Label> want) { return supersingular_set(p) == want; };
    CHECK(eq(11, {{0, 0}, {1, 0}}));
    // the Hasse invariant and a direct point count both give 8, not 3
    CHECK(eq(17, {{0, 0}, {8, 0}}));
    CHECK(eq(19, {{7, 0}, {18, 0}}));
    CHECK(eq(13, {{5, 0}}));
    CHECK(eq(7, {{6, 0}}));
    // p = 37: 8 and the roots of j^2 - 6j - 6
    Fp2Field K(37);
    const auto& S = supersingular_set(37);
    REQUIRE(S.size() == 3);
    CHECK(S[0] == Label{8, 0});
    for (int i = 1; i < 3; ++i) {
        auto j = S[i];
        CHECK(K.is_zero(K.sub(K.sub(K.sqr(j), K.scale(j, 6)), K.from_int(6))));
    }
    CHECK(S[2] == K.conj(S[1]));
}

TEST_CASE("supersingular sets against the Hasse invariant, p < 100") {
    for (u64 p = 5; p < 100; ++p) {
        if (!is_prime(p)) continue;
        auto want = oracle::hasse_supersingular(p);
        std::sort(want.begin(), want.end(), label_less);
        CHECK(supersingular_set(p) == want);
        u64 r = p % 12;
        u64 expected = p / 12 + (r == 1 ? 0 : r == 11 ? 2 : 1);
        CHECK(want.size() == expected);
    }
}

TEST_CASE("small graphs by the explicit-model walk") {
    auto G = graph_method(11, 2);
    CHECK(G.vertices == std::vector<Label>{{0, 0}, {1, 0}});
    CHECK(M(G) == std::vector<std::vector<u64>>{{0, 3}, {2, 1}});
    CHECK(adjacency_matrix(G).trace == 1);
    auto G13 = graph_method(13, 2);
    CHECK(G13.vertices == std::vector<Label>{{5, 0}});
    CHECK(G13.loops({5, 0}) == 3);
    auto G7 = graph_method(7, 2);
    CHECK(G7.vertices == std::vector<Label>{{6, 0}});
    CHECK(G7.loops({6, 0}) == 3);
    auto G19 = graph_method(19, 2);
    CHECK(M(G19) == std::vector<std::vector<u64>>{{2, 1}, {2, 1}});
    CHECK(adjacency_matrix(G19).trace == 3);
}

TEST_CASE("rows sum to ell + 1 and graphs are well formed") {
    for (u64 p : {11, 37, 41, 97, 101})
        for (u64 ell : {2, 3, 5, 7}) {
            if (minimal_torsion_field(p, ell) > 2) continue;
            auto G = graph_method(p, ell);
            for (auto& row : M(G)) {
                u64 s = 0;
                for (u64 v : row) s += v;
                CHECK(s == ell + 1);
            }
            auto r = structural_checks(G);
            CHECK(r.all());
        }
}

TEST_CASE("Velu walk is seed independent") {
    for (u64 seed : {1, 2, 99}) CHECK(graph_method(59, 5, seed) == graph_method(59, 5));
}

TEST_CASE("Velu walk in the quartic extension") {
    // ord_5(p^2) = 2 for p = 7, 23, 37
    CHECK(minimal_torsion_field(7, 5) == 2);
    CHECK(graph_method(7, 5) == mc_method(7, 5));
    CHECK(graph_method(37, 5) == mc_method(37, 5));
    CHECK(graph_method(23, 5) == mc_method(23, 5));
    CHECK_THROWS_AS(graph_method(1009, 7, kDefaultSeed, u128(1) << 19), Error);
}

TEST_CASE("self-loop completion") {
    IsogenyGraph G;
    G.p = 13;
    G.ell = 5;
    G.vertices = {{5, 0}};
    auto C = complete_self_loops(G);
    CHECK(C.loops({5, 0}) == 6);
    CHECK(complete_self_loops(C) == C);
    IsogenyGraph H;
    H.p = 11;
    H.ell = 2;
    H.vertices = {{0, 0}, {1, 0}};
    H.edges[{{0, 0}, {1, 0}}] = 3;
    H.edges[{{1, 0}, {0, 0}}] = 2;
    auto HC = complete_self_loops(H);
    CHECK(HC.loops({1, 0}) == 1);
    CHECK(HC.loops({0, 0}) == 0);
    H.edges[{{0, 0}, {1, 0}}] = 4;
    CHECK_THROWS_AS(complete_self_loops(H), Error);
}

TEST_CASE("structural checks") {
    IsogenyGraph E;
    CHECK_THROWS_AS(structural_checks(E), Error);
    auto G = graph_method(37, 2);
    auto r = structural_checks(G);
    CHECK(r.connected);
    CHECK(r.conjugation_symmetric);
    Fp2Field K(37);
    for (auto& a : G.vertices)
        for (auto& b : G.vertices) CHECK(G.multiplicity(a, b) == G.multiplicity(K.conj(a), K.conj(b)));
}

TEST_CASE("aut weights") {
    CHECK(aut_weight({0, 0}, 11) == 3);
    CHECK(aut_weight({1, 0}, 11) == 2);
    CHECK(aut_weight({7, 0}, 19) == 1);
}
