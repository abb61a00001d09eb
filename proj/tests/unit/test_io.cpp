#include <sstream>

#include "doctest.h"
#include "ssg/isograph.hpp"
#include "ssg/mcmethod.hpp"

using namespace ssg;

TEST_CASE("JSON round trip") {
    for (u64 p : {11, 37, 101})
        for (int ell : {2, 3, 5}) {
            auto G = mc_method(p, ell);
            auto text = graph_to_json(G);
            CHECK(text.find("\"schema\":\"ssgraph.graph/1\"") != std::string::npos);
            CHECK(graph_from_json(text) == G);
            CHECK(graph_to_json(graph_from_json(text)) == text);
        }
    CHECK_THROWS_AS(graph_from_json("{\"p\":"), Error);
    CHECK_THROWS_AS(graph_from_json("{\"p\":11}"), Error);
}

TEST_CASE("DOT export has one line per unit edge") {
    auto dot = graph_to_dot(graph_method(11, 2));
    std::istringstream in(dot);
    std::string line;
    int loops = 0, edges = 0;
    while (std::getline(in, line)) {
        if (line.find("->") == std::string::npos) continue;
        ++edges;
        if (line == "  1 -> 1;") ++loops;
    }
    CHECK(loops == 1);
    CHECK(edges == 6);
    CHECK(dot.find('\r') == std::string::npos);
}

TEST_CASE("CSV adjacency") {
    CHECK(graph_to_csv(graph_method(19, 2)) == "2,1\n2,1\n");
    CHECK(graph_to_csv(graph_method(11, 2)) == "0,3\n2,1\n");
}
