#ifndef MGC_TESTS_FIXTURES_HPP
#define MGC_TESTS_FIXTURES_HPP

#include "mgc/graph.hpp"

namespace mgc::tests {

// Five-node digraph: 1 -> 3 <- 5 -> 4 <- 2.
inline MixedGraph fig1a() {
    return MixedGraph::numbered(5, {{1, 3}, {2, 4}, {5, 3}, {5, 4}}, {});
}

// Its observed mixed graph on {1,...,4}: 1 -> 3 <-> 4 <- 2.
inline MixedGraph fig1b() {
    return MixedGraph::numbered(4, {{1, 3}, {2, 4}}, {{3, 4}});
}

// The trek/d-connection example digraph.
inline MixedGraph fig3() {
    return MixedGraph::numbered(5, {{1, 3}, {1, 4}, {2, 3}, {2, 5}, {3, 4}, {4, 5}}, {});
}

inline MixedGraph bidirected_cycle(int p) {
    std::vector<std::pair<int, int>> b;
    for (int k = 1; k <= p; ++k) b.emplace_back(k, k % p + 1);
    return MixedGraph::numbered(static_cast<std::size_t>(p), {}, b);
}

inline MixedGraph bidirected_triangle() {
    return MixedGraph::numbered(3, {}, {{1, 2}, {2, 3}, {1, 3}});
}

} // namespace mgc::tests

#endif
