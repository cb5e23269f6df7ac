#ifndef MGC_TESTS_ORACLES_HPP
#define MGC_TESTS_ORACLES_HPP

// Brute-force reference implementations, kept independent of the library
// algorithms they cross-check.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "mgc/graph.hpp"

namespace mgc::tests {

// Chordality by definition: some vertex subset of size >= 4 induces a cycle
// in (V,B), i.e. the induced subgraph is connected and 2-regular.
inline bool oracle_has_chordless_cycle(const MixedGraph& g) {
    std::size_t n = g.size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<Vertex> vs;
        for (std::size_t v = 0; v < n; ++v)
            if (mask & (1u << v)) vs.push_back(v);
        if (vs.size() < 4) continue;
        bool regular = true;
        for (Vertex v : vs) {
            int deg = 0;
            for (Vertex u : vs)
                if (u != v && g.has_bidirected(u, v)) ++deg;
            if (deg != 2) {
                regular = false;
                break;
            }
        }
        if (!regular) continue;
        // connected?
        std::set<Vertex> in(vs.begin(), vs.end()), seen{vs[0]};
        std::vector<Vertex> stack{vs[0]};
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex u : vs)
                if (u != v && g.has_bidirected(u, v) && !seen.count(u)) {
                    seen.insert(u);
                    stack.push_back(u);
                }
        }
        if (seen.size() == vs.size()) return true;
    }
    return false;
}

// Directed-path count per pair via DP over a topological order.
inline std::vector<std::vector<std::uint64_t>> oracle_path_counts(const MixedGraph& g) {
    std::size_t n = g.size();
    std::vector<std::vector<std::uint64_t>> cnt(n, std::vector<std::uint64_t>(n, 0));
    for (Vertex s = 0; s < n; ++s) {
        cnt[s][s] = 1;
        for (Vertex v : g.topological_order())
            if (cnt[s][v])
                for (Vertex c : g.children(v)) cnt[s][c] += cnt[s][v];
    }
    return cnt;
}

// Ancestor sets by path enumeration.
inline std::set<Vertex> oracle_ancestors(const MixedGraph& g, const std::vector<Vertex>& S,
                                         const std::set<Vertex>& forbidden) {
    std::set<Vertex> out;
    for (Vertex start = 0; start < g.size(); ++start) {
        if (forbidden.count(start)) continue;
        // DFS over directed paths from start avoiding forbidden.
        std::vector<std::vector<Vertex>> stack{{start}};
        bool hit = false;
        while (!stack.empty() && !hit) {
            auto path = stack.back();
            stack.pop_back();
            Vertex at = path.back();
            if (std::find(S.begin(), S.end(), at) != S.end()) {
                hit = true;
                break;
            }
            for (Vertex c : g.children(at)) {
                if (forbidden.count(c)) continue;
                if (std::find(path.begin(), path.end(), c) != path.end()) continue;
                auto next = path;
                next.push_back(c);
                stack.push_back(std::move(next));
            }
        }
        if (hit) out.insert(start);
    }
    return out;
}

// d-connecting-walk existence by stepwise extension of (vertex, arrival
// mark) layers up to a length bound; written from the walk definition.
// Marks: 0 = arrived through a tail end, 1 = arrived through a head end.
inline bool oracle_d_connected_bounded(const MixedGraph& g, Vertex u, Vertex v,
                                       const std::set<Vertex>& A, std::size_t max_len) {
    struct St {
        Vertex at;
        int mark;
    };
    std::vector<St> layer;
    auto edge_steps = [&](Vertex w) {
        // (next, mark at w when leaving, mark at next when arriving)
        std::vector<std::tuple<Vertex, int, int>> out;
        for (Vertex x = 0; x < g.size(); ++x) {
            if (x == w) continue;
            if (g.has_directed(w, x)) out.emplace_back(x, 0, 1);
            if (g.has_directed(x, w)) out.emplace_back(x, 1, 0);
            if (g.has_bidirected(w, x)) out.emplace_back(x, 1, 1);
        }
        return out;
    };
    for (auto [x, mw, mx] : edge_steps(u)) {
        (void)mw;
        layer.push_back(St{x, mx});
    }
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<St> next;
        for (const auto& s : layer) {
            if (s.at == v) return true;
            for (auto [x, mw, mx] : edge_steps(s.at)) {
                bool collider = (s.mark == 1 && mw == 1);
                bool pass = collider ? A.count(s.at) > 0 : A.count(s.at) == 0;
                if (pass) next.push_back(St{x, mx});
            }
        }
        layer = std::move(next);
        if (layer.empty()) break;
    }
    for (const auto& s : layer)
        if (s.at == v) return true;
    return false;
}

// Full d-connecting walks as explicit step sequences (small graphs only);
// used to read off walk tops by definition.
struct OracleWalk {
    std::vector<Vertex> vertices;
    std::vector<int> leave_marks;  // mark at vertices[i] when taking step i
    std::vector<int> arrive_marks; // mark at vertices[i+1] after step i
};

inline void oracle_enumerate_walks(const MixedGraph& g, Vertex u, Vertex v,
                                   const std::set<Vertex>& A, std::size_t max_steps,
                                   std::vector<OracleWalk>& out) {
    OracleWalk cur;
    cur.vertices.push_back(u);
    auto rec = [&](auto&& self, const OracleWalk& w) -> void {
        Vertex at = w.vertices.back();
        if (at == v && w.vertices.size() > 1) {
            // Check the d-connection conditions over interior vertices.
            bool ok = true;
            for (std::size_t i = 1; i + 1 < w.vertices.size() && ok; ++i) {
                bool collider = w.arrive_marks[i - 1] == 1 && w.leave_marks[i] == 1;
                ok = collider ? A.count(w.vertices[i]) > 0 : A.count(w.vertices[i]) == 0;
            }
            if (ok) out.push_back(w);
            // A walk may continue past v, so do not return here.
        }
        if (w.vertices.size() > max_steps) return;
        for (Vertex x = 0; x < g.size(); ++x) {
            if (x == at) continue;
            auto push = [&](int mw, int mx) {
                OracleWalk next = w;
                next.vertices.push_back(x);
                next.leave_marks.push_back(mw);
                next.arrive_marks.push_back(mx);
                self(self, next);
            };
            if (g.has_directed(at, x)) push(0, 1);
            if (g.has_directed(x, at)) push(1, 0);
            if (g.has_bidirected(at, x)) push(1, 1);
        }
    };
    rec(rec, cur);
}

// Top of a d-connecting walk: within the prefix ending at the first vertex
// of A u {v}, the spot where the walk stops moving against edge
// orientations.
inline Vertex oracle_walk_top(const OracleWalk& w, Vertex v, const std::set<Vertex>& A) {
    std::size_t first_hit = 1;
    while (first_hit < w.vertices.size() && !A.count(w.vertices[first_hit]) &&
           w.vertices[first_hit] != v)
        ++first_hit;
    std::size_t i = 0;
    while (i < first_hit && w.leave_marks[i] == 1) ++i; // ascending steps
    return w.vertices[i];
}

} // namespace mgc::tests

#endif
