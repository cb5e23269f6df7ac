#include "mgc/walks.hpp"

#include <algorithm>
#include <deque>

namespace mgc {

namespace {

enum Mark : int { Tail = 0, Head = 1 };

struct State {
    Vertex at;
    int mark; // mark of the arriving edge end at `at`
};

inline std::size_t state_id(Vertex v, int mark) { return 2 * v + static_cast<std::size_t>(mark); }

inline int mark_at_from(StepKind k) {
    return k == StepKind::Forward ? Tail : Head;
}
inline int mark_at_to(StepKind k) {
    return k == StepKind::Backward ? Tail : Head;
}

// Enumerate traversable edges out of w in deterministic vertex order.
template <typename F>
void for_incident(const MixedGraph& g, Vertex w, F&& f) {
    for (Vertex x = 0; x < g.size(); ++x) {
        if (x == w) continue;
        if (g.has_directed(w, x)) f(x, StepKind::Forward);
        if (g.has_directed(x, w)) f(x, StepKind::Backward);
        if (g.has_bidirected(w, x)) f(x, StepKind::Bidirected);
    }
}

void check_query(const MixedGraph& g, Vertex u, Vertex v, const std::vector<Vertex>& A) {
    if (u >= g.size() || v >= g.size()) throw BadQuery("vertex out of range");
    if (u == v) throw BadQuery("endpoints must be distinct");
    for (Vertex a : A)
        if (a == u || a == v) throw BadQuery("endpoint inside conditioning set");
}

struct Machine {
    const MixedGraph& g;
    std::vector<char> in_A;

    Machine(const MixedGraph& graph, const std::vector<Vertex>& A)
        : g(graph), in_A(graph.size(), 0) {
        for (Vertex a : A) in_A.at(a) = 1;
    }

    // May the walk continue through w, arrived with `mark`, leaving via an
    // edge whose end mark at w is `leave`?
    bool passable(Vertex w, int mark, int leave) const {
        bool collider = (mark == Head && leave == Head);
        return collider ? in_A[w] == 1 : in_A[w] == 0;
    }

    // All states reachable from the seed states (BFS order kept for witness
    // reconstruction). pred[s] = (previous state id, step), -1 for seeds.
    struct Reach {
        std::vector<char> seen;
        std::vector<long long> pred;
        std::vector<WalkStep> pred_step;
        std::vector<std::size_t> order;
    };

    Reach run(const std::vector<std::pair<State, WalkStep>>& seeds) const {
        Reach r;
        r.seen.assign(2 * g.size(), 0);
        r.pred.assign(2 * g.size(), -1);
        r.pred_step.resize(2 * g.size());
        std::deque<std::size_t> q;
        for (const auto& [s, step] : seeds) {
            std::size_t id = state_id(s.at, s.mark);
            if (r.seen[id]) continue;
            r.seen[id] = 1;
            r.pred[id] = -1;
            r.pred_step[id] = step;
            r.order.push_back(id);
            q.push_back(id);
        }
        while (!q.empty()) {
            std::size_t id = q.front();
            q.pop_front();
            Vertex w = id / 2;
            int mark = static_cast<int>(id % 2);
            for_incident(g, w, [&](Vertex x, StepKind k) {
                if (!passable(w, mark, mark_at_from(k))) return;
                std::size_t nid = state_id(x, mark_at_to(k));
                if (r.seen[nid]) return;
                r.seen[nid] = 1;
                r.pred[nid] = static_cast<long long>(id);
                r.pred_step[nid] = WalkStep{w, x, k};
                r.order.push_back(nid);
                q.push_back(nid);
            });
        }
        return r;
    }
};

Walk rebuild_walk(Vertex u, const Machine::Reach& r, std::size_t target) {
    std::vector<WalkStep> steps;
    long long id = static_cast<long long>(target);
    while (id >= 0) {
        steps.push_back(r.pred_step[static_cast<std::size_t>(id)]);
        id = r.pred[static_cast<std::size_t>(id)];
    }
    std::reverse(steps.begin(), steps.end());
    Walk w;
    w.vertices.push_back(u);
    for (const auto& s : steps) {
        w.vertices.push_back(s.to);
        w.steps.push_back(s);
    }
    return w;
}

} // namespace

std::string Walk::to_string(const MixedGraph& g) const {
    std::string out;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (i > 0) {
            switch (steps[i - 1].kind) {
                case StepKind::Forward: out += " -> "; break;
                case StepKind::Backward: out += " <- "; break;
                case StepKind::Bidirected: out += " <-> "; break;
            }
        }
        out += g.label(vertices[i]);
    }
    return out;
}

std::vector<bool> collider_flags(const Walk& w) {
    std::vector<bool> flags;
    for (std::size_t i = 1; i + 1 < w.vertices.size(); ++i) {
        int in = mark_at_to(w.steps[i - 1].kind);
        int out = mark_at_from(w.steps[i].kind);
        flags.push_back(in == Head && out == Head);
    }
    return flags;
}

DConnection d_connected(const MixedGraph& g, Vertex u, Vertex v,
                        const std::vector<Vertex>& A) {
    check_query(g, u, v, A);
    Machine m(g, A);
    std::vector<std::pair<State, WalkStep>> seeds;
    for_incident(g, u, [&](Vertex x, StepKind k) {
        seeds.push_back({State{x, mark_at_to(k)}, WalkStep{u, x, k}});
    });
    auto reach = m.run(seeds);
    // BFS order makes the first hit of v a shortest witness.
    for (std::size_t id : reach.order) {
        if (id / 2 == v) return DConnection{true, rebuild_walk(u, reach, id)};
    }
    return DConnection{false, std::nullopt};
}

std::vector<Vertex> tops(const MixedGraph& g, Vertex u, Vertex v,
                         const std::vector<Vertex>& A) {
    check_query(g, u, v, A);
    if (!g.bidirected_edges().empty()) throw BadQuery("tops is defined on digraphs");
    std::vector<char> in_A(g.size(), 0);
    for (Vertex a : A) in_A[a] = 1;

    // Candidates: nodes with a directed path to u avoiding A whose interior
    // also avoids v (ascending part of the initial trek).
    std::vector<char> asc(g.size(), 0);
    std::vector<Vertex> stack{u};
    asc[u] = 1;
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        if (x == v) continue; // v may end the ascent but not be passed through
        for (Vertex p : g.parents(x))
            if (!asc[p] && !in_A[p]) {
                asc[p] = 1;
                stack.push_back(p);
            }
    }

    // Can the walk continue from f (entered head-on) and still reach v?
    Machine m(g, A);
    std::vector<int> cont_cache(g.size(), -1);
    auto continuation_reaches_v = [&](Vertex f) -> bool {
        if (f == v) return true;
        if (cont_cache[f] >= 0) return cont_cache[f] == 1;
        std::vector<std::pair<State, WalkStep>> seed{{State{f, Head}, WalkStep{f, f, StepKind::Forward}}};
        auto reach = m.run(seed);
        bool ok = reach.seen[state_id(v, Tail)] || reach.seen[state_id(v, Head)];
        cont_cache[f] = ok ? 1 : 0;
        return ok;
    };

    std::vector<Vertex> out;
    for (Vertex t = 0; t < g.size(); ++t) {
        if (!asc[t]) continue;
        if (t == v) {
            out.push_back(t);
            continue;
        }
        // Descend from t through nodes outside A u {v} until hitting the
        // first walk vertex f in A u {v}; then the tail of the walk must
        // still reach v.
        bool qualifies = false;
        std::vector<char> seen(g.size(), 0);
        std::vector<Vertex> st{t};
        seen[t] = 1;
        while (!st.empty() && !qualifies) {
            Vertex x = st.back();
            st.pop_back();
            for (Vertex y : g.children(x)) {
                if (y == v) {
                    qualifies = true;
                    break;
                }
                if (in_A[y]) {
                    if (continuation_reaches_v(y)) {
                        qualifies = true;
                        break;
                    }
                    continue;
                }
                if (!seen[y]) {
                    seen[y] = 1;
                    st.push_back(y);
                }
            }
        }
        if (qualifies) out.push_back(t);
    }
    return out;
}

std::vector<std::pair<Vertex, Vertex>> negation_edge_set(const MixedGraph& g,
                                                         const std::vector<Vertex>& A,
                                                         Vertex one, Vertex two) {
    auto top_nodes = tops(g, one, two, A);
    std::vector<char> is_top(g.size(), 0);
    for (Vertex t : top_nodes) is_top[t] = 1;
    auto anc = ancestors(g, {one}, A);
    std::vector<char> is_anc(g.size(), 0);
    for (Vertex a : anc) is_anc[a] = 1;
    std::vector<std::pair<Vertex, Vertex>> out;
    for (auto [x, y] : g.directed_edges())
        if (is_top[x] && is_anc[y] && !is_top[y]) out.emplace_back(x, y);
    return out;
}

} // namespace mgc
