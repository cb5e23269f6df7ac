#include "mgc/treks.hpp"

#include <algorithm>

namespace mgc {

namespace {

void paths_dfs(const MixedGraph& g, Vertex at, Vertex to, std::vector<Vertex>& cur,
               std::vector<std::vector<Vertex>>& out, std::size_t cap) {
    if (at == to) {
        if (out.size() >= cap) throw CapExceeded("path enumeration cap exceeded");
        out.push_back(cur);
        return;
    }
    for (Vertex c : g.children(at)) {
        cur.push_back(c);
        paths_dfs(g, c, to, cur, out, cap);
        cur.pop_back();
    }
}

// All directed paths from u to v (possibly trivial), in DFS order.
std::vector<std::vector<Vertex>> directed_paths(const MixedGraph& g, Vertex u, Vertex v,
                                                std::size_t cap) {
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> cur{u};
    paths_dfs(g, u, v, cur, out, cap);
    return out;
}

void require_digraph(const MixedGraph& g) {
    if (!g.bidirected_edges().empty())
        throw BadQuery("trek machinery is defined on digraphs");
    if (!g.is_acyclic()) throw NotAcyclic("trek enumeration needs an acyclic digraph");
}

std::uint64_t vertex_mask(const std::vector<Vertex>& vs) {
    std::uint64_t m = 0;
    for (Vertex v : vs) m |= 1ULL << v;
    return m;
}

} // namespace

std::vector<std::pair<Vertex, Vertex>> Trek::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (std::size_t i = 0; i + 1 < left.size(); ++i) out.emplace_back(left[i], left[i + 1]);
    for (std::size_t i = 0; i + 1 < right.size(); ++i) out.emplace_back(right[i], right[i + 1]);
    return out;
}

std::string Trek::to_string(const MixedGraph& g) const {
    std::string s;
    for (std::size_t i = left.size(); i-- > 1;) s += g.label(left[i]) + " <- ";
    s += g.label(top());
    for (std::size_t i = 1; i < right.size(); ++i) s += " -> " + g.label(right[i]);
    return s;
}

std::vector<Trek> enumerate_treks(const MixedGraph& g, Vertex u, Vertex v, std::size_t cap) {
    require_digraph(g);
    if (u >= g.size() || v >= g.size()) throw BadQuery("vertex out of range");
    auto anc_u = ancestors(g, {u});
    auto anc_v = ancestors(g, {v});
    std::vector<Vertex> common;
    std::set_intersection(anc_u.begin(), anc_u.end(), anc_v.begin(), anc_v.end(),
                          std::back_inserter(common));
    std::vector<Trek> out;
    for (Vertex t : common) {
        auto lefts = directed_paths(g, t, u, cap);
        auto rights = directed_paths(g, t, v, cap);
        for (const auto& l : lefts)
            for (const auto& r : rights) {
                if (out.size() >= cap) throw CapExceeded("trek enumeration cap exceeded");
                out.push_back(Trek{l, r});
            }
    }
    return out;
}

SparsePoly trek_monomial(const Ring& ring, const Trek& t) {
    SparsePoly::Monomial m(ring->var_count(), 0);
    ++m.at(ring->omega_var(t.top()));
    for (auto [x, y] : t.edges()) ++m.at(ring->lambda_var(x, y));
    SparsePoly p(ring);
    p.add_term(m, Rat(1));
    return p;
}

double trek_monomial_eval(const Trek& t, const ParamPoint& p) {
    double acc = p.omega(static_cast<Eigen::Index>(t.top()), static_cast<Eigen::Index>(t.top()));
    for (auto [x, y] : t.edges())
        acc *= p.lambda(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
    return acc;
}

std::vector<double> ring_values(const Ring& ring, const MixedGraph& g, const ParamPoint& p) {
    std::vector<double> values(ring->var_count(), 0.0);
    for (Vertex v = 0; v < g.size(); ++v)
        values[ring->omega_var(v)] =
            p.omega(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v));
    for (auto [u, v] : g.directed_edges())
        values[ring->lambda_var(u, v)] =
            p.lambda(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v));
    return values;
}

PolyMatrix trek_rule_sigma(const MixedGraph& g, std::size_t cap) {
    require_digraph(g);
    auto ring = PolyRing::for_digraph(g);
    PolyMatrix out{ring, g.size(), {}};
    out.entries.assign(g.size() * g.size(), SparsePoly::zero(ring));
    for (Vertex u = 0; u < g.size(); ++u)
        for (Vertex v = u; v < g.size(); ++v) {
            SparsePoly sum = SparsePoly::zero(ring);
            for (const auto& t : enumerate_treks(g, u, v, cap))
                sum += trek_monomial(ring, t);
            out.at(u, v) = sum;
            if (u != v) out.at(v, u) = sum;
        }
    return out;
}

namespace {

struct SystemSearch {
    const MixedGraph& g;
    std::vector<Vertex> X, Y;
    std::size_t cap;
    // trek_choices[i][j]: all treks from X[i] to Y[j]
    std::vector<std::vector<std::vector<Trek>>> choices;

    SystemSearch(const MixedGraph& graph, const std::vector<Vertex>& sources,
                 const std::vector<Vertex>& targets, std::size_t c)
        : g(graph), X(sources), Y(targets), cap(c) {
        require_digraph(g);
        if (X.size() != Y.size()) throw SizeMismatch("|X| and |Y| must match");
        auto distinct = [](std::vector<Vertex> v) {
            std::sort(v.begin(), v.end());
            return std::adjacent_find(v.begin(), v.end()) == v.end();
        };
        if (!distinct(X) || !distinct(Y))
            throw BadQuery("sources and targets must each be distinct");
        choices.resize(X.size());
        for (std::size_t i = 0; i < X.size(); ++i) {
            choices[i].resize(Y.size());
            for (std::size_t j = 0; j < Y.size(); ++j)
                choices[i][j] = enumerate_treks(g, X[i], Y[j], cap);
        }
    }

    static int permutation_sign(const std::vector<std::size_t>& target_of) {
        int inversions = 0;
        for (std::size_t i = 0; i < target_of.size(); ++i)
            for (std::size_t j = i + 1; j < target_of.size(); ++j)
                if (target_of[i] > target_of[j]) ++inversions;
        return inversions % 2 == 0 ? 1 : -1;
    }

    // Walk every assignment; prune on sided intersection when asked to.
    // visit(system, sign) is called at each accepted leaf; return false from
    // visit to stop the whole search.
    template <typename Visit>
    bool enumerate(bool prune_nsi, Visit&& visit) {
        std::vector<std::size_t> target_of(X.size());
        std::vector<char> used(Y.size(), 0);
        std::vector<const Trek*> picked(X.size());
        std::size_t visited = 0;
        return walk(0, 0, 0, prune_nsi, target_of, used, picked, visited, visit);
    }

    template <typename Visit>
    bool walk(std::size_t i, std::uint64_t used_lhs, std::uint64_t used_rhs, bool prune_nsi,
              std::vector<std::size_t>& target_of, std::vector<char>& used,
              std::vector<const Trek*>& picked, std::size_t& visited, Visit&& visit) {
        if (i == X.size()) {
            TrekSystem sys;
            for (const Trek* t : picked) sys.treks.push_back(*t);
            sys.sign = permutation_sign(target_of);
            sys.no_sided_intersection = prune_nsi || nsi(picked);
            return visit(sys);
        }
        for (std::size_t j = 0; j < Y.size(); ++j) {
            if (used[j]) continue;
            for (const Trek& t : choices[i][j]) {
                if (++visited > cap) throw CapExceeded("trek system enumeration cap exceeded");
                std::uint64_t lm = vertex_mask(t.left), rm = vertex_mask(t.right);
                if (prune_nsi && ((lm & used_lhs) || (rm & used_rhs))) continue;
                used[j] = 1;
                target_of[i] = j;
                picked[i] = &t;
                bool go = walk(i + 1, used_lhs | lm, used_rhs | rm, prune_nsi, target_of,
                               used, picked, visited, visit);
                used[j] = 0;
                if (!go) return false;
            }
        }
        return true;
    }

    static bool nsi(const std::vector<const Trek*>& ts) {
        for (std::size_t a = 0; a < ts.size(); ++a)
            for (std::size_t b = a + 1; b < ts.size(); ++b) {
                if (vertex_mask(ts[a]->left) & vertex_mask(ts[b]->left)) return false;
                if (vertex_mask(ts[a]->right) & vertex_mask(ts[b]->right)) return false;
            }
        return true;
    }
};

} // namespace

std::vector<TrekSystem> trek_systems(const MixedGraph& g, const std::vector<Vertex>& X,
                                     const std::vector<Vertex>& Y, bool require_nsi,
                                     std::size_t cap) {
    if (g.size() > 64) throw BadQuery("trek systems are desk-scale (|V| <= 64)");
    SystemSearch search(g, X, Y, cap);
    std::vector<TrekSystem> out;
    search.enumerate(false, [&](const TrekSystem& sys) {
        if (!require_nsi || sys.no_sided_intersection) {
            if (out.size() >= cap) throw CapExceeded("trek system cap exceeded");
            out.push_back(sys);
        }
        return true;
    });
    return out;
}

SparsePoly det_via_treks(const MixedGraph& g, const std::vector<Vertex>& X,
                         const std::vector<Vertex>& Y, std::size_t cap) {
    if (g.size() > 64) throw BadQuery("trek determinants are desk-scale (|V| <= 64)");
    SystemSearch search(g, X, Y, cap);
    auto ring = PolyRing::for_digraph(g);
    SparsePoly acc = SparsePoly::zero(ring);
    search.enumerate(true, [&](const TrekSystem& sys) {
        SparsePoly::Monomial m(ring->var_count(), 0);
        for (const Trek& t : sys.treks) {
            ++m.at(ring->omega_var(t.top()));
            for (auto [x, y] : t.edges()) ++m.at(ring->lambda_var(x, y));
        }
        acc.add_term(m, Rat(sys.sign));
        return true;
    });
    return acc;
}

bool has_nsi_system(const MixedGraph& g, const std::vector<Vertex>& X,
                    const std::vector<Vertex>& Y, std::size_t cap) {
    if (g.size() > 64) throw BadQuery("trek systems are desk-scale (|V| <= 64)");
    SystemSearch search(g, X, Y, cap);
    bool found = false;
    search.enumerate(true, [&](const TrekSystem&) {
        found = true;
        return false; // stop at the first witness
    });
    return found;
}

} // namespace mgc
