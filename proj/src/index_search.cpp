#include <algorithm>
#include <unordered_set>

#include "mgc/causality.hpp"
#include "mgc/chordal.hpp"
#include "mgc/walks.hpp"

namespace mgc {

namespace {

// Walk-state d-connection on a bitmask DAG (n <= 8): states are
// (vertex, arrival mark); iterate to a fixpoint.
bool dag_d_connected(const std::vector<std::uint32_t>& ch, const std::vector<std::uint32_t>& pa,
                     std::size_t n, std::size_t u, std::size_t v, std::uint32_t A) {
    std::uint32_t tail = pa[u], head = ch[u];
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t w = 0; w < n; ++w) {
            bool in_a = (A >> w) & 1u;
            std::uint32_t add_head = 0, add_tail = 0;
            if ((tail >> w) & 1u) {
                if (!in_a) {
                    add_head |= ch[w];
                    add_tail |= pa[w];
                }
            }
            if ((head >> w) & 1u) {
                if (!in_a)
                    add_head |= ch[w];
                else
                    add_tail |= pa[w];
            }
            if ((add_head & ~head) || (add_tail & ~tail)) {
                head |= add_head;
                tail |= add_tail;
                changed = true;
            }
        }
    }
    return (((head | tail) >> v) & 1u) != 0;
}

struct Candidate {
    std::vector<std::uint32_t> parents; // parent bitmask per vertex
    std::uint64_t key = 0;
    std::size_t edge_count = 0;
};

std::uint64_t pack(const std::vector<std::uint32_t>& par) {
    std::uint64_t k = 0;
    for (std::size_t v = 0; v < par.size(); ++v)
        k |= static_cast<std::uint64_t>(par[v]) << (8 * v);
    return k;
}

// Minimal packing over permutations of the hidden block; observed vertices
// stay fixed.
std::uint64_t canonical_key(const std::vector<std::uint32_t>& par, std::size_t nv) {
    std::size_t n = par.size(), h = n - nv;
    if (h <= 1) return pack(par);
    std::vector<std::size_t> perm(h);
    for (std::size_t i = 0; i < h; ++i) perm[i] = i;
    std::uint64_t best = ~0ULL;
    do {
        std::vector<std::size_t> map(n);
        for (std::size_t v = 0; v < nv; ++v) map[v] = v;
        for (std::size_t i = 0; i < h; ++i) map[nv + i] = nv + perm[i];
        std::vector<std::uint32_t> relab(n, 0);
        for (std::size_t v = 0; v < n; ++v) {
            std::uint32_t m = 0;
            for (std::size_t w = 0; w < n; ++w)
                if ((par[v] >> w) & 1u) m |= 1u << map[w];
            relab[map[v]] = m;
        }
        best = std::min(best, pack(relab));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

struct Pattern {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    std::vector<std::vector<Vertex>> pools;       // conditioning pool per pair
    std::vector<std::uint32_t> connected_masks;   // bit m: connected given pool subset m
};

Pattern observed_pattern(const MixedGraph& g) {
    Pattern pat;
    for (Vertex u = 0; u < g.size(); ++u)
        for (Vertex v = u + 1; v < g.size(); ++v) {
            std::vector<Vertex> pool;
            for (Vertex w = 0; w < g.size(); ++w)
                if (w != u && w != v) pool.push_back(w);
            std::uint32_t bits = 0;
            for (std::uint32_t m = 0; m < (1u << pool.size()); ++m) {
                std::vector<Vertex> A;
                for (std::size_t k = 0; k < pool.size(); ++k)
                    if (m & (1u << k)) A.push_back(pool[k]);
                if (d_connected(g, u, v, A).connected) bits |= 1u << m;
            }
            pat.pairs.emplace_back(u, v);
            pat.pools.push_back(std::move(pool));
            pat.connected_masks.push_back(bits);
        }
    return pat;
}

bool screen_candidate(const Candidate& cand, const Pattern& pat, std::size_t n) {
    std::vector<std::uint32_t> ch(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w)
            if ((cand.parents[v] >> w) & 1u) ch[w] |= 1u << v;
    for (std::size_t pi = 0; pi < pat.pairs.size(); ++pi) {
        auto [u, v] = pat.pairs[pi];
        const auto& pool = pat.pools[pi];
        for (std::uint32_t m = 0; m < (1u << pool.size()); ++m) {
            std::uint32_t A = 0;
            for (std::size_t k = 0; k < pool.size(); ++k)
                if (m & (1u << k)) A |= 1u << pool[k];
            bool want = (pat.connected_masks[pi] >> m) & 1u;
            if (dag_d_connected(ch, cand.parents, n, u, v, A) != want) return false;
        }
    }
    return true;
}

HiddenExpansion candidate_expansion(const MixedGraph& g, const Candidate& cand) {
    std::size_t n = cand.parents.size(), nv = g.size();
    std::vector<std::string> labels = g.labels();
    for (std::size_t i = nv; i < n; ++i) labels.push_back("u" + std::to_string(i - nv + 1));
    EdgeList edges, none;
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w)
            if ((cand.parents[v] >> w) & 1u) edges.emplace_back(labels[w], labels[v]);
    MixedGraph dag(labels, edges, none);
    std::vector<std::pair<std::string, std::vector<std::string>>> hidden;
    for (std::size_t i = nv; i < n; ++i) {
        std::vector<std::string> members;
        for (Vertex c : dag.children(i))
            if (c < nv) members.push_back(labels[c]);
        std::sort(members.begin(), members.end());
        hidden.emplace_back(labels[i], members);
    }
    return HiddenExpansion{std::move(dag), std::move(hidden)};
}

} // namespace

IndexBounds causality_index_search(const MixedGraph& g, const IndexSearchOptions& opts) {
    if (!is_chain_graph(g)) throw NotChainGraph("index search needs a chain graph");
    if (g.size() > 6) throw BadQuery("index search is desk-scale (|V| <= 6)");
    if (g.size() + opts.h_max > 8)
        throw BadQuery("index search supports |V| + h_max <= 8");

    IndexBounds bounds;
    if (!is_decomposable(g).decomposable) {
        // Non-decomposable chain graphs are not strictly causal at any h.
        bounds.infinite = true;
        return bounds;
    }

    Pattern pat = observed_pattern(g);
    std::size_t nv = g.size();
    std::size_t generated = 0;
    bool lower_open = true; // all levels so far fully exhausted without passers

    for (std::size_t h = 0; h <= opts.h_max; ++h) {
        std::size_t n = nv + h;
        std::unordered_set<std::uint64_t> seen;
        std::vector<Candidate> passers;

        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        bool budget_hit = false;
        do {
            // Parent subsets along this insertion order; mixed-radix over
            // the number of earlier vertices.
            std::size_t total_bits = n * (n - 1) / 2;
            for (std::uint64_t code = 0; code < (1ULL << total_bits); ++code) {
                if (++generated > opts.budget) {
                    budget_hit = true;
                    break;
                }
                std::vector<std::uint32_t> par(n, 0);
                std::uint64_t rest = code;
                for (std::size_t k = 1; k < n; ++k) {
                    std::uint64_t sub = rest & ((1ULL << k) - 1);
                    rest >>= k;
                    for (std::size_t j = 0; j < k; ++j)
                        if ((sub >> j) & 1ULL) par[order[k]] |= 1u << order[j];
                }
                // Hidden vertices with fewer than two children are
                // marginalizable, i.e. redundant with a smaller level.
                if (opts.prune_single_child_hidden) {
                    std::vector<int> child_count(n, 0);
                    for (std::size_t v = 0; v < n; ++v)
                        for (std::size_t w = 0; w < n; ++w)
                            if ((par[v] >> w) & 1u) ++child_count[w];
                    bool bad = false;
                    for (std::size_t i = nv; i < n; ++i)
                        if (child_count[i] < 2) bad = true;
                    if (bad) continue;
                }
                Candidate cand;
                cand.parents = std::move(par);
                cand.key = canonical_key(cand.parents, nv);
                if (!seen.insert(cand.key).second) continue;
                ++bounds.candidates_screened;
                if (!screen_candidate(cand, pat, n)) continue;
                for (auto m : cand.parents)
                    cand.edge_count += static_cast<std::size_t>(__builtin_popcount(m));
                passers.push_back(std::move(cand));
            }
            if (budget_hit) break;
        } while (std::next_permutation(order.begin(), order.end()));

        bounds.screen_passers_per_level.push_back(passers.size());
        if (budget_hit) {
            bounds.budget_exhausted = true;
            return bounds;
        }

        if (passers.empty()) {
            if (lower_open) bounds.lower = h + 1;
            continue;
        }
        if (lower_open) {
            bounds.lower = h;
            lower_open = false;
        }

        // Verify the cheapest candidates first: exact realization paths
        // (clique-shaped or fully observed), then sparser graphs.
        std::vector<std::pair<std::uint64_t, std::size_t>> ranked;
        for (std::size_t i = 0; i < passers.size(); ++i) {
            auto exp = candidate_expansion(g, passers[i]);
            bool cheap = h == 0;
            if (!cheap) {
                cheap = true;
                for (std::size_t hi = nv; hi < nv + h && cheap; ++hi)
                    if (!exp.dag.parents(hi).empty()) cheap = false;
            }
            ranked.emplace_back((cheap ? 0ULL : (1ULL << 32)) +
                                    (static_cast<std::uint64_t>(passers[i].edge_count) << 16) + i,
                                i);
        }
        std::sort(ranked.begin(), ranked.end());

        std::size_t tried = 0;
        for (auto [rank, i] : ranked) {
            (void)rank;
            if (tried++ >= opts.max_verify_per_level) break;
            auto exp = candidate_expansion(g, passers[i]);
            EqualityOptions eq;
            eq.trials = opts.trials;
            eq.tol = opts.tol;
            eq.seed = opts.seed;
            eq.exec = opts.exec;
            auto rep = verify_model_equality(g, exp, eq);
            if (rep.both()) {
                bounds.upper = h;
                bounds.witness = std::move(exp);
                return bounds;
            }
        }
        // Screen-passers exist but none verified: h cannot be ruled out,
        // keep going for an upper bound.
    }
    return bounds;
}

} // namespace mgc
