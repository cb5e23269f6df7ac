#include "mgc/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace mgc {

MixedGraph::MixedGraph(std::vector<std::string> labels, const EdgeList& directed,
                       const EdgeList& bidirected)
    : labels_(std::move(labels)) {
    for (Vertex i = 0; i < labels_.size(); ++i) {
        if (!index_.emplace(labels_[i], i).second)
            throw ParseError("duplicate vertex label: " + labels_[i]);
    }
    auto resolve = [&](const std::string& s) -> Vertex {
        auto it = index_.find(s);
        if (it == index_.end()) throw UnknownVertex("unknown vertex: " + s);
        return it->second;
    };
    for (const auto& [a, b] : directed) raw_directed_.emplace_back(resolve(a), resolve(b));
    for (const auto& [a, b] : bidirected) {
        Vertex u = resolve(a), v = resolve(b);
        raw_bidirected_.emplace_back(u, v);
    }

    std::set<std::pair<Vertex, Vertex>> dset(raw_directed_.begin(), raw_directed_.end());
    directed_.assign(dset.begin(), dset.end());
    std::set<std::pair<Vertex, Vertex>> bset;
    for (auto [u, v] : raw_bidirected_) bset.emplace(std::min(u, v), std::max(u, v));
    bidirected_.assign(bset.begin(), bset.end());

    children_.resize(size());
    parents_.resize(size());
    spouses_.resize(size());
    for (auto [u, v] : directed_) {
        children_[u].push_back(v);
        parents_[v].push_back(u);
    }
    for (auto [u, v] : bidirected_) {
        spouses_[u].push_back(v);
        if (u != v) spouses_[v].push_back(u);
    }
    for (auto& a : children_) std::sort(a.begin(), a.end());
    for (auto& a : parents_) std::sort(a.begin(), a.end());
    for (auto& a : spouses_) std::sort(a.begin(), a.end());

    // Kahn's algorithm; ties broken by smallest index for reproducibility.
    std::vector<std::size_t> indeg(size(), 0);
    for (auto [u, v] : directed_) {
        (void)u;
        ++indeg[v];
    }
    std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
    for (Vertex v = 0; v < size(); ++v)
        if (indeg[v] == 0) ready.push(v);
    while (!ready.empty()) {
        Vertex v = ready.top();
        ready.pop();
        topo_.push_back(v);
        for (Vertex c : children_[v])
            if (--indeg[c] == 0) ready.push(c);
    }
    acyclic_ = topo_.size() == size();
    if (!acyclic_) topo_.clear();
}

MixedGraph MixedGraph::numbered(std::size_t n,
                                const std::vector<std::pair<int, int>>& directed,
                                const std::vector<std::pair<int, int>>& bidirected) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    EdgeList d, b;
    for (auto [u, v] : directed) d.emplace_back(std::to_string(u), std::to_string(v));
    for (auto [u, v] : bidirected) b.emplace_back(std::to_string(u), std::to_string(v));
    return MixedGraph(std::move(labels), d, b);
}

std::optional<Vertex> MixedGraph::find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Vertex MixedGraph::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw UnknownVertex("unknown vertex: " + label);
    return it->second;
}

bool MixedGraph::has_directed(Vertex u, Vertex v) const {
    const auto& c = children_[u];
    return std::binary_search(c.begin(), c.end(), v);
}

bool MixedGraph::has_bidirected(Vertex u, Vertex v) const {
    const auto& s = spouses_[u];
    return u != v && std::binary_search(s.begin(), s.end(), v);
}

const std::vector<Vertex>& MixedGraph::topological_order() const {
    if (!acyclic_) throw NotAcyclic("directed part has a cycle");
    return topo_;
}

bool MixedGraph::has_self_loops() const {
    for (auto [u, v] : raw_directed_)
        if (u == v) return true;
    for (auto [u, v] : raw_bidirected_)
        if (u == v) return true;
    return false;
}

ValidationReport validate(const MixedGraph& g) {
    ValidationReport r;
    std::set<Vertex> loops;
    for (auto [u, v] : g.raw_directed())
        if (u == v) loops.insert(u);
    for (auto [u, v] : g.raw_bidirected())
        if (u == v) loops.insert(u);
    r.self_loops.assign(loops.begin(), loops.end());

    std::set<std::pair<Vertex, Vertex>> seen, dup;
    for (auto e : g.raw_directed())
        if (!seen.insert(e).second) dup.insert(e);
    r.duplicate_directed.assign(dup.begin(), dup.end());
    seen.clear();
    dup.clear();
    for (auto [u, v] : g.raw_bidirected()) {
        auto e = std::make_pair(std::min(u, v), std::max(u, v));
        if (!seen.insert(e).second) dup.insert(e);
    }
    r.duplicate_bidirected.assign(dup.begin(), dup.end());

    r.acyclic = g.is_acyclic();
    r.simple = true;
    for (auto [u, v] : g.directed_edges())
        if (g.has_bidirected(u, v)) r.simple = false;
    r.chain = is_chain_graph(g);
    return r;
}

namespace {

std::vector<std::size_t> bidirected_component_of(const MixedGraph& g) {
    std::vector<std::size_t> comp(g.size(), static_cast<std::size_t>(-1));
    std::size_t next = 0;
    for (Vertex v = 0; v < g.size(); ++v) {
        if (comp[v] != static_cast<std::size_t>(-1)) continue;
        std::vector<Vertex> stack{v};
        comp[v] = next;
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            for (Vertex y : g.spouses(x))
                if (comp[y] == static_cast<std::size_t>(-1)) {
                    comp[y] = next;
                    stack.push_back(y);
                }
        }
        ++next;
    }
    return comp;
}

} // namespace

bool is_chain_graph(const MixedGraph& g) {
    if (g.has_self_loops()) return false;
    auto comp = bidirected_component_of(g);
    std::size_t k = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    // Quotient digraph over chain components: a directed edge inside a
    // component is a semi-directed cycle, as is any directed cycle between
    // components.
    std::set<std::pair<std::size_t, std::size_t>> q;
    for (auto [u, v] : g.directed_edges()) {
        if (comp[u] == comp[v]) return false;
        q.emplace(comp[u], comp[v]);
    }
    std::vector<std::vector<std::size_t>> adj(k);
    std::vector<std::size_t> indeg(k, 0);
    for (auto [a, b] : q) {
        adj[a].push_back(b);
        ++indeg[b];
    }
    std::vector<std::size_t> ready;
    for (std::size_t c = 0; c < k; ++c)
        if (indeg[c] == 0) ready.push_back(c);
    std::size_t done = 0;
    while (!ready.empty()) {
        auto c = ready.back();
        ready.pop_back();
        ++done;
        for (auto d : adj[c])
            if (--indeg[d] == 0) ready.push_back(d);
    }
    return done == k;
}

ChainComponents chain_components(const MixedGraph& g) {
    if (!is_chain_graph(g)) throw NotChainGraph("graph has a semi-directed cycle");
    ChainComponents cc;
    auto comp = bidirected_component_of(g);
    std::size_t k = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    cc.components.resize(k);
    for (Vertex v = 0; v < g.size(); ++v) cc.components[comp[v]].push_back(v);
    // Renumber components by smallest member so the order is declaration-stable.
    std::sort(cc.components.begin(), cc.components.end());
    cc.component_of.resize(g.size());
    for (std::size_t c = 0; c < cc.components.size(); ++c)
        for (Vertex v : cc.components[c]) cc.component_of[v] = c;
    return cc;
}

std::vector<Vertex> ancestors(const MixedGraph& g, const std::vector<Vertex>& S,
                              const std::vector<Vertex>& forbidden) {
    std::vector<char> forb(g.size(), 0), in(g.size(), 0);
    for (Vertex v : forbidden) forb.at(v) = 1;
    for (Vertex v : S)
        if (forb.at(v)) throw BadQuery("ancestors: S and forbidden overlap");
    std::vector<Vertex> stack;
    for (Vertex v : S)
        if (!in[v]) {
            in[v] = 1;
            stack.push_back(v);
        }
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex p : g.parents(v))
            if (!in[p] && !forb[p]) {
                in[p] = 1;
                stack.push_back(p);
            }
    }
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.size(); ++v)
        if (in[v]) out.push_back(v);
    return out;
}

namespace {

void extend_clique(const MixedGraph& g, std::vector<Vertex>& cur, Vertex start,
                   std::size_t min_size, std::size_t cap,
                   std::vector<std::vector<Vertex>>& out) {
    for (Vertex v = start; v < g.size(); ++v) {
        bool ok = true;
        for (Vertex u : cur)
            if (!g.has_bidirected(u, v)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        cur.push_back(v);
        if (cur.size() >= min_size) {
            if (out.size() >= cap) throw CapExceeded("clique enumeration cap exceeded");
            out.push_back(cur);
        }
        extend_clique(g, cur, v + 1, min_size, cap, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<std::vector<Vertex>> bidirected_cliques(const MixedGraph& g,
                                                    std::size_t min_size,
                                                    std::size_t cap) {
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> cur;
    if (min_size == 0) min_size = 1;
    extend_clique(g, cur, 0, min_size, cap, out);
    return out;
}

} // namespace mgc
