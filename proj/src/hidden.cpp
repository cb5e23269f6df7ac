#include "mgc/hidden.hpp"

#include <algorithm>

namespace mgc {

std::vector<std::string> HiddenExpansion::observed_labels() const {
    std::vector<std::string> out(dag.labels().begin(),
                                 dag.labels().begin() + observed_count());
    return out;
}

std::string hidden_label(const MixedGraph& g, const std::vector<Vertex>& clique) {
    std::string s = "h";
    for (Vertex v : clique) s += "_" + g.label(v);
    // Avoid the unlikely collision with a declared label.
    while (g.find(s).has_value()) s = "h" + s;
    return s;
}

namespace {

HiddenExpansion expand(const MixedGraph& g, std::vector<std::vector<Vertex>> cliques) {
    if (!g.is_acyclic()) throw NotAcyclic("hidden-variable expansion needs an acyclic graph");
    std::vector<std::string> labels = g.labels();
    EdgeList directed, none;
    for (auto [u, v] : g.directed_edges())
        directed.emplace_back(g.label(u), g.label(v));
    std::vector<std::pair<std::string, std::vector<std::string>>> hidden;
    for (const auto& c : cliques) {
        std::string h = hidden_label(g, c);
        labels.push_back(h);
        std::vector<std::string> members;
        for (Vertex v : c) {
            directed.emplace_back(h, g.label(v));
            members.push_back(g.label(v));
        }
        hidden.emplace_back(h, members);
    }
    return HiddenExpansion{MixedGraph(std::move(labels), directed, none), std::move(hidden)};
}

} // namespace

HiddenExpansion clique_digraph(const MixedGraph& g, bool maximal_only) {
    auto cliques = bidirected_cliques(g, 2);
    if (maximal_only) {
        std::vector<std::vector<Vertex>> maximal;
        for (const auto& c : cliques) {
            bool is_max = true;
            for (const auto& d : cliques) {
                if (d.size() <= c.size()) continue;
                if (std::includes(d.begin(), d.end(), c.begin(), c.end())) {
                    is_max = false;
                    break;
                }
            }
            if (is_max) maximal.push_back(c);
        }
        cliques = std::move(maximal);
    }
    return expand(g, std::move(cliques));
}

HiddenExpansion canonical_dag(const MixedGraph& g) {
    std::vector<std::vector<Vertex>> pairs;
    for (auto [u, v] : g.bidirected_edges()) pairs.push_back({u, v});
    return expand(g, std::move(pairs));
}

} // namespace mgc
