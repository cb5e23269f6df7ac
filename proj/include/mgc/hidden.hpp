#ifndef MGC_HIDDEN_HPP
#define MGC_HIDDEN_HPP

#include <string>
#include <utility>
#include <vector>

#include "mgc/graph.hpp"

namespace mgc {

/// A digraph produced by replacing bidirected structure with hidden common
/// parents. `hidden` maps each synthesized vertex label to the sorted member
/// labels of the clique it covers; observed vertices keep their positions
/// 0..|V|-1 in the new graph.
struct HiddenExpansion {
    MixedGraph dag;
    std::vector<std::pair<std::string, std::vector<std::string>>> hidden;

    std::size_t observed_count() const { return dag.size() - hidden.size(); }
    std::vector<std::string> observed_labels() const;
};

/// The clique digraph: one hidden parent per clique of (V,B) with >= 2
/// members (all such cliques by default, only the maximal ones when
/// maximal_only is set), pointing into every member. Directed edges kept.
HiddenExpansion clique_digraph(const MixedGraph& g, bool maximal_only = false);

/// One hidden parent per bidirected edge u<->v, replaced by u <- h -> v.
HiddenExpansion canonical_dag(const MixedGraph& g);

/// Hidden label synthesized from sorted member labels, e.g. "h_3_4";
/// deterministic for a given graph.
std::string hidden_label(const MixedGraph& g, const std::vector<Vertex>& clique);

} // namespace mgc

#endif
