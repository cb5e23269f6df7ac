#ifndef MGC_GRAPH_HPP
#define MGC_GRAPH_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mgc/errors.hpp"

namespace mgc {

/// Dense vertex index. Labels are resolved to indices at construction and
/// all matrix indexing follows vertex declaration order.
using Vertex = std::size_t;

using EdgeList = std::vector<std::pair<std::string, std::string>>;

/// A mixed graph (V, D, B): directed edges u->v plus bidirected edges u<->v
/// stored as canonical unordered pairs. Digraphs are the B = {} special
/// case. Immutable after construction; self-loops and duplicate edges are
/// kept in the raw edge lists so that validate() can report them, but the
/// deduplicated adjacency is what every algorithm sees.
class MixedGraph {
public:
    MixedGraph(std::vector<std::string> labels, const EdgeList& directed,
               const EdgeList& bidirected);

    /// Vertices labelled "1".."n", edges given by 1-based labels.
    static MixedGraph numbered(std::size_t n,
                               const std::vector<std::pair<int, int>>& directed,
                               const std::vector<std::pair<int, int>>& bidirected);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(Vertex v) const { return labels_.at(v); }
    std::optional<Vertex> find(const std::string& label) const;
    Vertex index_of(const std::string& label) const; // throws UnknownVertex

    const std::vector<std::pair<Vertex, Vertex>>& directed_edges() const { return directed_; }
    const std::vector<std::pair<Vertex, Vertex>>& bidirected_edges() const { return bidirected_; }

    const std::vector<Vertex>& children(Vertex v) const { return children_.at(v); }
    const std::vector<Vertex>& parents(Vertex v) const { return parents_.at(v); }
    /// Bidirected neighbours.
    const std::vector<Vertex>& spouses(Vertex v) const { return spouses_.at(v); }

    bool has_directed(Vertex u, Vertex v) const;
    bool has_bidirected(Vertex u, Vertex v) const;

    bool is_acyclic() const { return acyclic_; }
    /// Topological order of the directed part; throws NotAcyclic.
    const std::vector<Vertex>& topological_order() const;

    bool has_self_loops() const;

    // Raw edge lists as constructed (duplicates and self-loops included).
    const std::vector<std::pair<Vertex, Vertex>>& raw_directed() const { return raw_directed_; }
    const std::vector<std::pair<Vertex, Vertex>>& raw_bidirected() const { return raw_bidirected_; }

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, Vertex> index_;
    std::vector<std::pair<Vertex, Vertex>> raw_directed_, raw_bidirected_;
    std::vector<std::pair<Vertex, Vertex>> directed_, bidirected_; // deduped, sorted
    std::vector<std::vector<Vertex>> children_, parents_, spouses_;
    std::vector<Vertex> topo_;
    bool acyclic_ = false;
};

struct ValidationReport {
    std::vector<Vertex> self_loops;
    std::vector<std::pair<Vertex, Vertex>> duplicate_directed;
    std::vector<std::pair<Vertex, Vertex>> duplicate_bidirected;
    std::vector<std::string> unknown_refs; // populated by the file-level check
    bool acyclic = false;
    bool simple = false; // D and B disjoint
    bool chain = false;

    bool clean() const {
        return self_loops.empty() && duplicate_directed.empty() &&
               duplicate_bidirected.empty() && unknown_refs.empty();
    }
};

/// Report-style structural check: self-loops, duplicate edges, acyclicity
/// of the directed part, simplicity (D and B disjoint), chain-graph-ness.
ValidationReport validate(const MixedGraph& g);

/// True iff no semi-directed cycle exists: contract every chain component
/// and test that the quotient digraph is acyclic and loop-free.
bool is_chain_graph(const MixedGraph& g);

struct ChainComponents {
    std::vector<std::vector<Vertex>> components; // sorted members, sorted by min
    std::vector<std::size_t> component_of;
};

/// Connected components of the bidirected part. Throws NotChainGraph.
ChainComponents chain_components(const MixedGraph& g);

/// All u with a directed path to some s in S avoiding `forbidden` at every
/// node. Trivial paths allowed, so S is always contained in the result.
std::vector<Vertex> ancestors(const MixedGraph& g, const std::vector<Vertex>& S,
                              const std::vector<Vertex>& forbidden = {});

/// All cliques of the bidirected part with at least min_size vertices, in
/// lexicographic index order. min_size = 2 gives the hidden-variable clique
/// set used by clique_digraph.
std::vector<std::vector<Vertex>> bidirected_cliques(const MixedGraph& g,
                                                    std::size_t min_size,
                                                    std::size_t cap = 1u << 20);

} // namespace mgc

#endif
