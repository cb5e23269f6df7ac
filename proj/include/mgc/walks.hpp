#ifndef MGC_WALKS_HPP
#define MGC_WALKS_HPP

#include <optional>
#include <string>
#include <vector>

#include "mgc/graph.hpp"

namespace mgc {

/// How an edge is traversed on a walk.
enum class StepKind {
    Forward,   // from -> to along a directed edge
    Backward,  // against a directed edge (to -> from in the graph)
    Bidirected // from <-> to
};

struct WalkStep {
    Vertex from, to;
    StepKind kind;
};

/// A walk may repeat vertices and edges; a path repeats no vertex.
struct Walk {
    std::vector<Vertex> vertices;
    std::vector<WalkStep> steps;

    std::string to_string(const MixedGraph& g) const;
};

/// Collider flag per interior vertex (size = vertices.size() - 2). A vertex
/// is a collider iff both incident walk edges carry an arrowhead at it;
/// with bidirected edges this covers ->v<-, ->v<->, <->v<- and <->v<->.
std::vector<bool> collider_flags(const Walk& w);

struct DConnection {
    bool connected = false;
    std::optional<Walk> witness;
};

/// Is there a walk from u to v whose colliders all lie in A and whose
/// non-colliders all avoid A? Exact walk semantics via reachability on the
/// (vertex, incoming-mark) state space; works for digraphs and mixed graphs.
/// The witness is a shortest such walk, ties broken by vertex order.
DConnection d_connected(const MixedGraph& g, Vertex u, Vertex v,
                        const std::vector<Vertex>& A);

/// Top nodes over all d-connecting walks from u to v given A, where the top
/// of a walk is the top of its initial trek up to the first vertex in
/// A u {v}. Digraphs only.
std::vector<Vertex> tops(const MixedGraph& g, Vertex u, Vertex v,
                         const std::vector<Vertex>& A);

/// Edges u->w with u a top node of a d-connecting walk from `one` to `two`
/// and w an ancestor of `one` along an A-avoiding directed path but not a
/// top node itself. These are the coefficients negated by gamma_negation.
std::vector<std::pair<Vertex, Vertex>> negation_edge_set(const MixedGraph& g,
                                                         const std::vector<Vertex>& A,
                                                         Vertex one, Vertex two);

} // namespace mgc

#endif
