#ifndef MGC_CHORDAL_HPP
#define MGC_CHORDAL_HPP

#include <vector>

#include "mgc/graph.hpp"

namespace mgc {

/// Outcome of the decomposability test on the bidirected part (V, B).
/// When decomposable, elimination_order is a perfect elimination ordering.
/// Otherwise certificate_cycle is a chordless bidirected cycle of length
/// >= 4: consecutive vertices (cyclically) are adjacent and no other pair is.
struct DecomposabilityReport {
    bool decomposable = false;
    std::vector<Vertex> elimination_order;
    std::vector<Vertex> certificate_cycle;
};

/// Maximum cardinality search plus perfect-elimination verification on
/// (V, B); directed edges are ignored.
DecomposabilityReport is_decomposable(const MixedGraph& g);

/// Checks the report's own claim: either verifies the elimination ordering
/// or verifies the chordless cycle. Used by tests and by the certificate
/// fallback path.
bool check_decomposability_certificate(const MixedGraph& g, const DecomposabilityReport& r);

} // namespace mgc

#endif
