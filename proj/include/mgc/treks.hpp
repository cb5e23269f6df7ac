#ifndef MGC_TREKS_HPP
#define MGC_TREKS_HPP

#include <string>
#include <vector>

#include "mgc/gaussian.hpp"
#include "mgc/graph.hpp"
#include "mgc/poly.hpp"

namespace mgc {

constexpr std::size_t kTrekCap = 1'000'000;

/// A collider-free walk: two directed paths diverging from a common top
/// node. Both sides are stored top-first; a side of length one is trivial.
/// The left side ends at the source, the right side at the target. Sides may
/// share vertices, so a trek need not be a path.
struct Trek {
    std::vector<Vertex> left;  // top, ..., source
    std::vector<Vertex> right; // top, ..., target

    Vertex top() const { return left.front(); }
    Vertex source() const { return left.back(); }
    Vertex target() const { return right.back(); }
    std::size_t edge_count() const { return left.size() + right.size() - 2; }
    /// Edges of both sides, left side first; repeats kept.
    std::vector<std::pair<Vertex, Vertex>> edges() const;
    std::string to_string(const MixedGraph& g) const;
};

/// All treks from u to v: pairs of directed paths from every common
/// ancestor. Includes the trivial trek when u == v. Throws CapExceeded past
/// `cap` treks.
std::vector<Trek> enumerate_treks(const MixedGraph& g, Vertex u, Vertex v,
                                  std::size_t cap = kTrekCap);

/// omega at the top times lambda over every traversed edge (squares for
/// edges used by both sides).
SparsePoly trek_monomial(const Ring& ring, const Trek& t);
double trek_monomial_eval(const Trek& t, const ParamPoint& p);

/// Variable assignment for evaluating ring polynomials at a ParamPoint.
std::vector<double> ring_values(const Ring& ring, const MixedGraph& g, const ParamPoint& p);

/// The full covariance matrix as trek-monomial sums, entry (u,v) summing
/// over all treks from u to v.
PolyMatrix trek_rule_sigma(const MixedGraph& g, std::size_t cap = kTrekCap);

/// A set of treks with pairwise-distinct sources and pairwise-distinct
/// targets, carrying the sign of the source-to-target permutation.
struct TrekSystem {
    std::vector<Trek> treks; // treks[i] starts at X[i]
    int sign = 1;
    bool no_sided_intersection = false;
};

/// All systems of treks from X to Y (over every bijection and trek choice).
/// With require_nsi only systems whose left sides are pairwise disjoint and
/// right sides pairwise disjoint are returned.
std::vector<TrekSystem> trek_systems(const MixedGraph& g, const std::vector<Vertex>& X,
                                     const std::vector<Vertex>& Y, bool require_nsi,
                                     std::size_t cap = kTrekCap);

/// det(Sigma_{X,Y}) expanded as the signed sum over no-sided-intersection
/// trek systems; exact polynomial identity with the trek rule.
SparsePoly det_via_treks(const MixedGraph& g, const std::vector<Vertex>& X,
                         const std::vector<Vertex>& Y, std::size_t cap = kTrekCap);

/// Combinatorial early-exit search: does a no-sided-intersection system from
/// X to Y exist? Equivalent to det_via_treks not being the zero polynomial.
bool has_nsi_system(const MixedGraph& g, const std::vector<Vertex>& X,
                    const std::vector<Vertex>& Y, std::size_t cap = kTrekCap);

} // namespace mgc

#endif
