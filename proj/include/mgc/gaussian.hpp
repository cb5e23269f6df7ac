#ifndef MGC_GAUSSIAN_HPP
#define MGC_GAUSSIAN_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "mgc/graph.hpp"
#include "mgc/parallel.hpp"

namespace mgc {

/// Edge coefficients and error covariance for a mixed graph, in the graph's
/// vertex order. lambda(u,v) is the coefficient of u->v and must be zero off
/// the directed support; omega is symmetric positive definite and supported
/// on the diagonal plus the bidirected edges (diagonal for digraphs).
struct ParamPoint {
    Eigen::MatrixXd lambda;
    Eigen::MatrixXd omega;
};

/// Symmetric positive definite matrix indexed by vertex labels.
class CovMatrix {
public:
    CovMatrix(std::vector<std::string> labels, Eigen::MatrixXd m);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t row_of(const std::string& label) const;
    const Eigen::MatrixXd& matrix() const { return m_; }
    double at(const std::string& u, const std::string& v) const;

private:
    std::vector<std::string> labels_;
    Eigen::MatrixXd m_;
};

/// Sigma = (I - Lambda)^-T Omega (I - Lambda)^-1, computed by triangular
/// solves in topological order (I - Lambda is unipotent on a DAG).
CovMatrix sigma_of(const MixedGraph& g, const ParamPoint& p);

/// Submatrix over the given labels, reindexed.
CovMatrix marginal(const CovMatrix& s, const std::vector<std::string>& labels);

/// Conditional covariance sigma_{uv.A} = sigma_uv - S_uA S_AA^-1 S_Av.
double cond_cov(const CovMatrix& s, const std::string& u, const std::string& v,
                const std::vector<std::string>& A);

/// Block form Sigma_{S.A} for a set S.
Eigen::MatrixXd cond_block(const CovMatrix& s, const std::vector<std::string>& S,
                           const std::vector<std::string>& A);

/// Unique (Lambda, Omega) with sigma_of(g, result) == s when s lies in the
/// digraph model: lambda rows are regression coefficients on parents, omega
/// the corresponding Schur complements.
ParamPoint recover_params(const MixedGraph& g, const CovMatrix& s);

/// Same recovery for a chain graph: Lambda by regression on parents (valid
/// because error terms are independent of earlier chain components), Omega
/// by congruence (I-Lambda)^T s (I-Lambda).
ParamPoint recover_params_chain(const MixedGraph& g, const CovMatrix& s);

/// Deterministic-per-seed generic parameters: |lambda| in [0.1, 1] * scale
/// with random sign, omega on the bidirected support shifted to a minimum
/// eigenvalue of at least 0.1.
ParamPoint sample_params(const MixedGraph& g, std::uint64_t seed, double scale = 1.0);

struct MembershipViolation {
    std::string u, v;
    std::vector<std::string> given;
    double value = 0.0;
};

struct MembershipReport {
    bool member = false;
    std::vector<MembershipViolation> violations;
    std::size_t checked_triples = 0;
};

/// Conditional-independence membership test for chain-graph models: s (scaled
/// to unit diagonal) must have |sigma_{uv.A}| <= tol whenever no d-connecting
/// walk from u to v given A exists. A ranges over all subsets of V \ {u,v}
/// up to max_cond (all subsets by default; capped loops stay exhaustive for
/// |V| <= 12).
MembershipReport membership_chain(const MixedGraph& g, const CovMatrix& s, double tol,
                                  std::size_t max_cond = static_cast<std::size_t>(-1),
                                  Exec exec = Exec::OpenMP);

struct DsepScanReport {
    bool pass = false;
    // Separated triples whose conditional covariance failed to vanish.
    std::vector<MembershipViolation> zero_failures;
    // Connected triples whose conditional covariance never got large.
    std::vector<MembershipViolation> genericity_failures;
    std::size_t separated = 0, connected = 0;
};

/// Evidence harness for the d-connection <-> conditional covariance
/// equivalence on a digraph: at `points` sampled parameter points, separated
/// triples must stay below zero_tol and connected triples must exceed
/// dep_tol somewhere. Scans all (u,v,A) with |A| <= max_cond.
DsepScanReport dsep_covariance_scan(const MixedGraph& g, std::size_t points,
                                    std::uint64_t seed, double zero_tol, double dep_tol,
                                    std::size_t max_cond = 3, Exec exec = Exec::OpenMP);

} // namespace mgc

#endif
