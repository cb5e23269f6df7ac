#ifndef MGC_CAUSALITY_HPP
#define MGC_CAUSALITY_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "mgc/gaussian.hpp"
#include "mgc/graph.hpp"
#include "mgc/hidden.hpp"
#include "mgc/parallel.hpp"

namespace mgc {

/// Decomposition Omega = Delta_11 + Gamma_21^T Delta_22 Gamma_21 where row r
/// of gamma21 is supported on cliques[r] and every delta is positive.
struct RealizationResult {
    std::vector<std::vector<Vertex>> cliques;
    Eigen::MatrixXd gamma21;       // |cliques| x |V|
    Eigen::VectorXd delta_observed; // |V|
    Eigen::VectorXd delta_hidden;   // |cliques|
    double residual = 0.0;

    Eigen::MatrixXd reconstruct() const;
};

/// Exact staged elimination along a perfect elimination ordering of (V,B).
/// Requires a decomposable bidirected part; each eliminated vertex
/// contributes one rank-one term on the clique it is simplicial in.
RealizationResult realize_omega(const MixedGraph& g,
                                const std::vector<std::vector<Vertex>>& cliques,
                                const Eigen::MatrixXd& omega);

/// Best-effort least-squares fit of the same decomposition for patterns
/// where the exact construction does not apply; reports the residual it
/// reached.
RealizationResult fit_omega_realization(const MixedGraph& g,
                                        const std::vector<std::vector<Vertex>>& cliques,
                                        const Eigen::MatrixXd& omega,
                                        std::uint64_t seed = 42, int restarts = 6,
                                        int iters = 4000);

/// Negate entries (1,2) and (2,1); everything else unchanged.
Eigen::MatrixXd sign_flip(const Eigen::MatrixXd& phi);

struct SignFlipWitness {
    Eigen::MatrixXd phi; // PD, supported on the p-cycle plus diagonal
    double min_eig = 0.0;
    double min_eig_flipped = 0.0;
};

/// Search unit-diagonal cycle matrices for phi positive definite whose
/// sign-flip has an eigenvalue <= -0.05. Grid over edge weights with a
/// seeded refinement pass; expected to succeed for p in {4,...,12}.
SignFlipWitness find_sign_flip_counterexample(std::size_t p, Exec exec = Exec::OpenMP);

/// Gamma' equal to p.lambda with entries negated exactly on the negation
/// edge set E_A(one, two); omega unchanged.
ParamPoint gamma_negation(const MixedGraph& d, const std::vector<Vertex>& A, Vertex one,
                          Vertex two, const ParamPoint& p);

/// Determinant comparisons between Sigma and the negated Sigma' at one
/// parameter point: det over A x A unchanged, det over 1A x 2A negated, all
/// other cycle pairs unchanged, and the conditional cycle block equals the
/// sign-flip of the original.
struct IdentityReport {
    bool pass = false;
    double err_det_A = 0.0;
    double err_det_12 = 0.0;
    double max_err_other = 0.0;
    double schur_flip_err = 0.0;
    std::size_t pairs_checked = 0;
};

IdentityReport verify_determinant_identities(const MixedGraph& d, const std::vector<Vertex>& A,
                                             const std::vector<Vertex>& cycle,
                                             const ParamPoint& p, double tol);

struct IdentitySweep {
    bool pass = false;
    double max_err_det_A = 0.0, max_err_det_12 = 0.0, max_err_other = 0.0,
           max_schur_err = 0.0;
    std::size_t trials = 0;
};

/// The same identities over seeded sampled parameter points.
IdentitySweep verify_determinant_identities_trials(const MixedGraph& d,
                                                   const std::vector<Vertex>& A,
                                                   const std::vector<Vertex>& cycle,
                                                   std::size_t trials, std::uint64_t seed,
                                                   double tol, Exec exec = Exec::OpenMP);

struct EqualityOptions {
    std::size_t trials = 20;
    double tol = 1e-6;
    std::uint64_t seed = 42;
    /// Extra error-covariance points to push through the realization
    /// direction (e.g. a sign-flip certificate matrix).
    std::vector<Eigen::MatrixXd> extra_omegas;
    Exec exec = Exec::OpenMP;
};

struct EqualityReport {
    // Direction 1: marginals of sampled points on d satisfy g's conditional
    // independences. Direction 2: sampled points on g are reproduced through
    // d by recovering Lambda, realizing Omega and rebuilding the marginal.
    bool marginal_direction_pass = false;
    bool realize_direction_pass = false;
    std::vector<double> marginal_violations; // per trial, worst |sigma_uv.A|
    std::vector<double> realize_residuals;   // per trial, max-abs reconstruction error
    std::string note;

    bool both() const { return marginal_direction_pass && realize_direction_pass; }
};

/// Numerical evidence (not proof) that N_V(d) equals the chain-graph model
/// of g. d must contain g's vertices; its hidden structure is read from the
/// expansion map.
EqualityReport verify_model_equality(const MixedGraph& g, const HiddenExpansion& d,
                                     const EqualityOptions& opts = {});

/// View an arbitrary digraph as a hidden-variable expansion over the given
/// observed labels.
HiddenExpansion as_expansion(const MixedGraph& d, const std::vector<std::string>& observed);

enum class Decision { StrictlyCausal, NotStrictlyCausal };

struct RefutationCertificate {
    std::vector<Vertex> cycle;       // chordless bidirected cycle, cyclic order
    std::vector<Vertex> ancestor_set; // strict ancestors of the cycle's chain component
    Eigen::MatrixXd phi;
    double phi_min_eig = 0.0;
    double phi_flipped_min_eig = 0.0;
    IdentitySweep identities; // on the canonical DAG of the p-cycle, A = {}
};

struct CausalityVerdict {
    Decision decision = Decision::NotStrictlyCausal;
    std::optional<HiddenExpansion> witness;
    std::optional<RefutationCertificate> refutation;
};

struct DecideOptions {
    std::size_t identity_trials = 50;
    std::uint64_t seed = 42;
    double identity_tol = 1e-9;
    bool maximal_cliques = false;
    Exec exec = Exec::OpenMP;
};

/// Main decision procedure for chain graphs: strictly causal iff the
/// bidirected part is decomposable. Produces the clique-digraph witness or
/// the refutation certificate (chordless cycle, ancestor set, sign-flip
/// matrix, verified determinant identities).
CausalityVerdict decide_strict_causal(const MixedGraph& g, const DecideOptions& opts = {});

struct IndexSearchOptions {
    std::size_t h_max = 2;
    std::size_t budget = 20'000'000; // candidate digraphs generated
    std::size_t trials = 10;
    double tol = 1e-6;
    std::uint64_t seed = 42;
    /// Hidden vertices with at most one child can be marginalized away, so
    /// candidates containing them are redundant with a smaller level.
    bool prune_single_child_hidden = true;
    std::size_t max_verify_per_level = 64;
    Exec exec = Exec::OpenMP;
};

struct IndexBounds {
    bool infinite = false; // not strictly causal, index is unbounded
    std::size_t lower = 0;
    std::optional<std::size_t> upper;
    std::optional<HiddenExpansion> witness;
    bool budget_exhausted = false;
    std::size_t candidates_screened = 0;
    std::vector<std::size_t> screen_passers_per_level;
};

/// Bounded search for the minimum number of hidden vertices h such that some
/// acyclic digraph on |V|+h vertices has a hidden-variable model equal to
/// the chain-graph model. Levels are exhausted over non-isomorphic DAGs
/// (hidden labels interchangeable); the screen is exact conditional
/// independence pattern matching, verification is the numerical equality
/// harness.
IndexBounds causality_index_search(const MixedGraph& g, const IndexSearchOptions& opts = {});

} // namespace mgc

#endif
