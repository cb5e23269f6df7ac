#include <algorithm>
#include <cmath>
#include <limits>

#include "mgc/causality.hpp"
#include "mgc/chordal.hpp"
#include "mgc/rng.hpp"

namespace mgc {

Eigen::MatrixXd RealizationResult::reconstruct() const {
    const auto n = delta_observed.size();
    Eigen::MatrixXd m = delta_observed.asDiagonal();
    for (Eigen::Index r = 0; r < gamma21.rows(); ++r)
        m += delta_hidden(r) * gamma21.row(r).transpose() * gamma21.row(r);
    return m.topLeftCorner(n, n);
}

namespace {

void check_omega_shape(const MixedGraph& g, const Eigen::MatrixXd& omega) {
    const auto n = static_cast<Eigen::Index>(g.size());
    if (omega.rows() != n || omega.cols() != n)
        throw SizeMismatch("omega must be |V| x |V|");
    Eigen::LLT<Eigen::MatrixXd> llt((omega + omega.transpose()) / 2.0);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("omega is not positive definite");
}

// Zero out entries off the diagonal-plus-bidirected support.
Eigen::MatrixXd project_to_support(const MixedGraph& g, const Eigen::MatrixXd& omega) {
    Eigen::MatrixXd m = (omega + omega.transpose()) / 2.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (i != j && !g.has_bidirected(static_cast<Vertex>(i), static_cast<Vertex>(j)))
                m(i, j) = 0.0;
    return m;
}

struct RankOneTerm {
    std::vector<Vertex> support; // sorted
    Eigen::VectorXd gamma;       // full length, zero off support
};

// Assign each term to a distinct provided clique containing its support;
// smallest covering clique first.
RealizationResult assemble(const MixedGraph& g,
                           const std::vector<std::vector<Vertex>>& cliques,
                           const std::vector<RankOneTerm>& terms,
                           const Eigen::VectorXd& delta_observed,
                           const Eigen::MatrixXd& omega_target) {
    RealizationResult res;
    res.cliques = cliques;
    res.gamma21 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cliques.size()),
                                        static_cast<Eigen::Index>(g.size()));
    res.delta_observed = delta_observed;
    res.delta_hidden = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(cliques.size()));
    std::vector<char> used(cliques.size(), 0);
    for (const auto& term : terms) {
        long long best = -1;
        for (std::size_t r = 0; r < cliques.size(); ++r) {
            if (used[r]) continue;
            if (!std::includes(cliques[r].begin(), cliques[r].end(), term.support.begin(),
                               term.support.end()))
                continue;
            if (best < 0 || cliques[r].size() < cliques[static_cast<std::size_t>(best)].size())
                best = static_cast<long long>(r);
        }
        if (best < 0)
            throw ConvergenceFailure("no unused hidden clique covers a realization term");
        used[static_cast<std::size_t>(best)] = 1;
        res.gamma21.row(best) = term.gamma.transpose();
    }
    res.residual = (res.reconstruct() - omega_target).cwiseAbs().maxCoeff();
    return res;
}

} // namespace

RealizationResult realize_omega(const MixedGraph& g,
                                const std::vector<std::vector<Vertex>>& cliques,
                                const Eigen::MatrixXd& omega) {
    check_omega_shape(g, omega);
    auto decomp = is_decomposable(g);
    if (!decomp.decomposable)
        throw NotDecomposable("bidirected part has a chordless cycle of length >= 4");

    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd cur = project_to_support(g, omega);
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(n);
    std::vector<char> active(g.size(), 1);
    std::vector<RankOneTerm> terms;

    for (Vertex v : decomp.elimination_order) {
        std::vector<Vertex> nbr;
        for (Vertex u : g.spouses(v))
            if (active[u] && cur(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) != 0.0)
                nbr.push_back(u);
        const auto vi = static_cast<Eigen::Index>(v);
        if (nbr.empty()) {
            if (cur(vi, vi) <= 0.0)
                throw ConvergenceFailure("elimination lost positive definiteness");
            delta(vi) = cur(vi, vi);
            active[v] = 0;
            continue;
        }

        // Remaining active block and the Schur complement at v; peeling off
        // gamma gamma^T with gamma_v^2 = (1 - eps) * omega_vv keeps the rest
        // positive definite for small eps while leaving delta_v > 0.
        std::vector<Vertex> rest;
        for (Vertex u = 0; u < g.size(); ++u)
            if (active[u] && u != v) rest.push_back(u);
        Eigen::MatrixXd block(rest.size(), rest.size());
        Eigen::VectorXd w(rest.size());
        for (std::size_t i = 0; i < rest.size(); ++i) {
            w(static_cast<Eigen::Index>(i)) = cur(vi, static_cast<Eigen::Index>(rest[i]));
            for (std::size_t j = 0; j < rest.size(); ++j)
                block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    cur(static_cast<Eigen::Index>(rest[i]), static_cast<Eigen::Index>(rest[j]));
        }
        double ovv = cur(vi, vi);
        if (ovv <= 0.0) throw ConvergenceFailure("elimination lost positive definiteness");
        Eigen::MatrixXd schur = block - w * w.transpose() / ovv;
        double mu = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(schur).eigenvalues().minCoeff();
        if (mu <= 0.0) throw ConvergenceFailure("elimination lost positive definiteness");
        double wnorm2 = w.squaredNorm();
        double ratio = wnorm2 > 0.0 ? std::min(1.0, ovv * mu / (2.0 * wnorm2)) : 1.0;
        double eps = ratio / (1.0 + ratio);
        double c = std::sqrt(ovv * (1.0 - eps));

        RankOneTerm term;
        term.gamma = Eigen::VectorXd::Zero(n);
        term.gamma(vi) = c;
        term.support = nbr;
        term.support.push_back(v);
        std::sort(term.support.begin(), term.support.end());
        for (Vertex u : nbr)
            term.gamma(static_cast<Eigen::Index>(u)) =
                cur(vi, static_cast<Eigen::Index>(u)) / c;

        for (Vertex a : term.support)
            for (Vertex b : term.support)
                cur(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) -=
                    term.gamma(static_cast<Eigen::Index>(a)) * term.gamma(static_cast<Eigen::Index>(b));
        delta(vi) = cur(vi, vi);
        if (delta(vi) <= 0.0) throw ConvergenceFailure("nonpositive residual variance");
        active[v] = 0;
        terms.push_back(std::move(term));
    }

    return assemble(g, cliques, terms, delta, (omega + omega.transpose()) / 2.0);
}

RealizationResult fit_omega_realization(const MixedGraph& g,
                                        const std::vector<std::vector<Vertex>>& cliques,
                                        const Eigen::MatrixXd& omega, std::uint64_t seed,
                                        int restarts, int iters) {
    check_omega_shape(g, omega);
    const auto n = static_cast<Eigen::Index>(g.size());
    const auto k = static_cast<Eigen::Index>(cliques.size());
    Eigen::MatrixXd target = (omega + omega.transpose()) / 2.0;

    RealizationResult best;
    best.residual = std::numeric_limits<double>::infinity();

    for (int attempt = 0; attempt < restarts; ++attempt) {
        Rng rng(Rng::substream(seed, static_cast<std::uint64_t>(attempt)));
        Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(k, n);
        for (Eigen::Index r = 0; r < k; ++r)
            for (Vertex v : cliques[static_cast<std::size_t>(r)])
                gamma(r, static_cast<Eigen::Index>(v)) = rng.uniform(-1.0, 1.0);
        Eigen::VectorXd logd = Eigen::VectorXd::Zero(n);
        for (Eigen::Index v = 0; v < n; ++v) logd(v) = std::log(std::max(0.1, target(v, v)));

        // Adam on || D + Gamma^T Gamma - Omega ||_F^2 with support masks.
        Eigen::MatrixXd mg = Eigen::MatrixXd::Zero(k, n), vg = Eigen::MatrixXd::Zero(k, n);
        Eigen::VectorXd md = Eigen::VectorXd::Zero(n), vd = Eigen::VectorXd::Zero(n);
        const double lr = 0.03, b1 = 0.9, b2 = 0.999, eps = 1e-8;
        for (int it = 1; it <= iters; ++it) {
            Eigen::VectorXd d = logd.array().exp();
            Eigen::MatrixXd model = Eigen::MatrixXd(d.asDiagonal()) + gamma.transpose() * gamma;
            Eigen::MatrixXd r = model - target;
            Eigen::MatrixXd ggrad = 4.0 * gamma * r;
            for (Eigen::Index row = 0; row < k; ++row)
                for (Eigen::Index v = 0; v < n; ++v) {
                    bool in = std::binary_search(cliques[static_cast<std::size_t>(row)].begin(),
                                                 cliques[static_cast<std::size_t>(row)].end(),
                                                 static_cast<Vertex>(v));
                    if (!in) ggrad(row, v) = 0.0;
                }
            Eigen::VectorXd dgrad = 2.0 * r.diagonal().cwiseProduct(d);
            double corr1 = 1.0 - std::pow(b1, it), corr2 = 1.0 - std::pow(b2, it);
            mg = b1 * mg + (1 - b1) * ggrad;
            vg = b2 * vg + (1 - b2) * ggrad.cwiseProduct(ggrad);
            gamma -= lr * (mg / corr1).cwiseQuotient(((vg / corr2).cwiseSqrt().array() + eps).matrix());
            md = b1 * md + (1 - b1) * dgrad;
            vd = b2 * vd + (1 - b2) * dgrad.cwiseProduct(dgrad);
            logd -= lr * (md / corr1).cwiseQuotient(((vd / corr2).cwiseSqrt().array() + eps).matrix());
        }

        RealizationResult res;
        res.cliques = cliques;
        res.gamma21 = gamma;
        res.delta_observed = logd.array().exp();
        res.delta_hidden = Eigen::VectorXd::Ones(k);
        res.residual = (res.reconstruct() - target).cwiseAbs().maxCoeff();
        if (res.residual < best.residual) best = std::move(res);
    }
    return best;
}

} // namespace mgc
