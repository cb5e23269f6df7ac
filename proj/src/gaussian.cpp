#include "mgc/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include "mgc/rng.hpp"
#include "mgc/walks.hpp"

namespace mgc {

CovMatrix::CovMatrix(std::vector<std::string> labels, Eigen::MatrixXd m)
    : labels_(std::move(labels)), m_(std::move(m)) {
    const auto n = static_cast<Eigen::Index>(labels_.size());
    if (m_.rows() != n || m_.cols() != n)
        throw SizeMismatch("covariance matrix size does not match label count");
    double scale = std::max(1e-300, m_.cwiseAbs().maxCoeff());
    double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale)
        throw NotPositiveDefinite("matrix is not symmetric");
    m_ = ((m_ + m_.transpose()) / 2.0).eval();
    Eigen::LLT<Eigen::MatrixXd> llt(m_);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("matrix is not positive definite");
}

std::size_t CovMatrix::row_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    throw UnknownVertex("unknown matrix label: " + label);
}

double CovMatrix::at(const std::string& u, const std::string& v) const {
    return m_(static_cast<Eigen::Index>(row_of(u)), static_cast<Eigen::Index>(row_of(v)));
}

namespace {

void check_support(const MixedGraph& g, const ParamPoint& p) {
    const auto n = static_cast<Eigen::Index>(g.size());
    if (p.lambda.rows() != n || p.lambda.cols() != n || p.omega.rows() != n ||
        p.omega.cols() != n)
        throw SizeMismatch("parameter matrices must be |V| x |V|");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            if (p.lambda(i, j) != 0.0 &&
                !g.has_directed(static_cast<Vertex>(i), static_cast<Vertex>(j)))
                throw SupportViolation("lambda entry off the directed support");
            if (i != j && p.omega(i, j) != 0.0 &&
                !g.has_bidirected(static_cast<Vertex>(i), static_cast<Vertex>(j)))
                throw SupportViolation("omega entry off the bidirected support");
        }
    if ((p.omega - p.omega.transpose()).cwiseAbs().maxCoeff() != 0.0)
        throw SupportViolation("omega must be symmetric");
}

} // namespace

CovMatrix sigma_of(const MixedGraph& g, const ParamPoint& p) {
    check_support(g, p);
    const auto& topo = g.topological_order(); // throws NotAcyclic
    const auto n = static_cast<Eigen::Index>(g.size());

    Eigen::LLT<Eigen::MatrixXd> llt(p.omega);
    if (llt.info() != Eigen::Success)
        throw NotPositiveDefinite("omega is not positive definite");

    // Permute to topological order; I - Lambda becomes unit upper triangular.
    Eigen::MatrixXd L(n, n), W(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            L(i, j) = p.lambda(static_cast<Eigen::Index>(topo[i]), static_cast<Eigen::Index>(topo[j]));
            W(i, j) = p.omega(static_cast<Eigen::Index>(topo[i]), static_cast<Eigen::Index>(topo[j]));
        }
    Eigen::MatrixXd U = Eigen::MatrixXd::Identity(n, n) - L;
    Eigen::MatrixXd M = U.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(n, n));
    Eigen::MatrixXd S = M.transpose() * W * M;

    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out(static_cast<Eigen::Index>(topo[i]), static_cast<Eigen::Index>(topo[j])) = S(i, j);
    return CovMatrix(g.labels(), std::move(out));
}

CovMatrix marginal(const CovMatrix& s, const std::vector<std::string>& labels) {
    Eigen::MatrixXd m(labels.size(), labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = 0; j < labels.size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                s.matrix()(static_cast<Eigen::Index>(s.row_of(labels[i])),
                           static_cast<Eigen::Index>(s.row_of(labels[j])));
    return CovMatrix(labels, std::move(m));
}

namespace {

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& m, const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) {
    Eigen::MatrixXd out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                m(static_cast<Eigen::Index>(rows[i]), static_cast<Eigen::Index>(cols[j]));
    return out;
}

// Solve S_AA X = B with a conditioning guard.
Eigen::MatrixXd solve_block(const Eigen::MatrixXd& saa, const Eigen::MatrixXd& b) {
    if (saa.rows() == 0) return Eigen::MatrixXd::Zero(0, b.cols());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(saa);
    double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    if (lo <= 0.0 || hi / lo > 1e12)
        throw SingularBlock("conditioning block is numerically singular");
    Eigen::MatrixXd y = es.eigenvectors().transpose() * b;
    y.array().colwise() /= es.eigenvalues().array();
    return es.eigenvectors() * y;
}

Eigen::MatrixXd cond_block_idx(const Eigen::MatrixXd& m, const std::vector<std::size_t>& S,
                               const std::vector<std::size_t>& A) {
    Eigen::MatrixXd sss = submatrix(m, S, S);
    if (A.empty()) return sss;
    Eigen::MatrixXd ssa = submatrix(m, S, A);
    Eigen::MatrixXd saa = submatrix(m, A, A);
    return sss - ssa * solve_block(saa, ssa.transpose());
}

} // namespace

double cond_cov(const CovMatrix& s, const std::string& u, const std::string& v,
                const std::vector<std::string>& A) {
    std::vector<std::size_t> a;
    for (const auto& x : A) {
        if (x == u || x == v) throw BadQuery("endpoint inside conditioning set");
        a.push_back(s.row_of(x));
    }
    std::vector<std::size_t> su{s.row_of(u)}, sv{s.row_of(v)};
    if (a.empty()) return s.matrix()(static_cast<Eigen::Index>(su[0]), static_cast<Eigen::Index>(sv[0]));
    Eigen::MatrixXd sua = submatrix(s.matrix(), su, a);
    Eigen::MatrixXd saa = submatrix(s.matrix(), a, a);
    Eigen::MatrixXd sav = submatrix(s.matrix(), a, sv);
    return s.matrix()(static_cast<Eigen::Index>(su[0]), static_cast<Eigen::Index>(sv[0])) -
           (sua * solve_block(saa, sav))(0, 0);
}

Eigen::MatrixXd cond_block(const CovMatrix& s, const std::vector<std::string>& S,
                           const std::vector<std::string>& A) {
    std::vector<std::size_t> si, ai;
    for (const auto& x : S) si.push_back(s.row_of(x));
    for (const auto& x : A) ai.push_back(s.row_of(x));
    return cond_block_idx(s.matrix(), si, ai);
}

ParamPoint recover_params(const MixedGraph& g, const CovMatrix& s) {
    if (!g.bidirected_edges().empty())
        throw BadQuery("recover_params expects a digraph");
    const auto n = static_cast<Eigen::Index>(g.size());
    ParamPoint p{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
    for (Vertex v = 0; v < g.size(); ++v) {
        const auto& pa = g.parents(v);
        std::vector<std::size_t> ai(pa.begin(), pa.end());
        std::vector<std::size_t> vi{v};
        if (pa.empty()) {
            p.omega(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)) =
                s.matrix()(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v));
            continue;
        }
        Eigen::MatrixXd spp = submatrix(s.matrix(), ai, ai);
        Eigen::MatrixXd spv = submatrix(s.matrix(), ai, vi);
        Eigen::MatrixXd coef = solve_block(spp, spv); // |pa| x 1
        for (std::size_t k = 0; k < pa.size(); ++k)
            p.lambda(static_cast<Eigen::Index>(pa[k]), static_cast<Eigen::Index>(v)) = coef(static_cast<Eigen::Index>(k), 0);
        p.omega(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)) =
            s.matrix()(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v)) -
            (spv.transpose() * coef)(0, 0);
    }
    return p;
}

ParamPoint recover_params_chain(const MixedGraph& g, const CovMatrix& s) {
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd lambda = Eigen::MatrixXd::Zero(n, n);
    for (Vertex v = 0; v < g.size(); ++v) {
        const auto& pa = g.parents(v);
        if (pa.empty()) continue;
        std::vector<std::size_t> ai(pa.begin(), pa.end());
        Eigen::MatrixXd spp = submatrix(s.matrix(), ai, ai);
        Eigen::MatrixXd spv = submatrix(s.matrix(), ai, {v});
        Eigen::MatrixXd coef = solve_block(spp, spv);
        for (std::size_t k = 0; k < pa.size(); ++k)
            lambda(static_cast<Eigen::Index>(pa[k]), static_cast<Eigen::Index>(v)) = coef(static_cast<Eigen::Index>(k), 0);
    }
    Eigen::MatrixXd iml = Eigen::MatrixXd::Identity(n, n) - lambda;
    Eigen::MatrixXd omega = iml.transpose() * s.matrix() * iml;
    return ParamPoint{std::move(lambda), std::move(omega)};
}

ParamPoint sample_params(const MixedGraph& g, std::uint64_t seed, double scale) {
    Rng rng(Rng::substream(seed, 0x706172616dULL));
    const auto n = static_cast<Eigen::Index>(g.size());
    ParamPoint p{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
    // Dead-zone around zero keeps sampled points generic.
    for (auto [u, v] : g.directed_edges())
        p.lambda(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) =
            rng.sign() * (0.1 + 0.9 * rng.u01()) * scale;
    for (Eigen::Index v = 0; v < n; ++v) p.omega(v, v) = 0.5 + rng.u01();
    if (!g.bidirected_edges().empty()) {
        for (auto [u, v] : g.bidirected_edges()) {
            double w = rng.sign() * (0.1 + 0.9 * rng.u01()) * 0.5;
            p.omega(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = w;
            p.omega(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) = w;
        }
        // Diagonal shift to a target minimum eigenvalue of 0.1.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.omega);
        double lo = es.eigenvalues().minCoeff();
        if (lo < 0.1) p.omega += (0.1 - lo) * Eigen::MatrixXd::Identity(n, n);
    }
    return p;
}

namespace {

Eigen::MatrixXd unit_diagonal_scaled(const Eigen::MatrixXd& m) {
    Eigen::VectorXd d = m.diagonal().cwiseSqrt().cwiseInverse();
    return d.asDiagonal() * m * d.asDiagonal();
}

std::vector<std::size_t> mask_to_set(std::uint32_t mask, const std::vector<std::size_t>& pool) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < pool.size(); ++k)
        if (mask & (1u << k)) out.push_back(pool[k]);
    return out;
}

// All subsets of pool with size <= max_k, in a deterministic order: mask
// order when the pool is small, by size then lexicographically otherwise.
template <typename F>
void for_each_subset(const std::vector<std::size_t>& pool, std::size_t max_k, F&& fn) {
    if (pool.size() <= 20) {
        for (std::uint32_t mask = 0; mask < (1u << pool.size()); ++mask) {
            auto a = mask_to_set(mask, pool);
            if (a.size() <= max_k) fn(a);
        }
        return;
    }
    max_k = std::min(max_k, pool.size());
    std::vector<std::size_t> chosen;
    auto rec = [&](auto&& self, std::size_t start, std::size_t k) -> void {
        if (chosen.size() == k) {
            std::vector<std::size_t> a;
            for (auto i : chosen) a.push_back(pool[i]);
            fn(a);
            return;
        }
        for (std::size_t i = start; i + (k - chosen.size()) <= pool.size(); ++i) {
            chosen.push_back(i);
            self(self, i + 1, k);
            chosen.pop_back();
        }
    };
    for (std::size_t k = 0; k <= max_k; ++k) rec(rec, 0, k);
}

} // namespace

MembershipReport membership_chain(const MixedGraph& g, const CovMatrix& s, double tol,
                                  std::size_t max_cond, Exec exec) {
    if (!is_chain_graph(g)) throw NotChainGraph("membership test needs a chain graph");
    if (max_cond == static_cast<std::size_t>(-1) && g.size() > 12)
        throw CapExceeded("set a conditioning-size cap for |V| > 12");
    // Reindex s into graph order and scale to unit diagonal so the tolerance
    // is scale-free.
    Eigen::MatrixXd m = unit_diagonal_scaled(marginal(s, g.labels()).matrix());

    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex u = 0; u < g.size(); ++u)
        for (Vertex v = u + 1; v < g.size(); ++v) pairs.emplace_back(u, v);

    std::vector<std::vector<MembershipViolation>> found(pairs.size());
    std::vector<std::size_t> counts(pairs.size(), 0);
    for_each_index(pairs.size(), exec, [&](std::size_t pi) {
        auto [u, v] = pairs[pi];
        std::vector<std::size_t> pool;
        for (Vertex w = 0; w < g.size(); ++w)
            if (w != u && w != v) pool.push_back(w);
        for_each_subset(pool, max_cond, [&](const std::vector<std::size_t>& a) {
            ++counts[pi];
            std::vector<Vertex> av(a.begin(), a.end());
            if (d_connected(g, u, v, av).connected) return;
            double val = cond_block_idx(m, {u, v}, a)(0, 1);
            if (std::abs(val) > tol) {
                MembershipViolation viol;
                viol.u = g.label(u);
                viol.v = g.label(v);
                for (auto w : a) viol.given.push_back(g.label(w));
                viol.value = val;
                found[pi].push_back(viol);
            }
        });
    });

    MembershipReport rep;
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        rep.checked_triples += counts[pi];
        for (auto& viol : found[pi]) rep.violations.push_back(std::move(viol));
    }
    rep.member = rep.violations.empty();
    return rep;
}

DsepScanReport dsep_covariance_scan(const MixedGraph& g, std::size_t points,
                                    std::uint64_t seed, double zero_tol, double dep_tol,
                                    std::size_t max_cond, Exec exec) {
    if (!g.bidirected_edges().empty())
        throw BadQuery("dsep_covariance_scan expects a digraph");
    std::vector<Eigen::MatrixXd> sigmas(points);
    for (std::size_t t = 0; t < points; ++t)
        sigmas[t] = unit_diagonal_scaled(sigma_of(g, sample_params(g, Rng::substream(seed, t))).matrix());

    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex u = 0; u < g.size(); ++u)
        for (Vertex v = u + 1; v < g.size(); ++v) pairs.emplace_back(u, v);

    struct PairResult {
        std::vector<MembershipViolation> zero_failures, genericity_failures;
        std::size_t separated = 0, connected = 0;
    };
    std::vector<PairResult> results(pairs.size());

    for_each_index(pairs.size(), exec, [&](std::size_t pi) {
        auto [u, v] = pairs[pi];
        auto& res = results[pi];
        std::vector<std::size_t> pool;
        for (Vertex w = 0; w < g.size(); ++w)
            if (w != u && w != v) pool.push_back(w);
        for_each_subset(pool, max_cond, [&](const std::vector<std::size_t>& a) {
            std::vector<Vertex> av(a.begin(), a.end());
            bool conn = d_connected(g, u, v, av).connected;
            double worst = 0.0;
            for (const auto& m : sigmas)
                worst = std::max(worst, std::abs(cond_block_idx(m, {u, v}, a)(0, 1)));
            MembershipViolation rec;
            rec.u = g.label(u);
            rec.v = g.label(v);
            for (auto w : a) rec.given.push_back(g.label(w));
            rec.value = worst;
            if (conn) {
                ++res.connected;
                if (worst < dep_tol) res.genericity_failures.push_back(rec);
            } else {
                ++res.separated;
                if (worst > zero_tol) res.zero_failures.push_back(rec);
            }
        });
    });

    DsepScanReport rep;
    for (auto& res : results) {
        rep.separated += res.separated;
        rep.connected += res.connected;
        for (auto& f : res.zero_failures) rep.zero_failures.push_back(std::move(f));
        for (auto& f : res.genericity_failures) rep.genericity_failures.push_back(std::move(f));
    }
    rep.pass = rep.zero_failures.empty() && rep.genericity_failures.empty();
    return rep;
}

} // namespace mgc
