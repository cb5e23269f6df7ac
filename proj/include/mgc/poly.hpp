#ifndef MGC_POLY_HPP
#define MGC_POLY_HPP

#include <boost/rational.hpp>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mgc/graph.hpp"

namespace mgc {

using Rat = boost::rational<long long>;

std::string to_string(const Rat& r);

/// Indeterminates of the covariance polynomials of a digraph: one omega per
/// vertex, one lambda per directed edge. Variable ids are dense and stable.
class PolyRing {
public:
    static std::shared_ptr<const PolyRing> for_digraph(const MixedGraph& g);

    std::size_t var_count() const { return names_.size(); }
    const std::string& var_name(std::size_t id) const { return names_.at(id); }
    std::size_t omega_var(Vertex v) const;
    std::size_t lambda_var(Vertex u, Vertex v) const;
    std::size_t vertex_count() const { return n_; }

private:
    std::size_t n_ = 0;
    std::vector<std::string> names_;
    std::map<std::pair<Vertex, Vertex>, std::size_t> lambda_;
};

using Ring = std::shared_ptr<const PolyRing>;

/// Multivariate polynomial with exact rational coefficients, stored as
/// exponent-vector -> coefficient with no zero terms.
class SparsePoly {
public:
    using Monomial = std::vector<unsigned char>;

    explicit SparsePoly(Ring ring) : ring_(std::move(ring)) {}
    static SparsePoly zero(Ring ring) { return SparsePoly(std::move(ring)); }
    static SparsePoly constant(Ring ring, const Rat& c);
    static SparsePoly variable(Ring ring, std::size_t var);

    const Ring& ring() const { return ring_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rat>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rat& c);

    SparsePoly& operator+=(const SparsePoly& o);
    SparsePoly& operator-=(const SparsePoly& o);
    SparsePoly operator+(const SparsePoly& o) const;
    SparsePoly operator-(const SparsePoly& o) const;
    SparsePoly operator*(const SparsePoly& o) const;
    SparsePoly operator-() const;
    bool operator==(const SparsePoly& o) const;

    double eval(const std::vector<double>& values) const;

    /// Terms sorted lexicographically by their printed factors; omega
    /// factors precede lambda factors, e.g. "w55*l53*l54".
    std::string to_string() const;

private:
    Ring ring_;
    std::map<Monomial, Rat> terms_;
};

struct PolyMatrix {
    Ring ring;
    std::size_t n = 0;
    std::vector<SparsePoly> entries;

    const SparsePoly& at(std::size_t i, std::size_t j) const { return entries.at(i * n + j); }
    SparsePoly& at(std::size_t i, std::size_t j) { return entries.at(i * n + j); }
};

} // namespace mgc

#endif
