#include "mgc/poly.hpp"

#include <algorithm>
#include <cmath>

namespace mgc {

std::string to_string(const Rat& r) {
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
    return s;
}

namespace {

std::string omega_name(const std::string& v) {
    if (v.size() == 1) return "w" + v + v;
    return "w(" + v + ")";
}

std::string lambda_name(const std::string& u, const std::string& v) {
    if (u.size() == 1 && v.size() == 1) return "l" + u + v;
    return "l(" + u + "," + v + ")";
}

} // namespace

std::shared_ptr<const PolyRing> PolyRing::for_digraph(const MixedGraph& g) {
    if (!g.bidirected_edges().empty())
        throw BadQuery("polynomial ring is defined for digraphs");
    auto ring = std::make_shared<PolyRing>();
    ring->n_ = g.size();
    for (Vertex v = 0; v < g.size(); ++v)
        ring->names_.push_back(omega_name(g.label(v)));
    for (auto [u, v] : g.directed_edges()) {
        ring->lambda_[{u, v}] = ring->names_.size();
        ring->names_.push_back(lambda_name(g.label(u), g.label(v)));
    }
    return ring;
}

std::size_t PolyRing::omega_var(Vertex v) const {
    if (v >= n_) throw BadQuery("omega variable out of range");
    return v;
}

std::size_t PolyRing::lambda_var(Vertex u, Vertex v) const {
    auto it = lambda_.find({u, v});
    if (it == lambda_.end()) throw BadQuery("no lambda variable for this edge");
    return it->second;
}

SparsePoly SparsePoly::constant(Ring ring, const Rat& c) {
    SparsePoly p(std::move(ring));
    if (c != Rat(0)) p.terms_.emplace(Monomial(p.ring_->var_count(), 0), c);
    return p;
}

SparsePoly SparsePoly::variable(Ring ring, std::size_t var) {
    SparsePoly p(std::move(ring));
    Monomial m(p.ring_->var_count(), 0);
    m.at(var) = 1;
    p.terms_.emplace(std::move(m), Rat(1));
    return p;
}

void SparsePoly::add_term(const Monomial& m, const Rat& c) {
    if (c == Rat(0)) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == Rat(0)) terms_.erase(it);
    }
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
    SparsePoly r = *this;
    r += o;
    return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const {
    SparsePoly r = *this;
    r -= o;
    return r;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
    SparsePoly r(ring_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m(ma.size());
            for (std::size_t i = 0; i < m.size(); ++i)
                m[i] = static_cast<unsigned char>(ma[i] + mb[i]);
            r.add_term(m, ca * cb);
        }
    return r;
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly r(ring_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

bool SparsePoly::operator==(const SparsePoly& o) const { return terms_ == o.terms_; }

double SparsePoly::eval(const std::vector<double>& values) const {
    double acc = 0.0;
    for (const auto& [m, c] : terms_) {
        double t = boost::rational_cast<double>(c);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (unsigned char e = 0; e < m[i]; ++e) t *= values.at(i);
        acc += t;
    }
    return acc;
}

std::string SparsePoly::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<std::string, Rat>> printed;
    for (const auto& [m, c] : terms_) {
        std::string f;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!f.empty()) f += "*";
            f += ring_->var_name(i);
            if (m[i] > 1) f += "^" + std::to_string(static_cast<int>(m[i]));
        }
        printed.emplace_back(std::move(f), c);
    }
    std::sort(printed.begin(), printed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string out;
    for (std::size_t i = 0; i < printed.size(); ++i) {
        const auto& [f, c] = printed[i];
        Rat a = c < Rat(0) ? -c : c;
        if (i == 0)
            out += c < Rat(0) ? "-" : "";
        else
            out += c < Rat(0) ? " - " : " + ";
        if (a != Rat(1) || f.empty()) {
            out += mgc::to_string(a);
            if (!f.empty()) out += "*";
        }
        out += f;
    }
    return out;
}

} // namespace mgc
