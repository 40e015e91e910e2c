#include "tamer/poly.hpp"

#include <numeric>
#include <unordered_map>

#include "tamer/error.hpp"

namespace tamer {

namespace {

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::size_t h = 1469598103934665603ULL;
        for (auto e : m) {
            h ^= e;
            h *= 1099511628211ULL;
        }
        return h;
    }
};

}  // namespace

std::uint32_t total_degree(const Monomial& m) noexcept {
    return std::accumulate(m.begin(), m.end(), std::uint32_t{0});
}

bool DegRevLexGreater::operator()(const Monomial& a, const Monomial& b) const noexcept {
    auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

PolyRing::PolyRing(std::uint64_t p, std::vector<std::string> variables)
    : field_(p), vars_(std::move(variables)) {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        for (std::size_t j = i + 1; j < vars_.size(); ++j)
            if (vars_[i] == vars_[j]) throw InputError("duplicate variable " + vars_[i]);
}

std::size_t PolyRing::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    throw InputError("undeclared variable " + name);
}

PolyRingPtr make_ring(std::uint64_t p, std::vector<std::string> variables) {
    return std::make_shared<const PolyRing>(p, std::move(variables));
}

MultiPoly::MultiPoly(PolyRingPtr ring) : ring_(std::move(ring)) {}

MultiPoly MultiPoly::constant(PolyRingPtr ring, std::int64_t c) {
    MultiPoly r(ring);
    r.add_term(Monomial(ring->nvars(), 0), ring->field().reduce(c));
    return r;
}

MultiPoly MultiPoly::variable(PolyRingPtr ring, const std::string& name) {
    return variable(ring, ring->index_of(name));
}

MultiPoly MultiPoly::variable(PolyRingPtr ring, std::size_t index) {
    Monomial m(ring->nvars(), 0);
    m.at(index) = 1;
    return monomial(std::move(ring), std::move(m));
}

MultiPoly MultiPoly::monomial(PolyRingPtr ring, Monomial exps, std::int64_t c) {
    if (exps.size() != ring->nvars()) throw InputError("exponent vector has wrong length");
    MultiPoly r(ring);
    r.add_term(exps, ring->field().reduce(c));
    return r;
}

long MultiPoly::total_degree() const noexcept {
    return terms_.empty() ? -1 : static_cast<long>(tamer::total_degree(terms_.begin()->first));
}

long MultiPoly::degree_in(std::size_t var) const noexcept {
    long d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<long>(m[var]));
    return d;
}

std::uint64_t MultiPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

std::uint64_t MultiPoly::constant_term() const {
    return coefficient(Monomial(ring_->nvars(), 0));
}

void MultiPoly::add_term(const Monomial& m, std::uint64_t c) {
    c %= ring_->characteristic();
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second = ring_->field().add(it->second, c);
        if (it->second == 0) terms_.erase(it);
    }
}

void MultiPoly::check_ring(const MultiPoly& o) const {
    if (ring_ != o.ring_ && !(*ring_ == *o.ring_))
        throw InputError("polynomials over different rings");
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    check_ring(o);
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(ring_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, ring_->field().neg(c));
    return r;
}

MultiPoly MultiPoly::scaled(std::uint64_t c) const {
    MultiPoly r(ring_);
    c %= ring_->characteristic();
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, ring_->field().mul(k, c));
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    check_ring(o);
    const auto& F = ring_->field();
    std::unordered_map<Monomial, std::uint64_t, MonomialHash> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    Monomial prod(ring_->nvars());
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = ma[i] + mb[i];
            auto& slot = acc[prod];
            slot = F.add(slot, F.mul(ca, cb));
        }
    }
    MultiPoly r(ring_);
    for (auto& [m, c] : acc)
        if (c != 0) r.terms_.emplace(m, c);
    return r;
}

MultiPoly MultiPoly::pow(std::uint64_t e) const {
    MultiPoly r = constant(ring_, 1);
    MultiPoly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

MultiPoly MultiPoly::truncated(const std::vector<std::size_t>& vars, std::uint32_t bound) const {
    MultiPoly r(ring_);
    for (const auto& [m, c] : terms_) {
        std::uint32_t d = 0;
        for (auto v : vars) d += m[v];
        if (d <= bound) r.terms_.emplace(m, c);
    }
    return r;
}

std::uint64_t MultiPoly::evaluate(const std::vector<std::uint64_t>& point) const {
    if (point.size() != ring_->nvars()) throw InputError("evaluation point has wrong length");
    const auto& F = ring_->field();
    std::uint64_t acc = 0;
    for (const auto& [m, c] : terms_) {
        std::uint64_t t = c;
        for (std::size_t i = 0; i < m.size(); ++i) t = F.mul(t, F.pow(point[i] % F.modulus(), m[i]));
        acc = F.add(acc, t);
    }
    return acc;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
    check_ring(o);
    return terms_ == o.terms_;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
        if (!out.empty()) out += " + ";
        bool unit = true;
        std::string mono;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            unit = false;
            if (!mono.empty()) mono += "*";
            mono += ring_->variables()[i];
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        if (unit) {
            out += std::to_string(c);
        } else {
            if (c != 1) out += std::to_string(c) + "*";
            out += mono;
        }
    }
    return out;
}

}  // namespace tamer
