#include "tamer/kummer.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "tamer/error.hpp"
#include "tamer/snf.hpp"

namespace tamer {

namespace {

// Embeds a polynomial of `from` into `to`, whose variables start with those of `from`.
MultiPoly embed(const MultiPoly& f, const PolyRingPtr& to) {
    MultiPoly out(to);
    for (const auto& [m, c] : f.terms()) {
        Monomial e(to->nvars(), 0);
        std::copy(m.begin(), m.end(), e.begin());
        out.add_term(e, c);
    }
    return out;
}

std::uint32_t floor_mod(long v, std::uint32_t r) {
    long m = v % static_cast<long>(r);
    return static_cast<std::uint32_t>(m < 0 ? m + r : m);
}

}  // namespace

GradedKummerAlgebra::GradedKummerAlgebra(PolyRingPtr base, QuotientPresentation q, std::vector<MultiPoly> s,
                                         std::vector<std::uint32_t> r)
    : base_(std::move(base)), presentation_(std::move(q)), s_(std::move(s)), r_(std::move(r)) {}

GradedKummerAlgebra kummer_algebra(PolyRingPtr base, std::vector<MultiPoly> s, std::vector<std::uint32_t> r) {
    if (s.size() != r.size()) throw InputError("kummer_algebra needs one index per element s_i");
    auto names = base->variables();
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] == 0) throw InputError("ramification index r_" + std::to_string(i + 1) + " must be >= 1");
        if (!(*s[i].ring() == *base)) throw InputError("s_" + std::to_string(i + 1) + " is not in the base ring");
        if (s[i].is_zero())
            throw InputError("s_" + std::to_string(i + 1) + " = 0 is not a regular element; t^r = 0 is not a Kummer cover");
        names.push_back("t" + std::to_string(i + 1));
    }
    auto ring = make_ring(base->characteristic(), names);
    std::vector<PowerRule> rules;
    for (std::size_t i = 0; i < r.size(); ++i)
        rules.push_back(PowerRule{base->nvars() + i, r[i], embed(s[i], ring)});
    return GradedKummerAlgebra(base, QuotientPresentation(ring, std::move(rules)), std::move(s), std::move(r));
}

std::uint64_t GradedKummerAlgebra::rank() const noexcept {
    std::uint64_t n = 1;
    for (auto x : r_) n *= x;
    return n;
}

std::vector<Monomial> GradedKummerAlgebra::basis() const {
    std::vector<Monomial> out;
    const auto nb = base_->nvars();
    Monomial m(ring()->nvars(), 0);
    for (std::uint64_t k = 0; k < rank(); ++k) {
        auto x = k;
        for (std::size_t i = 0; i < r_.size(); ++i) {
            m[nb + i] = static_cast<std::uint32_t>(x % r_[i]);
            x /= r_[i];
        }
        out.push_back(m);
    }
    return out;
}

std::vector<std::uint32_t> GradedKummerAlgebra::degree(const Monomial& m) const {
    std::vector<std::uint32_t> d(r_.size());
    for (std::size_t i = 0; i < r_.size(); ++i) d[i] = m[t_index(i)] % r_[i];
    return d;
}

MultiPoly GradedKummerAlgebra::lifted_s(std::size_t i) const { return embed(s_.at(i), ring()); }

MultiPoly GradedKummerAlgebra::t(std::size_t i) const { return MultiPoly::variable(ring(), t_index(i)); }

std::vector<std::pair<std::vector<std::uint32_t>, MultiPoly>> GradedKummerAlgebra::homogeneous_parts(
    const MultiPoly& f) const {
    std::map<std::vector<std::uint32_t>, MultiPoly> parts;
    const auto nf = normal_form(f, presentation_);
    for (const auto& [m, c] : nf.terms()) {
        auto d = degree(m);
        auto it = parts.try_emplace(d, MultiPoly(ring())).first;
        it->second.add_term(m, c);
    }
    return {parts.begin(), parts.end()};
}

MultiPoly GradedKummerAlgebra::coefficient(const MultiPoly& f, const std::vector<std::uint32_t>& e) const {
    MultiPoly out(base_);
    const auto nb = base_->nvars();
    for (const auto& [m, c] : f.terms()) {
        bool match = true;
        for (std::size_t i = 0; i < r_.size(); ++i) match = match && m[nb + i] == e[i];
        if (!match) continue;
        out.add_term(Monomial(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(nb)), c);
    }
    return out;
}

MultiPoly GradedKummerAlgebra::jacobian_determinant() const {
    // d/dt_j (t_i^{r_i} - s_i) = delta_ij r_i t_i^{r_i - 1}: the matrix is diagonal
    MultiPoly det = MultiPoly::constant(ring(), 1);
    for (std::size_t i = 0; i < r_.size(); ++i)
        det = det * (t(i).pow(r_[i] - 1).scaled(r_[i] % ring()->characteristic()));
    return det;
}

EtaleCertificate etale_certificate(const GradedKummerAlgebra& Z) {
    EtaleCertificate c{Z.jacobian_determinant(), MultiPoly(Z.ring()), MultiPoly(Z.ring()), 1, false, false};
    auto prod_t = MultiPoly::constant(Z.ring(), 1);
    auto prod_s = MultiPoly::constant(Z.ring(), 1);
    const auto p = Z.ring()->characteristic();
    for (std::size_t i = 0; i < Z.branches(); ++i) {
        prod_t = prod_t * Z.t(i);
        prod_s = prod_s * Z.lifted_s(i);
        c.unit_factor = c.unit_factor * (Z.r()[i] % p) % p;
    }
    c.determinant_times_t = normal_form(c.determinant * prod_t, Z.presentation());
    c.expected = normal_form(prod_s.scaled(c.unit_factor), Z.presentation());
    c.identity_holds = c.determinant_times_t == c.expected;
    c.etale = c.identity_holds && c.unit_factor != 0;
    return c;
}

// ---------------------------------------------------------------------------

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::uint64_t> orders) : orders_(std::move(orders)), size_(1) {
    for (auto m : orders_) {
        if (m == 0) throw InputError("cyclic factor of order 0 is not finite");
        size_ *= m;
    }
}

std::vector<std::uint64_t> FiniteAbelianGroup::element(std::uint64_t index) const {
    std::vector<std::uint64_t> c(orders_.size());
    for (std::size_t j = 0; j < orders_.size(); ++j) {
        c[j] = index % orders_[j];
        index /= orders_[j];
    }
    return c;
}

std::uint64_t FiniteAbelianGroup::index(const std::vector<std::uint64_t>& coords) const {
    std::uint64_t idx = 0;
    for (std::size_t j = orders_.size(); j-- > 0;) idx = idx * orders_[j] + coords[j] % orders_[j];
    return idx;
}

std::uint64_t FiniteAbelianGroup::add(std::uint64_t a, std::uint64_t b) const {
    auto x = element(a), y = element(b);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = (x[j] + y[j]) % orders_[j];
    return index(x);
}

std::uint64_t FiniteAbelianGroup::neg(std::uint64_t a) const {
    auto x = element(a);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = (orders_[j] - x[j]) % orders_[j];
    return index(x);
}

std::uint64_t FiniteAbelianGroup::generator(std::size_t j) const {
    std::vector<std::uint64_t> c(orders_.size(), 0);
    c.at(j) = 1;
    return index(c);
}

void validate_character_map(const FiniteAbelianGroup& A, const CharacterMatrix& phi,
                            const std::vector<std::uint32_t>& r) {
    if (phi.size() != r.size()) throw InputError("character map needs one row per branch");
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (phi[i].size() != A.rank()) throw InputError("character map needs one column per generator");
        for (std::size_t j = 0; j < A.rank(); ++j) {
            long v = static_cast<long>(A.orders()[j]) * phi[i][j];
            if (v % static_cast<long>(r[i]) != 0)
                throw InputError("character map is not well defined on generator " + std::to_string(j));
        }
    }
}

bool is_surjective(const CharacterMatrix& phi, const std::vector<std::uint32_t>& r) {
    const auto n = r.size();
    if (n == 0) return true;
    const auto k = phi.empty() ? 0 : phi[0].size();
    // rows generate the image: the generators' images and the relations r_i e_i
    IntMatrix M(k + n, n);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) M.at(j, i) = phi[i][j];
    for (std::size_t i = 0; i < n; ++i) M.at(k + i, i) = static_cast<long>(r[i]);
    auto inv = smith_normal_form(M).invariant_factors();
    if (inv.size() != n) return false;
    for (const auto& d : inv)
        if (d != 1) return false;
    return true;
}

CoverAlgebra::CoverAlgebra(PolyRingPtr base, std::vector<MultiPoly> s, std::vector<std::uint32_t> r,
                           FiniteAbelianGroup A, CharacterMatrix phi)
    : base_(std::move(base)), s_(std::move(s)), r_(std::move(r)), A_(std::move(A)), phi_(std::move(phi)) {
    if (s_.size() != r_.size()) throw InputError("cover algebra needs one index per element s_i");
    validate_character_map(A_, phi_, r_);
    d_.resize(A_.size());
    for (std::uint64_t a = 0; a < A_.size(); ++a) {
        auto c = A_.element(a);
        d_[a].resize(r_.size());
        for (std::size_t i = 0; i < r_.size(); ++i) {
            long v = 0;
            for (std::size_t j = 0; j < c.size(); ++j) v += phi_[i][j] * static_cast<long>(c[j]);
            d_[a][i] = floor_mod(v, r_[i]);
        }
    }
}

std::vector<std::uint32_t> CoverAlgebra::carry(std::uint64_t a, std::uint64_t b) const {
    std::vector<std::uint32_t> e(r_.size());
    for (std::size_t i = 0; i < r_.size(); ++i) e[i] = (d_[a][i] + d_[b][i]) / r_[i];
    return e;
}

MultiPoly CoverAlgebra::cocycle(std::uint64_t a, std::uint64_t b) const {
    auto e = carry(a, b);
    auto u = MultiPoly::constant(base_, 1);
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) u = u * s_[i].pow(e[i]);
    return u;
}

CoverAlgebra::Element CoverAlgebra::zero() const { return Element(A_.size(), MultiPoly(base_)); }

CoverAlgebra::Element CoverAlgebra::basis_element(std::uint64_t a) const {
    auto x = zero();
    x.at(a) = MultiPoly::constant(base_, 1);
    return x;
}

CoverAlgebra::Element CoverAlgebra::multiply(const Element& x, const Element& y) const {
    auto z = zero();
    for (std::uint64_t a = 0; a < A_.size(); ++a) {
        if (x[a].is_zero()) continue;
        for (std::uint64_t b = 0; b < A_.size(); ++b) {
            if (y[b].is_zero()) continue;
            auto c = A_.add(a, b);
            z[c] = z[c] + x[a] * y[b] * cocycle(a, b);
        }
    }
    return z;
}

std::uint64_t CoverAlgebra::check_cocycle(std::uint64_t samples, std::uint64_t seed) const {
    const auto n = A_.size();
    auto holds = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        auto l1 = carry(a, b), l2 = carry(A_.add(a, b), c);
        auto r1 = carry(b, c), r2 = carry(a, A_.add(b, c));
        for (std::size_t i = 0; i < r_.size(); ++i)
            if (l1[i] + l2[i] != r1[i] + r2[i]) return false;
        return true;
    };
    std::uint64_t count = 0;
    if (n <= 64) {
        for (std::uint64_t a = 0; a < n; ++a)
            for (std::uint64_t b = 0; b < n; ++b)
                for (std::uint64_t c = 0; c < n; ++c, ++count)
                    if (!holds(a, b, c))
                        throw AssertionFailure("cocycle identity fails at (" + std::to_string(a) + ", " +
                                               std::to_string(b) + ", " + std::to_string(c) + ")");
        return count;
    }
    std::mt19937_64 rng(seed);
    for (; count < samples; ++count) {
        auto a = rng() % n, b = rng() % n, c = rng() % n;
        if (!holds(a, b, c)) throw AssertionFailure("cocycle identity fails on a sampled triple");
    }
    return count;
}

bool CoverAlgebra::free_away_from_branch_locus() const {
    // u_{a,-a} = prod s_i^{e_i}: a unit after inverting prod s_i, so w_a w_{-a} is invertible
    for (std::uint64_t a = 0; a < A_.size(); ++a) {
        auto u = cocycle(a, A_.neg(a));
        if (u.size() != 1 || u.terms().begin()->second == 0) return false;
        auto expect = MultiPoly::constant(base_, 1);
        auto e = carry(a, A_.neg(a));
        for (std::size_t i = 0; i < e.size(); ++i) expect = expect * s_[i].pow(e[i]);
        if (u != expect) return false;
    }
    return true;
}

std::vector<std::string> CoverAlgebra::presentation() const {
    std::vector<std::string> out;
    auto name = [&](std::uint64_t a) {
        auto c = A_.element(a);
        std::string s = "w(";
        for (std::size_t j = 0; j < c.size(); ++j) s += (j ? "," : "") + std::to_string(c[j]);
        return s + ")";
    };
    for (std::size_t j = 0; j < A_.rank(); ++j) {
        // w_g^{m} = u and the mixed products of generators
        auto g = A_.generator(j);
        std::uint64_t acc = 0;
        std::vector<std::uint32_t> total(r_.size(), 0);
        for (std::uint64_t k = 0; k < A_.orders()[j]; ++k) {
            auto e = carry(acc, g);
            for (std::size_t i = 0; i < e.size(); ++i) total[i] += e[i];
            acc = A_.add(acc, g);
        }
        auto u = MultiPoly::constant(base_, 1);
        for (std::size_t i = 0; i < total.size(); ++i) u = u * s_[i].pow(total[i]);
        out.push_back(name(g) + "^" + std::to_string(A_.orders()[j]) + " = " + u.to_string());
        for (std::size_t k = j + 1; k < A_.rank(); ++k) {
            auto h = A_.generator(k);
            out.push_back(name(g) + "*" + name(h) + " = " + cocycle(g, h).to_string() + "*" + name(A_.add(g, h)));
        }
    }
    return out;
}

CoverAlgebra induced_cover(const GradedKummerAlgebra& Z, const FiniteAbelianGroup& A, const CharacterMatrix& phi) {
    validate_character_map(A, phi, Z.r());
    if (!is_surjective(phi, Z.r()))
        throw InputError("character map is not surjective onto Z^I/r; the dual map mu_r -> D(A) is not a monomorphism");
    return CoverAlgebra(Z.base(), Z.s(), Z.r(), A, phi);
}

bool refines_grading(const CoverAlgebra& cover, const GradedKummerAlgebra& Z) {
    if (cover.r() != Z.r() || !(*cover.base() == *Z.base())) return false;
    const auto n = cover.rank();
    auto t_pow = [&](const std::vector<std::uint32_t>& e) {
        auto m = MultiPoly::constant(Z.ring(), 1);
        for (std::size_t i = 0; i < e.size(); ++i) m = m * Z.t(i).pow(e[i]);
        return m;
    };
    auto check_pair = [&](std::uint64_t a, std::uint64_t b) {
        auto lhs = multiply_mod(t_pow(cover.degree(a)), t_pow(cover.degree(b)), Z.presentation());
        auto c = cover.group().add(a, b);
        auto u = cover.cocycle(a, b);
        MultiPoly lifted(Z.ring());
        for (const auto& [m, k] : u.terms()) {
            Monomial e(Z.ring()->nvars(), 0);
            std::copy(m.begin(), m.end(), e.begin());
            lifted.add_term(e, k);
        }
        return lhs == normal_form(lifted * t_pow(cover.degree(c)), Z.presentation());
    };
    if (n <= 64) {
        for (std::uint64_t a = 0; a < n; ++a)
            for (std::uint64_t b = 0; b < n; ++b)
                if (!check_pair(a, b)) return false;
        return true;
    }
    for (std::uint64_t a = 0; a < n; ++a)
        for (std::size_t j = 0; j < cover.group().rank(); ++j)
            if (!check_pair(a, cover.group().generator(j))) return false;
    return true;
}

bool graded_isomorphic(const CoverAlgebra& x, const CoverAlgebra& y) {
    if (!(*x.base() == *y.base()) || x.r() != y.r() || x.group().orders() != y.group().orders()) return false;
    if (x.s() != y.s()) return false;
    const auto n = x.rank();
    for (std::uint64_t a = 0; a < n; ++a) {
        if (x.degree(a) != y.degree(a)) return false;
        for (auto e : x.carry(0, a))
            if (e) return false;
    }
    if (n <= 64) {
        for (std::uint64_t a = 0; a < n; ++a)
            for (std::uint64_t b = 0; b < n; ++b)
                if (x.carry(a, b) != y.carry(a, b)) return false;
        return true;
    }
    for (std::uint64_t a = 0; a < n; ++a)
        for (std::size_t j = 0; j < x.group().rank(); ++j) {
            auto g = x.group().generator(j);
            if (x.carry(a, g) != y.carry(a, g)) return false;
        }
    return true;
}

}  // namespace tamer
