#include "tamer/quotient.hpp"

#include <algorithm>
#include <functional>

#include "tamer/error.hpp"

namespace tamer {

QuotientPresentation::QuotientPresentation(PolyRingPtr ring, std::vector<PowerRule> rules,
                                           std::optional<Truncation> truncation)
    : ring_(std::move(ring)), rules_(std::move(rules)), truncation_(std::move(truncation)) {
    const auto n = ring_->nvars();
    rule_of_var_.assign(n, -1);
    for (std::size_t k = 0; k < rules_.size(); ++k) {
        const auto& r = rules_[k];
        if (r.var >= n) throw InputError("rule on undeclared variable");
        if (r.power == 0) throw InputError("rule with zero power never terminates");
        if (!(*r.rhs.ring() == *ring_)) throw InputError("rule right-hand side over another ring");
        if (rule_of_var_[r.var] >= 0)
            throw InputError("two rules on variable " + ring_->variables()[r.var]);
        rule_of_var_[r.var] = static_cast<long>(k);
    }
    for (const auto& r : rules_) {
        const auto& name = ring_->variables()[r.var];
        if (r.rhs.degree_in(r.var) >= static_cast<long>(r.power))
            throw InputError("rule on " + name + " does not lower its degree; rewriting would not terminate");
        for (std::size_t v = 0; v < n; ++v)
            if (v != r.var && rule_of_var_[v] >= 0 && r.rhs.degree_in(v) > 0)
                throw InputError("rule on " + name + " mentions ruled variable " +
                                 ring_->variables()[v]);
    }
    if (truncation_) {
        for (auto v : truncation_->vars) {
            if (v >= n) throw InputError("truncation on undeclared variable");
            if (rule_of_var_[v] >= 0)
                throw InputError("variable " + ring_->variables()[v] + " is both ruled and truncated");
        }
    }
}

bool QuotientPresentation::is_reducible(const Monomial& m) const noexcept {
    for (const auto& r : rules_)
        if (m[r.var] >= r.power) return true;
    if (truncation_) {
        std::uint32_t d = 0;
        for (auto v : truncation_->vars) d += m[v];
        if (d > truncation_->max_degree) return true;
    }
    return false;
}

bool QuotientPresentation::is_finite() const noexcept {
    for (std::size_t v = 0; v < ring_->nvars(); ++v) {
        if (rule_of_var_[v] >= 0) continue;
        if (truncation_ &&
            std::find(truncation_->vars.begin(), truncation_->vars.end(), v) != truncation_->vars.end())
            continue;
        return false;
    }
    return true;
}

std::vector<Monomial> QuotientPresentation::normal_basis() const {
    if (!is_finite()) throw InputError("quotient is not finite-dimensional");
    const auto n = ring_->nvars();
    std::vector<std::uint32_t> bound(n, 0);
    for (const auto& r : rules_) bound[r.var] = r.power - 1;
    if (truncation_)
        for (auto v : truncation_->vars) bound[v] = truncation_->max_degree;
    std::vector<Monomial> out;
    Monomial m(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            if (!is_reducible(m)) out.push_back(m);
            return;
        }
        for (std::uint32_t e = 0; e <= bound[i]; ++e) {
            m[i] = e;
            rec(i + 1);
        }
        m[i] = 0;
    };
    rec(0);
    std::sort(out.begin(), out.end(), DegRevLexGreater{});
    return out;
}

MultiPoly normal_form(const MultiPoly& e, const QuotientPresentation& q) {
    if (!(*e.ring() == *q.ring())) throw InputError("expression uses a different ring");
    const auto& F = q.ring()->field();
    MultiPoly result(q.ring());
    std::vector<std::pair<Monomial, std::uint64_t>> work(e.terms().begin(), e.terms().end());
    while (!work.empty()) {
        auto [m, c] = std::move(work.back());
        work.pop_back();
        if (q.truncation()) {
            std::uint32_t d = 0;
            for (auto v : q.truncation()->vars) d += m[v];
            if (d > q.truncation()->max_degree) continue;
        }
        const PowerRule* hit = nullptr;
        for (const auto& r : q.rules())
            if (m[r.var] >= r.power) {
                hit = &r;
                break;
            }
        if (!hit) {
            result.add_term(m, c);
            continue;
        }
        Monomial rest = m;
        rest[hit->var] -= hit->power;
        for (const auto& [rm, rc] : hit->rhs.terms()) {
            Monomial nm = rest;
            for (std::size_t i = 0; i < nm.size(); ++i) nm[i] += rm[i];
            work.emplace_back(std::move(nm), F.mul(c, rc));
        }
    }
    return result;
}

MultiPoly multiply_mod(const MultiPoly& a, const MultiPoly& b, const QuotientPresentation& q) {
    return normal_form(a * b, q);
}

MultiPoly power_mod(const MultiPoly& a, std::uint64_t e, const QuotientPresentation& q) {
    MultiPoly r = normal_form(MultiPoly::constant(q.ring(), 1), q);
    MultiPoly base = normal_form(a, q);
    while (e) {
        if (e & 1) r = multiply_mod(r, base, q);
        e >>= 1;
        if (e) base = multiply_mod(base, base, q);
    }
    return r;
}

FiniteField extension_field(const QuotientPresentation& q) {
    if (q.ring()->nvars() != 1 || q.rules().size() != 1 || q.truncation())
        throw InputError("extension field needs exactly one variable and one rule");
    const auto p = q.ring()->characteristic();
    const auto k = q.rules()[0].power;
    std::uint64_t size = 1;
    for (std::uint32_t i = 0; i < k; ++i) size *= p;
    if (size > 1024) throw BudgetExceeded("field-order", "extension field order exceeds 1024");
    const auto qsize = static_cast<std::uint32_t>(size);
    auto ring = q.ring();
    auto decode = [&](std::uint32_t code) {
        MultiPoly f(ring);
        for (std::uint32_t i = 0; i < k; ++i) {
            f.add_term(Monomial{i}, code % p);
            code /= static_cast<std::uint32_t>(p);
        }
        return f;
    };
    auto encode = [&](const MultiPoly& f) {
        std::uint32_t code = 0, scale = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            code += static_cast<std::uint32_t>(f.coefficient(Monomial{i})) * scale;
            scale *= static_cast<std::uint32_t>(p);
        }
        return code;
    };
    std::vector<MultiPoly> elems;
    elems.reserve(qsize);
    for (std::uint32_t c = 0; c < qsize; ++c) elems.push_back(decode(c));
    std::vector<std::uint32_t> mul(static_cast<std::size_t>(qsize) * qsize);
    for (std::uint32_t a = 0; a < qsize; ++a)
        for (std::uint32_t b = a; b < qsize; ++b) {
            auto v = encode(multiply_mod(elems[a], elems[b], q));
            mul[a * qsize + b] = v;
            mul[b * qsize + a] = v;
        }
    return FiniteField(p, k, std::move(mul),
                       "F" + std::to_string(p) + "^" + std::to_string(k));
}

QuotientPresentation quadratic_extension_presentation(std::uint64_t p) {
    auto ring = make_ring(p, {"w"});
    PrimeField F(p);
    MultiPoly rhs(ring);
    if (p == 2) {
        // w^2 = w + 1
        rhs = MultiPoly::variable(ring, 0) + MultiPoly::constant(ring, 1);
    } else {
        // w^2 = c for the least non-square c
        std::uint64_t c = 2;
        while (F.pow(c, (p - 1) / 2) == 1) ++c;
        rhs = MultiPoly::constant(ring, static_cast<std::int64_t>(c));
    }
    return QuotientPresentation(ring, {PowerRule{0, 2, rhs}});
}

FiniteAlgebra::FiniteAlgebra(const QuotientPresentation& q, std::uint64_t max_elements)
    : q_(q), p_(q.ring()->characteristic()), basis_(q.normal_basis()) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        size *= p_;
        if (size > max_elements)
            throw BudgetExceeded("ring-elements", "finite algebra has more than " +
                                                      std::to_string(max_elements) + " elements");
    }
    size_ = static_cast<std::uint32_t>(size);
    one_ = encode(normal_form(MultiPoly::constant(q_.ring(), 1), q_));
    const auto d = basis_.size();
    const auto p = static_cast<std::uint32_t>(p_);
    // structure constants of the normal basis
    std::vector<std::uint32_t> sc(d * d * d, 0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            auto prod = multiply_mod(MultiPoly::monomial(q_.ring(), basis_[i], 1),
                                     MultiPoly::monomial(q_.ring(), basis_[j], 1), q_);
            for (std::size_t k = 0; k < d; ++k)
                sc[(i * d + k) * d + j] = sc[(j * d + k) * d + i] =
                    static_cast<std::uint32_t>(prod.coefficient(basis_[k]));
        }
    std::vector<std::uint32_t> digits(static_cast<std::size_t>(size_) * d);
    for (std::uint32_t c = 0; c < size_; ++c) {
        auto x = c;
        for (std::size_t i = 0; i < d; ++i, x /= p) digits[c * d + i] = x % p;
    }
    auto pack = [&](const std::vector<std::uint32_t>& v) {
        std::uint32_t code = 0;
        for (std::size_t i = d; i-- > 0;) code = code * p + v[i];
        return code;
    };
    add_.resize(static_cast<std::size_t>(size_) * size_);
    mul_.resize(static_cast<std::size_t>(size_) * size_);
    scale_.resize(static_cast<std::size_t>(p_) * size_);
    std::vector<std::uint32_t> acc(d), sum(d);
    for (std::uint32_t a = 0; a < size_; ++a) {
        const auto* da = &digits[a * d];
        for (std::uint32_t b = a; b < size_; ++b) {
            const auto* db = &digits[b * d];
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t i = 0; i < d; ++i) {
                sum[i] = (da[i] + db[i]) % p;
                if (!da[i]) continue;
                for (std::size_t k = 0; k < d; ++k) {
                    std::uint64_t t = acc[k];
                    const auto* row = &sc[(i * d + k) * d];
                    for (std::size_t j = 0; j < d; ++j) t += static_cast<std::uint64_t>(da[i]) * db[j] * row[j];
                    acc[k] = static_cast<std::uint32_t>(t % p);
                }
            }
            add_[a * size_ + b] = add_[b * size_ + a] = pack(sum);
            mul_[a * size_ + b] = mul_[b * size_ + a] = pack(acc);
        }
        for (std::uint32_t c = 0; c < p; ++c) {
            for (std::size_t i = 0; i < d; ++i) sum[i] = static_cast<std::uint32_t>((std::uint64_t{c} * da[i]) % p);
            scale_[c * size_ + a] = pack(sum);
        }
    }
}

std::uint32_t FiniteAlgebra::encode(const MultiPoly& normal) const {
    std::uint32_t code = 0, scale = 1;
    std::size_t matched = 0;
    for (const auto& b : basis_) {
        auto c = normal.coefficient(b);
        if (c) ++matched;
        code += static_cast<std::uint32_t>(c) * scale;
        scale *= static_cast<std::uint32_t>(p_);
    }
    if (matched != normal.size()) throw AssertionFailure("element is not in normal form");
    return code;
}

MultiPoly FiniteAlgebra::decode(std::uint32_t code) const {
    MultiPoly f(q_.ring());
    for (const auto& b : basis_) {
        f.add_term(b, code % p_);
        code /= static_cast<std::uint32_t>(p_);
    }
    return f;
}

}  // namespace tamer
