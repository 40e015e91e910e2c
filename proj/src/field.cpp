#include "tamer/field.hpp"

#include "tamer/error.hpp"

namespace tamer {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (!is_prime(p) || p >= (1ULL << 31))
        throw InputError("modulus " + std::to_string(p) + " is not a prime below 2^31");
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const noexcept {
    std::uint64_t r = 1 % p_;
    a %= p_;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
    if (a % p_ == 0) throw InputError("inverse of zero in F_" + std::to_string(p_));
    return pow(a, p_ - 2);
}

Fp::Fp(std::int64_t value, std::uint64_t modulus)
    : residue_(PrimeField(modulus).reduce(value)), modulus_(modulus) {}

void Fp::check_same(const Fp& o) const {
    if (modulus_ != o.modulus_)
        throw InputError("mixed moduli " + std::to_string(modulus_) + " and " +
                         std::to_string(o.modulus_));
}

Fp Fp::operator+(const Fp& o) const {
    check_same(o);
    return Fp(static_cast<std::int64_t>(PrimeField(modulus_).add(residue_, o.residue_)), modulus_);
}
Fp Fp::operator-(const Fp& o) const {
    check_same(o);
    return Fp(static_cast<std::int64_t>(PrimeField(modulus_).sub(residue_, o.residue_)), modulus_);
}
Fp Fp::operator*(const Fp& o) const {
    check_same(o);
    return Fp(static_cast<std::int64_t>(PrimeField(modulus_).mul(residue_, o.residue_)), modulus_);
}
Fp Fp::operator/(const Fp& o) const { return *this * o.inverse(); }
Fp Fp::operator-() const {
    return Fp(static_cast<std::int64_t>(PrimeField(modulus_).neg(residue_)), modulus_);
}
Fp Fp::inverse() const {
    return Fp(static_cast<std::int64_t>(PrimeField(modulus_).inv(residue_)), modulus_);
}
Fp Fp::pow(std::uint64_t e) const {
    return Fp(static_cast<std::int64_t>(PrimeField(modulus_).pow(residue_, e)), modulus_);
}

FiniteField::FiniteField(std::uint64_t p) : p_(p), degree_(1), q_(0) {
    PrimeField check(p);
    q_ = static_cast<std::uint32_t>(p);
    name_ = "F" + std::to_string(p);
}

FiniteField::FiniteField(std::uint64_t p, unsigned degree, std::vector<std::uint32_t> mul_table,
                         std::string name)
    : p_(p), degree_(degree), q_(1), name_(std::move(name)) {
    PrimeField check(p);
    for (unsigned i = 0; i < degree; ++i) q_ *= static_cast<std::uint32_t>(p);
    if (degree == 1) return;
    if (mul_table.size() != static_cast<std::size_t>(q_) * q_)
        throw InputError("multiplication table has wrong size for " + name_);
    auto t = std::make_shared<Tables>();
    t->mul = std::move(mul_table);
    t->add.resize(static_cast<std::size_t>(q_) * q_);
    t->neg.resize(q_);
    t->inv.assign(q_, 0);
    for (std::uint32_t a = 0; a < q_; ++a) {
        auto ca = coefficients(a);
        std::vector<std::uint32_t> cn(degree);
        std::uint32_t neg = 0, scale = 1;
        for (unsigned i = 0; i < degree; ++i) {
            cn[i] = ca[i] == 0 ? 0 : static_cast<std::uint32_t>(p - ca[i]);
            neg += cn[i] * scale;
            scale *= static_cast<std::uint32_t>(p);
        }
        t->neg[a] = neg;
        for (std::uint32_t b = 0; b < q_; ++b) {
            auto cb = coefficients(b);
            std::uint32_t s = 0;
            scale = 1;
            for (unsigned i = 0; i < degree; ++i) {
                s += static_cast<std::uint32_t>((ca[i] + cb[i]) % p) * scale;
                scale *= static_cast<std::uint32_t>(p);
            }
            t->add[a * q_ + b] = s;
            if (t->mul[a * q_ + b] == 1) t->inv[a] = b;
        }
        if (a != 0 && t->inv[a] == 0)
            throw InputError(name_ + " is not a field: " + std::to_string(a) + " has no inverse");
    }
    tables_ = std::move(t);
}

std::uint32_t FiniteField::from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
}

std::uint32_t FiniteField::inv(std::uint32_t a) const {
    if (a == 0) throw InputError("inverse of zero in " + name_);
    if (degree_ == 1) return pow(a, q_ - 2);
    return tables_->inv[a];
}

std::uint32_t FiniteField::pow(std::uint32_t a, std::uint64_t e) const noexcept {
    std::uint32_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

bool FiniteField::operator==(const FiniteField& o) const noexcept {
    if (p_ != o.p_ || degree_ != o.degree_) return false;
    if (degree_ == 1) return true;
    return tables_ == o.tables_ || tables_->mul == o.tables_->mul;
}

std::vector<std::uint32_t> FiniteField::coefficients(std::uint32_t code) const {
    std::vector<std::uint32_t> c(degree_);
    for (unsigned i = 0; i < degree_; ++i) {
        c[i] = code % static_cast<std::uint32_t>(p_);
        code /= static_cast<std::uint32_t>(p_);
    }
    return c;
}

std::string FiniteField::format(std::uint32_t code) const {
    if (degree_ == 1) return std::to_string(code);
    auto c = coefficients(code);
    std::string out;
    for (unsigned i = 0; i < degree_; ++i) {
        if (c[i] == 0) continue;
        if (!out.empty()) out += "+";
        if (i == 0) {
            out += std::to_string(c[i]);
        } else {
            if (c[i] != 1) out += std::to_string(c[i]) + "*";
            out += i == 1 ? "w" : "w^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace tamer
