#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace tamer {

bool is_prime(std::uint64_t n);

/// Arithmetic in Z/p for a prime p < 2^31. Residues are machine words.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p);

    std::uint64_t modulus() const noexcept { return p_; }

    std::uint64_t reduce(std::int64_t v) const noexcept {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p_) : r);
    }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept { return (a * b) % p_; }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
    /// Throws InputError on zero.
    std::uint64_t inv(std::uint64_t a) const;

    bool operator==(const PrimeField& o) const noexcept { return p_ == o.p_; }

private:
    std::uint64_t p_;
};

/// An element of F_p carrying its modulus. Mixing moduli throws.
class Fp {
public:
    Fp(std::int64_t value, std::uint64_t modulus);

    std::uint64_t residue() const noexcept { return residue_; }
    std::uint64_t modulus() const noexcept { return modulus_; }

    Fp operator+(const Fp& o) const;
    Fp operator-(const Fp& o) const;
    Fp operator*(const Fp& o) const;
    Fp operator/(const Fp& o) const;
    Fp operator-() const;
    Fp inverse() const;
    Fp pow(std::uint64_t e) const;
    bool operator==(const Fp& o) const noexcept {
        return residue_ == o.residue_ && modulus_ == o.modulus_;
    }

private:
    void check_same(const Fp& o) const;
    std::uint64_t residue_;
    std::uint64_t modulus_;
};

/// The finite field F_q, q = p^k, with elements encoded as integers in [0, q):
/// code = sum c_i p^i for the coefficient vector (c_0, ..., c_{k-1}) in the
/// power basis of the generator. Codes below p are the prime subfield.
class FiniteField {
public:
    /// The prime field F_p.
    explicit FiniteField(std::uint64_t p);

    /// F_{p^k} from its multiplication table on codes. Use
    /// extension_field() in quotient.hpp to build one from a presentation.
    FiniteField(std::uint64_t p, unsigned degree, std::vector<std::uint32_t> mul_table,
                std::string name);

    std::uint64_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return degree_; }
    std::uint32_t order() const noexcept { return q_; }
    bool is_prime_field() const noexcept { return degree_ == 1; }
    const std::string& name() const noexcept { return name_; }

    std::uint32_t from_int(std::int64_t v) const noexcept;
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        if (degree_ == 1) {
            std::uint32_t s = a + b;
            return s >= q_ ? s - q_ : s;
        }
        return tables_->add[a * q_ + b];
    }
    std::uint32_t neg(std::uint32_t a) const noexcept {
        if (degree_ == 1) return a == 0 ? 0 : q_ - a;
        return tables_->neg[a];
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return add(a, neg(b)); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        if (degree_ == 1)
            return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % q_);
        return tables_->mul[a * q_ + b];
    }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;

    bool operator==(const FiniteField& o) const noexcept;
    bool operator!=(const FiniteField& o) const noexcept { return !(*this == o); }

    /// Decoded coefficient vector of a code.
    std::vector<std::uint32_t> coefficients(std::uint32_t code) const;
    std::string format(std::uint32_t code) const;

private:
    struct Tables {
        std::vector<std::uint32_t> add, mul, neg, inv;
    };
    std::uint64_t p_;
    unsigned degree_;
    std::uint32_t q_;
    std::string name_;
    std::shared_ptr<const Tables> tables_;
};

}  // namespace tamer
