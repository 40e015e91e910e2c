#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tamer {

/// A finite group by its multiplication table on indices 0..order-1.
class AbstractFiniteGroup {
public:
    /// Validates the group axioms; throws InputError otherwise. The cubic
    /// associativity scan can be skipped for tables that are associative by
    /// construction (convolution of points).
    AbstractFiniteGroup(std::vector<std::uint32_t> table, std::size_t order,
                        bool check_associativity = true);

    /// Closure of `generators` under `op`, with elements compared by value.
    template <class T, class Op>
    static AbstractFiniteGroup generated(const std::vector<T>& generators, Op op, const T& identity,
                                         std::size_t max_order = 1 << 12);

    std::size_t order() const noexcept { return n_; }
    std::uint32_t identity() const noexcept { return e_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept { return t_[a * n_ + b]; }
    std::uint32_t inverse(std::uint32_t a) const noexcept { return inv_[a]; }
    std::uint32_t commutator(std::uint32_t a, std::uint32_t b) const noexcept {
        return mul(mul(a, b), mul(inverse(a), inverse(b)));
    }
    const std::vector<std::uint32_t>& table() const noexcept { return t_; }

    bool is_abelian() const noexcept;
    std::size_t element_order(std::uint32_t a) const noexcept;
    /// Sorted multiset of element orders, an isomorphism invariant.
    std::vector<std::size_t> order_profile() const;
    /// Subgroup generated by a set, as a sorted element list.
    std::vector<std::uint32_t> closure(const std::vector<std::uint32_t>& gens) const;
    std::vector<std::uint32_t> commutator_subgroup() const;
    /// Quotient by a normal subgroup; coset_of[g] gives the quotient element.
    AbstractFiniteGroup quotient(const std::vector<std::uint32_t>& normal,
                                 std::vector<std::uint32_t>* coset_of = nullptr) const;
    /// A small generating set, chosen greedily by index.
    std::vector<std::uint32_t> generators() const;

    bool operator==(const AbstractFiniteGroup& o) const noexcept {
        return n_ == o.n_ && t_ == o.t_;
    }

private:
    std::size_t n_;
    std::vector<std::uint32_t> t_;
    std::vector<std::uint32_t> inv_;
    std::uint32_t e_ = 0;
};

/// All homomorphisms G -> A, each as the image vector of G's elements.
std::vector<std::vector<std::uint32_t>> homomorphisms(const AbstractFiniteGroup& G,
                                                     const AbstractFiniteGroup& A);

AbstractFiniteGroup direct_product(const AbstractFiniteGroup& a, const AbstractFiniteGroup& b);

namespace groups {

AbstractFiniteGroup cyclic(std::size_t n);
/// Dihedral group of order 2n.
AbstractFiniteGroup dihedral(std::size_t n);
/// Dicyclic group of order 4n (Q8 for n = 2).
AbstractFiniteGroup dicyclic(std::size_t n);
AbstractFiniteGroup symmetric(std::size_t n);
AbstractFiniteGroup alternating(std::size_t n);
AbstractFiniteGroup special_linear_2_3();

/// Named groups of order at most 24. Names: C1..C24, S3, S4, A4, D4..D12
/// (order 2n), Q8, Q16, Dic3, Dic5, Dic6, SL23, and products written
/// like "C2xC2", "C3xS3".
AbstractFiniteGroup by_name(const std::string& name);
/// The bundled table set used by the oracle suites.
const std::vector<std::string>& bundled_names();

}  // namespace groups

template <class T, class Op>
AbstractFiniteGroup AbstractFiniteGroup::generated(const std::vector<T>& generators, Op op,
                                                   const T& identity, std::size_t max_order) {
    std::vector<T> elems{identity};
    std::map<T, std::uint32_t> index{{identity, 0}};
    for (std::size_t k = 0; k < elems.size(); ++k)
        for (const auto& g : generators) {
            T x = op(elems[k], g);
            if (index.emplace(x, static_cast<std::uint32_t>(elems.size())).second) {
                elems.push_back(x);
                if (elems.size() > max_order) throw std::length_error("group too large");
            }
        }
    const auto n = elems.size();
    std::vector<std::uint32_t> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) table[a * n + b] = index.at(op(elems[a], elems[b]));
    return AbstractFiniteGroup(std::move(table), n);
}

}  // namespace tamer
