#include "tamer/finite_group.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include "tamer/error.hpp"

namespace tamer {

AbstractFiniteGroup::AbstractFiniteGroup(std::vector<std::uint32_t> table, std::size_t order,
                                         bool check_associativity)
    : n_(order), t_(std::move(table)) {
    if (n_ == 0 || t_.size() != n_ * n_) throw InputError("group table has wrong size");
    for (auto v : t_)
        if (v >= n_) throw InputError("group table entry out of range");
    bool found = false;
    for (std::uint32_t e = 0; e < n_ && !found; ++e) {
        bool ok = true;
        for (std::uint32_t a = 0; a < n_ && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
        if (ok) {
            e_ = e;
            found = true;
        }
    }
    if (!found) throw InputError("group table has no identity");
    inv_.assign(n_, 0);
    for (std::uint32_t a = 0; a < n_; ++a) {
        bool has = false;
        for (std::uint32_t b = 0; b < n_; ++b)
            if (mul(a, b) == e_ && mul(b, a) == e_) {
                inv_[a] = b;
                has = true;
                break;
            }
        if (!has) throw InputError("group table element without inverse");
    }
    if (!check_associativity) return;
    for (std::uint32_t a = 0; a < n_; ++a)
        for (std::uint32_t b = 0; b < n_; ++b)
            for (std::uint32_t c = 0; c < n_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw InputError("group table is not associative");
}

bool AbstractFiniteGroup::is_abelian() const noexcept {
    for (std::uint32_t a = 0; a < n_; ++a)
        for (std::uint32_t b = a + 1; b < n_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::size_t AbstractFiniteGroup::element_order(std::uint32_t a) const noexcept {
    std::size_t k = 1;
    for (auto x = a; x != e_; x = mul(x, a)) ++k;
    return k;
}

std::vector<std::size_t> AbstractFiniteGroup::order_profile() const {
    std::vector<std::size_t> out;
    for (std::uint32_t a = 0; a < n_; ++a) out.push_back(element_order(a));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint32_t> AbstractFiniteGroup::closure(const std::vector<std::uint32_t>& gens) const {
    std::vector<bool> in(n_, false);
    std::vector<std::uint32_t> elems{e_};
    in[e_] = true;
    for (std::size_t k = 0; k < elems.size(); ++k)
        for (auto g : gens) {
            auto x = mul(elems[k], g);
            if (!in[x]) {
                in[x] = true;
                elems.push_back(x);
            }
        }
    std::sort(elems.begin(), elems.end());
    return elems;
}

std::vector<std::uint32_t> AbstractFiniteGroup::commutator_subgroup() const {
    std::set<std::uint32_t> comms;
    for (std::uint32_t a = 0; a < n_; ++a)
        for (std::uint32_t b = 0; b < n_; ++b) comms.insert(commutator(a, b));
    return closure({comms.begin(), comms.end()});
}

AbstractFiniteGroup AbstractFiniteGroup::quotient(const std::vector<std::uint32_t>& normal,
                                                  std::vector<std::uint32_t>* coset_of) const {
    std::vector<std::uint32_t> rep_of(n_, UINT32_MAX);
    std::vector<std::uint32_t> reps;
    for (std::uint32_t g = 0; g < n_; ++g) {
        if (rep_of[g] != UINT32_MAX) continue;
        auto idx = static_cast<std::uint32_t>(reps.size());
        reps.push_back(g);
        for (auto h : normal) rep_of[mul(g, h)] = idx;
    }
    const auto m = reps.size();
    std::vector<std::uint32_t> table(m * m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) table[a * m + b] = rep_of[mul(reps[a], reps[b])];
    if (coset_of) *coset_of = rep_of;
    return AbstractFiniteGroup(std::move(table), m);
}

std::vector<std::uint32_t> AbstractFiniteGroup::generators() const {
    std::vector<std::uint32_t> gens;
    std::vector<std::uint32_t> sub{e_};
    // prefer elements of large order, which tend to generate quickly
    std::vector<std::uint32_t> cand(n_);
    std::iota(cand.begin(), cand.end(), 0);
    std::stable_sort(cand.begin(), cand.end(), [&](auto a, auto b) {
        return element_order(a) > element_order(b);
    });
    for (auto g : cand) {
        if (sub.size() == n_) break;
        if (std::binary_search(sub.begin(), sub.end(), g)) continue;
        gens.push_back(g);
        sub = closure(gens);
    }
    return gens;
}

std::vector<std::vector<std::uint32_t>> homomorphisms(const AbstractFiniteGroup& G,
                                                     const AbstractFiniteGroup& A) {
    const auto gens = G.generators();
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> images(gens.size(), 0);
    for (;;) {
        // extend along the Cayley graph and check consistency
        std::vector<std::uint32_t> phi(G.order(), UINT32_MAX);
        phi[G.identity()] = A.identity();
        std::vector<std::uint32_t> queue{G.identity()};
        bool ok = true;
        for (std::size_t k = 0; k < queue.size() && ok; ++k)
            for (std::size_t j = 0; j < gens.size(); ++j) {
                auto x = G.mul(queue[k], gens[j]);
                auto y = A.mul(phi[queue[k]], images[j]);
                if (phi[x] == UINT32_MAX) {
                    phi[x] = y;
                    queue.push_back(x);
                } else if (phi[x] != y) {
                    ok = false;
                    break;
                }
            }
        if (ok)
            for (std::uint32_t a = 0; a < G.order() && ok; ++a)
                for (std::uint32_t b = 0; b < G.order(); ++b)
                    if (phi[G.mul(a, b)] != A.mul(phi[a], phi[b])) {
                        ok = false;
                        break;
                    }
        if (ok) out.push_back(std::move(phi));
        std::size_t i = 0;
        while (i < images.size() && ++images[i] == A.order()) images[i++] = 0;
        if (i == images.size()) break;
    }
    return out;
}

AbstractFiniteGroup direct_product(const AbstractFiniteGroup& a, const AbstractFiniteGroup& b) {
    const auto n = a.order() * b.order();
    std::vector<std::uint32_t> table(n * n);
    for (std::uint32_t x = 0; x < n; ++x)
        for (std::uint32_t y = 0; y < n; ++y) {
            auto ax = x / b.order(), bx = x % b.order();
            auto ay = y / b.order(), by = y % b.order();
            table[x * n + y] = static_cast<std::uint32_t>(a.mul(ax, ay) * b.order() + b.mul(bx, by));
        }
    return AbstractFiniteGroup(std::move(table), n);
}

namespace groups {

namespace {

using Perm = std::vector<std::uint32_t>;

Perm compose(const Perm& a, const Perm& b) {
    // (a * b)(i) = a(b(i))
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm identity_perm(std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

}  // namespace

AbstractFiniteGroup cyclic(std::size_t n) {
    if (n == 0) throw InputError("cyclic group of order 0");
    std::vector<std::uint32_t> t(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) t[a * n + b] = static_cast<std::uint32_t>((a + b) % n);
    return AbstractFiniteGroup(std::move(t), n);
}

AbstractFiniteGroup dihedral(std::size_t n) {
    // elements (k, f): rotation k then optional reflection
    using E = std::array<std::size_t, 2>;
    auto op = [n](const E& x, const E& y) {
        std::size_t k = x[1] ? (x[0] + n - y[0]) % n : (x[0] + y[0]) % n;
        return E{k, x[1] ^ y[1]};
    };
    return AbstractFiniteGroup::generated<E>({E{1 % n, 0}, E{0, 1}}, op, E{0, 0});
}

AbstractFiniteGroup dicyclic(std::size_t n) {
    // <a, x | a^{2n} = 1, x^2 = a^n, x a x^{-1} = a^{-1}>, elements a^k x^f
    using E = std::array<std::size_t, 2>;
    const std::size_t m = 2 * n;
    auto op = [n, m](const E& x, const E& y) {
        if (!x[1]) return E{(x[0] + y[0]) % m, y[1]};
        // a^i x a^j x^f = a^{i-j} x^{1+f}
        std::size_t k = (x[0] + m - y[0]) % m;
        if (y[1]) return E{(k + n) % m, 0};
        return E{k, 1};
    };
    return AbstractFiniteGroup::generated<E>({E{1, 0}, E{0, 1}}, op, E{0, 0});
}

AbstractFiniteGroup symmetric(std::size_t n) {
    if (n <= 1) return cyclic(1);
    Perm swap = identity_perm(n), cycle(n);
    std::swap(swap[0], swap[1]);
    for (std::size_t i = 0; i < n; ++i) cycle[i] = static_cast<std::uint32_t>((i + 1) % n);
    return AbstractFiniteGroup::generated<Perm>({swap, cycle}, compose, identity_perm(n));
}

AbstractFiniteGroup alternating(std::size_t n) {
    if (n <= 2) return cyclic(1);
    std::vector<Perm> gens;
    for (std::size_t k = 2; k < n; ++k) {
        Perm c = identity_perm(n);
        c[0] = 1;
        c[1] = static_cast<std::uint32_t>(k);
        c[k] = 0;
        gens.push_back(c);
    }
    return AbstractFiniteGroup::generated<Perm>(gens, compose, identity_perm(n));
}

AbstractFiniteGroup special_linear_2_3() {
    using M = std::array<int, 4>;
    auto op = [](const M& a, const M& b) {
        return M{(a[0] * b[0] + a[1] * b[2]) % 3, (a[0] * b[1] + a[1] * b[3]) % 3,
                 (a[2] * b[0] + a[3] * b[2]) % 3, (a[2] * b[1] + a[3] * b[3]) % 3};
    };
    return AbstractFiniteGroup::generated<M>({M{1, 1, 0, 1}, M{1, 0, 1, 1}}, op, M{1, 0, 0, 1});
}

AbstractFiniteGroup by_name(const std::string& name) {
    auto x = name.find('x');
    if (x != std::string::npos)
        return direct_product(by_name(name.substr(0, x)), by_name(name.substr(x + 1)));
    auto num = [&](std::size_t from) -> std::size_t {
        try {
            return static_cast<std::size_t>(std::stoul(name.substr(from)));
        } catch (...) {
            throw InputError("unknown group name " + name);
        }
    };
    if (name == "SL23") return special_linear_2_3();
    if (name == "Q8") return dicyclic(2);
    if (name == "Q16") return dicyclic(4);
    if (name.rfind("Dic", 0) == 0) return dicyclic(num(3));
    if (name == "Z2") return cyclic(2);
    if (name.empty()) throw InputError("empty group name");
    switch (name[0]) {
        case 'C':
        case 'Z': return cyclic(num(1));
        case 'S': return symmetric(num(1));
        case 'A': return alternating(num(1));
        case 'D': return dihedral(num(1));
        default: throw InputError("unknown group name " + name);
    }
}

const std::vector<std::string>& bundled_names() {
    static const std::vector<std::string> names = {
        "C1",    "C2",    "C3",    "C4",    "C5",    "C6",    "C7",    "C8",    "C9",
        "C10",   "C12",   "C16",   "C24",   "C2xC2", "C2xC4", "C3xC3", "C2xC2xC2",
        "C2xC6", "S3",    "D4",    "D5",    "D6",    "D7",    "D8",    "D9",    "D10",
        "D12",   "Q8",    "Q16",   "Dic3",  "Dic5",  "Dic6",  "A4",    "S4",    "SL23",
        "C2xD4", "C2xQ8", "C3xS3", "C2xA4", "C4xS3", "C2xD6", "C3xQ8"};
    return names;
}

}  // namespace groups

}  // namespace tamer
