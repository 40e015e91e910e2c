#include "tamer/hopf.hpp"

#include <sstream>

#include "tamer/error.hpp"

namespace tamer {

HopfAlgebra::HopfAlgebra(FiniteField field, std::vector<std::string> labels,
                         std::vector<std::uint32_t> mult, Vec unit, std::vector<std::uint32_t> comult,
                         Vec counit, std::vector<std::uint32_t> antipode)
    : field_(std::move(field)),
      dim_(labels.size()),
      labels_(std::move(labels)),
      mult_(std::move(mult)),
      unit_(std::move(unit)),
      comult_(std::move(comult)),
      counit_(std::move(counit)),
      antipode_(std::move(antipode)) {
    const auto d = dim_;
    if (d == 0) throw InputError("Hopf algebra of dimension 0");
    if (d > kMaxAxiomDim)
        throw BudgetExceeded("dim", "Hopf algebra dimension " + std::to_string(d) + " exceeds " +
                                        std::to_string(kMaxAxiomDim));
    if (mult_.size() != d * d * d || comult_.size() != d * d * d || unit_.size() != d ||
        counit_.size() != d || antipode_.size() != d * d)
        throw InputError("structure tensors do not match dimension " + std::to_string(d));
    for (const auto* t : {&mult_, &comult_, &antipode_})
        for (auto v : *t)
            if (v >= field_.order()) throw InputError("structure constant outside the field");
    for (const auto* t : {&unit_, &counit_})
        for (auto v : *t)
            if (v >= field_.order()) throw InputError("structure constant outside the field");
    mult_sparse_.resize(d * d);
    comult_sparse_.resize(d);
    antipode_sparse_.resize(d);
    for (std::uint32_t i = 0; i < d; ++i)
        for (std::uint32_t j = 0; j < d; ++j)
            for (std::uint32_t k = 0; k < d; ++k) {
                if (auto c = mult_[(i * d + j) * d + k]) mult_sparse_[i * d + j].push_back({k, c});
                if (auto c = comult_[(i * d + j) * d + k]) comult_sparse_[i].push_back({j, k, c});
            }
    for (std::uint32_t j = 0; j < d; ++j)
        for (std::uint32_t i = 0; i < d; ++i)
            if (auto c = antipode_[j * d + i]) antipode_sparse_[j].push_back({i, c});
}

Vec HopfAlgebra::basis_vector(std::size_t i) const {
    Vec v(dim_, 0);
    v.at(i) = 1;
    return v;
}

Vec HopfAlgebra::multiply(const Vec& a, const Vec& b) const {
    const auto& F = field_;
    Vec r(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (!b[j]) continue;
            auto ab = F.mul(a[i], b[j]);
            for (const auto& t : product(i, j)) r[t.k] = F.add(r[t.k], F.mul(ab, t.c));
        }
    }
    return r;
}

Vec HopfAlgebra::apply_antipode(const Vec& a) const {
    Vec r(dim_, 0);
    for (std::size_t j = 0; j < dim_; ++j) {
        if (!a[j]) continue;
        for (const auto& t : antipode_of(j)) r[t.k] = field_.add(r[t.k], field_.mul(a[j], t.c));
    }
    return r;
}

std::uint32_t HopfAlgebra::apply_counit(const Vec& a) const {
    std::uint32_t r = 0;
    for (std::size_t i = 0; i < dim_; ++i)
        if (a[i] && counit_[i]) r = field_.add(r, field_.mul(a[i], counit_[i]));
    return r;
}

Vec HopfAlgebra::comultiply(const Vec& a) const {
    Vec r(dim_ * dim_, 0);
    for (std::size_t k = 0; k < dim_; ++k) {
        if (!a[k]) continue;
        for (const auto& t : coproduct(k)) {
            auto& slot = r[t.i * dim_ + t.j];
            slot = field_.add(slot, field_.mul(a[k], t.c));
        }
    }
    return r;
}

bool AxiomReport::all_pass() const noexcept {
    for (const auto& [name, ok] : checks)
        if (!ok) return false;
    return true;
}

std::string AxiomReport::failures() const {
    std::string out;
    for (const auto& [name, ok] : checks)
        if (!ok) out += (out.empty() ? "" : ", ") + name;
    return out;
}

namespace {

// Product in H (x) H of two dense dim^2 vectors.
Vec tensor_square_product(const HopfAlgebra& H, const Vec& x, const Vec& y) {
    const auto d = H.dim();
    const auto& F = H.field();
    Vec r(d * d, 0);
    for (std::size_t u = 0; u < d * d; ++u) {
        if (!x[u]) continue;
        for (std::size_t v = 0; v < d * d; ++v) {
            if (!y[v]) continue;
            auto c = F.mul(x[u], y[v]);
            const auto& left = H.product(u / d, v / d);
            const auto& right = H.product(u % d, v % d);
            for (const auto& l : left)
                for (const auto& rr : right) {
                    auto& slot = r[l.k * d + rr.k];
                    slot = F.add(slot, F.mul(c, F.mul(l.c, rr.c)));
                }
        }
    }
    return r;
}

}  // namespace

AxiomReport check_axioms(const HopfAlgebra& H) {
    const auto d = H.dim();
    const auto& F = H.field();
    AxiomReport rep;

    bool assoc = true, comm = true, unit = true;
    for (std::size_t i = 0; i < d && (assoc || comm || unit); ++i) {
        auto bi = H.basis_vector(i);
        if (H.multiply(H.unit(), bi) != bi) unit = false;
        for (std::size_t j = 0; j < d; ++j) {
            auto bj = H.basis_vector(j);
            auto ij = H.multiply(bi, bj);
            if (ij != H.multiply(bj, bi)) comm = false;
            for (std::size_t l = 0; l < d && assoc; ++l) {
                auto bl = H.basis_vector(l);
                if (H.multiply(ij, bl) != H.multiply(bi, H.multiply(bj, bl))) assoc = false;
            }
        }
    }
    rep.checks.emplace_back("associativity", assoc);
    rep.checks.emplace_back("commutativity", comm);
    rep.checks.emplace_back("unit", unit);

    bool coassoc = true, counit = true, antipode = true;
    for (std::size_t k = 0; k < d; ++k) {
        SparseVec left, right;
        for (const auto& t : H.coproduct(k)) {
            for (const auto& s : H.coproduct(t.i)) {
                auto& slot = left[(static_cast<std::uint64_t>(s.i) * d + s.j) * d + t.j];
                slot = F.add(slot, F.mul(t.c, s.c));
            }
            for (const auto& s : H.coproduct(t.j)) {
                auto& slot = right[(static_cast<std::uint64_t>(t.i) * d + s.i) * d + s.j];
                slot = F.add(slot, F.mul(t.c, s.c));
            }
        }
        for (auto* m : {&left, &right})
            for (auto it = m->begin(); it != m->end();) it = it->second ? std::next(it) : m->erase(it);
        if (left != right) coassoc = false;

        Vec eps_left(d, 0), eps_right(d, 0), s_left(d, 0), s_right(d, 0);
        for (const auto& t : H.coproduct(k)) {
            eps_left[t.j] = F.add(eps_left[t.j], F.mul(t.c, H.counit()[t.i]));
            eps_right[t.i] = F.add(eps_right[t.i], F.mul(t.c, H.counit()[t.j]));
            auto si = H.apply_antipode(H.basis_vector(t.i));
            auto sj = H.apply_antipode(H.basis_vector(t.j));
            auto a = H.multiply(si, H.basis_vector(t.j));
            auto b = H.multiply(H.basis_vector(t.i), sj);
            for (std::size_t x = 0; x < d; ++x) {
                s_left[x] = F.add(s_left[x], F.mul(t.c, a[x]));
                s_right[x] = F.add(s_right[x], F.mul(t.c, b[x]));
            }
        }
        auto bk = H.basis_vector(k);
        if (eps_left != bk || eps_right != bk) counit = false;
        Vec expect(d, 0);
        for (std::size_t x = 0; x < d; ++x) expect[x] = F.mul(H.counit()[k], H.unit()[x]);
        if (s_left != expect || s_right != expect) antipode = false;
    }
    rep.checks.emplace_back("coassociativity", coassoc);
    rep.checks.emplace_back("counit", counit);

    bool delta_alg = true, eps_alg = true;
    {
        auto du = H.comultiply(H.unit());
        Vec one_one(d * d, 0);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) one_one[i * d + j] = F.mul(H.unit()[i], H.unit()[j]);
        if (du != one_one) delta_alg = false;
        if (H.apply_counit(H.unit()) != 1) eps_alg = false;
    }
    std::vector<Vec> deltas(d);
    for (std::size_t i = 0; i < d; ++i) deltas[i] = H.comultiply(H.basis_vector(i));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            auto prod = H.multiply(H.basis_vector(i), H.basis_vector(j));
            if (H.apply_counit(prod) != F.mul(H.counit()[i], H.counit()[j])) eps_alg = false;
            if (delta_alg && H.comultiply(prod) != tensor_square_product(H, deltas[i], deltas[j]))
                delta_alg = false;
        }
    rep.checks.emplace_back("comultiplication is an algebra map", delta_alg);
    rep.checks.emplace_back("counit is an algebra map", eps_alg);
    rep.checks.emplace_back("antipode", antipode);
    return rep;
}

bool is_abelian(const HopfAlgebra& H) {
    const auto d = H.dim();
    for (std::size_t k = 0; k < d; ++k) {
        const auto& c = H.comult();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                if (c[(k * d + i) * d + j] != c[(k * d + j) * d + i]) return false;
    }
    return true;
}

HopfAlgebra base_change(const HopfAlgebra& H, const FiniteField& bigger) {
    if (!H.field().is_prime_field() || bigger.characteristic() != H.field().characteristic())
        throw InputError("base change needs an extension of the prime field");
    return HopfAlgebra(bigger, H.labels(), H.mult(), H.unit(), H.comult(), H.counit(), H.antipode());
}

// ---------------------------------------------------------------------------

std::size_t GroupSchemeDescriptor::order() const {
    return std::visit(
        [](const auto& n) -> std::size_t {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, MuDesc>) return n.n;
            else if constexpr (std::is_same_v<T, AlphaDesc>) return n.p;
            else if constexpr (std::is_same_v<T, ConstantDesc>) return n.group->order();
            else if constexpr (std::is_same_v<T, ProductDesc>) return n.a->order() * n.b->order();
            else return n.normal->order() * n.quotient->order();
        },
        node);
}

std::string GroupSchemeDescriptor::describe() const {
    return std::visit(
        [](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, MuDesc>) return "mu_" + std::to_string(n.n);
            else if constexpr (std::is_same_v<T, AlphaDesc>) return "alpha_" + std::to_string(n.p);
            else if constexpr (std::is_same_v<T, ConstantDesc>) return n.name;
            else if constexpr (std::is_same_v<T, ProductDesc>)
                return "(" + n.a->describe() + " x " + n.b->describe() + ")";
            else return "(" + n.normal->describe() + " x| " + n.quotient->describe() + ")";
        },
        node);
}

GroupSchemeDescriptor mu(std::uint64_t n) {
    if (n == 0) throw InputError("mu_0 is not finite");
    return {MuDesc{n}};
}

GroupSchemeDescriptor alpha(std::uint64_t p) {
    if (!is_prime(p)) throw InputError("alpha_p needs a prime p");
    return {AlphaDesc{p}};
}

GroupSchemeDescriptor constant(const std::string& name) {
    return {ConstantDesc{name, std::make_shared<const AbstractFiniteGroup>(groups::by_name(name))}};
}

GroupSchemeDescriptor constant(const AbstractFiniteGroup& g, std::string name) {
    return {ConstantDesc{std::move(name), std::make_shared<const AbstractFiniteGroup>(g)}};
}

GroupSchemeDescriptor product(GroupSchemeDescriptor a, GroupSchemeDescriptor b) {
    return {ProductDesc{std::make_shared<const GroupSchemeDescriptor>(std::move(a)),
                        std::make_shared<const GroupSchemeDescriptor>(std::move(b))}};
}

GroupSchemeDescriptor semidirect(GroupSchemeDescriptor normal, GroupSchemeDescriptor quotient,
                                 ActionDesc action) {
    return {SemidirectDesc{std::make_shared<const GroupSchemeDescriptor>(std::move(normal)),
                           std::make_shared<const GroupSchemeDescriptor>(std::move(quotient)),
                           std::move(action)}};
}

GroupSchemeDescriptor alpha_semidirect_mu(std::uint64_t p) {
    ActionDesc a;
    a.kind = ActionDesc::Kind::Weight;
    a.weight = 1;
    return semidirect(alpha(p), mu(p), a);
}

GroupSchemeDescriptor mu_semidirect_z2(std::uint64_t n) {
    ActionDesc a;
    a.kind = ActionDesc::Kind::Exponents;
    a.values = {1, -1};
    return semidirect(mu(n), constant("C2"), a);
}

namespace {

struct Builder {
    const FiniteField& F;

    HopfAlgebra mu(std::size_t n) const {
        const auto d = n;
        if (d > kMaxAxiomDim) throw BudgetExceeded("dim", "mu_n too large");
        std::vector<std::string> labels;
        std::vector<std::uint32_t> mult(d * d * d, 0), comult(d * d * d, 0), antipode(d * d, 0);
        Vec unit(d, 0), counit(d, 1);
        for (std::size_t i = 0; i < d; ++i) {
            labels.push_back("x^" + std::to_string(i));
            for (std::size_t j = 0; j < d; ++j) mult[(i * d + j) * d + (i + j) % d] = 1;
            comult[(i * d + i) * d + i] = 1;
            antipode[i * d + (d - i) % d] = 1;
        }
        unit[0] = 1;
        return HopfAlgebra(F, labels, mult, unit, comult, counit, antipode);
    }

    HopfAlgebra alpha(std::size_t p) const {
        if (F.characteristic() != p)
            throw InputError("alpha_" + std::to_string(p) + " requires characteristic " +
                             std::to_string(p) + ", field has characteristic " +
                             std::to_string(F.characteristic()));
        const auto d = p;
        if (d > kMaxAxiomDim) throw BudgetExceeded("dim", "alpha_p too large");
        std::vector<std::string> labels;
        std::vector<std::uint32_t> mult(d * d * d, 0), comult(d * d * d, 0), antipode(d * d, 0);
        Vec unit(d, 0), counit(d, 0);
        // binomial coefficients mod p
        std::vector<std::vector<std::uint32_t>> C(d, std::vector<std::uint32_t>(d, 0));
        for (std::size_t k = 0; k < d; ++k) {
            C[k][0] = C[k][k] = 1;
            for (std::size_t i = 1; i < k; ++i) C[k][i] = F.add(C[k - 1][i - 1], C[k - 1][i]);
        }
        for (std::size_t i = 0; i < d; ++i) {
            labels.push_back("x^" + std::to_string(i));
            for (std::size_t j = 0; i + j < d; ++j) mult[(i * d + j) * d + i + j] = 1;
            for (std::size_t a = 0; a <= i; ++a) comult[(i * d + a) * d + (i - a)] = C[i][a];
            antipode[i * d + i] = i % 2 ? F.neg(1) : 1;
        }
        unit[0] = 1;
        counit[0] = 1;
        return HopfAlgebra(F, labels, mult, unit, comult, counit, antipode);
    }

    HopfAlgebra constant(const AbstractFiniteGroup& g) const {
        const auto d = g.order();
        if (d > kMaxAxiomDim) throw BudgetExceeded("dim", "constant group too large");
        std::vector<std::string> labels;
        std::vector<std::uint32_t> mult(d * d * d, 0), comult(d * d * d, 0), antipode(d * d, 0);
        Vec unit(d, 1), counit(d, 0);
        for (std::uint32_t a = 0; a < d; ++a) {
            labels.push_back("e_" + std::to_string(a));
            mult[(a * d + a) * d + a] = 1;
            for (std::uint32_t b = 0; b < d; ++b) comult[(g.mul(a, b) * d + a) * d + b] = 1;
            antipode[a * d + g.inverse(a)] = 1;
        }
        counit[g.identity()] = 1;
        return HopfAlgebra(F, labels, mult, unit, comult, counit, antipode);
    }

    HopfAlgebra product(const HopfAlgebra& A, const HopfAlgebra& B) const {
        const auto da = A.dim(), db = B.dim(), d = da * db;
        if (d > kMaxAxiomDim) throw BudgetExceeded("dim", "product too large");
        std::vector<std::string> labels;
        std::vector<std::uint32_t> mult(d * d * d, 0), comult(d * d * d, 0), antipode(d * d, 0);
        Vec unit(d, 0), counit(d, 0);
        auto idx = [db](std::size_t i, std::size_t j) { return i * db + j; };
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < db; ++j) {
                labels.push_back(A.labels()[i] + "|" + B.labels()[j]);
                unit[idx(i, j)] = F.mul(A.unit()[i], B.unit()[j]);
                counit[idx(i, j)] = F.mul(A.counit()[i], B.counit()[j]);
                for (const auto& sa : A.antipode_of(i))
                    for (const auto& sb : B.antipode_of(j))
                        antipode[idx(i, j) * d + idx(sa.k, sb.k)] = F.mul(sa.c, sb.c);
                for (const auto& ta : A.coproduct(i))
                    for (const auto& tb : B.coproduct(j)) {
                        auto& slot = comult[(idx(i, j) * d + idx(ta.i, tb.i)) * d + idx(ta.j, tb.j)];
                        slot = F.add(slot, F.mul(ta.c, tb.c));
                    }
                for (std::size_t i2 = 0; i2 < da; ++i2)
                    for (std::size_t j2 = 0; j2 < db; ++j2)
                        for (const auto& ma : A.product(i, i2))
                            for (const auto& mb : B.product(j, j2)) {
                                auto& slot = mult[(idx(i, j) * d + idx(i2, j2)) * d + idx(ma.k, mb.k)];
                                slot = F.add(slot, F.mul(ma.c, mb.c));
                            }
            }
        return HopfAlgebra(F, labels, mult, unit, comult, counit, antipode);
    }

    // rho[a] lists (q, n, c): rho(n_a) = sum c q_q (x) n_n
    struct CoTerm {
        std::size_t q, n;
        std::uint32_t c;
    };
    using Coaction = std::vector<std::vector<CoTerm>>;

    Coaction coaction(const GroupSchemeDescriptor& nd, const HopfAlgebra& N,
                      const GroupSchemeDescriptor& qd, const HopfAlgebra& Q, const ActionDesc& act) const {
        const auto dn = N.dim(), dq = Q.dim();
        Coaction rho(dn);
        using K = ActionDesc::Kind;
        switch (act.kind) {
            case K::Trivial:
                for (std::size_t a = 0; a < dn; ++a)
                    for (std::size_t q = 0; q < dq; ++q)
                        if (Q.unit()[q]) rho[a].push_back({q, a, Q.unit()[q]});
                break;
            case K::Exponents: {
                const auto* m = std::get_if<MuDesc>(&nd.node);
                const auto* c = std::get_if<ConstantDesc>(&qd.node);
                if (!m || !c) throw InputError("exponent action needs mu(n) acted on by a constant group");
                if (act.values.size() != dq) throw InputError("exponent action needs one exponent per element");
                const auto n = static_cast<std::int64_t>(m->n);
                for (std::size_t a = 0; a < dn; ++a)
                    for (std::size_t q = 0; q < dq; ++q) {
                        auto e = ((static_cast<std::int64_t>(a) * act.values[q]) % n + n) % n;
                        rho[a].push_back({q, static_cast<std::size_t>(e), 1});
                    }
                break;
            }
            case K::Scalars: {
                const auto* al = std::get_if<AlphaDesc>(&nd.node);
                const auto* c = std::get_if<ConstantDesc>(&qd.node);
                if (!al || !c) throw InputError("scalar action needs alpha(p) acted on by a constant group");
                if (act.values.size() != dq) throw InputError("scalar action needs one scalar per element");
                for (std::size_t a = 0; a < dn; ++a)
                    for (std::size_t q = 0; q < dq; ++q) {
                        auto s = F.pow(F.from_int(act.values[q]), a);
                        if (s) rho[a].push_back({q, a, s});
                    }
                break;
            }
            case K::Weight: {
                const auto* mq = std::get_if<MuDesc>(&qd.node);
                if (!mq) throw InputError("weight action needs a mu(m) quotient");
                const bool graded = std::holds_alternative<AlphaDesc>(nd.node) ||
                                    std::holds_alternative<MuDesc>(nd.node);
                if (!graded) throw InputError("weight action needs alpha(p) or mu(n) as normal factor");
                const auto m = static_cast<std::int64_t>(mq->n);
                for (std::size_t a = 0; a < dn; ++a) {
                    auto e = ((static_cast<std::int64_t>(a) * act.weight) % m + m) % m;
                    rho[a].push_back({static_cast<std::size_t>(e), a, 1});
                }
                break;
            }
        }
        validate(N, Q, rho);
        return rho;
    }

    // Dense rho(v) in O(Q) (x) O(N), index q*dn + n.
    static Vec apply_rho(const FiniteField& F, const Coaction& rho, std::size_t dq, std::size_t dn,
                         const Vec& v) {
        Vec r(dq * dn, 0);
        for (std::size_t a = 0; a < dn; ++a) {
            if (!v[a]) continue;
            for (const auto& t : rho[a]) r[t.q * dn + t.n] = F.add(r[t.q * dn + t.n], F.mul(v[a], t.c));
        }
        return r;
    }

    void validate(const HopfAlgebra& N, const HopfAlgebra& Q, const Coaction& rho) const {
        const auto dn = N.dim(), dq = Q.dim();
        auto fail = [](const std::string& what) {
            throw InputError("action data does not define Hopf-compatible automorphisms: " + what);
        };
        // product in O(Q) (x) O(N)
        auto prod = [&](const Vec& x, const Vec& y) {
            Vec r(dq * dn, 0);
            for (std::size_t u = 0; u < dq * dn; ++u) {
                if (!x[u]) continue;
                for (std::size_t v = 0; v < dq * dn; ++v) {
                    if (!y[v]) continue;
                    auto c = F.mul(x[u], y[v]);
                    for (const auto& mq : Q.product(u / dn, v / dn))
                        for (const auto& mn : N.product(u % dn, v % dn)) {
                            auto& s = r[mq.k * dn + mn.k];
                            s = F.add(s, F.mul(c, F.mul(mq.c, mn.c)));
                        }
                }
            }
            return r;
        };
        std::vector<Vec> rb(dn);
        for (std::size_t a = 0; a < dn; ++a) rb[a] = apply_rho(F, rho, dq, dn, N.basis_vector(a));
        // algebra map
        {
            Vec one(dq * dn, 0);
            for (std::size_t q = 0; q < dq; ++q)
                for (std::size_t n = 0; n < dn; ++n) one[q * dn + n] = F.mul(Q.unit()[q], N.unit()[n]);
            if (apply_rho(F, rho, dq, dn, N.unit()) != one) fail("rho(1) != 1");
            for (std::size_t a = 0; a < dn; ++a)
                for (std::size_t b = a; b < dn; ++b)
                    if (apply_rho(F, rho, dq, dn, N.multiply(N.basis_vector(a), N.basis_vector(b))) !=
                        prod(rb[a], rb[b]))
                        fail("not multiplicative");
        }
        for (std::size_t a = 0; a < dn; ++a) {
            // (eps_Q (x) id) rho = id
            Vec e(dn, 0);
            for (const auto& t : rho[a]) e[t.n] = F.add(e[t.n], F.mul(t.c, Q.counit()[t.q]));
            if (e != N.basis_vector(a)) fail("identity of the quotient does not act trivially");
            // (id (x) eps_N) rho = eps_N(.) 1_Q
            Vec f(dq, 0);
            for (const auto& t : rho[a]) f[t.q] = F.add(f[t.q], F.mul(t.c, N.counit()[t.n]));
            Vec g(dq, 0);
            for (std::size_t q = 0; q < dq; ++q) g[q] = F.mul(N.counit()[a], Q.unit()[q]);
            if (f != g) fail("does not fix the identity");
            // (Delta_Q (x) id) rho = (id (x) rho) rho, index (q1*dq + q2)*dn + n
            Vec l(dq * dq * dn, 0), r(dq * dq * dn, 0);
            for (const auto& t : rho[a]) {
                for (const auto& s : Q.coproduct(t.q)) {
                    auto& x = l[(s.i * dq + s.j) * dn + t.n];
                    x = F.add(x, F.mul(t.c, s.c));
                }
                for (const auto& s : rho[t.n]) {
                    auto& x = r[(t.q * dq + s.q) * dn + s.n];
                    x = F.add(x, F.mul(t.c, s.c));
                }
            }
            if (l != r) fail("not an action");
            // (id (x) Delta_N) rho = (rho * rho) o Delta_N, index (q*dn + n1)*dn + n2
            Vec dl(dq * dn * dn, 0), dr(dq * dn * dn, 0);
            for (const auto& t : rho[a])
                for (const auto& s : N.coproduct(t.n)) {
                    auto& x = dl[(t.q * dn + s.i) * dn + s.j];
                    x = F.add(x, F.mul(t.c, s.c));
                }
            for (const auto& s : N.coproduct(a))
                for (const auto& t1 : rho[s.i])
                    for (const auto& t2 : rho[s.j])
                        for (const auto& mq : Q.product(t1.q, t2.q)) {
                            auto& x = dr[(mq.k * dn + t1.n) * dn + t2.n];
                            x = F.add(x, F.mul(s.c, F.mul(F.mul(t1.c, t2.c), mq.c)));
                        }
            if (dl != dr) fail("not by group homomorphisms");
        }
    }

    HopfAlgebra semidirect(const GroupSchemeDescriptor& nd, const HopfAlgebra& N,
                           const GroupSchemeDescriptor& qd, const HopfAlgebra& Q,
                           const ActionDesc& act) const {
        const auto rho = coaction(nd, N, qd, Q, act);
        // algebra structure is the tensor product; fix comult and antipode after
        HopfAlgebra T = product(N, Q);
        const auto dn = N.dim(), dq = Q.dim(), d = dn * dq;
        auto idx = [dq](std::size_t a, std::size_t b) { return a * dq + b; };
        auto lift_n = [&](std::size_t a) {  // n_a (x) 1_Q in O(G)
            Vec v(d, 0);
            for (std::size_t b = 0; b < dq; ++b) v[idx(a, b)] = Q.unit()[b];
            return v;
        };
        auto lift_q = [&](std::size_t b) {  // 1_N (x) q_b
            Vec v(d, 0);
            for (std::size_t a = 0; a < dn; ++a) v[idx(a, b)] = N.unit()[a];
            return v;
        };
        std::vector<Vec> delta_n(dn), delta_q(dq), s_n(dn), s_q(dq);
        for (std::size_t a = 0; a < dn; ++a) {
            Vec x(d * d, 0);
            for (const auto& t : N.coproduct(a))
                for (const auto& r : rho[t.j]) {
                    auto c = F.mul(t.c, r.c);
                    auto right = lift_n(r.n);
                    auto u = idx(t.i, r.q);
                    for (std::size_t v = 0; v < d; ++v)
                        if (right[v]) x[u * d + v] = F.add(x[u * d + v], F.mul(c, right[v]));
                }
            delta_n[a] = std::move(x);
            Vec s(d, 0);
            for (const auto& r : rho[a])
                for (const auto& sn : N.antipode_of(r.n))
                    for (const auto& sq : Q.antipode_of(r.q)) {
                        auto& slot = s[idx(sn.k, sq.k)];
                        slot = F.add(slot, F.mul(r.c, F.mul(sn.c, sq.c)));
                    }
            s_n[a] = std::move(s);
        }
        for (std::size_t b = 0; b < dq; ++b) {
            Vec x(d * d, 0);
            for (const auto& t : Q.coproduct(b)) {
                auto l = lift_q(t.i), r = lift_q(t.j);
                for (std::size_t u = 0; u < d; ++u) {
                    if (!l[u]) continue;
                    for (std::size_t v = 0; v < d; ++v)
                        if (r[v]) x[u * d + v] = F.add(x[u * d + v], F.mul(t.c, F.mul(l[u], r[v])));
                }
            }
            delta_q[b] = std::move(x);
            Vec s(d, 0);
            for (const auto& sq : Q.antipode_of(b)) {
                auto l = lift_q(sq.k);
                for (std::size_t u = 0; u < d; ++u) s[u] = F.add(s[u], F.mul(sq.c, l[u]));
            }
            s_q[b] = std::move(s);
        }
        std::vector<std::uint32_t> comult(d * d * d, 0), antipode(d * d, 0);
        for (std::size_t a = 0; a < dn; ++a)
            for (std::size_t b = 0; b < dq; ++b) {
                auto k = idx(a, b);
                auto dk = tensor_square_product(T, delta_n[a], delta_q[b]);
                for (std::size_t u = 0; u < d * d; ++u) comult[k * d * d + u] = dk[u];
                auto sk = T.multiply(s_n[a], s_q[b]);
                for (std::size_t u = 0; u < d; ++u) antipode[k * d + u] = sk[u];
            }
        std::vector<std::string> labels;
        for (std::size_t a = 0; a < dn; ++a)
            for (std::size_t b = 0; b < dq; ++b) labels.push_back(N.labels()[a] + "*" + Q.labels()[b]);
        return HopfAlgebra(F, labels, T.mult(), T.unit(), comult, T.counit(), antipode);
    }

    HopfAlgebra operator()(const GroupSchemeDescriptor& d) const {
        if (d.order() > kMaxAxiomDim)
            throw BudgetExceeded("dim", "group scheme " + d.describe() + " has order " +
                                            std::to_string(d.order()) + " > " +
                                            std::to_string(kMaxAxiomDim));
        return std::visit(
            [&](const auto& n) -> HopfAlgebra {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, MuDesc>) return mu(n.n);
                else if constexpr (std::is_same_v<T, AlphaDesc>) return alpha(n.p);
                else if constexpr (std::is_same_v<T, ConstantDesc>) return constant(*n.group);
                else if constexpr (std::is_same_v<T, ProductDesc>) return product((*this)(*n.a), (*this)(*n.b));
                else
                    return semidirect(*n.normal, (*this)(*n.normal), *n.quotient, (*this)(*n.quotient),
                                      n.action);
            },
            d.node);
    }
};

}  // namespace

HopfAlgebra build(const GroupSchemeDescriptor& d, const FiniteField& field) {
    return Builder{field}(d);
}

HopfAlgebra constant_hopf(const AbstractFiniteGroup& g, const FiniteField& field) {
    return Builder{field}.constant(g);
}

}  // namespace tamer
