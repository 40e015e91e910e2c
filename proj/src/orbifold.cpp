#include "tamer/orbifold.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <numeric>
#include <thread>

#include "tamer/error.hpp"
#include "tamer/field.hpp"
#include "tamer/json_io.hpp"

namespace tamer {

namespace {

long to_long(const mpz_class& v) {
    if (!v.fits_slong_p()) throw BudgetExceeded("torsion", "coordinate does not fit in 64 bits");
    return v.get_si();
}

long mod(long v, long r) {
    long m = v % r;
    return m < 0 ? m + r : m;
}

std::string tuple_text(const std::vector<long>& l) {
    if (l.size() == 1) return std::to_string(l[0]);
    std::string s = "(";
    for (std::size_t k = 0; k < l.size(); ++k) s += (k ? "," : "") + std::to_string(l[k]);
    return s + ")";
}

// Tuples of prod [0, r_k) in mixed radix, first index fastest.
std::vector<long> tuple_of(std::uint64_t index, const std::vector<std::uint32_t>& r) {
    std::vector<long> l(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) {
        l[k] = static_cast<long>(index % r[k]);
        index /= r[k];
    }
    return l;
}

std::uint64_t tuple_index(const std::vector<long>& l, const std::vector<std::uint32_t>& r) {
    std::uint64_t idx = 0;
    for (std::size_t k = r.size(); k-- > 0;) idx = idx * r[k] + static_cast<std::uint64_t>(l[k]);
    return idx;
}

std::vector<std::uint32_t> point_indices(const RootStackModel& m, std::size_t x) {
    std::vector<std::uint32_t> r;
    for (auto i : m.points[x].branches) r.push_back(m.r[i]);
    return r;
}

std::uint64_t tuple_count(const std::vector<std::uint32_t>& r) {
    std::uint64_t n = 1;
    for (auto v : r) n *= v;
    return n;
}

long lcm_of(const std::vector<std::uint32_t>& r) {
    long l = 1;
    for (auto v : r) l = std::lcm(l, static_cast<long>(v));
    return l;
}

std::uint64_t element_order(const PicRootStack& pic, std::uint64_t index) {
    auto c = pic.torsion_digits(index);
    std::uint64_t ord = 1;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const auto d = pic.torsion_orders()[k];
        ord = std::lcm(ord, d / std::gcd(d, c[k]));
    }
    return ord;
}

}  // namespace

// ---------------------------------------------------------------------------

void RootStackModel::validate() const {
    if (points.empty()) throw InputError("model needs at least one marked point");
    if (classes.size() != r.size()) throw InputError("model needs one divisor class per index r_i");
    if (curve.p1) {
        if (curve.free_rank != 1 || !curve.torsion.empty())
            throw InputError("P1 has Picard group Z");
    } else {
        if (curve.degrees.size() != curve.free_rank)
            throw InputError("abstract curve needs one degree per free generator");
        for (auto m : curve.torsion)
            if (m == 0) throw InputError("torsion orders must be positive");
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] == 0) throw InputError("index r_" + std::to_string(i + 1) + " must be >= 1");
        if (classes[i].size() != curve.generators())
            throw InputError("class of D_" + std::to_string(i + 1) + " has the wrong number of coordinates");
        if (curve.p1 && classes[i][0] != 1)
            throw InputError("on P1 each D_i is a rational point, of class 1");
        if (curve_degree(classes[i]) <= 0)
            throw InputError("D_" + std::to_string(i + 1) + " must have positive degree");
    }
    std::vector<int> seen(r.size(), 0);
    for (std::size_t x = 0; x < points.size(); ++x) {
        if (points[x].branches.empty()) throw InputError("point " + std::to_string(x) + " has no branches");
        if (curve.p1 && points[x].branches.size() != 1)
            throw InputError("points of P1 carry exactly one branch");
        for (auto i : points[x].branches) {
            if (i >= r.size()) throw InputError("branch index " + std::to_string(i) + " out of range");
            ++seen[i];
        }
    }
    for (std::size_t i = 0; i < r.size(); ++i)
        if (seen[i] != 1) throw InputError("D_" + std::to_string(i + 1) + " must lie on exactly one point");
    if (p && !is_prime(*p)) throw InputError("characteristic must be prime");
}

long RootStackModel::curve_degree(const std::vector<long>& h) const {
    long d = 0;
    for (std::size_t j = 0; j < curve.free_rank && j < h.size(); ++j)
        d += h[j] * (curve.p1 ? 1 : curve.degrees[j]);
    return d;
}

std::uint64_t RootStackModel::characteristic() const {
    if (p) return *p;
    for (std::uint64_t q = 2;; ++q) {
        if (!is_prime(q)) continue;
        bool ok = true;
        for (auto v : r) ok = ok && v % q != 0;
        if (ok) return q;
    }
}

ParabolicSite RootStackModel::site() const {
    ParabolicSite s;
    s.r = r;
    for (std::size_t i = 0; i < r.size(); ++i) s.divisor_degree.push_back(divisor_degree(i));
    for (const auto& pt : points) s.points.push_back(pt.branches);
    return s;
}

PicRootStack::PicRootStack(const RootStackModel& m) : g_(m.curve.generators()), n_(m.divisors()) {
    m.validate();
    const auto ntors = m.curve.torsion.size();
    relations_ = IntMatrix(ntors + n_, g_ + n_);
    for (std::size_t j = 0; j < ntors; ++j)
        relations_.at(j, m.curve.free_rank + j) = static_cast<long>(m.curve.torsion[j]);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t k = 0; k < g_; ++k) relations_.at(ntors + i, k) = -m.classes[i][k];
        relations_.at(ntors + i, g_ + i) = static_cast<long>(m.r[i]);
    }
    smith_ = smith_normal_form(relations_);
    // x -> xV carries the relation lattice onto the row space of D; generator k is row k of V^-1
    const auto cols = g_ + n_;
    const auto rank = smith_.rank();
    free_rank_ = cols - rank;
    for (std::size_t k = 0; k < rank; ++k) {
        const auto& d = smith_.D.at(k, k);
        if (d == 1) continue;
        if (!d.fits_ulong_p()) throw BudgetExceeded("torsion", "invariant factor does not fit in 64 bits");
        torsion_orders_.push_back(d.get_ui());
        std::vector<long> gen(cols);
        for (std::size_t c = 0; c < cols; ++c) gen[c] = to_long(smith_.V_inv.at(k, c));
        torsion_generators_.push_back(std::move(gen));
    }
}

std::uint64_t PicRootStack::torsion_order() const noexcept {
    std::uint64_t n = 1;
    for (auto d : torsion_orders_) {
        if (n > std::numeric_limits<std::uint64_t>::max() / d) return std::numeric_limits<std::uint64_t>::max();
        n *= d;
    }
    return n;
}

std::vector<std::uint64_t> PicRootStack::torsion_digits(std::uint64_t index) const {
    std::vector<std::uint64_t> c(torsion_orders_.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        c[k] = index % torsion_orders_[k];
        index /= torsion_orders_[k];
    }
    return c;
}

std::vector<long> PicRootStack::torsion_element(std::uint64_t index) const {
    auto c = torsion_digits(index);
    std::vector<long> x(g_ + n_, 0);
    for (std::size_t k = 0; k < c.size(); ++k)
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += static_cast<long>(c[k]) * torsion_generators_[k][j];
    return x;
}

bool PicRootStack::is_zero(const std::vector<long>& coords) const {
    const auto cols = g_ + n_;
    if (coords.size() != cols) throw InputError("class has the wrong number of coordinates");
    const auto rank = smith_.rank();
    for (std::size_t k = 0; k < cols; ++k) {
        mpz_class y = 0;
        for (std::size_t j = 0; j < cols; ++j) y += coords[j] * smith_.V.at(j, k);
        if (k < rank) {
            if (y % smith_.D.at(k, k) != 0) return false;
        } else if (y != 0) {
            return false;
        }
    }
    return true;
}

std::string PicRootStack::structure() const {
    std::vector<std::string> parts;
    if (free_rank_ == 1) parts.push_back("Z");
    if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
    for (auto d : torsion_orders_) parts.push_back("Z/" + std::to_string(d));
    if (parts.empty()) return "0";
    std::string s = parts[0];
    for (std::size_t k = 1; k < parts.size(); ++k) s += " + " + parts[k];
    return s;
}

std::vector<long> residual_character(const RootStackModel& m, const std::vector<long>& coords, std::size_t x) {
    const auto g = m.curve.generators();
    if (coords.size() != g + m.divisors()) throw InputError("class has the wrong number of coordinates");
    std::vector<long> out;
    for (auto i : m.points.at(x).branches) out.push_back(mod(coords[g + i], m.r[i]));
    return out;
}

long scaled_degree(const RootStackModel& m, const std::vector<long>& coords) {
    const auto g = m.curve.generators();
    const long L = lcm_of(m.r);
    long d = L * m.curve_degree(std::vector<long>(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(g)));
    for (std::size_t i = 0; i < m.divisors(); ++i) d += coords[g + i] * m.divisor_degree(i) * (L / m.r[i]);
    return d;
}

void check_relations_well_defined(const RootStackModel& m, const PicRootStack& pic) {
    const auto& R = pic.relations();
    for (std::size_t row = 0; row < R.rows(); ++row) {
        std::vector<long> rel(R.cols());
        for (std::size_t c = 0; c < R.cols(); ++c) rel[c] = to_long(R.at(row, c));
        for (std::size_t x = 0; x < m.points.size(); ++x)
            for (auto v : residual_character(m, rel, x))
                if (v != 0) throw AssertionFailure("relation " + std::to_string(row) + " has a nontrivial residual character");
        if (scaled_degree(m, rel) != 0) throw AssertionFailure("relation " + std::to_string(row) + " has nonzero degree");
        if (!pic.is_zero(rel)) throw AssertionFailure("relation " + std::to_string(row) + " is not in the lattice");
    }
}

Summand summand_of(const RootStackModel& m, const std::vector<long>& coords) {
    const auto g = m.curve.generators();
    Summand s;
    s.e = m.curve_degree(std::vector<long>(coords.begin(), coords.begin() + static_cast<std::ptrdiff_t>(g)));
    s.d.assign(coords.begin() + static_cast<std::ptrdiff_t>(g), coords.end());
    return s;
}

// ---------------------------------------------------------------------------

WeightsVerdict weights_side(const RootStackModel& m, std::uint64_t budget) {
    PicRootStack pic(m);
    check_relations_well_defined(m, pic);
    WeightsVerdict v;
    v.torsion_order = pic.torsion_order();
    if (v.torsion_order > budget)
        throw BudgetExceeded("torsion", "torsion subgroup of order " + std::to_string(v.torsion_order) +
                                            " exceeds the enumeration budget " + std::to_string(budget));
    const auto npts = m.points.size();
    std::vector<std::vector<std::uint32_t>> rx(npts);
    std::vector<std::vector<std::int64_t>> first(npts);  // first torsion index hitting each tuple
    for (std::size_t x = 0; x < npts; ++x) {
        rx[x] = point_indices(m, x);
        first[x].assign(tuple_count(rx[x]), -1);
    }
    for (std::uint64_t t = 0; t < v.torsion_order; ++t) {
        auto c = pic.torsion_element(t);
        for (std::size_t x = 0; x < npts; ++x) {
            auto& slot = first[x][tuple_index(residual_character(m, c, x), rx[x])];
            if (slot < 0) slot = static_cast<std::int64_t>(t);
        }
    }
    v.exists = true;
    const auto site = m.site();
    for (std::size_t x = 0; x < npts && v.exists; ++x) {
        for (std::uint64_t k = 0; k < first[x].size(); ++k) {
            auto l = tuple_of(k, rx[x]);
            if (first[x][k] < 0) {
                v.exists = false;
                v.failing_point = x;
                v.missing = l;
                v.certificate = "no torsion class with residual character " + tuple_text(l);
                v.witnesses.clear();
                break;
            }
            const auto idx = static_cast<std::uint64_t>(first[x][k]);
            WeightWitness w{x, l, pic.torsion_element(idx), element_order(pic, idx)};
            // the witness as a parabolic line object: weight l at x, degree 0, finite order
            auto b = parabolic_of(site, GradedModule{{summand_of(m, w.coords)}});
            auto ws = weights_at(b, x);
            if (std::find(ws.begin(), ws.end(), l) == ws.end())
                throw AssertionFailure("witness does not admit weight " + tuple_text(l));
            if (scaled_degree(m, w.coords) != 0) throw AssertionFailure("torsion witness of nonzero degree");
            auto multiple = w.coords;
            for (auto& c : multiple) c *= static_cast<long>(w.order);
            if (!pic.is_zero(multiple)) throw AssertionFailure("witness order does not kill the class");
            v.witnesses.push_back(std::move(w));
        }
    }
    return v;
}

TorsorVerdict torsor_side(const RootStackModel& m, std::uint64_t budget) {
    PicRootStack pic(m);
    const auto p = m.characteristic();
    for (std::size_t i = 0; i < m.divisors(); ++i)
        if (m.r[i] % p == 0)
            throw InputError("characteristic " + std::to_string(p) + " divides r_" + std::to_string(i + 1) +
                             "; tame covers need p coprime to every index");
    TorsorVerdict v;
    const auto& gens = pic.torsion_generators();
    std::vector<LocalChart> charts;
    for (std::size_t x = 0; x < m.points.size(); ++x) {
        LocalChart ch{x, m.points[x].branches, point_indices(m, x), {}};
        ch.phi.assign(ch.branches.size(), std::vector<long>(gens.size(), 0));
        for (std::size_t j = 0; j < gens.size(); ++j) {
            auto chi = residual_character(m, gens[j], x);
            for (std::size_t k = 0; k < chi.size(); ++k) ch.phi[k][j] = chi[k];
        }
        if (!is_surjective(ch.phi, ch.r)) {
            // cokernel of T -> prod Z/r_x
            IntMatrix M(gens.size() + ch.r.size(), ch.r.size());
            for (std::size_t j = 0; j < gens.size(); ++j)
                for (std::size_t k = 0; k < ch.r.size(); ++k) M.at(j, k) = ch.phi[k][j];
            for (std::size_t k = 0; k < ch.r.size(); ++k) M.at(gens.size() + k, k) = static_cast<long>(ch.r[k]);
            auto coker = cokernel_structure(M);
            std::string text;
            for (const auto& d : coker.torsion) text += (text.empty() ? "Z/" : " + Z/") + d.get_str();
            v.failing_point = x;
            v.certificate = "residual restriction of the torsion subgroup at point " + std::to_string(x) +
                            " is not surjective (cokernel " + text + ")";
            return v;
        }
        charts.push_back(std::move(ch));
    }
    if (pic.torsion_order() > budget)
        throw BudgetExceeded("torsion", "cover of rank " + std::to_string(pic.torsion_order()) +
                                            " exceeds the budget " + std::to_string(budget));
    FiniteAbelianGroup A(pic.torsion_orders());
    CharacterMatrix phi(m.divisors(), std::vector<long>(gens.size(), 0));
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < m.divisors(); ++i) phi[i][j] = gens[j][pic.curve_generators() + i];
    std::vector<std::string> names;
    for (std::size_t i = 0; i < m.divisors(); ++i) names.push_back("s" + std::to_string(i + 1));
    auto base = make_ring(p, names);
    std::vector<MultiPoly> s;
    for (std::size_t i = 0; i < m.divisors(); ++i) s.push_back(MultiPoly::variable(base, i));
    CoverAlgebra cover(base, s, m.r, A, phi);
    v.exists = true;
    v.description.emplace(TorsorDescription{p, A, gens, phi, std::move(cover), std::move(charts)});
    return v;
}

// ---------------------------------------------------------------------------

namespace {

// Pairs (a, b) examined by the chart checks: all when |A| <= 64, otherwise
// every (a, generator).
template <class F>
bool for_pairs(const FiniteAbelianGroup& A, F&& f) {
    const auto n = A.size();
    if (n <= 64) {
        for (std::uint64_t a = 0; a < n; ++a)
            for (std::uint64_t b = 0; b < n; ++b)
                if (!f(a, b)) return false;
        return true;
    }
    for (std::uint64_t a = 0; a < n; ++a)
        for (std::size_t j = 0; j < A.rank(); ++j)
            if (!f(a, A.generator(j))) return false;
    return true;
}

ChartCheck check_chart(const RootStackModel& m, const TorsorDescription& desc, const LocalChart& ch) {
    ChartCheck out;
    out.point = ch.point;
    const auto& cover = desc.cover;
    const auto& A = cover.group();
    const auto& br = ch.branches;
    std::vector<bool> on(m.divisors(), false);
    for (auto i : br) on[i] = true;

    // w'_a = w_a / prod_{j off x} sigma_j^{d_j(a)} with sigma_j^{r_j} = s_j a unit at x:
    // the sigma_j exponent of w'_a w'_b / w'_{a+b} is r_j carry_j + d_j(a+b) - d_j(a) - d_j(b)
    out.unit_rescaling = for_pairs(A, [&](std::uint64_t a, std::uint64_t b) {
        const auto c = A.add(a, b);
        const auto carry = cover.carry(a, b);
        for (std::size_t j = 0; j < m.divisors(); ++j) {
            if (on[j]) continue;
            long e = static_cast<long>(m.r[j]) * carry[j] + cover.degree(c)[j] - cover.degree(a)[j] - cover.degree(b)[j];
            if (e != 0) return false;
        }
        return true;
    });

    std::vector<std::string> names;
    for (auto i : br) names.push_back("s" + std::to_string(i + 1));
    auto base = make_ring(desc.p, names);
    std::vector<MultiPoly> s;
    for (std::size_t k = 0; k < br.size(); ++k) s.push_back(MultiPoly::variable(base, k));
    CharacterMatrix restricted;
    for (auto i : br) restricted.push_back(desc.phi[i]);
    CoverAlgebra local(base, s, ch.r, A, restricted);

    out.carries_restrict = for_pairs(A, [&](std::uint64_t a, std::uint64_t b) {
        auto global = cover.carry(a, b);
        auto mine = local.carry(a, b);
        for (std::size_t k = 0; k < br.size(); ++k)
            if (mine[k] != global[br[k]]) return false;
        return true;
    });

    auto Z = kummer_algebra(base, s, ch.r);
    auto induced = induced_cover(Z, A, ch.phi);
    out.graded_isomorphic = graded_isomorphic(local, induced);
    out.refines_grading = refines_grading(induced, Z) && refines_grading(local, Z);
    out.free_away = local.free_away_from_branch_locus();
    out.pass = out.unit_rescaling && out.carries_restrict && out.graded_isomorphic && out.refines_grading &&
               out.free_away && local.rank() == A.size();
    return out;
}

}  // namespace

TheoremReport check_theorem(const RootStackModel& m, std::uint64_t budget) {
    TheoremReport rep;
    auto w = weights_side(m, budget);
    auto t = torsor_side(m, budget);
    rep.weights_verdict = w.exists;
    rep.torsor_verdict = t.exists;
    rep.torsion_order = w.torsion_order;
    rep.agree = w.exists == t.exists;
    if (!rep.agree) rep.detail = "weights side and torsor side disagree";
    // predicate agreement point by point when both fail
    if (rep.agree && !w.exists && w.failing_point != t.failing_point) {
        rep.agree = false;
        rep.detail = "sides fail at different points";
    }
    if (t.exists) {
        const auto& desc = *t.description;
        try {
            rep.cocycle_triples = desc.cover.check_cocycle();
        } catch (const AssertionFailure& e) {
            rep.detail = e.what();
            rep.pass = false;
            return rep;
        }
        for (const auto& ch : desc.charts) {
            rep.charts.push_back(check_chart(m, desc, ch));
            if (!rep.charts.back().pass && rep.detail.empty())
                rep.detail = "chart check fails at point " + std::to_string(ch.point);
        }
        // O_Y = sum_a L_a as a split object; it must admit every weight tuple
        PicRootStack pic(m);
        GradedModule module;
        const auto& A = desc.A;
        for (std::uint64_t a = 0; a < A.size(); ++a) {
            auto coords = pic.torsion_element(a);
            if (scaled_degree(m, coords) != 0) rep.structure_weights = false;
            module.summands.push_back(summand_of(m, coords));
        }
        auto b = parabolic_of(m.site(), module);
        for (std::size_t x = 0; x < m.points.size(); ++x) {
            auto r = point_indices(m, x);
            if (weights_at(b, x).size() != tuple_count(r)) rep.structure_weights = false;
        }
        if (!rep.structure_weights && rep.detail.empty()) rep.detail = "structure module misses a weight";
    }
    rep.witnesses_ok = w.exists ? !w.witnesses.empty() || m.points.empty() : w.witnesses.empty();
    bool charts_ok = true;
    for (const auto& c : rep.charts) charts_ok = charts_ok && c.pass;
    rep.pass = rep.agree && charts_ok && rep.structure_weights && rep.witnesses_ok;
    return rep;
}

// ---------------------------------------------------------------------------

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw InputError("bounded_draw needs a positive bound");
    const auto limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    for (;;) {
        auto x = rng();
        if (x < limit) return x % n;
    }
}

RootStackModel random_model(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    RootStackModel m;
    const bool p1 = bounded_draw(rng, 2) == 0;
    const auto npts = 1 + bounded_draw(rng, 5);
    if (!p1) {
        m.curve.p1 = false;
        m.curve.free_rank = 1;
        m.curve.degrees = {static_cast<long>(1 + bounded_draw(rng, 2))};
        m.curve.torsion = {1 + bounded_draw(rng, 12)};
    }
    std::size_t idx = 0;
    for (std::size_t x = 0; x < npts; ++x) {
        MarkedPoint pt;
        const std::size_t nbr = (!p1 && bounded_draw(rng, 4) == 0) ? 2 : 1;
        for (std::size_t k = 0; k < nbr; ++k) {
            pt.branches.push_back(idx++);
            m.r.push_back(static_cast<std::uint32_t>(1 + bounded_draw(rng, 8)));
            if (p1) {
                m.classes.push_back({1});
            } else {
                m.classes.push_back({static_cast<long>(1 + bounded_draw(rng, 3)),
                                     static_cast<long>(bounded_draw(rng, m.curve.torsion[0]))});
            }
        }
        m.points.push_back(std::move(pt));
    }
    return m;
}

std::uint64_t campaign_model_seed(std::uint64_t seed, std::uint64_t k) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CampaignResult run_campaign(std::uint64_t seed, std::uint64_t count, unsigned threads, std::uint64_t budget) {
    struct Outcome {
        std::string key;
        std::uint64_t index = 0;
        std::uint64_t model_seed = 0;
        bool pass = false;
        bool skipped = false;
        bool cover = false;
        std::uint64_t charts = 0;
        std::string detail;
    };
    std::vector<Outcome> out(count);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const auto k = next.fetch_add(1);
            if (k >= count) return;
            auto& o = out[k];
            o.index = k;
            o.model_seed = campaign_model_seed(seed, k);
            auto model = random_model(o.model_seed);
            o.key = model_to_json(model);
            try {
                auto rep = check_theorem(model, budget);
                o.pass = rep.pass;
                o.cover = rep.torsor_verdict;
                o.charts = rep.charts.size();
                o.detail = rep.detail;
            } catch (const BudgetExceeded& e) {
                o.skipped = true;
                o.detail = e.what();
            } catch (const std::exception& e) {
                o.detail = e.what();
            }
        }
    };
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::sort(out.begin(), out.end(), [](const Outcome& a, const Outcome& b) {
        return std::tie(a.key, a.index) < std::tie(b.key, b.index);
    });
    CampaignResult res;
    res.seed = seed;
    res.count = count;
    for (const auto& o : out) {
        if (o.skipped) {
            ++res.budget_skipped;
            continue;
        }
        if (o.pass) {
            ++res.passed;
            res.with_cover += o.cover ? 1 : 0;
            res.charts_checked += o.charts;
        } else {
            ++res.discrepancies;
            res.failures.push_back({o.index, o.model_seed, o.key, o.detail});
        }
    }
    return res;
}

}  // namespace tamer
