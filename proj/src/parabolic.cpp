#include "tamer/parabolic.hpp"

#include <algorithm>
#include <set>

#include "tamer/error.hpp"

namespace tamer {

long floor_div(long a, long b) noexcept {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

void ParabolicSite::validate() const {
    if (divisor_degree.size() != r.size()) throw InputError("site needs one degree per divisor");
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i] == 0) throw InputError("index r_" + std::to_string(i + 1) + " must be >= 1");
        if (divisor_degree[i] <= 0) throw InputError("divisor degrees must be positive");
    }
    std::vector<int> seen(r.size(), 0);
    for (const auto& pt : points) {
        if (pt.empty()) throw InputError("a marked point needs at least one branch");
        for (auto i : pt) {
            if (i >= r.size()) throw InputError("branch index out of range");
            ++seen[i];
        }
    }
    for (std::size_t i = 0; i < r.size(); ++i)
        if (seen[i] != 1) throw InputError("divisor " + std::to_string(i + 1) + " must lie on exactly one point");
}

ParabolicBundle::ParabolicBundle(ParabolicSite site, std::vector<ParabolicPiece> pieces)
    : site_(std::move(site)), pieces_(std::move(pieces)) {
    site_.validate();
    for (const auto& p : pieces_) {
        if (p.w.size() != site_.divisors()) throw InputError("piece has the wrong number of weights");
        for (std::size_t i = 0; i < p.w.size(); ++i)
            if (p.w[i] < 0 || p.w[i] >= static_cast<long>(site_.r[i])) throw InputError("weight outside [0, r)");
    }
    std::sort(pieces_.begin(), pieces_.end());
}

std::vector<long> ParabolicBundle::twist(std::size_t k, const std::vector<long>& l) const {
    const auto& p = pieces_.at(k);
    if (l.size() != site_.divisors()) throw InputError("level has the wrong length");
    std::vector<long> t(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) t[i] = floor_div(p.w[i] - l[i], site_.r[i]);
    return t;
}

long ParabolicBundle::piece_degree(std::size_t k, const std::vector<long>& l) const {
    auto t = twist(k, l);
    long deg = pieces_[k].e0;
    for (std::size_t i = 0; i < t.size(); ++i) deg += t[i] * site_.divisor_degree[i];
    return deg;
}

long ParabolicBundle::degree(const std::vector<long>& l) const {
    long total = 0;
    for (std::size_t k = 0; k < pieces_.size(); ++k) total += piece_degree(k, l);
    return total;
}

bool ParabolicBundle::includes(const std::vector<long>& l, const std::vector<long>& lprime) const {
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        auto a = twist(k, l), b = twist(k, lprime);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (b[i] > a[i]) return false;
    }
    return true;
}

GradedModule ParabolicBundle::to_module() const {
    GradedModule m;
    for (const auto& p : pieces_) m.summands.push_back({p.e0, p.w});
    return m;
}

ParabolicBundle parabolic_of(const ParabolicSite& site, const GradedModule& m) {
    site.validate();
    std::vector<ParabolicPiece> pieces;
    for (const auto& s : m.summands) {
        if (s.d.size() != site.divisors()) throw InputError("summand shift has the wrong length");
        ParabolicPiece p{s.e, std::vector<long>(s.d.size())};
        for (std::size_t i = 0; i < s.d.size(); ++i) {
            const long r = site.r[i];
            // E_0 = O(e + floor(d/r) D); weight d mod r
            p.e0 += floor_div(s.d[i], r) * site.divisor_degree[i];
            p.w[i] = s.d[i] - floor_div(s.d[i], r) * r;
        }
        pieces.push_back(std::move(p));
    }
    return ParabolicBundle(site, std::move(pieces));
}

GradedModule tensor(const GradedModule& a, const GradedModule& b) {
    GradedModule out;
    for (const auto& x : a.summands)
        for (const auto& y : b.summands) {
            if (x.d.size() != y.d.size()) throw InputError("tensor of modules over different sites");
            Summand s{x.e + y.e, x.d};
            for (std::size_t i = 0; i < s.d.size(); ++i) s.d[i] += y.d[i];
            out.summands.push_back(std::move(s));
        }
    return out;
}

std::vector<std::vector<long>> weights_at(const ParabolicBundle& b, std::size_t x) {
    const auto& branches = b.site().points.at(x);
    std::set<std::vector<long>> out;
    for (const auto& p : b.pieces()) {
        std::vector<long> w;
        for (auto i : branches) w.push_back(p.w[i]);
        out.insert(w);
    }
    return {out.begin(), out.end()};
}

JumpReport jump_length_check(const ParabolicBundle& b, const std::vector<long>& l, std::size_t x) {
    const auto& site = b.site();
    const auto& branches = site.points.at(x);
    JumpReport rep;
    rep.point = x;
    rep.l = l;
    for (std::size_t k = 0; k < b.rank(); ++k) {
        // locally at x the piece is O(sum_i c_i D_i); E_{l+e_i} drops by D_i exactly
        // when c_i decreases, and the sum of the E_{l+e_i} is proper iff every branch drops
        auto base = b.twist(k, l);
        bool all_drop = true;
        for (auto i : branches) {
            auto step = l;
            step[i] += 1;
            if (b.twist(k, step)[i] == base[i]) all_drop = false;
        }
        rep.contributions.push_back(all_drop ? 1 : 0);
        rep.quotient_length += all_drop ? 1 : 0;
        bool weight = true;
        for (auto i : branches) {
            long m = l[i] % static_cast<long>(site.r[i]);
            if (m < 0) m += site.r[i];
            weight = weight && b.pieces()[k].w[i] == m;
        }
        rep.weight_count += weight ? 1 : 0;
    }
    rep.pass = rep.quotient_length == rep.weight_count;
    if (!rep.pass)
        throw AssertionFailure("jump length " + std::to_string(rep.quotient_length) + " differs from weight count " +
                               std::to_string(rep.weight_count) + " at point " + std::to_string(x));
    return rep;
}

}  // namespace tamer
