#include "tamer/points.hpp"

#include <map>

#include "tamer/error.hpp"

namespace tamer {

namespace {

struct Constraint {
    // f(b_i) f(b_j) = sum_k c_k f(b_k); for the unit constraint i = j = npos
    std::size_t i, j;
    std::vector<HopfAlgebra::Term1> rhs;
};

class Search {
public:
    Search(const HopfAlgebra& H, const FiniteAlgebra& R, std::uint64_t budget)
        : H_(H), R_(R), budget_(budget), d_(H.dim()), image_(d_, 0), by_level_(d_) {
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t j = i; j < d_; ++j) {
                Constraint c{i, j, H.product(i, j)};
                auto level = j;
                for (const auto& t : c.rhs) level = std::max<std::size_t>(level, t.k);
                by_level_[level].push_back(std::move(c));
            }
        Constraint u{SIZE_MAX, SIZE_MAX, {}};
        std::size_t level = 0;
        for (std::size_t k = 0; k < d_; ++k)
            if (H.unit()[k]) {
                u.rhs.push_back({static_cast<std::uint32_t>(k), H.unit()[k]});
                level = k;
            }
        by_level_[level].push_back(std::move(u));
        // a constraint whose left side is already fixed and whose right side
        // involves b_level determines f(b_level)
        defining_.assign(d_, nullptr);
        for (std::size_t l = 0; l < d_; ++l)
            for (const auto& c : by_level_[l]) {
                if (c.i != SIZE_MAX && c.j >= l) continue;
                for (const auto& t : c.rhs)
                    if (t.k == l && t.c) {
                        defining_[l] = &c;
                        break;
                    }
                if (defining_[l]) break;
            }
    }

    std::vector<std::vector<std::uint32_t>> run() {
        descend(0);
        return std::move(found_);
    }

private:
    std::uint32_t combine(const std::vector<HopfAlgebra::Term1>& rhs) const {
        std::uint32_t acc = R_.zero();
        for (const auto& t : rhs) acc = R_.add(acc, R_.scale(t.c, image_[t.k]));
        return acc;
    }

    bool satisfied(std::size_t level) const {
        for (const auto& c : by_level_[level]) {
            auto lhs = c.i == SIZE_MAX ? R_.one() : R_.mul(image_[c.i], image_[c.j]);
            if (lhs != combine(c.rhs)) return false;
        }
        return true;
    }

    void descend(std::size_t level) {
        if (level == d_) {
            found_.push_back(image_);
            return;
        }
        if (const Constraint* c = defining_[level]) {
            if (++nodes_ > budget_)
                throw BudgetExceeded("points", "points enumeration exceeded " + std::to_string(budget_) +
                                                   " search nodes");
            const auto& F = H_.field();
            std::uint32_t lead = 0;
            std::uint32_t rest = R_.zero();
            for (const auto& t : c->rhs) {
                if (t.k == level) lead = t.c;
                else rest = R_.add(rest, R_.scale(t.c, image_[t.k]));
            }
            auto lhs = c->i == SIZE_MAX ? R_.one() : R_.mul(image_[c->i], image_[c->j]);
            auto diff = R_.add(lhs, R_.scale(F.neg(1), rest));
            image_[level] = R_.scale(F.inv(lead), diff);
            if (satisfied(level)) descend(level + 1);
            return;
        }
        for (std::uint32_t v = 0; v < R_.size(); ++v) {
            if (++nodes_ > budget_)
                throw BudgetExceeded("points", "points enumeration exceeded " + std::to_string(budget_) +
                                                   " search nodes");
            image_[level] = v;
            if (satisfied(level)) descend(level + 1);
        }
    }

    const HopfAlgebra& H_;
    const FiniteAlgebra& R_;
    std::uint64_t budget_;
    std::size_t d_;
    std::vector<std::uint32_t> image_;
    std::vector<std::vector<Constraint>> by_level_;
    std::vector<const Constraint*> defining_;
    std::vector<std::vector<std::uint32_t>> found_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

PointsGroup points(const HopfAlgebra& H, const FiniteAlgebra& R, std::uint64_t node_budget) {
    if (!H.field().is_prime_field() || H.field().characteristic() != R.characteristic())
        throw InputError("points need a Hopf algebra over the prime field of the test ring");
    auto homs = Search(H, R, node_budget).run();
    const auto d = H.dim();
    std::map<std::vector<std::uint32_t>, std::uint32_t> index;
    for (std::size_t g = 0; g < homs.size(); ++g) index.emplace(homs[g], static_cast<std::uint32_t>(g));
    const auto n = homs.size();
    std::vector<std::uint32_t> table(n * n);
    std::vector<std::uint32_t> conv(d);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t k = 0; k < d; ++k) {
                std::uint32_t acc = R.zero();
                for (const auto& t : H.coproduct(k))
                    acc = R.add(acc, R.scale(t.c, R.mul(homs[a][t.i], homs[b][t.j])));
                conv[k] = acc;
            }
            auto it = index.find(conv);
            if (it == index.end()) throw AssertionFailure("convolution of points is not a point");
            table[a * n + b] = it->second;
        }
    return {AbstractFiniteGroup(std::move(table), n, false), std::move(homs)};
}

}  // namespace tamer
