#pragma once

#include <map>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "klm/matroid.hpp"
#include "klm/poly.hpp"

namespace klm {

struct Flat {
    Mask members;
    int rank;
};

// Complete rank-graded enumeration of the lattice of flats. Flats are indexed
// in (rank, members) order, so index 0 is the bottom flat (closure of the
// empty set) and the last index is the top. Subset relations between flats
// coincide with the lattice order.
class FlatLattice {
public:
    explicit FlatLattice(Matroid m, std::size_t flat_cap = 1'000'000)
        : m_(std::move(m)) {
        int r = m_.rank();
        rank_offset_.assign(r + 2, 0);
        std::vector<Mask> level{m_.closure(0)};
        for (int k = 0; k <= r; ++k) {
            rank_offset_[k] = static_cast<int>(flats_.size());
            std::sort(level.begin(), level.end());
            for (Mask f : level) {
                index_.emplace(f, static_cast<int>(flats_.size()));
                flats_.push_back({f, k});
            }
            if (flats_.size() > flat_cap)
                throw resource_error("lattice_of_flats: flat count exceeds the configured cap");
            if (k == r) break;
            std::unordered_set<Mask> next;
            for (Mask f : level) {
                Mask rest = m_.ground() & ~f;
                while (rest) {
                    int e = __builtin_ctzll(rest);
                    rest &= rest - 1;
                    next.insert(m_.closure(f | (Mask(1) << e)));
                }
            }
            level.assign(next.begin(), next.end());
        }
        rank_offset_[r + 1] = static_cast<int>(flats_.size());

        // Mobius function from the bottom flat, level by level:
        // mu(bottom, F) = -sum over proper subflats
        mu0_.resize(flats_.size());
        mu0_[0] = 1;
        for (std::size_t j = 1; j < flats_.size(); ++j) {
            Integer acc = 0;
            int below = rank_offset_[flats_[j].rank];
            for (int i = 0; i < below; ++i)
                if (subset(flats_[i].members, flats_[j].members)) acc += mu0_[i];
            mu0_[j] = -acc;
        }
    }

    const Matroid& matroid() const { return m_; }
    int rank() const { return m_.rank(); }
    int size() const { return static_cast<int>(flats_.size()); }
    const Flat& flat(int i) const { return flats_[i]; }
    int bottom() const { return 0; }
    int top() const { return size() - 1; }

    int index_of(Mask f) const {
        auto it = index_.find(f);
        if (it == index_.end()) throw std::invalid_argument("index_of: not a flat");
        return it->second;
    }
    bool contains(Mask f) const { return index_.count(f) != 0; }

    // flat indices of rank r form the contiguous range [level_begin, level_end)
    int level_begin(int r) const { return rank_offset_[r]; }
    int level_end(int r) const { return rank_offset_[r + 1]; }
    std::vector<long> counts_by_rank() const {
        std::vector<long> c(rank() + 1);
        for (int r = 0; r <= rank(); ++r) c[r] = level_end(r) - level_begin(r);
        return c;
    }
    long atom_count() const { return rank() >= 1 ? level_end(1) - level_begin(1) : 0; }
    long coatom_count() const {
        return rank() >= 1 ? level_end(rank() - 1) - level_begin(rank() - 1) : 0;
    }

    bool leq(int i, int j) const { return subset(flats_[i].members, flats_[j].members); }

    const Integer& mobius_from_bottom(int i) const { return mu0_[i]; }

    // indices of all flats containing flat i, in index (hence rank) order,
    // starting with i itself
    const std::vector<int>& upper_set(int i) const {
        build_upper();
        return upper_[i];
    }

    // mu(F_i, -) over upper_set(i), aligned with it; entry 0 is mu(F,F) = 1
    std::vector<Integer> mobius_from(int i) const {
        const auto& up = upper_set(i);
        std::vector<Integer> mu(up.size());
        mu[0] = 1;
        for (std::size_t a = 1; a < up.size(); ++a) {
            Integer acc = 0;
            Mask h = flats_[up[a]].members;
            for (std::size_t b = 0; b < a; ++b)
                if (subset(flats_[up[b]].members, h)) acc += mu[b];
            mu[a] = -acc;
        }
        return mu;
    }

    Integer mobius(int i, int j) const {
        if (!leq(i, j)) return 0;
        auto key = std::make_pair(i, j);
        {
            auto it = interval_mobius_cache_.find(key);
            if (it != interval_mobius_cache_.end()) return it->second;
        }
        const auto& up = upper_set(i);
        auto mu = mobius_from(i);
        Integer out = 0;
        for (std::size_t a = 0; a < up.size(); ++a) {
            interval_mobius_cache_.emplace(std::make_pair(i, up[a]), mu[a]);
            if (up[a] == j) out = mu[a];
        }
        return out;
    }

    std::vector<int> covers_up(int i) const {
        std::vector<int> out;
        int r = flats_[i].rank;
        if (r == rank()) return out;
        for (int j = level_begin(r + 1); j < level_end(r + 1); ++j)
            if (subset(flats_[i].members, flats_[j].members)) out.push_back(j);
        return out;
    }

private:
    static bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

    void build_upper() const {
        if (!upper_.empty()) return;
        upper_.resize(flats_.size());
        for (std::size_t i = 0; i < flats_.size(); ++i) {
            upper_[i].push_back(static_cast<int>(i));
            for (std::size_t j = i + 1; j < flats_.size(); ++j)
                if (subset(flats_[i].members, flats_[j].members))
                    upper_[i].push_back(static_cast<int>(j));
        }
    }

    Matroid m_;
    std::vector<Flat> flats_;
    std::vector<int> rank_offset_;
    std::vector<Integer> mu0_;
    std::unordered_map<Mask, int> index_;
    mutable std::vector<std::vector<int>> upper_;
    mutable std::map<std::pair<int, int>, Integer> interval_mobius_cache_;
};

inline FlatLattice lattice_of_flats(const Matroid& m, std::size_t flat_cap = 1'000'000) {
    return FlatLattice(m, flat_cap);
}

inline IntPolynomial chi_from_lattice(const FlatLattice& l) {
    IntPolynomial chi;
    int r = l.rank();
    std::vector<Integer> coeff(r + 1);
    for (int i = 0; i < l.size(); ++i) coeff[r - l.flat(i).rank] += l.mobius_from_bottom(i);
    return IntPolynomial(std::move(coeff));
}

inline IntPolynomial chi_uniform(int m, int d) {
    // flats below the top are the subsets of size < d, each with Boolean
    // lower interval, so mu = (-1)^size; the top coefficient balances to 0 at t=1
    std::vector<Integer> coeff(d + 1);
    Integer top = 0;
    for (int k = 0; k < d; ++k) {
        Integer c = binomial(m + d, k);
        if (k & 1) c = -c;
        coeff[d - k] = c;
        top -= c;
    }
    if (d >= 1)
        coeff[0] = top;
    else
        coeff[0] = 1;
    return IntPolynomial(std::move(coeff));
}

inline IntPolynomial chi_braid(int n) {
    // (t-1)(t-2)...(t-n+1)
    IntPolynomial p = IntPolynomial::constant(1);
    for (int k = 1; k < n; ++k)
        p *= IntPolynomial({Integer(-k), Integer(1)});
    return p;
}

// chi via the lattice Mobius sum, with family shortcuts; defined through the
// lattice of flats, so loops and parallels behave as in the simplification.
inline IntPolynomial characteristic_polynomial(const Matroid& m) {
    if (m.tag().family == Family::uniform) return chi_uniform(m.tag().p1, m.tag().p2);
    if (m.tag().family == Family::braid) return chi_braid(m.tag().p1);
    if (const auto* ds = std::get_if<DirectSumBacking>(&m.backing()))
        return characteristic_polynomial(Matroid(ds->left)) *
               characteristic_polynomial(Matroid(ds->right));
    return chi_from_lattice(lattice_of_flats(m));
}

inline bool is_modular_lattice(const FlatLattice& l) {
    const Matroid& m = l.matroid();
    for (int i = 0; i < l.size(); ++i)
        for (int j = i + 1; j < l.size(); ++j) {
            Mask meet = l.flat(i).members & l.flat(j).members;
            int join_rank = m.rank(l.flat(i).members | l.flat(j).members);
            if (l.flat(i).rank + l.flat(j).rank !=
                join_rank + l.flat(l.index_of(meet)).rank)
                return false;
        }
    return true;
}

}  // namespace klm
