#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "klm/arith.hpp"

namespace klm {

enum class Family { none, uniform, braid, thagomizer, k2n };

// Dispatch hint: the lattice of flats of the carrying matroid is isomorphic
// to that of the named family member. Purely about the lattice; the ground
// set may differ (e.g. a contracted multigraph hinted as a smaller braid).
struct FamilyTag {
    Family family = Family::none;
    int p1 = 0;
    int p2 = 0;
};

struct MatroidImpl;
using MatroidPtr = std::shared_ptr<const MatroidImpl>;

struct UniformBacking {
    int m, d;  // rank d on m+d elements
};
struct GraphicBacking {
    int nv;
    std::vector<std::pair<int, int>> edges;  // multigraph; loops allowed
};
struct LinearBacking {
    int p;
    int rows;
    std::vector<std::vector<int>> cols;  // cols[e][i] in [0,p)
};
struct DirectSumBacking {
    MatroidPtr left, right;
};
// Minor whose lattice of flats is the interval [lo, hi] of the parent's
// lattice; elements are the parent elements of hi \ lo.
struct IntervalBacking {
    MatroidPtr parent;
    Mask lo, hi;
    std::vector<int> elems;
    int lo_rank;
};
// Restriction of the parent to a subset of elements (used by simplify when
// no structured backing applies).
struct SubBacking {
    MatroidPtr parent;
    std::vector<int> elems;
};

using Backing = std::variant<UniformBacking, GraphicBacking, LinearBacking, DirectSumBacking,
                             IntervalBacking, SubBacking>;

struct MatroidImpl {
    int n = 0;
    int full_rank = 0;
    FamilyTag tag;
    Backing backing;
};

namespace detail {

inline int rank_of(const MatroidImpl& m, Mask s);

inline int graphic_rank(const GraphicBacking& g, Mask s) {
    // rank = |V| - #components of the spanning subgraph, i.e. edges merged
    // into a forest by union-find
    std::vector<int> up(g.nv);
    std::iota(up.begin(), up.end(), 0);
    auto find = [&](int x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
    };
    int r = 0;
    while (s) {
        int e = __builtin_ctzll(s);
        s &= s - 1;
        int a = find(g.edges[e].first), b = find(g.edges[e].second);
        if (a != b) {
            up[a] = b;
            ++r;
        }
    }
    return r;
}

inline int mod_pow(long b, long e, long p) {
    long r = 1;
    b %= p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<int>(r);
}

inline int linear_rank(const LinearBacking& lb, Mask s) {
    std::vector<std::vector<int>> a;
    while (s) {
        int e = __builtin_ctzll(s);
        s &= s - 1;
        a.push_back(lb.cols[e]);
    }
    const long p = lb.p;
    int rank = 0;
    for (int row = 0; row < lb.rows && rank < static_cast<int>(a.size()); ++row) {
        int piv = -1;
        for (int j = rank; j < static_cast<int>(a.size()); ++j)
            if (a[j][row] != 0) {
                piv = j;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        long inv = mod_pow(a[rank][row], p - 2, p);
        for (int j = rank + 1; j < static_cast<int>(a.size()); ++j) {
            if (a[j][row] == 0) continue;
            long f = a[j][row] * inv % p;
            for (int i = row; i < lb.rows; ++i)
                a[j][i] = static_cast<int>(((a[j][i] - f * a[rank][i]) % p + p) % p);
        }
        ++rank;
    }
    return rank;
}

inline Mask map_up(const std::vector<int>& elems, Mask s) {
    Mask out = 0;
    while (s) {
        int e = __builtin_ctzll(s);
        s &= s - 1;
        out |= Mask(1) << elems[e];
    }
    return out;
}

inline int rank_of(const MatroidImpl& m, Mask s) {
    return std::visit(
        [&](const auto& b) -> int {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, UniformBacking>) {
                return std::min(popcount(s), b.d);
            } else if constexpr (std::is_same_v<T, GraphicBacking>) {
                return graphic_rank(b, s);
            } else if constexpr (std::is_same_v<T, LinearBacking>) {
                return linear_rank(b, s);
            } else if constexpr (std::is_same_v<T, DirectSumBacking>) {
                int nl = b.left->n;
                Mask hi = nl >= 64 ? 0 : s >> nl;
                return rank_of(*b.left, s & full_mask(nl)) + rank_of(*b.right, hi);
            } else if constexpr (std::is_same_v<T, IntervalBacking>) {
                return rank_of(*b.parent, map_up(b.elems, s) | b.lo) - b.lo_rank;
            } else {
                return rank_of(*b.parent, map_up(b.elems, s));
            }
        },
        m.backing);
}

}  // namespace detail

class Matroid {
public:
    Matroid() : Matroid(make(0, {}, UniformBacking{0, 0})) {}
    explicit Matroid(MatroidPtr impl) : impl_(std::move(impl)) {
        if (!impl_) throw std::invalid_argument("Matroid: null impl");
    }

    static Matroid uniform(int m, int d) {
        if (m < 0 || d < 0) throw std::invalid_argument("uniform: negative parameter");
        check_width(m + d);
        return Matroid(make(m + d, {Family::uniform, m, d}, UniformBacking{m, d}));
    }

    static Matroid graphic(int nv, std::vector<std::pair<int, int>> edges, FamilyTag tag = {}) {
        if (nv < 0) throw std::invalid_argument("graphic: negative vertex count");
        check_width(static_cast<int>(edges.size()));
        for (auto& [u, v] : edges)
            if (u < 0 || v < 0 || u >= nv || v >= nv)
                throw std::invalid_argument("graphic: edge endpoint out of range");
        int n = static_cast<int>(edges.size());
        return Matroid(make(n, tag, GraphicBacking{nv, std::move(edges)}));
    }

    // braid matroid B_n: graphic matroid of the complete graph K_n
    static Matroid complete_graph(int n) {
        if (n < 1) throw std::invalid_argument("complete_graph: n must be >= 1");
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
        return graphic(n, std::move(edges), {Family::braid, n, 0});
    }

    // K_{2,n} plus an edge joining the two degree-n vertices; the extra edge
    // comes first in the element order.
    static Matroid thagomizer(int n) {
        if (n < 0) throw std::invalid_argument("thagomizer: negative parameter");
        std::vector<std::pair<int, int>> edges{{0, 1}};
        for (int i = 0; i < n; ++i) {
            edges.emplace_back(0, 2 + i);
            edges.emplace_back(1, 2 + i);
        }
        return graphic(n + 2, std::move(edges), {Family::thagomizer, n, 0});
    }

    static Matroid k2n(int n) {
        if (n < 0) throw std::invalid_argument("k2n: negative parameter");
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i) {
            edges.emplace_back(0, 2 + i);
            edges.emplace_back(1, 2 + i);
        }
        return graphic(n + 2, std::move(edges), {Family::k2n, n, 0});
    }

    // columns of the matrix are the ground set, over GF(p)
    static Matroid linear(const std::vector<std::vector<int>>& matrix_rows, int p) {
        if (p < 2) throw std::invalid_argument("linear: characteristic must be >= 2");
        for (int q = 2; q * q <= p; ++q)
            if (p % q == 0) throw std::invalid_argument("linear: characteristic is not prime");
        int rows = static_cast<int>(matrix_rows.size());
        int n = rows == 0 ? 0 : static_cast<int>(matrix_rows[0].size());
        for (const auto& r : matrix_rows)
            if (static_cast<int>(r.size()) != n)
                throw std::invalid_argument("linear: ragged matrix");
        check_width(n);
        std::vector<std::vector<int>> cols(n, std::vector<int>(rows));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < n; ++j) cols[j][i] = ((matrix_rows[i][j] % p) + p) % p;
        return Matroid(make(n, {}, LinearBacking{p, rows, std::move(cols)}));
    }

    int size() const { return impl_->n; }
    int rank() const { return impl_->full_rank; }
    Mask ground() const { return full_mask(impl_->n); }
    const FamilyTag& tag() const { return impl_->tag; }
    const Backing& backing() const { return impl_->backing; }
    const MatroidPtr& impl() const { return impl_; }

    int rank(Mask s) const {
        check_subset(s);
        return detail::rank_of(*impl_, s);
    }

    Mask closure(Mask s) const { return rank_and_closure_impl(s).second; }

    std::pair<int, Mask> rank_and_closure(Mask s) const { return rank_and_closure_impl(s); }

    bool is_flat(Mask s) const { return closure(s) == s; }

    Mask loops() const { return closure(0); }

    bool is_simple() const {
        if (loops()) return false;
        for (int e = 0; e < size(); ++e)
            if (popcount(closure(Mask(1) << e)) != 1) return false;
        return true;
    }

    Matroid with_tag(FamilyTag t) const {
        auto copy = std::make_shared<MatroidImpl>(*impl_);
        copy->tag = t;
        return Matroid(std::move(copy));
    }

    static Matroid from_parts(int n, FamilyTag tag, Backing backing) {
        return Matroid(make(n, tag, std::move(backing)));
    }

private:
    static void check_width(int n) {
        if (n > 64) throw resource_error("ground set exceeds the 64-element cap");
    }
    void check_subset(Mask s) const {
        if (s & ~ground()) throw std::invalid_argument("subset has elements outside the ground set");
    }
    static MatroidPtr make(int n, FamilyTag tag, Backing backing) {
        auto impl = std::make_shared<MatroidImpl>();
        impl->n = n;
        impl->tag = tag;
        impl->backing = std::move(backing);
        impl->full_rank = detail::rank_of(*impl, full_mask(n));
        return impl;
    }
    std::pair<int, Mask> rank_and_closure_impl(Mask s) const {
        check_subset(s);
        int r = detail::rank_of(*impl_, s);
        Mask cl = s;
        Mask rest = ground() & ~s;
        while (rest) {
            int e = __builtin_ctzll(rest);
            rest &= rest - 1;
            if (detail::rank_of(*impl_, s | (Mask(1) << e)) == r) cl |= Mask(1) << e;
        }
        return {r, cl};
    }

    MatroidPtr impl_;
};

inline std::pair<int, Mask> rank_and_closure(const Matroid& m, Mask s) {
    return m.rank_and_closure(s);
}

inline Matroid direct_sum(const Matroid& a, const Matroid& b) {
    if (a.size() + b.size() > 64) throw resource_error("direct sum exceeds the 64-element cap");
    return Matroid::from_parts(a.size() + b.size(), {}, DirectSumBacking{a.impl(), b.impl()});
}

// Lattice of flats of the result is the interval [bottom, F] of L(M).
inline Matroid localization(const Matroid& m, Mask f) {
    if (!m.is_flat(f)) throw std::invalid_argument("localization: argument is not a flat");
    Mask lo = m.closure(0);
    std::vector<int> elems = mask_elements(f & ~lo);
    FamilyTag hint;
    if (m.tag().family == Family::uniform) {
        int k = static_cast<int>(elems.size());
        hint = k < m.tag().p2 ? FamilyTag{Family::uniform, 0, k} : m.tag();
    }
    int n = static_cast<int>(elems.size());
    return Matroid::from_parts(n, hint, IntervalBacking{m.impl(), lo, f, std::move(elems), m.rank(lo)});
}

// Lattice of flats of the result is the interval [F, top] of L(M).
inline Matroid restriction(const Matroid& m, Mask f) {
    auto [rf, cl] = m.rank_and_closure(f);
    if (cl != f) throw std::invalid_argument("restriction: argument is not a flat");
    std::vector<int> elems = mask_elements(m.ground() & ~f);
    FamilyTag hint;
    if (m.tag().family == Family::uniform)
        hint = {Family::uniform, rf < m.tag().p2 ? m.tag().p1 : 0, m.tag().p2 - rf};
    else if (m.tag().family == Family::braid)
        hint = {Family::braid, m.tag().p1 - rf, 0};
    int n = static_cast<int>(elems.size());
    return Matroid::from_parts(n, hint, IntervalBacking{m.impl(), f, m.ground(), std::move(elems), rf});
}

// Contraction M/e; the lattice of flats equals the interval of L(M) above
// closure({e}). Structured backings contract in place, so family dispatch
// hints survive where the contracted shape is known.
inline Matroid contract_element(const Matroid& m, int e) {
    if (e < 0 || e >= m.size()) throw std::invalid_argument("contract_element: element out of range");
    if (m.rank(Mask(1) << e) == 0) throw std::invalid_argument("contract_element: element is a loop");

    if (const auto* u = std::get_if<UniformBacking>(&m.backing()))
        return Matroid::uniform(u->m, u->d - 1);

    if (const auto* g = std::get_if<GraphicBacking>(&m.backing())) {
        auto [a, b] = g->edges[e];  // a != b since e is not a loop
        std::vector<std::pair<int, int>> edges;
        edges.reserve(g->edges.size() - 1);
        auto remap = [&](int v) { return v == b ? a : v; };
        for (int i = 0; i < static_cast<int>(g->edges.size()); ++i) {
            if (i == e) continue;
            edges.emplace_back(remap(g->edges[i].first), remap(g->edges[i].second));
        }
        FamilyTag hint;
        const FamilyTag& t = m.tag();
        if (t.family == Family::braid)
            hint = {Family::braid, t.p1 - 1, 0};
        else if (t.family == Family::thagomizer && e != 0 && t.p1 >= 1)
            hint = {Family::thagomizer, t.p1 - 1, 0};
        else if (t.family == Family::k2n && t.p1 >= 1)
            hint = {Family::thagomizer, t.p1 - 1, 0};
        return Matroid::graphic(g->nv, std::move(edges), hint);
    }

    if (const auto* lb = std::get_if<LinearBacking>(&m.backing())) {
        // project every other column along column e, then drop the pivot row
        int piv = -1;
        for (int i = 0; i < lb->rows; ++i)
            if (lb->cols[e][i] != 0) {
                piv = i;
                break;
            }
        if (lb->rows == 1) {
            // contracting the only pivot leaves every other element a loop
            std::vector<std::vector<int>> z(1, std::vector<int>(m.size() - 1, 0));
            return Matroid::linear(z, lb->p);
        }
        long p = lb->p;
        long inv = detail::mod_pow(lb->cols[e][piv], p - 2, p);
        std::vector<std::vector<int>> rows(lb->rows - 1,
                                           std::vector<int>(m.size() - 1));
        for (int j = 0, jj = 0; j < m.size(); ++j) {
            if (j == e) continue;
            long f = lb->cols[j][piv] * inv % p;
            for (int i = 0, ii = 0; i < lb->rows; ++i) {
                if (i == piv) continue;
                rows[ii][jj] = static_cast<int>(((lb->cols[j][i] - f * lb->cols[e][i]) % p + p) % p);
                ++ii;
            }
            ++jj;
        }
        return Matroid::linear(rows, lb->p);
    }

    if (const auto* ds = std::get_if<DirectSumBacking>(&m.backing())) {
        int nl = ds->left->n;
        Matroid left(ds->left), right(ds->right);
        if (e < nl) return direct_sum(contract_element(left, e), right);
        return direct_sum(left, contract_element(right, e - nl));
    }

    return restriction(m, m.closure(Mask(1) << e));
}

// Loops removed and parallel classes merged; the lattice of flats (hence any
// KL-facing quantity) is unchanged, so the family hint is kept.
inline Matroid simplify(const Matroid& m) {
    Mask loops = m.loops();
    std::vector<int> reps;
    Mask seen = loops;
    for (int e = 0; e < m.size(); ++e) {
        if (seen & (Mask(1) << e)) continue;
        reps.push_back(e);
        seen |= m.closure(Mask(1) << e);
    }
    if (!loops && static_cast<int>(reps.size()) == m.size()) return m;

    if (const auto* u = std::get_if<UniformBacking>(&m.backing())) {
        // uniform matroids of rank >= 2 are simple, so d is 0 or 1 here
        return Matroid::uniform(0, u->d);
    }
    if (const auto* g = std::get_if<GraphicBacking>(&m.backing())) {
        std::vector<std::pair<int, int>> edges;
        edges.reserve(reps.size());
        for (int e : reps) edges.push_back(g->edges[e]);
        return Matroid::graphic(g->nv, std::move(edges), m.tag());
    }
    if (const auto* lb = std::get_if<LinearBacking>(&m.backing())) {
        std::vector<std::vector<int>> rows(lb->rows, std::vector<int>(reps.size()));
        for (int i = 0; i < lb->rows; ++i)
            for (size_t j = 0; j < reps.size(); ++j) rows[i][j] = lb->cols[reps[j]][i];
        return Matroid::linear(rows, lb->p).with_tag(m.tag());
    }
    if (const auto* ds = std::get_if<DirectSumBacking>(&m.backing()))
        return direct_sum(simplify(Matroid(ds->left)), simplify(Matroid(ds->right)));

    return Matroid::from_parts(static_cast<int>(reps.size()), m.tag(),
                               SubBacking{m.impl(), std::move(reps)});
}

namespace detail {

// articulation-point test on the active (degree >= 1) part of a loopless
// multigraph; parallel edges carry distinct ids, so they are honest cycles
inline bool graph_two_connected(const GraphicBacking& g) {
    int n = g.nv;
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
        auto [u, v] = g.edges[i];
        adj[u].emplace_back(v, i);
        adj[v].emplace_back(u, i);
    }
    int start = -1, active = 0;
    for (int v = 0; v < n; ++v)
        if (!adj[v].empty()) {
            ++active;
            if (start < 0) start = v;
        }
    if (start < 0) return true;

    std::vector<int> disc(n, -1), low(n, 0);
    int timer = 0, visited = 0;
    bool cut = false;
    // iterative DFS: (vertex, entering edge id, adjacency cursor)
    struct Frame {
        int v, in_edge;
        size_t i;
    };
    std::vector<Frame> stack{{start, -1, 0}};
    disc[start] = low[start] = timer++;
    ++visited;
    int root_children = 0;
    while (!stack.empty()) {
        auto& [v, in_edge, i] = stack.back();
        if (i < adj[v].size()) {
            auto [w, id] = adj[v][i++];
            if (id == in_edge) continue;
            if (disc[w] < 0) {
                disc[w] = low[w] = timer++;
                ++visited;
                if (v == start) ++root_children;
                stack.push_back({w, id, 0});
            } else {
                low[v] = std::min(low[v], disc[w]);
            }
        } else {
            stack.pop_back();
            if (!stack.empty()) {
                int parent = stack.back().v;
                low[parent] = std::min(low[parent], low[v]);
                if (parent != start && low[v] >= disc[parent]) cut = true;
            }
        }
    }
    if (visited != active) return false;
    if (root_children > 1) cut = true;
    return !cut;
}

}  // namespace detail

// Connectivity in the matroid sense: no proper nonempty subset S with
// rk(S) + rk(complement) = rk(M).
inline bool is_connected(const Matroid& m) {
    int n = m.size();
    if (n <= 1) return true;

    if (const auto* u = std::get_if<UniformBacking>(&m.backing()))
        return u->d >= 1 && u->d <= n - 1;

    if (const auto* g = std::get_if<GraphicBacking>(&m.backing())) {
        for (auto& [a, b] : g->edges)
            if (a == b) return false;  // loop separates once n >= 2
        return detail::graph_two_connected(*g);
    }

    if (const auto* ds = std::get_if<DirectSumBacking>(&m.backing())) {
        if (ds->left->n == 0) return is_connected(Matroid(ds->right));
        if (ds->right->n == 0) return is_connected(Matroid(ds->left));
        return false;
    }

    if (n > 24) throw resource_error("is_connected: exhaustive separator search beyond 24 elements");
    int r = m.rank();
    Mask full = full_mask(n);
    // by symmetry, fix element 0 on the S side
    for (Mask rest = 0; rest < (Mask(1) << (n - 1)); ++rest) {
        Mask s = (rest << 1) | 1;
        if (s == full) continue;
        if (m.rank(s) + m.rank(full & ~s) == r) return false;
    }
    return true;
}

}  // namespace klm
