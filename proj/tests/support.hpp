#ifndef GKM_TESTS_SUPPORT_HPP
#define GKM_TESTS_SUPPORT_HPP

// Independent oracles shared by the unit tests and the acceptance binary.
// None of them call the library routine they are used to check.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <tuple>
#include <random>
#include <vector>

#include "gkm/cases.hpp"
#include "gkm/families.hpp"
#include "gkm/graph.hpp"
#include "gkm/lattice.hpp"

namespace oracle {

using gkm::DartId;
using gkm::GkmGraph;
using gkm::IntVec;
using gkm::VertexId;

// Determinant by cofactor expansion; matrices here are at most 4x4.
inline std::int64_t det(const std::vector<std::vector<std::int64_t>>& m) {
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    std::int64_t total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<std::int64_t>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<std::int64_t> row;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) row.push_back(m[i][k]);
            }
            minor.push_back(row);
        }
        total += (j % 2 == 0 ? 1 : -1) * m[0][j] * det(minor);
    }
    return total;
}

inline void choose(std::size_t n, std::size_t r, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(r), true);
    do {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i) {
            if (pick[i]) idx.push_back(i);
        }
        f(idx);
    } while (std::prev_permutation(pick.begin(), pick.end()));
}

// Largest r with a nonzero r x r minor.
inline int rank_by_minors(const std::vector<IntVec>& rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    for (std::size_t r = std::min(rows.size(), cols); r > 0; --r) {
        bool found = false;
        choose(rows.size(), r, [&](const std::vector<std::size_t>& ri) {
            if (found) return;
            choose(cols, r, [&](const std::vector<std::size_t>& ci) {
                if (found) return;
                std::vector<std::vector<std::int64_t>> m;
                for (auto i : ri) {
                    std::vector<std::int64_t> row;
                    for (auto j : ci) row.push_back(rows[i][j]);
                    m.push_back(row);
                }
                found = det(m) != 0;
            });
        });
        if (found) return static_cast<int>(r);
    }
    return 0;
}

// All (eps, c) with target = eps*source + c*modulus, |c| <= bound.
inline std::vector<std::pair<int, std::int64_t>> all_witnesses(const IntVec& target, const IntVec& source,
                                                               const IntVec& modulus, std::int64_t bound) {
    std::vector<std::pair<int, std::int64_t>> out;
    for (int eps : {1, -1}) {
        for (std::int64_t c = -bound; c <= bound; ++c) {
            if (target == source.scaled(eps) + modulus.scaled(c)) out.emplace_back(eps, c);
        }
    }
    return out;
}

inline std::int64_t witness_bound(const IntVec& t, const IntVec& s, const IntVec& m) {
    return 10 * std::max({t.max_abs(), s.max_abs(), m.max_abs(), std::int64_t{1}});
}

// Connection count by trying every bijection along every edge pair and
// checking the congruence condition with an explicit search for c.
inline std::size_t brute_force_connection_count(const GkmGraph& g) {
    std::size_t total = 1;
    for (DartId e = 0; e < g.dart_count(); ++e) {
        const DartId eb = g.dart(e).opposite;
        if (eb < e) continue;
        const auto& src = g.out(g.dart(e).from);
        std::vector<DartId> dst = g.out(g.dart(e).to);
        std::sort(dst.begin(), dst.end());
        std::size_t count = 0;
        do {
            bool ok = true;
            for (std::size_t i = 0; i < src.size() && ok; ++i) {
                const DartId f = src[i];
                const DartId img = dst[i];
                if ((f == e) != (img == eb)) {
                    ok = false;
                    break;
                }
                const IntVec& t = g.label(img).rep();
                const IntVec& s = g.label(f).rep();
                const IntVec& m = g.label(e).rep();
                ok = !all_witnesses(t, s, m, witness_bound(t, s, m)).empty();
            }
            if (ok) ++count;
        } while (std::next_permutation(dst.begin(), dst.end()));
        total *= count;
    }
    return total;
}

// Orientability by multiplying eta around the fundamental cycle of every
// non-tree edge of a BFS tree.
inline bool cycle_product_orientable(const GkmGraph& g, const std::function<int(DartId)>& eta) {
    const std::size_t n = g.vertex_count();
    std::vector<std::optional<DartId>> parent(n);  // dart into v from its parent
    std::vector<bool> seen(n, false);
    std::vector<bool> tree(g.dart_count(), false);
    std::queue<VertexId> q;
    seen[0] = true;
    q.push(0);
    while (!q.empty()) {
        const VertexId v = q.front();
        q.pop();
        for (DartId e : g.out(v)) {
            const VertexId w = g.dart(e).to;
            if (seen[w]) continue;
            seen[w] = true;
            parent[w] = e;
            tree[e] = tree[g.dart(e).opposite] = true;
            q.push(w);
        }
    }
    // product of eta along the tree path from the root to v
    auto root_path = [&](VertexId v, bool backwards) {
        int p = 1;
        while (parent[v]) {
            p *= eta(backwards ? g.dart(*parent[v]).opposite : *parent[v]);
            v = g.dart(*parent[v]).from;
        }
        return p;
    };
    for (DartId e = 0; e < g.dart_count(); ++e) {
        if (tree[e]) continue;
        // root -> i(e) -> t(e) -> root
        const int cycle = root_path(g.dart(e).from, false) * eta(e) * root_path(g.dart(e).to, true);
        if (cycle != 1) return false;
    }
    return true;
}

// The signed labels drawn in the family figures, per edge representative.
inline std::vector<int> figure_signs(const GkmGraph& g, const gkm::CaseLabel& family, const gkm::FiberLabels& l) {
    const auto r = gkm::right_fiber_labels(family, l);
    const std::vector<IntVec> figure{{l.a, l.b},
                                     {l.c, l.d},
                                     {r.first[0], r.first[1]},
                                     {r.second[0], r.second[1]},
                                     {1, 0},
                                     {1, 0},
                                     {0, 1},
                                     {0, 1}};
    const auto reps = g.edge_representatives();
    std::vector<int> signs;
    for (std::size_t i = 0; i < reps.size(); ++i) signs.push_back(g.label(reps[i]).rep() == figure[i] ? 1 : -1);
    return signs;
}

// Labeled isomorphism that maps the first two vertices onto the first two.
inline bool fibered_isomorphic(const GkmGraph& x, const GkmGraph& y) {
    if (x.vertex_count() != 4 || y.vertex_count() != 4 || x.dart_count() != y.dart_count()) return false;
    auto edges = [](const GkmGraph& g, const std::array<VertexId, 4>& p) {
        std::vector<std::tuple<VertexId, VertexId, IntVec>> out;
        for (DartId e = 0; e < g.dart_count(); ++e) out.emplace_back(p[g.dart(e).from], p[g.dart(e).to], g.label(e).rep());
        std::sort(out.begin(), out.end());
        return out;
    };
    const auto target = edges(y, {0, 1, 2, 3});
    for (const auto& p : std::vector<std::array<VertexId, 4>>{{0, 1, 2, 3}, {1, 0, 2, 3}, {0, 1, 3, 2}, {1, 0, 3, 2}}) {
        if (edges(x, p) == target) return true;
    }
    return false;
}

inline bool overlap(const gkm::FiberLabels& l) { return l.a == l.c || l.a == -l.c || l.b == l.d || l.b == -l.d; }

// Every label tuple in [-box, box]^4 admissible for `family`.
inline void for_each_valid(const gkm::CaseLabel& family, std::int64_t box,
                           const std::function<void(const gkm::FiberLabels&)>& f) {
    for (std::int64_t a = -box; a <= box; ++a)
        for (std::int64_t b = -box; b <= box; ++b)
            for (std::int64_t c = -box; c <= box; ++c)
                for (std::int64_t d = -box; d <= box; ++d) {
                    const gkm::FiberLabels l{a, b, c, d};
                    if (gkm::valid_params(family, l).ok()) f(l);
                }
}

}  // namespace oracle

#endif  // GKM_TESTS_SUPPORT_HPP
