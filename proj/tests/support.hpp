#pragma once

// Fixtures and independent reference computations. Nothing here calls the
// library routine it is used to check.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sext/extension.hpp"
#include "sext/metric.hpp"
#include "sext/weighted_graph.hpp"

namespace fixture {

using sext::Dist;
using sext::DistMatrix;
using sext::FiniteMetricSpace;
using sext::Perm;

inline Dist q(std::int64_t n, std::int64_t d = 1) { return Dist(n, d); }

inline FiniteMetricSpace space(const std::vector<std::vector<Dist>>& m, const std::string& prefix = "x") {
    return sext::make_space(m, prefix);
}

inline FiniteMetricSpace point() { return space({{q(0)}}); }
inline FiniteMetricSpace pair(Dist d = q(1)) { return space({{q(0), d}, {d, q(0)}}); }
inline FiniteMetricSpace path3() { return space({{q(0), q(1), q(2)}, {q(1), q(0), q(1)}, {q(2), q(1), q(0)}}); }
inline FiniteMetricSpace equilateral(int n, Dist d) {
    DistMatrix m(n, std::vector<Dist>(n, d));
    for (int i = 0; i < n; ++i) m[i][i] = q(0);
    return space(m);
}
// a,b at 1; c at 2 from both.
inline FiniteMetricSpace ultra3() { return space({{q(0), q(1), q(2)}, {q(1), q(0), q(2)}, {q(2), q(2), q(0)}}); }

inline bool triangle_ok(const DistMatrix& d) {
    const int n = static_cast<int>(d.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (d[i][k] > d[i][j] + d[j][k]) return false;
    return true;
}

// Row-major upper triangle under the lexicographically least relabelling.
inline std::vector<Dist> canonical_key(const DistMatrix& d) {
    const int n = static_cast<int>(d.size());
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<Dist> best;
    do {
        std::vector<Dist> key;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) key.push_back(d[p[i]][p[j]]);
        if (best.empty() || key < best) best = key;
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

// One space per isometry class on n points with distances from values.
inline std::vector<FiniteMetricSpace> all_spaces(int n, const std::vector<Dist>& values) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::set<std::vector<Dist>> seen;
    std::vector<FiniteMetricSpace> out;
    DistMatrix d(n, std::vector<Dist>(n, q(0)));
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == slots.size()) {
            if (triangle_ok(d) && seen.insert(canonical_key(d)).second) out.push_back(space(d));
            return;
        }
        for (const Dist& v : values) {
            d[slots[k].first][slots[k].second] = d[slots[k].second][slots[k].first] = v;
            rec(k + 1);
        }
    };
    rec(0);
    return out;
}

inline FiniteMetricSpace random_space(std::mt19937_64& rng, int n, const std::vector<Dist>& values) {
    std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
    for (;;) {
        DistMatrix d(n, std::vector<Dist>(n, q(0)));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = values[pick(rng)];
        if (triangle_ok(d)) return space(d);
    }
}

// Every point carries a code per level, coarsest first, with the finest code
// distinct; d is the distance of the coarsest level where codes differ.
inline FiniteMetricSpace random_ultrametric(std::mt19937_64& rng, int n, std::vector<Dist> levels) {
    std::sort(levels.rbegin(), levels.rend());
    const int k = static_cast<int>(levels.size());
    std::vector<std::vector<int>> code(n, std::vector<int>(k));
    for (int i = 0; i < n; ++i) {
        for (int l = 0; l + 1 < k; ++l) code[i][l] = std::uniform_int_distribution<int>(0, 2)(rng);
        code[i][k - 1] = i;
    }
    DistMatrix d(n, std::vector<Dist>(n, q(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            int l = 0;
            while (code[i][l] == code[j][l]) ++l;
            d[i][j] = levels[l];
        }
    return space(d, "u");
}

// All distance-preserving partial bijections with nonempty domain that move a point.
inline std::set<std::vector<std::pair<int, int>>> naive_partials(const FiniteMetricSpace& X) {
    const int n = X.size();
    std::set<std::vector<std::pair<int, int>>> out;
    std::vector<std::pair<int, int>> cur;
    std::vector<char> used(n, 0);
    std::function<void(int)> rec = [&](int x) {
        if (x == n) {
            const bool moves = std::any_of(cur.begin(), cur.end(), [](auto& pr) { return pr.first != pr.second; });
            if (moves) out.insert(cur);
            return;
        }
        rec(x + 1);
        for (int y = 0; y < n; ++y) {
            if (used[y]) continue;
            bool ok = true;
            for (auto& [a, b] : cur) ok = ok && X.d(a, x) == X.d(b, y);
            if (!ok) continue;
            used[y] = 1;
            cur.emplace_back(x, y);
            rec(x + 1);
            cur.pop_back();
            used[y] = 0;
        }
    };
    rec(0);
    return out;
}

inline std::vector<Perm> naive_isometries(const FiniteMetricSpace& Y) {
    Perm p(Y.size());
    std::iota(p.begin(), p.end(), 0);
    std::vector<Perm> out;
    do {
        bool ok = true;
        for (int i = 0; i < Y.size() && ok; ++i)
            for (int j = 0; j < Y.size() && ok; ++j) ok = Y.d(i, j) == Y.d(p[i], p[j]);
        if (ok) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline bool naive_transitive(const FiniteMetricSpace& Y) {
    std::set<int> orbit;
    for (const auto& g : naive_isometries(Y)) orbit.insert(g[0]);
    return static_cast<int>(orbit.size()) == Y.size();
}

inline bool naive_ultrametric(const FiniteMetricSpace& X) {
    for (int i = 0; i < X.size(); ++i)
        for (int j = 0; j < X.size(); ++j)
            for (int k = 0; k < X.size(); ++k)
                if (X.d(i, j) > std::max(X.d(i, k), X.d(k, j))) return false;
    return true;
}

// Simple-path enumeration; combine folds edge weights along a path.
inline std::vector<std::vector<std::optional<Dist>>> naive_paths(
    int n, const std::map<std::pair<int, int>, Dist>& edges,
    const std::function<Dist(const Dist&, const Dist&)>& combine) {
    std::vector<std::vector<Dist>> w(n, std::vector<Dist>(n, q(-1)));
    for (auto& [uv, d] : edges) w[uv.first][uv.second] = w[uv.second][uv.first] = d;
    std::vector<std::vector<std::optional<Dist>>> best(n, std::vector<std::optional<Dist>>(n));
    for (int s = 0; s < n; ++s) {
        std::vector<char> on(n, 0);
        std::function<void(int, std::optional<Dist>)> dfs = [&](int v, std::optional<Dist> acc) {
            if (acc && (!best[s][v] || *acc < *best[s][v])) best[s][v] = acc;
            on[v] = 1;
            for (int u = 0; u < n; ++u) {
                if (on[u] || w[v][u] < q(0)) continue;
                dfs(u, acc ? combine(*acc, w[v][u]) : w[v][u]);
            }
            on[v] = 0;
        };
        dfs(s, std::nullopt);
        best[s][s] = q(0);
    }
    return best;
}

// Orbit of e(a0) under the group generated by smap.
inline std::set<int> orbit_of_base(const sext::SExtension& E) {
    std::set<int> seen{E.embed[E.a0]};
    std::vector<int> todo{E.embed[E.a0]};
    while (!todo.empty()) {
        int y = todo.back();
        todo.pop_back();
        for (const auto& g : E.smap)
            if (seen.insert(g[y]).second) todo.push_back(g[y]);
    }
    return seen;
}

inline bool extends(const sext::PartialIsometry& p, const Perm& g, const std::vector<int>& embed) {
    return std::all_of(p.pairs.begin(), p.pairs.end(), [&](auto& ab) { return g[embed[ab.first]] == embed[ab.second]; });
}

// Independent checker for an S-extension: embedding isometric, each image a
// distance-preserving permutation extending its symbol.
inline bool independently_valid(const sext::SExtension& E) {
    for (int a = 0; a < E.base.size(); ++a)
        for (int b = 0; b < E.base.size(); ++b)
            if (E.space.d(E.embed[a], E.embed[b]) != E.base.d(a, b)) return false;
    for (std::size_t i = 0; i < E.P.size(); ++i) {
        const Perm& g = E.smap[i];
        std::vector<int> s = g;
        std::sort(s.begin(), s.end());
        for (int y = 0; y < E.space.size(); ++y)
            if (s[y] != y) return false;
        for (int y = 0; y < E.space.size(); ++y)
            for (int z = 0; z < E.space.size(); ++z)
                if (E.space.d(g[y], g[z]) != E.space.d(y, z)) return false;
        if (!extends(E.P[i], g, E.embed)) return false;
    }
    return true;
}

}  // namespace fixture
