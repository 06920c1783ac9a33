#include "sext/oracle.hpp"

#include <algorithm>
#include <set>

namespace sext {

namespace {

class IsoSearch {
public:
    IsoSearch(const FiniteMetricSpace& Y, bool involution) : Y_(Y), n_(Y.size()), inv_(involution) {
        img_.assign(n_, -1);
        pre_.assign(n_, -1);
    }

    bool assign(int x, int y) {
        if (img_[x] == y) return true;
        if (img_[x] >= 0 || pre_[y] >= 0) return false;
        for (int z = 0; z < n_; ++z) {
            if (img_[z] >= 0 && Y_.d(x, z) != Y_.d(y, img_[z])) return false;
        }
        img_[x] = y;
        pre_[y] = x;
        log_.push_back(x);
        if (inv_ && x != y) return assign(y, x);
        return true;
    }

    void undo(std::size_t mark) {
        while (log_.size() > mark) {
            int x = log_.back();
            log_.pop_back();
            pre_[img_[x]] = -1;
            img_[x] = -1;
        }
    }

    // Calls visit on each completion; stops when visit returns false.
    template <class Visit>
    bool each(Visit&& visit) {
        int x = static_cast<int>(std::find(img_.begin(), img_.end(), -1) - img_.begin());
        if (x == n_) return visit(img_);
        for (int y = 0; y < n_; ++y) {
            std::size_t mark = log_.size();
            if (assign(x, y) && !each(visit)) {
                undo(mark);
                return false;
            }
            undo(mark);
        }
        return true;
    }

private:
    const FiniteMetricSpace& Y_;
    int n_;
    bool inv_;
    std::vector<int> img_, pre_, log_;
};

}  // namespace

std::optional<Perm> find_isometry_extending(const FiniteMetricSpace& Y,
                                            const std::vector<std::pair<int, int>>& pairs, bool involution) {
    IsoSearch s(Y, involution);
    for (const auto& [x, y] : pairs) {
        if (!s.assign(x, y)) return std::nullopt;
    }
    std::optional<Perm> out;
    s.each([&](const Perm& p) {
        out = p;
        return false;
    });
    return out;
}

std::vector<Perm> brute_force_iso_group(const FiniteMetricSpace& Y, int cap) {
    if (Y.size() > cap) throw Error(Errc::TooLarge, std::to_string(Y.size()) + " points exceed cap " + std::to_string(cap));
    std::vector<Perm> out;
    IsoSearch s(Y, false);
    s.each([&](const Perm& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

bool is_homogeneous(const FiniteMetricSpace& Y, int cap) {
    if (Y.size() > cap) throw Error(Errc::TooLarge, std::to_string(Y.size()) + " points exceed cap " + std::to_string(cap));
    for (int y = 1; y < Y.size(); ++y) {
        if (!find_isometry_extending(Y, {{0, y}})) return false;
    }
    return true;
}

bool all_partials_extend(const FiniteMetricSpace& Y, int cap) {
    if (Y.size() > cap) throw Error(Errc::TooLarge, std::to_string(Y.size()) + " points exceed cap " + std::to_string(cap));
    for (const auto& p : enumerate_partial_isometries(Y)) {
        if (!find_isometry_extending(Y, p.pairs)) return false;
    }
    return true;
}

std::vector<Dist> default_distance_pool(const FiniteMetricSpace& X) {
    const auto D = distance_set(X);
    if (D.empty()) return {};
    const Dist diam = D.back();
    const Dist q = diam / D.front();
    const std::int64_t k = (q.numerator() + q.denominator() - 1) / q.denominator();
    std::set<Dist> pool(D.begin(), D.end());
    std::set<Dist> layer(D.begin(), D.end());
    for (std::int64_t t = 1; t < k; ++t) {
        std::set<Dist> next;
        for (const Dist& a : layer) {
            for (const Dist& b : D) {
                if (a + b <= diam && pool.insert(a + b).second) next.insert(a + b);
            }
        }
        layer = std::move(next);
    }
    return {pool.begin(), pool.end()};
}

namespace {

struct OracleSearch {
    const FiniteMetricSpace& X;
    const std::vector<PartialIsometry>& P;
    const std::vector<Dist>& pool;
    std::vector<std::pair<int, bool>> gens;  // symbol index, self-inverse
    int n = 0, s = 0;
    DistMatrix d;
    std::size_t candidates = 0;
    std::optional<SExtension> found;

    bool complete() {
        ++candidates;
        FiniteMetricSpace Y;
        for (int i = 0; i < s; ++i) Y.labels.push_back("y" + std::to_string(i));
        Y.dist = d;
        std::vector<Perm> chosen;
        for (const auto& [idx, self] : gens) {
            auto g = find_isometry_extending(Y, P[idx].pairs, self);
            if (!g) return false;
            chosen.push_back(*g);
        }
        SExtension E;
        E.base = X;
        E.space = Y;
        E.embed.resize(n);
        for (int i = 0; i < n; ++i) E.embed[i] = i;
        E.P = P;
        E.smap.assign(P.size(), {});
        for (std::size_t k = 0; k < gens.size(); ++k) {
            int idx = gens[k].first;
            E.smap[idx] = chosen[k];
            auto inv = std::lower_bound(P.begin(), P.end(), P[idx].inverse()) - P.begin();
            E.smap[inv] = inverse(chosen[k]);
        }
        found = std::move(E);
        return true;
    }

    bool rows_ordered(int k) const {
        if (k == n) return true;
        for (int j = 0; j < n; ++j) {
            if (d[k - 1][j] != d[k][j]) return d[k - 1][j] < d[k][j];
        }
        return true;
    }

    bool fill(int k, int j) {
        if (k == s) return complete();
        if (j == k) return fill(k + 1, 0);
        for (const Dist& v : pool) {
            bool ok = true;
            for (int i = 0; i < j && ok; ++i) {
                const Dist& a = d[k][i];
                const Dist& b = d[i][j];
                ok = v <= a + b && a <= v + b && b <= a + v;
            }
            if (!ok) continue;
            d[k][j] = d[j][k] = v;
            if (j == n - 1 && !rows_ordered(k)) continue;
            if (fill(k, j + 1)) return true;
        }
        return false;
    }
};

}  // namespace

OracleReport brute_force_s_extension(const FiniteMetricSpace& X, const std::vector<PartialIsometry>& P_in,
                                     int max_size, std::optional<std::vector<Dist>> pool_in) {
    if (max_size > 7) throw Error(Errc::TooLarge, "oracle max_size above 7");
    std::vector<PartialIsometry> P = P_in;
    std::sort(P.begin(), P.end());
    std::vector<Dist> pool = pool_in ? *pool_in : default_distance_pool(X);
    OracleSearch o{X, P, pool, {}, 0, 0, {}, 0, std::nullopt};
    o.n = X.size();
    for (std::size_t i = 0; i < P.size(); ++i) {
        auto inv = P[i].inverse();
        auto it = std::lower_bound(P.begin(), P.end(), inv);
        if (it == P.end() || *it != inv) throw Error(Errc::InvalidGenSet, "P is not closed under inverses");
        if (*it >= P[i]) o.gens.emplace_back(static_cast<int>(i), *it == P[i]);
    }
    // Larger domains are the most constraining.
    std::stable_sort(o.gens.begin(), o.gens.end(),
                     [&](const auto& a, const auto& b) { return P[a.first].size() > P[b.first].size(); });
    OracleReport report;
    for (int s = o.n; s <= max_size; ++s) {
        if (s > o.n && pool.empty()) throw Error(Errc::PoolEmpty, "no candidate distances");
        report.max_size_reached = s;
        o.s = s;
        o.d.assign(s, std::vector<Dist>(s, Dist(0)));
        for (int i = 0; i < o.n; ++i) {
            for (int j = 0; j < o.n; ++j) o.d[i][j] = X.d(i, j);
        }
        if (o.fill(o.n, 0)) break;
    }
    report.candidates = o.candidates;
    report.found = std::move(o.found);
    return report;
}

}  // namespace sext
