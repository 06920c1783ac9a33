#include "sext/completion.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "sext/weighted_graph.hpp"

namespace sext {

namespace {

using Scaled = std::int64_t;
constexpr Scaled kInf = std::numeric_limits<Scaled>::max() / 4;

struct TrailEntry {
    int kind;  // 0 = union, 1 = map
    int a, b;
    Scaled old_label;
    int old_size;
};

class Completer {
public:
    Completer(const CompletionProblem& p, std::size_t budget) : prob_(p), m_(p.degree), budget_(budget) {
        const int G = static_cast<int>(p.partial.size());
        fw_.assign(G, std::vector<int>(m_, -1));
        bw_.assign(G, std::vector<int>(m_, -1));
        parent_.resize(static_cast<std::size_t>(m_) * m_);
        std::iota(parent_.begin(), parent_.end(), 0);
        size_.assign(parent_.size(), 1);
        label_.assign(parent_.size(), -1);

        std::int64_t scale = 1;
        for (const auto& s : p.seeds) scale = std::lcm(scale, std::get<2>(s).denominator());
        for (const auto& [a, b, d] : p.seeds) {
            seeds_.emplace_back(a, b, d.numerator() * (scale / d.denominator()));
            sources_.push_back(a);
        }
        std::sort(sources_.begin(), sources_.end());
        sources_.erase(std::unique(sources_.begin(), sources_.end()), sources_.end());
    }

    CompletionOutcome run() {
        CompletionOutcome out;
        if (!setup()) return out;
        bool found = false;
        try {
            found = rec();
        } catch (const BudgetSignal&) {
            out.status = CompletionStatus::BudgetHit;
            out.nodes = nodes_;
            return out;
        }
        out.nodes = nodes_;
        if (!found) return out;
        out.status = CompletionStatus::Found;
        out.perms = fw_;
        return out;
    }

private:
    struct BudgetSignal {};

    int pid(int x, int y) const { return x < y ? x * m_ + y : y * m_ + x; }

    int find(int x) const {
        while (parent_[x] != x) x = parent_[x];
        return x;
    }

    bool unite(int u, int v) {
        int ru = find(u), rv = find(v);
        if (ru == rv) return true;
        Scaled lu = label_[ru], lv = label_[rv];
        if (lu >= 0 && lv >= 0 && lu != lv) return false;
        if (size_[ru] < size_[rv]) std::swap(ru, rv);
        trail_.push_back({0, rv, ru, label_[ru], size_[ru]});
        parent_[rv] = ru;
        size_[ru] += size_[rv];
        if ((lu >= 0) != (lv >= 0)) dirty_ = true;
        if (label_[ru] < 0) label_[ru] = label_[rv];
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            TrailEntry t = trail_.back();
            trail_.pop_back();
            if (t.kind == 0) {
                parent_[t.a] = t.a;
                size_[t.b] = t.old_size;
                label_[t.b] = t.old_label;
            } else {
                bw_[t.a][fw_[t.a][t.b]] = -1;
                fw_[t.a][t.b] = -1;
            }
        }
    }

    bool add_map(int g, int x, int y) {
        fw_[g][x] = y;
        bw_[g][y] = x;
        trail_.push_back({1, g, x, 0, 0});
        const auto& f = fw_[g];
        for (int z = 0; z < m_; ++z) {
            if (z != x && f[z] >= 0 && !unite(pid(x, z), pid(y, f[z]))) return false;
        }
        if (prob_.involutive[g] && x != y) {
            if (fw_[g][y] < 0) {
                if (bw_[g][x] >= 0) return false;
                return add_map(g, y, x);
            }
            if (fw_[g][y] != x) return false;
        }
        return true;
    }

    bool no_shortcut() {
        if (!dirty_) return true;
        std::vector<std::vector<std::pair<int, Scaled>>> adj(m_);
        for (int x = 0; x < m_; ++x) {
            for (int y = x + 1; y < m_; ++y) {
                Scaled l = label_[find(pid(x, y))];
                if (l >= 0) {
                    adj[x].emplace_back(y, l);
                    adj[y].emplace_back(x, l);
                }
            }
        }
        std::vector<Scaled> dist(m_);
        std::vector<char> done(m_);
        for (int s : sources_) {
            std::fill(dist.begin(), dist.end(), kInf);
            std::fill(done.begin(), done.end(), 0);
            dist[s] = 0;
            for (int it = 0; it < m_; ++it) {
                int u = -1;
                for (int v = 0; v < m_; ++v) {
                    if (!done[v] && (u < 0 || dist[v] < dist[u])) u = v;
                }
                if (u < 0 || dist[u] >= kInf) break;
                done[u] = 1;
                for (const auto& [v, w] : adj[u]) dist[v] = std::min(dist[v], dist[u] + w);
            }
            for (const auto& [a, b, l] : seeds_) {
                if ((a == s && dist[b] < l) || (b == s && dist[a] < l)) return false;
            }
        }
        dirty_ = false;
        return true;
    }

    bool setup() {
        for (const auto& [a, b, l] : seeds_) {
            if (a == b) return false;
            int r = find(pid(a, b));
            if (label_[r] >= 0 && label_[r] != l) return false;
            label_[r] = l;
        }
        for (const Perm& f : prob_.fixed) {
            for (int x = 0; x < m_; ++x) {
                for (int y = x + 1; y < m_; ++y) {
                    if (!unite(pid(x, y), pid(f[x], f[y]))) return false;
                }
            }
        }
        for (std::size_t g = 0; g < prob_.partial.size(); ++g) {
            for (int x = 0; x < m_; ++x) {
                int y = prob_.partial[g][x];
                if (y < 0 || fw_[g][x] == y) continue;
                if (fw_[g][x] >= 0 || bw_[g][y] >= 0) return false;
                if (!add_map(static_cast<int>(g), x, y)) return false;
            }
        }
        dirty_ = true;
        return no_shortcut();
    }

    int used_max() const {
        int mx = prob_.fresh_from - 1;
        for (const auto& f : fw_) {
            for (int z = 0; z < m_; ++z) {
                if (f[z] >= 0) mx = std::max({mx, z, f[z]});
            }
        }
        return mx;
    }

    bool rec() {
        if (++nodes_ > budget_) throw BudgetSignal{};
        const bool fresh = prob_.fresh_from >= 0;
        const int um = fresh ? used_max() : m_;
        int best_g = -1, best_x = -1;
        std::vector<int> best_opts;
        // With fresh points, only images of used points are chosen; unused points
        // end up fixed, so the search ranges over actions on at most m points.
        const int last = fresh ? std::min(um + 1, m_) : m_;
        for (std::size_t g = 0; g < fw_.size(); ++g) {
            int x = static_cast<int>(std::find(fw_[g].begin(), fw_[g].begin() + last, -1) - fw_[g].begin());
            if (x == last) continue;
            const int bound = fresh ? std::max(um, x) + 1 : m_;
            std::vector<int> opts;
            for (int y = 0; y < m_ && y <= bound; ++y) {
                if (bw_[g][y] < 0) opts.push_back(y);
            }
            if (best_g < 0 || opts.size() < best_opts.size()) {
                best_g = static_cast<int>(g);
                best_x = x;
                best_opts = std::move(opts);
            }
        }
        if (best_g < 0) {
            fix_unused();
            return true;
        }
        for (int y : best_opts) {
            std::size_t mark = trail_.size();
            bool was_dirty = dirty_;
            if (add_map(best_g, best_x, y) && no_shortcut() && rec()) return true;
            undo(mark);
            dirty_ = was_dirty;
        }
        return false;
    }

    void fix_unused() {
        for (auto& f : fw_) {
            for (int z = 0; z < m_; ++z) {
                if (f[z] < 0) f[z] = z;
            }
        }
    }

    const CompletionProblem& prob_;
    int m_;
    std::size_t budget_;
    std::size_t nodes_ = 0;
    std::vector<std::vector<int>> fw_, bw_;
    std::vector<int> parent_, size_;
    std::vector<Scaled> label_;
    std::vector<TrailEntry> trail_;
    std::vector<std::tuple<int, int, Scaled>> seeds_;
    std::vector<int> sources_;
    bool dirty_ = true;
};

}  // namespace

CompletionOutcome complete_action(const CompletionProblem& problem, std::size_t node_budget) {
    if (problem.involutive.size() != problem.partial.size()) {
        throw Error(Errc::InvalidInput, "involutive flags do not match searched maps");
    }
    for (const auto& f : problem.partial) {
        if (static_cast<int>(f.size()) != problem.degree) throw Error(Errc::InvalidInput, "partial map has wrong degree");
    }
    for (const auto& f : problem.fixed) {
        if (static_cast<int>(f.size()) != problem.degree || !is_permutation(f)) {
            throw Error(Errc::InvalidInput, "fixed map is not a permutation of the right degree");
        }
    }
    return Completer(problem, node_budget).run();
}

bool action_consistent(int degree, const std::vector<Perm>& perms,
                       const std::vector<std::tuple<int, int, Dist>>& seeds) {
    CompletionProblem p;
    p.degree = degree;
    p.fixed = perms;
    p.seeds = seeds;
    return complete_action(p, 1).status == CompletionStatus::Found;
}

OrbitRealization realize_orbit(int degree, const std::vector<Perm>& perms,
                               const std::vector<std::tuple<int, int, Dist>>& seeds, int root,
                               const std::string& prefix) {
    std::vector<char> in(degree, 0);
    std::vector<int> stack{root};
    in[root] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const Perm& f : perms) {
            if (!in[f[x]]) {
                in[f[x]] = 1;
                stack.push_back(f[x]);
            }
        }
    }
    OrbitRealization out;
    out.index.assign(degree, -1);
    std::vector<int> pts;
    for (int x = 0; x < degree; ++x) {
        if (in[x]) {
            out.index[x] = static_cast<int>(pts.size());
            pts.push_back(x);
        }
    }
    const int k = static_cast<int>(pts.size());
    for (const Perm& f : perms) {
        Perm g(k);
        for (int i = 0; i < k; ++i) g[i] = out.index[f[pts[i]]];
        out.perms.push_back(std::move(g));
    }
    std::vector<std::vector<std::optional<Dist>>> lab(k, std::vector<std::optional<Dist>>(k));
    std::vector<std::pair<int, int>> queue;
    auto assign = [&](int u, int v, const Dist& d) {
        if (lab[u][v]) {
            if (*lab[u][v] != d) {
                throw Error(Errc::ConflictingWeight, prefix + std::to_string(u) + "-" + prefix + std::to_string(v) +
                                                         ": " + format_dist(*lab[u][v]) + " vs " + format_dist(d));
            }
            return;
        }
        lab[u][v] = lab[v][u] = d;
        queue.emplace_back(u, v);
    };
    for (const auto& [a, b, d] : seeds) {
        if (out.index[a] >= 0 && out.index[b] >= 0) assign(out.index[a], out.index[b], d);
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        auto [u, v] = queue[i];
        Dist d = *lab[u][v];
        for (const Perm& g : out.perms) assign(g[u], g[v], d);
    }
    std::vector<std::string> labels;
    for (int i = 0; i < k; ++i) labels.push_back(prefix + std::to_string(i));
    WeightedGraph G(labels);
    for (int u = 0; u < k; ++u) {
        for (int v = u + 1; v < k; ++v) {
            if (lab[u][v]) G.add_edge(u, v, *lab[u][v]);
        }
    }
    PseudoMetric M = path_metric(G);
    out.space = validate_metric(std::move(M.points), std::move(M.pdist));
    return out;
}

}  // namespace sext
