#include "sext/weighted_graph.hpp"

#include <algorithm>
#include <queue>

namespace sext {

WeightedGraph::WeightedGraph(int vertices, bool allow_zero) : allow_zero_(allow_zero), adj_(vertices) {
    for (int i = 0; i < vertices; ++i) labels_.push_back("v" + std::to_string(i));
}

WeightedGraph::WeightedGraph(std::vector<std::string> labels, bool allow_zero)
    : labels_(std::move(labels)), allow_zero_(allow_zero), adj_(labels_.size()) {}

void WeightedGraph::add_edge(int u, int v, const Dist& w) {
    if (u < 0 || v < 0 || u >= size() || v >= size()) throw Error(Errc::InvalidInput, "edge endpoint out of range");
    if (u == v) throw Error(Errc::InvalidInput, "self-loop at " + labels_[u]);
    if (w < Dist(0) || (w == Dist(0) && !allow_zero_)) {
        throw Error(Errc::InvalidInput, "nonpositive weight on " + labels_[u] + "-" + labels_[v]);
    }
    auto key = std::minmax(u, v);
    auto it = edges_.find(key);
    if (it != edges_.end()) {
        if (it->second != w) {
            throw Error(Errc::ConflictingEdge, labels_[u] + "-" + labels_[v] + ": " + format_dist(it->second) +
                                                   " vs " + format_dist(w));
        }
        return;
    }
    edges_.emplace(key, w);
    adj_[u].emplace_back(v, w);
    adj_[v].emplace_back(u, w);
}

bool WeightedGraph::connected() const {
    if (size() <= 1) return true;
    std::vector<char> seen(size(), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (const auto& [v, w] : adj_[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == size();
}

Dist WeightedGraph::min_weight() const {
    if (edges_.empty()) throw Error(Errc::NoEdges, "graph has no edges");
    Dist m = edges_.begin()->second;
    for (const auto& [k, w] : edges_) m = std::min(m, w);
    return m;
}

Dist WeightedGraph::max_weight() const {
    if (edges_.empty()) throw Error(Errc::NoEdges, "graph has no edges");
    Dist m = edges_.begin()->second;
    for (const auto& [k, w] : edges_) m = std::max(m, w);
    return m;
}

bool is_pseudometric(const PseudoMetric& M) {
    const int n = M.size();
    if (static_cast<int>(M.pdist.size()) != n) return false;
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(M.pdist[i].size()) != n || M.pdist[i][i] != Dist(0)) return false;
        for (int j = 0; j < n; ++j) {
            if (M.pdist[i][j] < Dist(0) || M.pdist[i][j] != M.pdist[j][i]) return false;
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                if (M.pdist[i][k] > M.pdist[i][j] + M.pdist[j][k]) return false;
            }
        }
    }
    return true;
}

std::vector<std::optional<Dist>> shortest_paths(const WeightedGraph& G, int src) {
    using Item = std::pair<Dist, int>;
    std::vector<std::optional<Dist>> dist(G.size());
    std::vector<char> done(G.size(), 0);
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[src] = Dist(0);
    pq.emplace(Dist(0), src);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = 1;
        for (const auto& [v, w] : G.adjacency()[u]) {
            Dist nd = d + w;
            if (!dist[v] || nd < *dist[v]) {
                dist[v] = nd;
                pq.emplace(nd, v);
            }
        }
    }
    return dist;
}

PseudoMetric path_metric(const WeightedGraph& G) {
    const int n = G.size();
    PseudoMetric M{G.labels(), DistMatrix(n, std::vector<Dist>(n, Dist(0)))};
    if (n <= 1) return M;
    const Dist bound = G.max_weight();
    for (int s = 0; s < n; ++s) {
        auto sp = shortest_paths(G, s);
        for (int t = 0; t < n; ++t) {
            if (t == s) continue;
            M.pdist[s][t] = sp[t] ? std::min(bound, *sp[t]) : bound;
        }
    }
    return M;
}

WeightedGraph reduce_weights(const WeightedGraph& G) {
    if (!G.connected()) throw Error(Errc::Disconnected, "reduce_weights needs a connected graph");
    WeightedGraph R(G.labels(), G.allow_zero());
    if (G.edges().empty()) return R;
    PseudoMetric M = path_metric(G);
    for (const auto& [key, w] : G.edges()) R.add_edge(key.first, key.second, M.pdist[key.first][key.second]);
    return R;
}

bool is_reduced(const WeightedGraph& G) {
    for (int s = 0; s < G.size(); ++s) {
        auto sp = shortest_paths(G, s);
        for (const auto& [v, w] : G.adjacency()[s]) {
            if (*sp[v] < w) return false;
        }
    }
    return true;
}

Identification metric_identification(const PseudoMetric& M, const std::vector<Perm>& maps) {
    const int n = M.size();
    for (std::size_t k = 0; k < maps.size(); ++k) {
        const Perm& f = maps[k];
        bool ok = static_cast<int>(f.size()) == n && is_permutation(f);
        for (int i = 0; ok && i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                if (M.pdist[f[i]][f[j]] != M.pdist[i][j]) {
                    ok = false;
                    break;
                }
            }
        }
        if (!ok) throw Error(Errc::NotPseudoIsometry, "map " + std::to_string(k));
    }
    Identification out;
    out.projection.assign(n, -1);
    std::vector<int> reps;
    for (int i = 0; i < n; ++i) {
        if (out.projection[i] >= 0) continue;
        int c = static_cast<int>(reps.size());
        reps.push_back(i);
        for (int j = i; j < n; ++j) {
            if (M.pdist[i][j] == Dist(0)) out.projection[j] = c;
        }
    }
    const int m = static_cast<int>(reps.size());
    FiniteMetricSpace S;
    S.dist.assign(m, std::vector<Dist>(m));
    for (int a = 0; a < m; ++a) {
        S.labels.push_back(M.points[reps[a]]);
        for (int b = 0; b < m; ++b) S.dist[a][b] = M.pdist[reps[a]][reps[b]];
    }
    out.space = validate_metric(std::move(S.labels), std::move(S.dist));
    for (const Perm& f : maps) {
        Perm g(m);
        for (int a = 0; a < m; ++a) g[a] = out.projection[f[reps[a]]];
        out.induced.push_back(std::move(g));
    }
    return out;
}

}  // namespace sext
