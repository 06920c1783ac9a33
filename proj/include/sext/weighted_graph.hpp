#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sext/metric.hpp"

namespace sext {

// Undirected simple graph with exact weights; one weight per unordered pair.
class WeightedGraph {
public:
    explicit WeightedGraph(int vertices, bool allow_zero = false);
    WeightedGraph(std::vector<std::string> labels, bool allow_zero = false);

    // Throws ConflictingEdge if the pair already carries a different weight.
    void add_edge(int u, int v, const Dist& w);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::map<std::pair<int, int>, Dist>& edges() const { return edges_; }
    const std::vector<std::vector<std::pair<int, Dist>>>& adjacency() const { return adj_; }
    bool allow_zero() const { return allow_zero_; }
    bool connected() const;
    Dist min_weight() const;  // L_w
    Dist max_weight() const;  // B_w

private:
    std::vector<std::string> labels_;
    bool allow_zero_;
    std::map<std::pair<int, int>, Dist> edges_;
    std::vector<std::vector<std::pair<int, Dist>>> adj_;
};

// Symmetric, zero diagonal, triangle inequality; zero off-diagonal allowed.
struct PseudoMetric {
    std::vector<std::string> points;
    DistMatrix pdist;

    int size() const { return static_cast<int>(points.size()); }
};

bool is_pseudometric(const PseudoMetric& M);

// Least weight-sum from src; nullopt for unreachable vertices.
std::vector<std::optional<Dist>> shortest_paths(const WeightedGraph& G, int src);

// d_w(x,y) = min(B_w, shortest path); unreachable pairs get B_w.
PseudoMetric path_metric(const WeightedGraph& G);

// Edge weights replaced by d_w; requires a connected graph.
WeightedGraph reduce_weights(const WeightedGraph& G);

// Every edge weight is at most every alternative path sum.
bool is_reduced(const WeightedGraph& G);

struct Identification {
    FiniteMetricSpace space;
    std::vector<int> projection;   // point -> class
    std::vector<Perm> induced;     // one per input map, acting on classes
};

// Quotient by rho = 0; maps must preserve pdist exactly.
Identification metric_identification(const PseudoMetric& M, const std::vector<Perm>& maps);

}  // namespace sext
