#pragma once

#include <vector>

#include "sext/extension.hpp"
#include "sext/metric.hpp"
#include "sext/weighted_graph.hpp"

namespace sext {

bool is_ultrametric(const FiniteMetricSpace& X);

// Closed r-balls, ordered by least member; members ascending. The quotient is
// labelled by least members.
struct BallPartition {
    Dist r;
    std::vector<std::vector<int>> blocks;
    std::vector<int> block_of;
    FiniteMetricSpace quotient;
};

BallPartition ball_partition(const FiniteMetricSpace& Y, const Dist& r);

struct HomogeneousExtension {
    FiniteMetricSpace space;
    std::vector<int> embed;
};

// Homogeneous ultrametric space with the same distance set as X, containing X.
// Points are pairs (quotient point, ball point) with labels "(u,b)".
HomogeneousExtension homogeneous_extension(const FiniteMetricSpace& X);

// Isometry of Y extending p, built level by level from the smallest distance; free
// points are matched in increasing order, so a self-inverse p gets an involution.
// Throws NotHomogeneous when two balls of one radius differ in size.
Perm extend_partial_isometry_ultra(const FiniteMetricSpace& Y, const PartialIsometry& p);

// d(x,y) = least over paths of the largest edge weight.
FiniteMetricSpace max_path_metric(const WeightedGraph& G);

// A x B with d = max(d_A, d_B); (a,b) has index a * |B| + b.
FiniteMetricSpace max_product(const FiniteMetricSpace& A, const FiniteMetricSpace& B);

// Every point of Y is within < eps of some point of sub.
bool is_net(const FiniteMetricSpace& Y, const std::vector<int>& sub, const Dist& eps);

// S-extension of X on homogeneous_extension(X), P = P_X, phi by the ultrametric
// extension above (inverse members get inverse maps).
SExtension ultra_s_extension(const FiniteMetricSpace& X);

struct UltraStage {
    SExtension ext;
    std::vector<int> y_inj;  // Y1 -> Y2
    HomogeneousExtension ball;
};

// Y2 = Y1 x B where B is the homogeneous extension of X2 with X1 collapsed to one
// point under the maximum path metric. Old symbols act as phi1 x id, the rest of
// P_X2 by the ultrametric extension. Throws NotNet unless every point of X2 is
// within < eps of X1, and DistanceBelowEps when Y1 has a distance below eps.
UltraStage epsnet_coherent_extension(const SExtension& E1, const FiniteMetricSpace& X2,
                                     const std::vector<int>& x_inj, const Dist& eps);

struct UltraTower {
    std::vector<SExtension> stages;
    std::vector<std::vector<int>> y_inj;  // Y_k -> Y_{k+1}
    std::vector<Dist> eps;                // eps_k = 2^-k for the step from stage k
};

// nets[0] ⊆ nets[1] ⊆ ... through inj[k]: nets[k] -> nets[k+1]. Every stage is
// minimalized before the next step.
UltraTower compact_stage_pipeline(const std::vector<FiniteMetricSpace>& nets,
                                  const std::vector<std::vector<int>>& inj);

}  // namespace sext
