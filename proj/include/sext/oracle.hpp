#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sext/extension.hpp"
#include "sext/metric.hpp"

namespace sext {

constexpr int kDefaultIsoCap = 10;

// Isometry of Y extending the given pairs, lowest images first; with involution set
// the result squares to the identity.
std::optional<Perm> find_isometry_extending(const FiniteMetricSpace& Y,
                                            const std::vector<std::pair<int, int>>& pairs,
                                            bool involution = false);

// Every isometry of Y in lexicographic order. Throws TooLarge above cap points.
std::vector<Perm> brute_force_iso_group(const FiniteMetricSpace& Y, int cap = kDefaultIsoCap);

// Iso(Y) is transitive, decided one target point at a time.
bool is_homogeneous(const FiniteMetricSpace& Y, int cap = kDefaultIsoCap);

// Every member of P_Y extends to an isometry of Y.
bool all_partials_extend(const FiniteMetricSpace& Y, int cap = kDefaultIsoCap);

// Sums of at most ceil(diam/min) distances of X that do not exceed diam(X).
std::vector<Dist> default_distance_pool(const FiniteMetricSpace& X);

struct OracleReport {
    std::optional<SExtension> found;
    std::size_t candidates = 0;
    int max_size_reached = 0;
};

// Smallest Y on X plus extra points with distances from the pool admitting an
// assignment of isometries to P (involutions for self-inverse members). X occupies
// the first points of Y.
OracleReport brute_force_s_extension(const FiniteMetricSpace& X, const std::vector<PartialIsometry>& P,
                                     int max_size, std::optional<std::vector<Dist>> pool = std::nullopt);

}  // namespace sext
