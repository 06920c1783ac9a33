#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sext/error.hpp"

namespace sext {

// Exact nonnegative distance; boost keeps it in lowest terms.
using Dist = boost::rational<std::int64_t>;
using DistMatrix = std::vector<std::vector<Dist>>;

// Accepts "n" or "p/q".
Dist parse_dist(const std::string& text);
std::string format_dist(const Dist& d);

// Total map on point indices; perm[i] is the image of i.
using Perm = std::vector<int>;

Perm identity_perm(int n);
// (a * b)(x) = a(b(x))
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& a);
bool is_identity(const Perm& a);
bool is_permutation(const Perm& a);

struct FiniteMetricSpace {
    std::vector<std::string> labels;
    DistMatrix dist;

    int size() const { return static_cast<int>(labels.size()); }
    const Dist& d(int i, int j) const { return dist[i][j]; }
    int index_of(const std::string& label) const;  // -1 if absent
    bool operator==(const FiniteMetricSpace&) const = default;
};

FiniteMetricSpace validate_metric(std::vector<std::string> labels, DistMatrix matrix);

// Labels "x0", "x1", ... for ad hoc spaces.
FiniteMetricSpace make_space(const DistMatrix& matrix, const std::string& prefix = "x");

FiniteMetricSpace subspace(const FiniteMetricSpace& X, const std::vector<int>& points);

Dist diameter(const FiniteMetricSpace& X);

// Strictly increasing off-diagonal values.
std::vector<Dist> distance_set(const FiniteMetricSpace& X);

bool is_isometry(const FiniteMetricSpace& X, const Perm& p);

// Pairs are kept sorted by source so equal maps compare equal.
struct PartialIsometry {
    std::vector<std::pair<int, int>> pairs;

    PartialIsometry() = default;
    explicit PartialIsometry(std::vector<std::pair<int, int>> p);

    std::optional<int> apply(int x) const;
    std::optional<int> preimage(int y) const;
    PartialIsometry inverse() const;
    bool is_subidentity() const;
    bool extended_by(const Perm& g) const;
    std::vector<int> domain() const;
    std::size_t size() const { return pairs.size(); }

    auto operator<=>(const PartialIsometry&) const = default;
};

bool is_partial_isometry(const FiniteMetricSpace& X, const PartialIsometry& p);

// All nonidentity partial isometries with nonempty domain, in canonical order.
std::vector<PartialIsometry> enumerate_partial_isometries(const FiniteMetricSpace& X);

struct Composition {
    PartialIsometry map;
    bool subidentity = false;
};

// {(x, p(q(x)))}; nullopt when no x survives.
std::optional<Composition> compose_partial(const PartialIsometry& p, const PartialIsometry& q);

std::string format_partial(const FiniteMetricSpace& X, const PartialIsometry& p);

}  // namespace sext
