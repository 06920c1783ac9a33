#pragma once

#include <cstddef>
#include <optional>
#include <tuple>
#include <vector>

#include "sext/metric.hpp"

namespace sext {

// Search for total permutations of Omega = {0..degree-1} that extend given partial
// maps, such that labelling every pair orbit of the generated group by the seeded
// distances is consistent and no labelled path undercuts a seeded distance. Any
// solution is realized by the path metric of the labelled orbital graph.
struct CompletionProblem {
    int degree = 0;
    std::vector<std::vector<int>> partial;  // searched maps, -1 = open
    std::vector<char> involutive;           // searched map must square to 1
    std::vector<Perm> fixed;                // maps known in full
    std::vector<std::tuple<int, int, Dist>> seeds;
    int fresh_from = -1;                    // points >= fresh_from are interchangeable until used; -1 disables
};

enum class CompletionStatus { Found, Exhausted, BudgetHit };

struct CompletionOutcome {
    CompletionStatus status = CompletionStatus::Exhausted;
    std::vector<Perm> perms;  // completed searched maps when Found
    std::size_t nodes = 0;
};

CompletionOutcome complete_action(const CompletionProblem& problem, std::size_t node_budget);

// Same acceptance test for fully specified maps.
bool action_consistent(int degree, const std::vector<Perm>& perms,
                       const std::vector<std::tuple<int, int, Dist>>& seeds);

struct OrbitRealization {
    FiniteMetricSpace space;
    std::vector<int> index;   // omega point -> point of space, -1 outside the orbit
    std::vector<Perm> perms;  // restricted to the orbit
};

// Path metric of the labelled orbital graph on the orbit of root. Throws
// ConflictingWeight when two seeds land in one pair orbit with different labels.
OrbitRealization realize_orbit(int degree, const std::vector<Perm>& perms,
                               const std::vector<std::tuple<int, int, Dist>>& seeds, int root,
                               const std::string& prefix = "y");

}  // namespace sext
