#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "sext/group.hpp"
#include "sext/metric.hpp"
#include "sext/weighted_graph.hpp"

namespace sext {

// smap[i] is the isometry assigned to P[i]; P is sorted canonically.
struct SExtension {
    FiniteMetricSpace base;
    FiniteMetricSpace space;
    std::vector<int> embed;
    std::vector<PartialIsometry> P;
    std::vector<Perm> smap;
    int a0 = 0;
    std::optional<FiniteQuotient> quotient;  // certificate, over genset_of(*this)

    const Perm& image(const PartialIsometry& p) const;  // throws InvalidInput if p is not in P
    bool operator==(const SExtension&) const = default;
};

GenSet genset_of(const SExtension& E);

// Word map of E as a quotient of F(P): generator g goes to smap of its representative.
FiniteQuotient word_map(const SExtension& E, const GenSet& P);

enum class ConditionKind { C1, C2, C3 };

struct ConditionInstance {
    ConditionKind kind;
    CosetPattern pattern;
    std::vector<int> points;  // C1: a,b,c,d; C2: a,b; C3: a,b,c1,d1,...,cn,dn
};

// Word t_a per point with t_a(a0) = a: the smallest symbol sending a0 to a, or the
// transversal word when no single symbol does. t_{a0} is empty.
std::vector<Word> point_representatives(const FiniteMetricSpace& X, const GenSet& P);

// Same, with nullopt for points outside the orbit of a0 under P.
std::vector<std::optional<Word>> reachable_representatives(const FiniteMetricSpace& X, const GenSet& P);

// Cosets pH depend only on p(a0), so one representative per point covers every
// symbol tuple; instances are enumerated over point tuples.
std::vector<ConditionInstance> condition_instances(const FiniteMetricSpace& X, const GenSet& P);

// Index of the first instance whose product set meets ker(psi), or nullopt.
std::optional<std::size_t> first_violated(const FiniteQuotient& psi, const FiniteMetricSpace& X,
                                          const GenSet& P, const std::vector<ConditionInstance>& inst,
                                          std::size_t closure_cap = kDefaultClosureCap);

// Left cosets of psi(H) in the image group, with the action of each generator.
struct CosetAction {
    std::vector<Perm> reps;      // one element per coset; base coset first
    std::vector<Perm> action;    // per free generator
    std::vector<int> embed;      // X point -> coset of psi(t_a), -1 when unreachable
    std::size_t subgroup_order = 0;
    std::size_t group_order = 0;
};

// Throws TooLarge beyond max_cosets cosets (0 = unlimited).
CosetAction coset_action(const FiniteQuotient& psi, const FiniteMetricSpace& X, const GenSet& P,
                         std::size_t closure_cap = kDefaultClosureCap, std::size_t max_cosets = 0);

struct CosetGraph {
    CosetAction cosets;
    WeightedGraph graph;  // w_N
};

// Throws CollapsedPoints when e is not injective and ConflictingWeight when
// translated edges disagree.
CosetGraph coset_graph(const FiniteQuotient& psi, const FiniteMetricSpace& X, const GenSet& P,
                       std::size_t closure_cap = kDefaultClosureCap);

// Additionally throws NotReduced when w_N admits a shortcut; never repaired.
SExtension build_extension_from_quotient(const FiniteQuotient& psi, const FiniteMetricSpace& X,
                                         const GenSet& P, std::size_t closure_cap = kDefaultClosureCap);

struct SearchBudget {
    int max_degree = 32;
    std::size_t max_candidates = 2'000'000;
    std::uint64_t seed = 1;
    std::size_t closure_cap = kDefaultClosureCap;
    int bootstrap_size = -1;  // oracle tier up to this size; -1 = |X| + 1, 0 disables
};

// The searched maps: maximal members of P up to inversion, plus maximal self-inverse
// members not inside a self-inverse maximal one. Every symbol lies in one of them,
// self-inverse symbols in a self-inverse one.
struct SearchGenerators {
    std::vector<PartialIsometry> maps;
    std::vector<char> involutive;
    std::vector<int> generator_source;  // free generator -> searched map
    std::vector<char> generator_inverted;
};

SearchGenerators search_generators(const FiniteMetricSpace& X, const GenSet& P);

struct QuotientWitness {
    FiniteQuotient psi;
    std::vector<int> omega;  // X point -> point of {0..degree-1}
    std::string tier;        // "bootstrap", "completion" or "random"
    std::size_t candidates = 0;
};

// psi acts on {0..degree-1} extending P through omega, with consistent orbital
// labels and no shortcut between X points; such psi is admissible. Throws
// BudgetExhausted when every tier fails within budget.
QuotientWitness find_admissible_quotient(const FiniteMetricSpace& X, const GenSet& P,
                                         const SearchBudget& budget = {});

// Realization on the orbit of a0 of a witness; this is the quotient of the coset
// graph by the pseudometric pulled back from the action.
SExtension action_extension(const QuotientWitness& w, const FiniteMetricSpace& X, const GenSet& P);

enum class Route { Auto, Quotient, Action };

struct ExtendResult {
    SExtension ext;
    QuotientWitness witness;
    Route route = Route::Auto;  // route actually taken
};

// Auto builds the coset graph when it has at most max_points cosets, otherwise the
// action realization.
ExtendResult extend(const FiniteMetricSpace& X, const GenSet& P, const SearchBudget& budget = {},
                    Route route = Route::Auto, int max_points = 64);

struct VerifyReport {
    bool ok = true;
    bool full_partials = false;  // P is all of P_X and every member extends
    std::vector<std::string> violations;
};

VerifyReport verify_s_extension(const SExtension& E);

bool is_minimal(const SExtension& E);

// Restriction to the orbit of the embedded base under the generated group.
SExtension minimalize(const SExtension& E);

// rho(g1 K, g2 K) = d_Y(phi(g1)(a0), phi(g2)(a0)); throws IncompatibleQuotient when
// the coset-to-point map is not well defined.
PseudoMetric induced_pseudometric(const SExtension& E, const FiniteQuotient& psi,
                                  std::size_t closure_cap = kDefaultClosureCap);

// Metric identification of the cosets under rho; rho must be invariant (NotInvariant)
// and agree with w_N on edges (NotConsistent).
SExtension quotient_extension(const FiniteQuotient& psi, const FiniteMetricSpace& X, const GenSet& P,
                              const PseudoMetric& rho, std::size_t closure_cap = kDefaultClosureCap);

// Equivariant isometry Y1 -> Y2 commuting with the embeddings, if any.
std::optional<Perm> isomorphism_check(const SExtension& E1, const SExtension& E2);

}  // namespace sext
