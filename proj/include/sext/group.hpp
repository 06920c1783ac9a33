#pragma once

#include <cstddef>
#include <optional>
#include <unordered_set>
#include <vector>

#include "sext/metric.hpp"

namespace sext {

struct PermHash {
    std::size_t operator()(const Perm& p) const noexcept;
};
using PermSet = std::unordered_set<Perm, PermHash>;

// Letters are +(g+1) and -(g+1) for free generator g; the rightmost letter acts first.
using Word = std::vector<int>;

Word reduce_word(Word w);
Word inverse_word(const Word& w);
Word concat(const Word& a, const Word& b);

// Symmetric generator set P over X with base point a0. Each inverse pair {p, p^-1}
// becomes one free generator represented by its canonically smaller member; a
// self-inverse p is flagged involutive and must be sent to an involution.
struct GenSet {
    int base = 0;
    std::vector<PartialIsometry> symbols;
    std::vector<int> inverse_of;   // symbol -> symbol
    std::vector<int> letter_of;    // symbol -> letter
    std::vector<int> rep;          // generator -> symbol
    std::vector<char> involutive;  // generator -> p == p^-1

    int num_generators() const { return static_cast<int>(rep.size()); }
    const PartialIsometry& action(int letter) const;
    int symbol_of(const PartialIsometry& p) const;  // -1 if absent
};

// Throws InvalidGenSet unless P = P^-1, P avoids sub-identities, and (when
// require_reach) every point other than a0 is p(a0) for some p in P.
GenSet make_genset(const FiniteMetricSpace& X, std::vector<PartialIsometry> P, int base,
                   bool require_reach = true);

// P = every nonidentity partial isometry of X.
GenSet standard_genset(const FiniteMetricSpace& X, int base = 0);

std::optional<int> evaluate_word(const GenSet& P, const Word& w, int x);

struct StabilizerGens {
    std::vector<Word> gens;
};

// Spanning-tree words t_x with t_x(a0) = x, from breadth-first search over letters
// in the order +1, -1, +2, -2, ...; unreachable points get nullopt.
std::vector<std::optional<Word>> transversal(const FiniteMetricSpace& X, const GenSet& P);

// One loop word per non-tree edge of the partial-action graph, in edge order.
StabilizerGens stabilizer_generators(const FiniteMetricSpace& X, const GenSet& P);

struct FiniteQuotient {
    int degree = 1;
    std::vector<Perm> images;  // one per free generator

    Perm letter(int l) const;
    Perm image(const Word& w) const;
    bool operator==(const FiniteQuotient&) const = default;
};

FiniteQuotient trivial_quotient(const GenSet& P);

constexpr std::size_t kDefaultClosureCap = 1'000'000;

// All elements of <gens>, identity first, breadth-first.
std::vector<Perm> subgroup_closure(const std::vector<Perm>& gens, int degree,
                                   std::size_t cap = kDefaultClosureCap);

struct PatternItem {
    bool hslot = false;
    Word word;  // used when !hslot

    static PatternItem H() { return {true, {}}; }
    static PatternItem W(Word w) { return {false, std::move(w)}; }
};
using CosetPattern = std::vector<PatternItem>;

// Folds the pattern into a subset of Sym(m) (H-slots become psi(H)) and reports
// whether the identity lies in it, i.e. whether ker(psi) meets the product set.
bool contains_identity_in_coset_product(const FiniteQuotient& psi, const StabilizerGens& H,
                                        const CosetPattern& pattern,
                                        std::size_t closure_cap = kDefaultClosureCap);

}  // namespace sext
