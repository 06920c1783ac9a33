#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sext/extension.hpp"

namespace sext {

// phi(p) o phi(q) = phi(r) whenever p o q = r exactly with r in P.
bool is_strongly_coherent(const SExtension& E);

// Image of a partial isometry under a point injection.
PartialIsometry transport(const PartialIsometry& p, const std::vector<int>& inj);

// The subgroup of K1 x K2 generated by (a_i, b_i) is the graph of an injective
// homomorphism: it has no (1, k) and no (k, 1) with k != 1.
bool pairs_define_embedding(const std::vector<Perm>& a, const std::vector<Perm>& b,
                            std::size_t closure_cap = kDefaultClosureCap);

struct CoherenceReport {
    bool ok = true;
    std::vector<int> y_inj;  // Y1 -> Y2, empty when it could not be determined
    std::vector<std::string> violations;
};

// E1 over X1, E2 over X2, x_inj: X1 -> X2 with P1 carried into P2. Without y_inj the
// embedding Y1 -> Y2 is forced by e1(a0) -> e2(x_inj(a0)) and equivariance, which
// reaches all of Y1 when E1 is minimal.
CoherenceReport check_coherence(const SExtension& E1, const SExtension& E2, const std::vector<int>& x_inj,
                                std::optional<std::vector<int>> y_inj = std::nullopt,
                                std::size_t closure_cap = kDefaultClosureCap);

bool is_coherent(const SExtension& E1, const SExtension& E2, const std::vector<int>& x_inj,
                 std::optional<std::vector<int>> y_inj = std::nullopt);

struct CoherentResult {
    SExtension ext;
    std::vector<int> y_inj;
    Route route = Route::Auto;
    std::size_t candidates = 0;
};

// Gamma_{N2} for a given psi2: cosets reached from the base by P1 symbols are sent
// to Y1, rho2 is seeded by rho1 there, by w_{N2} on edges and by 0 between a point
// of X2 and the Y1 point it is identified with (y_ident: Y1 -> X2 or -1), closed
// under the action, then turned into the path pseudometric and identified.
// old_symbol maps a P2 symbol to its index in E1.P, or -1 when new. Throws
// IncompatibleSeed when seeds disagree and TooLarge beyond max_cosets cosets.
CoherentResult seeded_quotient_extension(const SExtension& E1, const FiniteMetricSpace& X2,
                                         const std::vector<int>& y_ident, const GenSet& P2,
                                         const std::vector<int>& old_symbol, const FiniteQuotient& psi2,
                                         std::size_t closure_cap = kDefaultClosureCap,
                                         std::size_t max_cosets = 0);

// P2 must contain every member of E1.P carried by x_inj and have base x_inj(a0).
// Y1 and X2 share only the points of X1 unless y_ident says otherwise. The
// quotient is searched as an action on Y1 plus copies of Y1 plus fixed points, with
// the old symbols acting by phi1 on every copy; only new symbols are searched.
CoherentResult coherent_extension(const SExtension& E1, const FiniteMetricSpace& X2, const std::vector<int>& x_inj,
                                  const GenSet& P2, const SearchBudget& budget = {}, Route route = Route::Auto,
                                  int max_points = 64, std::vector<int> y_ident = {});

// K1 is carried into Sym(degree) by old_images (one per member of E1.P, or E1.smap
// itself when empty and degree = |Y1|); k must lie outside that image. When
// generators is nonempty it must generate the same group as the old images and k.
struct GroupSpec {
    int degree = 0;
    std::vector<Perm> old_images;
    Perm k;
    std::vector<Perm> generators;
};

struct GroupExtension {
    SExtension ext;            // over X2 = Y1 plus one point
    std::vector<int> x_inj;    // X1 -> X2
    std::vector<int> y_inj;    // Y1 -> Y2
    std::size_t image_order = 0;
};

// X2 = Y1 plus a point at distance diam(Y1) (1 when Y1 is a point) from all of Y1,
// P2 = P1 plus l = {(a0, a)} and its inverse, phi2 = phi1 on P1 and l -> k.
GroupExtension extend_group_by_one(const SExtension& E1, const GroupSpec& G2,
                                   std::size_t closure_cap = kDefaultClosureCap);

}  // namespace sext
