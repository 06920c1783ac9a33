#include <doctest.h>

#include "sext/extension.hpp"
#include "sext/oracle.hpp"
#include "support.hpp"

using namespace sext;
using fixture::q;

namespace {

const std::vector<Dist> kValues{q(1), q(3, 2), q(2), q(3)};

SExtension build(const FiniteMetricSpace& X, const GenSet& P, const FiniteQuotient& psi) {
    return build_extension_from_quotient(psi, X, P);
}

// Square 0-1-2-3 with sides 1 and diagonals 2 over the path 0,1,2 based at 1;
// a reflection and a rotation generate the dihedral group of order 8 while H is trivial.
SExtension dihedral_over_path() {
    SExtension E;
    E.base = fixture::path3();
    E.space = fixture::space({{q(0), q(1), q(2), q(1)}, {q(1), q(0), q(1), q(2)},
                              {q(2), q(1), q(0), q(1)}, {q(1), q(2), q(1), q(0)}}, "y");
    E.embed = {0, 1, 2};
    E.a0 = 1;
    E.P = {PartialIsometry({{0, 1}}), PartialIsometry({{1, 0}}), PartialIsometry({{1, 2}}),
           PartialIsometry({{2, 1}})};
    const Perm s01{1, 0, 3, 2}, r{1, 2, 3, 0};
    E.smap = {s01, s01, r, inverse(r)};
    return E;
}

}  // namespace

TEST_CASE("condition instances") {
    const auto X1 = fixture::point();
    CHECK(condition_instances(X1, standard_genset(X1)).empty());

    const auto X2 = fixture::pair();
    const auto I2 = condition_instances(X2, standard_genset(X2));
    CHECK(std::any_of(I2.begin(), I2.end(), [](auto& c) { return c.kind == ConditionKind::C2; }));
    // One distance only: every C1 instance compares it with a zero distance, and no C3 exists.
    for (const auto& c : I2) {
        CHECK(c.kind != ConditionKind::C3);
        if (c.kind == ConditionKind::C1) {
            CHECK((X2.d(c.points[0], c.points[1]) == Dist(0) || X2.d(c.points[2], c.points[3]) == Dist(0)));
        }
    }

    const auto X3 = fixture::path3();
    const auto I3 = condition_instances(X3, standard_genset(X3));
    CHECK(std::any_of(I3.begin(), I3.end(), [](auto& c) { return c.kind == ConditionKind::C3; }));
    for (const auto& c : I3) {
        if (c.kind == ConditionKind::C3) {
            Dist total(0);
            for (std::size_t i = 2; i < c.points.size(); i += 2) total += X3.d(c.points[i], c.points[i + 1]);
            CHECK(X3.d(c.points[0], c.points[1]) > total);
        }
        if (c.kind == ConditionKind::C1) {
            CHECK(X3.d(c.points[0], c.points[1]) != X3.d(c.points[2], c.points[3]));
        }
    }
}

TEST_CASE("quotients for the smallest spaces") {
    const auto X1 = fixture::point();
    const GenSet P1 = standard_genset(X1);
    const auto w1 = find_admissible_quotient(X1, P1);
    CHECK(w1.psi.degree == 1);
    const auto E1 = build(X1, P1, w1.psi);
    CHECK(E1.space.size() == 1);
    CHECK(E1.smap.empty());

    const auto X2 = fixture::pair();
    const GenSet P2 = standard_genset(X2);
    FiniteQuotient swap{2, std::vector<Perm>(P2.num_generators(), Perm{1, 0})};
    CHECK_FALSE(first_violated(swap, X2, P2, condition_instances(X2, P2)));
    const auto E2 = build(X2, P2, swap);
    CHECK(E2.space.size() == 2);
    CHECK(E2.space.d(0, 1) == q(1));
    CHECK(verify_s_extension(E2).ok);
    CHECK(verify_s_extension(E2).full_partials);
    CHECK(first_violated(trivial_quotient(P2), X2, P2, condition_instances(X2, P2)));
}

TEST_CASE("path of three points: oracle bootstrap and completion both give 4 points") {
    const auto X = fixture::path3();
    const GenSet P = standard_genset(X);
    const auto boot = find_admissible_quotient(X, P);
    CHECK(boot.tier == "bootstrap");
    CHECK(boot.psi.degree == 4);
    const auto E = build(X, P, boot.psi);
    CHECK(E.space.size() == 4);
    CHECK(verify_s_extension(E).full_partials);

    SearchBudget b;
    b.bootstrap_size = 0;
    const auto comp = find_admissible_quotient(X, P, b);
    CHECK(comp.tier == "completion");
    CHECK(comp.psi.degree <= 8);
    CHECK(verify_s_extension(build(X, P, comp.psi)).ok);
}

TEST_CASE("verify flags corrupted and incomplete extensions") {
    const auto X = fixture::pair();
    const GenSet P = standard_genset(X);
    SExtension E = extend(X, P).ext;
    CHECK(verify_s_extension(E).ok);
    std::swap(E.smap[0][0], E.smap[0][1]);
    E.smap[0] = identity_perm(2);
    const auto r = verify_s_extension(E);
    CHECK_FALSE(r.ok);
    CHECK(std::any_of(r.violations.begin(), r.violations.end(),
                      [](auto& v) { return v.find("does not extend") != std::string::npos; }));

    // X itself with the end swap: fine for P = {x0->x2, x2->x0, swap}, not for P_X.
    const auto Y = fixture::path3();
    SExtension S;
    S.base = S.space = Y;
    S.embed = {0, 1, 2};
    S.P = {PartialIsometry({{0, 2}}), PartialIsometry({{0, 2}, {2, 0}}), PartialIsometry({{2, 0}})};
    S.smap = std::vector<Perm>(3, Perm{2, 1, 0});
    CHECK(verify_s_extension(S).ok);
    CHECK_FALSE(verify_s_extension(S).full_partials);
    S.P = enumerate_partial_isometries(Y);
    S.smap.assign(S.P.size(), Perm{2, 1, 0});
    CHECK_FALSE(verify_s_extension(S).ok);
}

TEST_CASE("minimalize") {
    const auto X = fixture::path3();
    const GenSet P = standard_genset(X);
    const SExtension E = extend(X, P).ext;
    CHECK(is_minimal(E));
    CHECK(minimalize(E) == E);

    // A far point fixed by every image is dropped.
    SExtension F = E;
    const int n = F.space.size();
    for (auto& row : F.space.dist) row.push_back(q(10));
    F.space.dist.push_back(std::vector<Dist>(n + 1, q(10)));
    F.space.dist[n][n] = q(0);
    F.space.labels.push_back("far");
    for (auto& g : F.smap) g.push_back(n);
    F.quotient.reset();
    CHECK(verify_s_extension(F).ok);
    CHECK_FALSE(is_minimal(F));
    const auto M = minimalize(F);
    CHECK(M.space.size() == n);
    CHECK(is_minimal(M));
    CHECK(verify_s_extension(M).ok);

    const auto oracle = brute_force_s_extension(X, P.symbols, 4);
    REQUIRE(oracle.found);
    CHECK(minimalize(*oracle.found).space == oracle.found->space);
}

TEST_CASE("induced pseudometric of a bijective construction is the coset metric") {
    const auto X = fixture::path3();
    const GenSet P = standard_genset(X);
    const auto r = extend(X, P);
    REQUIRE(r.route == Route::Quotient);
    const auto rho = induced_pseudometric(r.ext, r.witness.psi);
    CHECK(rho.pdist == r.ext.space.dist);
    for (const auto& g : r.ext.smap)
        for (int a = 0; a < rho.size(); ++a)
            for (int b = 0; b < rho.size(); ++b) CHECK(rho.pdist[g[a]][g[b]] == rho.pdist[a][b]);
    const auto back = quotient_extension(r.witness.psi, X, P, rho);
    CHECK(isomorphism_check(back, r.ext));
}

TEST_CASE("a collapsing pseudometric identifies cosets and still yields the extension") {
    const SExtension E = dihedral_over_path();
    REQUIRE(verify_s_extension(E).ok);
    REQUIRE(is_minimal(E));
    const GenSet P = make_genset(E.base, E.P, E.a0);
    const FiniteQuotient psi = word_map(E, P);
    const auto rho = induced_pseudometric(E, psi);
    CHECK(rho.size() == 8);
    int zeros = 0;
    for (int a = 0; a < rho.size(); ++a)
        for (int b = a + 1; b < rho.size(); ++b) zeros += rho.pdist[a][b] == Dist(0);
    CHECK(zeros == 4);
    const auto Q = quotient_extension(psi, E.base, P, rho);
    CHECK(Q.space.size() == 4);
    CHECK(verify_s_extension(Q).ok);
    CHECK(isomorphism_check(Q, E));

    PseudoMetric skewed = rho;
    skewed.pdist[0][1] = skewed.pdist[1][0] = skewed.pdist[0][1] + q(1, 2);
    CHECK_THROWS_AS(quotient_extension(psi, E.base, P, skewed), Error);
}

TEST_CASE("isomorphism_check") {
    const auto X = fixture::pair();
    const GenSet P = standard_genset(X);
    const SExtension E = extend(X, P).ext;
    CHECK(isomorphism_check(E, E) == identity_perm(E.space.size()));

    SExtension R = E;  // relabelled copy with the two points exchanged
    const Perm pi{1, 0};
    R.space.labels = {E.space.labels[1], E.space.labels[0]};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) R.space.dist[pi[a]][pi[b]] = E.space.dist[a][b];
    for (auto& e : R.embed) e = pi[e];
    for (std::size_t i = 0; i < R.smap.size(); ++i)
        for (int y = 0; y < 2; ++y) R.smap[i][pi[y]] = pi[E.smap[i][y]];
    CHECK(isomorphism_check(E, R) == pi);

    // Degree-4 bootstrap witness against a completion witness for the same path.
    const auto Y = fixture::path3();
    const GenSet Q = standard_genset(Y);
    SearchBudget b;
    b.bootstrap_size = 0;
    const auto A = extend(Y, Q).ext, B = extend(Y, Q, b).ext;
    if (A.space.size() == B.space.size()) CHECK(isomorphism_check(A, B));
    else CHECK_FALSE(isomorphism_check(A, B));
}

TEST_CASE("constructions over random small spaces: soundness, reducedness, embedding, kernel conditions") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        const auto X = fixture::random_space(rng, 1 + trial % 4, kValues);
        const GenSet P = standard_genset(X);
        SearchBudget b;
        b.seed = trial + 1;
        const auto w = find_admissible_quotient(X, P, b);
        const auto cg = coset_graph(w.psi, X, P);
        CHECK((cg.graph.size() <= 1 || is_reduced(cg.graph)));
        const auto E = build(X, P, w.psi);
        for (int a = 0; a < X.size(); ++a)
            for (int c = 0; c < X.size(); ++c) CHECK(E.space.d(E.embed[a], E.embed[c]) == X.d(a, c));
        CHECK(verify_s_extension(E).full_partials);
        CHECK(fixture::independently_valid(E));
        CHECK(is_minimal(E));
        CHECK(fixture::orbit_of_base(E).size() == static_cast<std::size_t>(E.space.size()));
        CHECK_FALSE(first_violated(word_map(E, P), X, P, condition_instances(X, P)));
        const auto oracle = brute_force_s_extension(X, P.symbols, std::min(7, X.size() + 2));
        if (oracle.found) CHECK(E.space.size() >= oracle.found->space.size());
    }
}

TEST_CASE("the construction does not depend on the base point") {
    for (const auto& X : {fixture::path3(), fixture::ultra3()}) {
        const GenSet P0 = standard_genset(X, 0);
        const auto w = find_admissible_quotient(X, P0);
        for (int a = 1; a < X.size(); ++a) {
            const GenSet Pa = standard_genset(X, a);
            REQUIRE(Pa.rep == P0.rep);
            CHECK_FALSE(first_violated(w.psi, X, Pa, condition_instances(X, Pa)));
            const auto E0 = build(X, P0, w.psi), Ea = build(X, Pa, w.psi);
            CHECK(E0.space.size() == Ea.space.size());
            SExtension rebased = Ea;
            rebased.a0 = 0;
            CHECK(isomorphism_check(E0, rebased));
        }
    }
}

TEST_CASE("routes and determinism") {
    const auto X = fixture::space({{q(0), q(1), q(2), q(3)}, {q(1), q(0), q(1), q(2)},
                                   {q(2), q(1), q(0), q(1)}, {q(3), q(2), q(1), q(0)}});
    const GenSet P = standard_genset(X);
    const auto a = extend(X, P, {}, Route::Quotient);
    const auto b = extend(X, P, {}, Route::Action);
    CHECK(a.route == Route::Quotient);
    CHECK(b.route == Route::Action);
    CHECK(verify_s_extension(a.ext).full_partials);
    CHECK(verify_s_extension(b.ext).full_partials);
    CHECK(extend(X, P, {}, Route::Quotient).ext == a.ext);

    SearchBudget tiny;
    tiny.max_degree = 3;
    tiny.max_candidates = 5;
    tiny.bootstrap_size = 0;
    try {
        extend(X, P, tiny);
        FAIL("expected BudgetExhausted");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BudgetExhausted);
    }
}
