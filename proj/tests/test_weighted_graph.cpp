#include <doctest.h>

#include "sext/weighted_graph.hpp"
#include "support.hpp"

using namespace sext;
using fixture::q;

namespace {

WeightedGraph triangle(Dist a, Dist b, Dist c) {
    WeightedGraph G(3);
    G.add_edge(0, 1, a);
    G.add_edge(1, 2, b);
    G.add_edge(0, 2, c);
    return G;
}

WeightedGraph random_graph(std::mt19937_64& rng, int n, double density) {
    WeightedGraph G(n);
    std::bernoulli_distribution edge(density);
    std::uniform_int_distribution<int> w(1, 6);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (edge(rng)) G.add_edge(i, j, q(w(rng), 2));
    if (G.edges().empty()) G.add_edge(0, n - 1, q(1));
    return G;
}

Dist sum(const Dist& a, const Dist& b) { return a + b; }

}  // namespace

TEST_CASE("path_metric examples") {
    WeightedGraph one(2);
    one.add_edge(0, 1, q(3));
    CHECK(path_metric(one).pdist[0][1] == q(3));

    CHECK(path_metric(triangle(q(1), q(1), q(5))).pdist[0][2] == q(2));

    WeightedGraph split(3);
    split.add_edge(1, 2, q(2));
    const auto M = path_metric(split);
    CHECK(M.pdist[0][1] == q(2));
    CHECK(M.pdist[0][2] == q(2));

    CHECK_THROWS_AS(path_metric(WeightedGraph(2)), Error);
    CHECK(path_metric(WeightedGraph(1)).size() == 1);
}

TEST_CASE("edges reject conflicts and self-loops") {
    WeightedGraph G(2);
    G.add_edge(0, 1, q(1));
    CHECK_NOTHROW(G.add_edge(1, 0, q(1)));
    CHECK_THROWS_AS(G.add_edge(0, 1, q(2)), Error);
    CHECK_THROWS_AS(G.add_edge(0, 0, q(1)), Error);
    CHECK_THROWS_AS(G.add_edge(0, 1, q(0)), Error);
    WeightedGraph Z(2, true);
    CHECK_NOTHROW(Z.add_edge(0, 1, q(0)));
}

TEST_CASE("reduce_weights examples") {
    const auto R = reduce_weights(triangle(q(1), q(1), q(5)));
    CHECK(R.edges().at({0, 2}) == q(2));
    CHECK(R.edges().at({0, 1}) == q(1));
    CHECK(is_reduced(R));
    CHECK_FALSE(is_reduced(triangle(q(1), q(1), q(5))));

    WeightedGraph path(3);
    path.add_edge(0, 1, q(1));
    path.add_edge(1, 2, q(1));
    CHECK(reduce_weights(path).edges() == path.edges());

    WeightedGraph split(3);
    split.add_edge(1, 2, q(1));
    CHECK_THROWS_AS(reduce_weights(split), Error);
}

TEST_CASE("a metric read as a complete graph is reduced and returns itself") {
    const auto X = fixture::space({{q(0), q(1), q(2), q(3, 2)}, {q(1), q(0), q(1), q(3, 2)},
                                   {q(2), q(1), q(0), q(1)}, {q(3, 2), q(3, 2), q(1), q(0)}});
    WeightedGraph G(X.labels);
    for (int i = 0; i < X.size(); ++i)
        for (int j = i + 1; j < X.size(); ++j) G.add_edge(i, j, X.d(i, j));
    CHECK(is_reduced(G));
    CHECK(path_metric(G).pdist == X.dist);
}

TEST_CASE("path metric agrees with simple-path enumeration; reduced iff edges are tight") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 2 + trial % 7;
        const auto G = random_graph(rng, n, 0.5);
        const auto M = path_metric(G);
        CHECK(is_pseudometric(M));
        const auto best = fixture::naive_paths(n, G.edges(), sum);
        const Dist B = G.max_weight();
        bool tight = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Dist expect = best[i][j] ? std::min(B, *best[i][j]) : B;
                CHECK(M.pdist[i][j] == (i == j ? q(0) : expect));
            }
        for (const auto& [uv, w] : G.edges()) {
            CHECK(M.pdist[uv.first][uv.second] <= w);
            tight = tight && M.pdist[uv.first][uv.second] == w;
        }
        CHECK(tight == is_reduced(G));
        if (G.connected()) {
            const auto R = reduce_weights(G);
            CHECK(is_reduced(R));
            CHECK(reduce_weights(R).edges() == R.edges());
            for (const auto& [uv, w] : G.edges()) CHECK(R.edges().at(uv) <= w);
        }
    }
}

TEST_CASE("reduce_weights is the largest reduced function below w") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + trial % 3;
        WeightedGraph G = random_graph(rng, n, 0.7);
        if (!G.connected()) continue;
        const auto R = reduce_weights(G);
        std::vector<std::pair<std::pair<int, int>, Dist>> edges(G.edges().begin(), G.edges().end());
        // Every reduced w' <= w with values on a grid lies below w*.
        std::function<void(std::size_t, WeightedGraph&)> rec = [&](std::size_t k, WeightedGraph& H) {
            if (k == edges.size()) {
                if (!is_reduced(H)) return;
                for (const auto& [uv, w] : H.edges()) CHECK(w <= R.edges().at(uv));
                return;
            }
            for (int v = 1; v <= 6; ++v) {
                const Dist w = q(v, 2);
                if (w > edges[k].second) break;
                WeightedGraph next = H;
                next.add_edge(edges[k].first.first, edges[k].first.second, w);
                rec(k + 1, next);
            }
        };
        if (edges.size() <= 5) {
            WeightedGraph H(n);
            rec(0, H);
        }
    }
}

TEST_CASE("metric_identification") {
    PseudoMetric zero{{"a", "b", "c"}, DistMatrix(3, std::vector<Dist>(3, q(0)))};
    const auto I = metric_identification(zero, {identity_perm(3)});
    CHECK(I.space.size() == 1);

    const auto X = fixture::path3();
    const auto J = metric_identification(PseudoMetric{X.labels, X.dist}, {});
    CHECK(J.space.dist == X.dist);

    // Pairs {0,1} and {2,3} at distance 0 inside, 1 across.
    DistMatrix d(4, std::vector<Dist>(4, q(1)));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i / 2 == j / 2) d[i][j] = q(0);
    const auto K = metric_identification(PseudoMetric{{"a", "b", "c", "d"}, d}, {{2, 3, 0, 1}});
    CHECK(K.space.size() == 2);
    CHECK(K.space.d(0, 1) == q(1));
    CHECK(K.induced[0] == Perm{1, 0});
    CHECK(K.projection[0] == K.projection[1]);

    CHECK_THROWS_AS(metric_identification(PseudoMetric{X.labels, X.dist}, {{1, 0, 2}}), Error);
}
