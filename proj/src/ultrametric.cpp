#include "sext/ultrametric.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "sext/coherent.hpp"

namespace sext {

bool is_ultrametric(const FiniteMetricSpace& X) {
    const int n = X.size();
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                if (X.d(i, j) > std::max(X.d(i, k), X.d(k, j))) return false;
            }
        }
    }
    return true;
}

BallPartition ball_partition(const FiniteMetricSpace& Y, const Dist& r) {
    if (!is_ultrametric(Y)) throw Error(Errc::NotUltrametric, "ball partition needs an ultrametric");
    BallPartition B;
    B.r = r;
    B.block_of.assign(Y.size(), -1);
    for (int x = 0; x < Y.size(); ++x) {
        if (B.block_of[x] >= 0) continue;
        const int b = static_cast<int>(B.blocks.size());
        B.blocks.emplace_back();
        for (int y = x; y < Y.size(); ++y) {
            if (Y.d(x, y) <= r) {
                B.block_of[y] = b;
                B.blocks[b].push_back(y);
            }
        }
    }
    const int m = static_cast<int>(B.blocks.size());
    std::vector<std::string> labels;
    DistMatrix d(m, std::vector<Dist>(m, Dist(0)));
    for (int a = 0; a < m; ++a) {
        labels.push_back(Y.labels[B.blocks[a][0]]);
        for (int b = 0; b < m; ++b) {
            if (a != b) d[a][b] = Y.d(B.blocks[a][0], B.blocks[b][0]);
        }
    }
    B.quotient = validate_metric(std::move(labels), std::move(d));
    return B;
}

FiniteMetricSpace max_product(const FiniteMetricSpace& A, const FiniteMetricSpace& B) {
    const int na = A.size(), nb = B.size(), n = na * nb;
    std::vector<std::string> labels;
    labels.reserve(n);
    DistMatrix d(n, std::vector<Dist>(n, Dist(0)));
    for (int a = 0; a < na; ++a) {
        for (int b = 0; b < nb; ++b) {
            labels.push_back("(" + A.labels[a] + "," + B.labels[b] + ")");
            for (int c = 0; c < na; ++c) {
                for (int e = 0; e < nb; ++e) d[a * nb + b][c * nb + e] = std::max(A.d(a, c), B.d(b, e));
            }
        }
    }
    return validate_metric(std::move(labels), std::move(d));
}

HomogeneousExtension homogeneous_extension(const FiniteMetricSpace& X) {
    if (!is_ultrametric(X)) throw Error(Errc::NotUltrametric, "homogeneous extension needs an ultrametric");
    const auto D = distance_set(X);
    if (D.size() <= 1) return {X, identity_perm(X.size())};
    const Dist r = D.front();
    const BallPartition B = ball_partition(X, r);
    const HomogeneousExtension H1 = homogeneous_extension(B.quotient);

    // First largest ball supplies the labels of the equilateral factor.
    int widest = 0;
    for (std::size_t b = 1; b < B.blocks.size(); ++b) {
        if (B.blocks[b].size() > B.blocks[widest].size()) widest = static_cast<int>(b);
    }
    const int N = static_cast<int>(B.blocks[widest].size());
    std::vector<std::string> ball_labels;
    DistMatrix e(N, std::vector<Dist>(N, r));
    for (int i = 0; i < N; ++i) {
        ball_labels.push_back(X.labels[B.blocks[widest][i]]);
        e[i][i] = Dist(0);
    }
    const FiniteMetricSpace E = validate_metric(std::move(ball_labels), std::move(e));

    HomogeneousExtension H{max_product(H1.space, E), std::vector<int>(X.size())};
    for (std::size_t b = 0; b < B.blocks.size(); ++b) {
        for (std::size_t i = 0; i < B.blocks[b].size(); ++i) {
            H.embed[B.blocks[b][i]] = H1.embed[b] * N + static_cast<int>(i);
        }
    }
    return H;
}

namespace {

Perm extend_ultra_rec(const FiniteMetricSpace& Y, const std::vector<std::pair<int, int>>& pairs) {
    const int n = Y.size();
    std::vector<int> img(n, -1), pre(n, -1);
    for (const auto& [x, y] : pairs) {
        img[x] = y;
        pre[y] = x;
    }
    const auto D = distance_set(Y);
    Perm f(n, -1);
    auto match = [&](const std::vector<int>& from, const std::vector<int>& to) {
        std::vector<int> src, dst;
        for (int x : from) {
            if (img[x] >= 0) f[x] = img[x];
            else src.push_back(x);
        }
        for (int y : to) {
            if (pre[y] < 0) dst.push_back(y);
        }
        for (std::size_t i = 0; i < src.size(); ++i) f[src[i]] = dst[i];
    };
    if (D.size() <= 1) {
        const Perm all = identity_perm(n);
        match(all, all);
        return f;
    }
    const BallPartition B = ball_partition(Y, D.front());
    for (const auto& ball : B.blocks) {
        if (ball.size() != B.blocks[0].size()) {
            throw Error(Errc::NotHomogeneous, "balls of radius " + format_dist(D.front()) + " differ in size");
        }
    }
    std::map<int, int> induced;
    for (const auto& [x, y] : pairs) induced[B.block_of[x]] = B.block_of[y];
    const Perm f1 = extend_ultra_rec(B.quotient, {induced.begin(), induced.end()});
    for (std::size_t b = 0; b < B.blocks.size(); ++b) match(B.blocks[b], B.blocks[f1[b]]);
    return f;
}

// One symbol per inverse pair gets an extension; its partner gets the inverse.
std::vector<Perm> extend_all(const FiniteMetricSpace& Y, const std::vector<PartialIsometry>& P,
                             const std::vector<int>& embed, const std::vector<std::optional<Perm>>& fixed) {
    std::vector<Perm> smap(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) {
        if (fixed[i]) {
            smap[i] = *fixed[i];
            continue;
        }
        const auto inv = P[i].inverse();
        if (inv < P[i]) continue;
        smap[i] = extend_partial_isometry_ultra(Y, transport(P[i], embed));
        if (inv != P[i]) {
            const auto j = std::lower_bound(P.begin(), P.end(), inv) - P.begin();
            smap[j] = inverse(smap[i]);
        }
    }
    return smap;
}

}  // namespace

Perm extend_partial_isometry_ultra(const FiniteMetricSpace& Y, const PartialIsometry& p) {
    if (!is_ultrametric(Y)) throw Error(Errc::NotUltrametric, "extension needs an ultrametric");
    if (!is_partial_isometry(Y, p)) throw Error(Errc::InvalidInput, "not a partial isometry of Y");
    return extend_ultra_rec(Y, p.pairs);
}

FiniteMetricSpace max_path_metric(const WeightedGraph& G) {
    const int n = G.size();
    if (n > 1 && !G.connected()) throw Error(Errc::Disconnected, "maximum path metric needs a connected graph");
    std::vector<std::vector<std::optional<Dist>>> m(n, std::vector<std::optional<Dist>>(n));
    for (int i = 0; i < n; ++i) m[i][i] = Dist(0);
    for (const auto& [uv, w] : G.edges()) m[uv.first][uv.second] = m[uv.second][uv.first] = w;
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            if (!m[i][k]) continue;
            for (int j = 0; j < n; ++j) {
                if (!m[k][j]) continue;
                const Dist via = std::max(*m[i][k], *m[k][j]);
                if (!m[i][j] || via < *m[i][j]) m[i][j] = via;
            }
        }
    }
    DistMatrix d(n, std::vector<Dist>(n));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) d[i][j] = *m[i][j];
    }
    return validate_metric(G.labels(), std::move(d));
}

bool is_net(const FiniteMetricSpace& Y, const std::vector<int>& sub, const Dist& eps) {
    for (int y = 0; y < Y.size(); ++y) {
        if (std::none_of(sub.begin(), sub.end(), [&](int s) { return Y.d(y, s) < eps; })) return false;
    }
    return true;
}

SExtension ultra_s_extension(const FiniteMetricSpace& X) {
    HomogeneousExtension H = homogeneous_extension(X);
    SExtension E;
    E.base = X;
    E.P = enumerate_partial_isometries(X);
    E.smap = extend_all(H.space, E.P, H.embed, std::vector<std::optional<Perm>>(E.P.size()));
    E.space = std::move(H.space);
    E.embed = std::move(H.embed);
    return E;
}

UltraStage epsnet_coherent_extension(const SExtension& E1, const FiniteMetricSpace& X2,
                                     const std::vector<int>& x_inj, const Dist& eps) {
    const FiniteMetricSpace& X1 = E1.base;
    const FiniteMetricSpace& Y1 = E1.space;
    if (!is_ultrametric(X2) || !is_ultrametric(Y1)) throw Error(Errc::NotUltrametric, "X2 and Y1 must be ultrametric");
    if (static_cast<int>(x_inj.size()) != X1.size()) throw Error(Errc::InvalidInput, "x_inj has the wrong length");
    std::vector<int> from_x1(X2.size(), -1);
    for (int i = 0; i < X1.size(); ++i) {
        if (x_inj[i] < 0 || x_inj[i] >= X2.size() || from_x1[x_inj[i]] >= 0) {
            throw Error(Errc::InvalidInput, "x_inj is not an injection into X2");
        }
        from_x1[x_inj[i]] = i;
        for (int j = 0; j < i; ++j) {
            if (X1.d(i, j) != X2.d(x_inj[i], x_inj[j])) throw Error(Errc::InvalidInput, "x_inj is not isometric");
        }
    }
    for (const Dist& v : distance_set(Y1)) {
        if (v < eps) throw Error(Errc::DistanceBelowEps, "Y1 has distance " + format_dist(v) + " below " + format_dist(eps));
    }

    // owner[u]: the point of X1 within < eps of u; unique since X1 is eps-separated.
    std::vector<int> owner(X2.size(), -1);
    for (int u = 0; u < X2.size(); ++u) {
        for (int i = 0; i < X1.size() && owner[u] < 0; ++i) {
            if (X2.d(u, x_inj[i]) < eps) owner[u] = i;
        }
        if (owner[u] < 0) throw Error(Errc::NotNet, X2.labels[u] + " is not within " + format_dist(eps) + " of X1");
    }

    // Vertex 0 is X1 collapsed; then the new points in order.
    std::vector<int> vertex(X2.size(), 0);
    std::vector<std::string> vlabels{X2.labels[x_inj[E1.a0]]};
    for (int u = 0; u < X2.size(); ++u) {
        if (from_x1[u] >= 0) continue;
        vertex[u] = static_cast<int>(vlabels.size());
        vlabels.push_back(X2.labels[u]);
    }
    WeightedGraph G(vlabels);
    std::vector<std::optional<Dist>> to_core(vlabels.size());
    for (int u = 0; u < X2.size(); ++u) {
        if (from_x1[u] >= 0) continue;
        for (int v = u + 1; v < X2.size(); ++v) {
            if (from_x1[v] < 0) G.add_edge(vertex[u], vertex[v], X2.d(u, v));
        }
        for (int x : x_inj) {
            auto& c = to_core[vertex[u]];
            if (!c || X2.d(u, x) < *c) c = X2.d(u, x);
        }
        G.add_edge(0, vertex[u], *to_core[vertex[u]]);
    }

    UltraStage S;
    S.ball = homogeneous_extension(max_path_metric(G));
    const int nb = S.ball.space.size();
    const int base = S.ball.embed[0];

    SExtension& E2 = S.ext;
    E2.base = X2;
    E2.space = max_product(Y1, S.ball.space);
    E2.embed.resize(X2.size());
    for (int u = 0; u < X2.size(); ++u) E2.embed[u] = E1.embed[owner[u]] * nb + S.ball.embed[vertex[u]];
    E2.a0 = x_inj[E1.a0];
    E2.P = enumerate_partial_isometries(X2);

    std::vector<std::optional<Perm>> fixed(E2.P.size());
    for (std::size_t i = 0; i < E1.P.size(); ++i) {
        const auto q = transport(E1.P[i], x_inj);
        const auto it = std::lower_bound(E2.P.begin(), E2.P.end(), q);
        Perm f(E2.space.size());
        for (int y = 0; y < Y1.size(); ++y) {
            for (int b = 0; b < nb; ++b) f[y * nb + b] = E1.smap[i][y] * nb + b;
        }
        fixed[it - E2.P.begin()] = std::move(f);
    }
    E2.smap = extend_all(E2.space, E2.P, E2.embed, fixed);

    S.y_inj.resize(Y1.size());
    for (int y = 0; y < Y1.size(); ++y) S.y_inj[y] = y * nb + base;
    return S;
}

UltraTower compact_stage_pipeline(const std::vector<FiniteMetricSpace>& nets,
                                  const std::vector<std::vector<int>>& inj) {
    if (nets.empty()) throw Error(Errc::InvalidInput, "no stages");
    if (inj.size() + 1 != nets.size()) throw Error(Errc::InvalidInput, "need one injection per step");
    UltraTower T;
    T.stages.push_back(minimalize(ultra_s_extension(nets[0])));
    Dist eps(1, 2);
    for (std::size_t k = 0; k < inj.size(); ++k, eps /= 2) {
        const UltraStage S = epsnet_coherent_extension(T.stages.back(), nets[k + 1], inj[k], eps);
        SExtension M = minimalize(S.ext);
        std::vector<int> y(S.y_inj.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = M.space.index_of(S.ext.space.labels[S.y_inj[i]]);
        T.stages.push_back(std::move(M));
        T.y_inj.push_back(std::move(y));
        T.eps.push_back(eps);
    }
    return T;
}

}  // namespace sext
