#include "sext/coherent.hpp"

#include <algorithm>
#include <map>

#include "sext/completion.hpp"

namespace sext {

namespace {

Perm letter_perm(const std::vector<Perm>& gens, int letter) {
    const Perm& p = gens[std::abs(letter) - 1];
    return letter > 0 ? p : inverse(p);
}

std::vector<Perm> symbol_perms(const GenSet& P, const std::vector<Perm>& gens) {
    std::vector<Perm> out;
    for (int l : P.letter_of) out.push_back(letter_perm(gens, l));
    return out;
}

std::vector<std::string> numbered(const std::string& prefix, int n) {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
    return v;
}

// P2 symbol -> index in E1.P, or -1.
std::vector<int> old_symbols(const SExtension& E1, const GenSet& P2, const std::vector<int>& x_inj) {
    std::vector<int> old(P2.symbols.size(), -1);
    for (std::size_t i = 0; i < E1.P.size(); ++i) {
        int j = P2.symbol_of(transport(E1.P[i], x_inj));
        if (j < 0) throw Error(Errc::InvalidInput, "P2 lacks " + format_partial(E1.base, E1.P[i]));
        old[j] = static_cast<int>(i);
    }
    return old;
}

void check_injection(const FiniteMetricSpace& A, const FiniteMetricSpace& B, const std::vector<int>& inj,
                     const std::string& what) {
    if (static_cast<int>(inj.size()) != A.size()) throw Error(Errc::InvalidInput, what + " has the wrong length");
    for (int a = 0; a < A.size(); ++a) {
        if (inj[a] < 0 || inj[a] >= B.size()) throw Error(Errc::InvalidInput, what + " leaves the target");
        for (int b = 0; b < a; ++b) {
            if (inj[a] == inj[b] || A.d(a, b) != B.d(inj[a], inj[b])) {
                throw Error(Errc::InvalidInput, what + " is not an isometric embedding");
            }
        }
    }
}

}  // namespace

PartialIsometry transport(const PartialIsometry& p, const std::vector<int>& inj) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [x, y] : p.pairs) pairs.emplace_back(inj[x], inj[y]);
    return PartialIsometry(std::move(pairs));
}

bool is_strongly_coherent(const SExtension& E) {
    const auto& P = E.P;
    for (std::size_t i = 0; i < P.size(); ++i) {
        for (std::size_t j = 0; j < P.size(); ++j) {
            auto c = compose_partial(P[i], P[j]);
            if (!c || c->subidentity) continue;
            auto it = std::lower_bound(P.begin(), P.end(), c->map);
            if (it == P.end() || *it != c->map) continue;
            if (compose(E.smap[i], E.smap[j]) != E.smap[it - P.begin()]) return false;
        }
    }
    return true;
}

bool pairs_define_embedding(const std::vector<Perm>& a, const std::vector<Perm>& b, std::size_t closure_cap) {
    if (a.size() != b.size()) throw Error(Errc::InvalidInput, "pair lists differ in length");
    if (a.empty()) return true;
    const int na = static_cast<int>(a[0].size());
    const int nb = static_cast<int>(b[0].size());
    std::vector<Perm> gens;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Perm g = a[i];
        for (int x : b[i]) g.push_back(x + na);
        gens.push_back(std::move(g));
    }
    for (const Perm& g : subgroup_closure(gens, na + nb, closure_cap)) {
        bool left = true, right = true;
        for (int x = 0; x < na; ++x) left = left && g[x] == x;
        for (int x = na; x < na + nb; ++x) right = right && g[x] == x;
        if (left != right) return false;
    }
    return true;
}

CoherenceReport check_coherence(const SExtension& E1, const SExtension& E2, const std::vector<int>& x_inj,
                                std::optional<std::vector<int>> y_inj, std::size_t closure_cap) {
    CoherenceReport r;
    auto fail = [&](std::string m) {
        r.ok = false;
        r.violations.push_back(std::move(m));
    };
    const int n1 = E1.base.size();
    const int k1 = E1.space.size();
    const int k2 = E2.space.size();
    try {
        check_injection(E1.base, E2.base, x_inj, "x_inj");
    } catch (const Error& e) {
        fail(e.what());
        return r;
    }
    std::vector<int> carried(E1.P.size(), -1);
    for (std::size_t i = 0; i < E1.P.size(); ++i) {
        auto q = transport(E1.P[i], x_inj);
        auto it = std::lower_bound(E2.P.begin(), E2.P.end(), q);
        if (it == E2.P.end() || *it != q) {
            fail("P2 lacks " + format_partial(E1.base, E1.P[i]));
        } else {
            carried[i] = static_cast<int>(it - E2.P.begin());
        }
    }
    if (!r.ok) return r;

    std::vector<int> y(k1, -1);
    if (y_inj) {
        y = *y_inj;
        if (static_cast<int>(y.size()) != k1 ||
            std::any_of(y.begin(), y.end(), [&](int v) { return v < 0 || v >= k2; })) {
            fail("y_inj is not a map Y1 -> Y2");
            return r;
        }
    } else {
        y[E1.embed[E1.a0]] = E2.embed[x_inj[E1.a0]];
        std::vector<int> stack{E1.embed[E1.a0]};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (std::size_t i = 0; i < E1.P.size(); ++i) {
                int v = E1.smap[i][u];
                int w = E2.smap[carried[i]][y[u]];
                if (y[v] < 0) {
                    y[v] = w;
                    stack.push_back(v);
                } else if (y[v] != w) {
                    fail("equivariance forces two images for " + E1.space.labels[v]);
                    return r;
                }
            }
        }
        for (int v = 0; v < k1; ++v) {
            if (y[v] < 0) {
                fail(E1.space.labels[v] + " is not reached from the base; supply y_inj");
                return r;
            }
        }
    }
    r.y_inj = y;

    for (int u = 0; u < k1; ++u) {
        for (int v = u + 1; v < k1; ++v) {
            if (y[u] == y[v]) fail("y_inj identifies " + E1.space.labels[u] + " and " + E1.space.labels[v]);
            else if (E1.space.d(u, v) != E2.space.d(y[u], y[v])) {
                fail("y_inj changes the distance " + E1.space.labels[u] + "-" + E1.space.labels[v]);
            }
        }
    }
    for (int x = 0; x < n1; ++x) {
        if (y[E1.embed[x]] != E2.embed[x_inj[x]]) fail("embeddings disagree at " + E1.base.labels[x]);
    }
    for (std::size_t i = 0; i < E1.P.size(); ++i) {
        for (int u = 0; u < k1; ++u) {
            if (E2.smap[carried[i]][y[u]] != y[E1.smap[i][u]]) {
                fail("phi2 does not extend phi1 at " + format_partial(E1.base, E1.P[i]));
                break;
            }
        }
    }
    std::vector<Perm> b;
    for (int c : carried) b.push_back(E2.smap[c]);
    if (!pairs_define_embedding(E1.smap, b, closure_cap)) fail("the generator correspondence is not an embedding");
    return r;
}

bool is_coherent(const SExtension& E1, const SExtension& E2, const std::vector<int>& x_inj,
                 std::optional<std::vector<int>> y_inj) {
    return check_coherence(E1, E2, x_inj, std::move(y_inj)).ok;
}

CoherentResult seeded_quotient_extension(const SExtension& E1, const FiniteMetricSpace& X2,
                                         const std::vector<int>& y_ident, const GenSet& P2,
                                         const std::vector<int>& old_symbol, const FiniteQuotient& psi2,
                                         std::size_t closure_cap, std::size_t max_cosets) {
    const int k1 = E1.space.size();
    if (static_cast<int>(y_ident.size()) != k1) throw Error(Errc::InvalidInput, "y_ident has the wrong length");
    const CosetAction ca = coset_action(psi2, X2, P2, closure_cap, max_cosets);
    const int c = static_cast<int>(ca.reps.size());

    std::vector<int> old_y(c, -1);
    auto base_y = std::find(y_ident.begin(), y_ident.end(), P2.base);
    if (base_y == y_ident.end()) throw Error(Errc::InvalidInput, "the base point of X2 is not a point of Y1");
    old_y[0] = static_cast<int>(base_y - y_ident.begin());
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int g = 0; g < P2.num_generators(); ++g) {
            int s = old_symbol[P2.rep[g]];
            if (s < 0) continue;
            const Perm& f = E1.smap[s];
            const Perm finv = inverse(f);
            const Perm ainv = inverse(ca.action[g]);
            for (auto [v, w] : {std::pair{ca.action[g][u], f[old_y[u]]}, std::pair{ainv[u], finv[old_y[u]]}}) {
                if (old_y[v] < 0) {
                    old_y[v] = w;
                    stack.push_back(v);
                } else if (old_y[v] != w) {
                    throw Error(Errc::IncompatibleSeed, "coset c" + std::to_string(v) + " lies over two points of Y1");
                }
            }
        }
    }

    std::map<std::pair<int, int>, Dist> seed;
    std::vector<std::pair<int, int>> queue;
    auto put = [&](int u, int v, const Dist& d) {
        if (u == v) {
            if (d != Dist(0)) throw Error(Errc::IncompatibleSeed, "nonzero seed on c" + std::to_string(u));
            return;
        }
        if (u > v) std::swap(u, v);
        auto [it, inserted] = seed.emplace(std::pair{u, v}, d);
        if (inserted) {
            queue.emplace_back(u, v);
        } else if (it->second != d) {
            throw Error(Errc::IncompatibleSeed, "c" + std::to_string(u) + "-c" + std::to_string(v) + ": " +
                                                    format_dist(it->second) + " vs " + format_dist(d));
        }
    };
    std::vector<int> old;
    for (int u = 0; u < c; ++u) {
        if (old_y[u] >= 0) old.push_back(u);
    }
    for (std::size_t i = 0; i < old.size(); ++i) {
        for (std::size_t j = i + 1; j < old.size(); ++j) put(old[i], old[j], E1.space.d(old_y[old[i]], old_y[old[j]]));
    }
    for (int a = 0; a < X2.size(); ++a) {
        for (int b = a + 1; b < X2.size(); ++b) {
            if (ca.embed[a] >= 0 && ca.embed[b] >= 0) put(ca.embed[a], ca.embed[b], X2.d(a, b));
        }
    }
    for (int y = 0; y < k1; ++y) {
        int x = y_ident[y];
        if (x < 0 || ca.embed[x] < 0) continue;
        for (int u : old) {
            if (old_y[u] == y) put(ca.embed[x], u, Dist(0));
        }
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        auto [u, v] = queue[i];
        const Dist d = seed.at({u, v});
        for (const Perm& f : ca.action) put(f[u], f[v], d);
    }

    PseudoMetric M{numbered("c", c), DistMatrix(c, std::vector<Dist>(c, Dist(0)))};
    if (c > 1) {
        WeightedGraph G(numbered("c", c), true);
        for (const auto& [e, d] : seed) G.add_edge(e.first, e.second, d);
        M = path_metric(G);
    }
    Identification id = metric_identification(M, ca.action);

    CoherentResult out;
    SExtension& E = out.ext;
    E.base = X2;
    E.space = validate_metric(numbered("y", id.space.size()), std::move(id.space.dist));
    auto over = [&](int y) {
        for (int u : old) {
            if (old_y[u] == y) return id.projection[u];
        }
        return -1;
    };
    for (int x = 0; x < X2.size(); ++x) {
        int e = -1;
        if (ca.embed[x] >= 0) {
            e = id.projection[ca.embed[x]];
        } else {
            auto it = std::find(y_ident.begin(), y_ident.end(), x);
            if (it != y_ident.end()) e = over(static_cast<int>(it - y_ident.begin()));
        }
        if (e < 0) throw Error(Errc::InvalidInput, X2.labels[x] + " is neither reachable nor a point of Y1");
        E.embed.push_back(e);
    }
    E.P = P2.symbols;
    E.smap = symbol_perms(P2, id.induced);
    E.a0 = P2.base;
    E.quotient = psi2;
    for (int y = 0; y < k1; ++y) {
        int e = over(y);
        if (e < 0) throw Error(Errc::InvalidInput, "E1 is not minimal: " + E1.space.labels[y] + " is never reached");
        out.y_inj.push_back(e);
    }
    out.route = Route::Quotient;
    return out;
}

namespace {

// Omega = Y1 in block 0, copies of Y1 in blocks 1..copies, then fixed points.
struct Layout {
    int k = 1;
    int copies = 0;
    int fixed = 0;

    int size() const { return k * (1 + copies) + fixed; }
};

Perm padded(const Perm& f, const Layout& L) {
    Perm g(L.size());
    for (int b = 0; b <= L.copies; ++b) {
        for (int y = 0; y < L.k; ++y) g[b * L.k + y] = b * L.k + f[y];
    }
    for (int j = L.k * (1 + L.copies); j < L.size(); ++j) g[j] = j;
    return g;
}

class OmegaSearch {
public:
    OmegaSearch(const SExtension& E1, const FiniteMetricSpace& X2, const GenSet& P2, const std::vector<int>& old,
                const std::vector<int>& y_ident, const SearchBudget& budget)
        : E1_(E1), X2_(X2), P2_(P2), old_(old), budget_(budget) {
        std::vector<PartialIsometry> fresh;
        for (std::size_t s = 0; s < P2.symbols.size(); ++s) {
            if (old[s] < 0) fresh.push_back(P2.symbols[s]);
        }
        Pn_ = make_genset(X2, fresh, P2.base, false);
        sg_ = search_generators(X2, Pn_);
        base_omega_.assign(X2.size(), -1);
        for (std::size_t y = 0; y < y_ident.size(); ++y) {
            if (y_ident[y] >= 0) base_omega_[y_ident[y]] = static_cast<int>(y);
        }
        for (int x = 0; x < X2.size(); ++x) {
            if (base_omega_[x] < 0) newpts_.push_back(x);
        }
    }

    // Perms per P2 generator on the layout found, or nullopt within budget.
    std::optional<FiniteQuotient> run(std::vector<int>& omega, std::size_t& spent) {
        const int k = E1_.space.size();
        for (int pad = 0; pad <= budget_.max_degree; ++pad) {
            for (int copies = 0; copies * k <= pad; ++copies) {
                if (copies > 0 && k == 1) break;
                Layout L{k, copies, pad - copies * k};
                if (static_cast<int>(newpts_.size()) > pad) continue;
                omega = base_omega_;
                std::vector<char> taken(L.size(), 0);
                for (int x : omega) {
                    if (x >= 0) taken[x] = 1;
                }
                auto r = place(L, 0, 0, 0, omega, taken, spent);
                if (r) return r;
                if (spent >= budget_.max_candidates) return std::nullopt;
            }
        }
        return std::nullopt;
    }

private:
    // New points go in order to the next fixed point or to a free position of a used
    // block or the first unused block.
    std::optional<FiniteQuotient> place(const Layout& L, std::size_t i, int used_blocks, int used_fixed,
                                        std::vector<int>& omega, std::vector<char>& taken, std::size_t& spent) {
        if (spent >= budget_.max_candidates) return std::nullopt;
        if (i == newpts_.size()) return attempt(L, omega, spent);
        const int x = newpts_[i];
        std::vector<std::pair<int, int>> options;  // position, block or -1
        if (used_fixed < L.fixed) options.emplace_back(L.k * (1 + L.copies) + used_fixed, -1);
        for (int b = 1; b <= std::min(used_blocks + 1, L.copies); ++b) {
            for (int y = 0; y < L.k; ++y) {
                if (!taken[b * L.k + y]) options.emplace_back(b * L.k + y, b);
            }
        }
        for (auto [pos, b] : options) {
            omega[x] = pos;
            taken[pos] = 1;
            auto r = place(L, i + 1, std::max(used_blocks, b), used_fixed + (b < 0 ? 1 : 0), omega, taken, spent);
            taken[pos] = 0;
            omega[x] = -1;
            if (r) {
                omega[x] = pos;
                return r;
            }
        }
        return std::nullopt;
    }

    std::optional<FiniteQuotient> attempt(const Layout& L, const std::vector<int>& omega, std::size_t& spent) {
        const int m = L.size();
        CompletionProblem prob;
        prob.degree = m;
        for (std::size_t j = 0; j < sg_.maps.size(); ++j) {
            std::vector<int> f(m, -1);
            for (const auto& [x, y] : sg_.maps[j].pairs) f[omega[x]] = omega[y];
            prob.partial.push_back(std::move(f));
            prob.involutive.push_back(sg_.involutive[j]);
        }
        std::vector<Perm> old_perms(P2_.num_generators());
        for (int g = 0; g < P2_.num_generators(); ++g) {
            int s = old_[P2_.rep[g]];
            if (s < 0) continue;
            old_perms[g] = padded(E1_.smap[s], L);
            prob.fixed.push_back(old_perms[g]);
        }
        const int k = L.k;
        for (int u = 0; u < k; ++u) {
            for (int v = u + 1; v < k; ++v) prob.seeds.emplace_back(u, v, E1_.space.d(u, v));
        }
        for (int a = 0; a < X2_.size(); ++a) {
            for (int b = a + 1; b < X2_.size(); ++b) prob.seeds.emplace_back(omega[a], omega[b], X2_.d(a, b));
        }
        const std::size_t cap = std::max<std::size_t>(4096, budget_.max_candidates / 16);
        auto out = complete_action(prob, std::min(cap, budget_.max_candidates - spent));
        spent += out.nodes;
        if (out.status != CompletionStatus::Found) return std::nullopt;

        FiniteQuotient q;
        q.degree = m;
        for (int g = 0; g < P2_.num_generators(); ++g) {
            const int r = P2_.rep[g];
            if (old_[r] >= 0) {
                q.images.push_back(old_perms[g]);
                continue;
            }
            const int letter = Pn_.letter_of[Pn_.symbol_of(P2_.symbols[r])];
            const int h = std::abs(letter) - 1;
            Perm f = out.perms[sg_.generator_source[h]];
            if (sg_.generator_inverted[h]) f = inverse(f);
            q.images.push_back(letter > 0 ? f : inverse(f));
        }
        return q;
    }

    const SExtension& E1_;
    const FiniteMetricSpace& X2_;
    const GenSet& P2_;
    const std::vector<int>& old_;
    const SearchBudget& budget_;
    GenSet Pn_;
    SearchGenerators sg_;
    std::vector<int> base_omega_;
    std::vector<int> newpts_;
};

}  // namespace

CoherentResult coherent_extension(const SExtension& E1, const FiniteMetricSpace& X2, const std::vector<int>& x_inj,
                                  const GenSet& P2, const SearchBudget& budget, Route route, int max_points,
                                  std::vector<int> y_ident) {
    const int k = E1.space.size();
    check_injection(E1.base, X2, x_inj, "x_inj");
    if (P2.base != x_inj[E1.a0]) throw Error(Errc::InvalidInput, "P2 must be based at the image of a0");
    if (y_ident.empty()) {
        y_ident.assign(k, -1);
        for (int x = 0; x < E1.base.size(); ++x) y_ident[E1.embed[x]] = x_inj[x];
    }
    if (static_cast<int>(y_ident.size()) != k) throw Error(Errc::InvalidInput, "y_ident has the wrong length");
    for (int x = 0; x < E1.base.size(); ++x) {
        if (y_ident[E1.embed[x]] != x_inj[x]) throw Error(Errc::InvalidInput, "y_ident disagrees with x_inj");
    }
    for (int u = 0; u < k; ++u) {
        for (int v = u + 1; v < k; ++v) {
            if (y_ident[u] < 0 || y_ident[v] < 0) continue;
            if (y_ident[u] == y_ident[v] || X2.d(y_ident[u], y_ident[v]) != E1.space.d(u, v)) {
                throw Error(Errc::InvalidInput, "identified points do not sit isometrically in X2");
            }
        }
    }
    const auto old = old_symbols(E1, P2, x_inj);

    OmegaSearch search(E1, X2, P2, old, y_ident, budget);
    std::vector<int> omega;
    std::size_t spent = 0;
    auto psi = search.run(omega, spent);
    if (!psi) throw Error(Errc::BudgetExhausted, "no coherent quotient within budget");

    if (route != Route::Action) {
        try {
            std::size_t limit = route == Route::Auto ? static_cast<std::size_t>(max_points) : 0;
            auto out = seeded_quotient_extension(E1, X2, y_ident, P2, old, *psi, budget.closure_cap, limit);
            out.candidates = spent;
            return out;
        } catch (const Error& e) {
            if (route == Route::Quotient ||
                (e.code() != Errc::TooLarge && e.code() != Errc::ClosureBudgetExceeded)) {
                throw;
            }
        }
    }
    std::vector<std::tuple<int, int, Dist>> seeds;
    for (int u = 0; u < k; ++u) {
        for (int v = u + 1; v < k; ++v) seeds.emplace_back(u, v, E1.space.d(u, v));
    }
    for (int a = 0; a < X2.size(); ++a) {
        for (int b = a + 1; b < X2.size(); ++b) seeds.emplace_back(omega[a], omega[b], X2.d(a, b));
    }
    auto R = realize_orbit(psi->degree, psi->images, seeds, omega[P2.base]);
    CoherentResult out;
    out.ext.base = X2;
    out.ext.space = std::move(R.space);
    for (int x = 0; x < X2.size(); ++x) out.ext.embed.push_back(R.index[omega[x]]);
    out.ext.P = P2.symbols;
    out.ext.smap = symbol_perms(P2, R.perms);
    out.ext.a0 = P2.base;
    out.ext.quotient = *psi;
    for (int y = 0; y < k; ++y) out.y_inj.push_back(R.index[y]);
    out.route = Route::Action;
    out.candidates = spent;
    return out;
}

GroupExtension extend_group_by_one(const SExtension& E1, const GroupSpec& G2, std::size_t closure_cap) {
    const int k1 = E1.space.size();
    std::vector<Perm> old = G2.old_images;
    if (old.empty() && !E1.smap.empty()) {
        if (G2.degree != k1) throw Error(Errc::InvalidInput, "old images are required when the degree differs from |Y1|");
        old = E1.smap;
    }
    if (old.size() != E1.P.size()) throw Error(Errc::InvalidInput, "one old image per member of P1 is required");
    auto check_perm = [&](const Perm& f) {
        if (static_cast<int>(f.size()) != G2.degree || !is_permutation(f)) {
            throw Error(Errc::InvalidInput, "group element is not a permutation of the given degree");
        }
    };
    for (const Perm& f : old) check_perm(f);
    check_perm(G2.k);
    for (const Perm& f : G2.generators) check_perm(f);
    if (!pairs_define_embedding(E1.smap, old, closure_cap)) {
        throw Error(Errc::InvalidInput, "old images do not carry K1 isomorphically");
    }
    const auto K1 = subgroup_closure(old, G2.degree, closure_cap);
    if (std::find(K1.begin(), K1.end(), G2.k) != K1.end()) throw Error(Errc::InvalidInput, "k lies in the image of K1");
    if (!G2.generators.empty()) {
        auto gens = old;
        gens.push_back(G2.k);
        const auto A = subgroup_closure(gens, G2.degree, closure_cap);
        const auto B = subgroup_closure(G2.generators, G2.degree, closure_cap);
        if (PermSet(A.begin(), A.end()) != PermSet(B.begin(), B.end())) {
            throw Error(Errc::NotGenerating, "K1 and k generate a proper subgroup of G2");
        }
    }

    const Dist D = k1 > 1 ? diameter(E1.space) : Dist(1);
    std::string label = "a";
    while (std::find(E1.space.labels.begin(), E1.space.labels.end(), label) != E1.space.labels.end()) label += "'";
    auto labels = E1.space.labels;
    labels.push_back(label);
    DistMatrix dm(k1 + 1, std::vector<Dist>(k1 + 1, Dist(0)));
    for (int u = 0; u < k1; ++u) {
        for (int v = 0; v < k1; ++v) dm[u][v] = E1.space.d(u, v);
        dm[u][k1] = dm[k1][u] = D;
    }
    FiniteMetricSpace X2 = validate_metric(std::move(labels), std::move(dm));

    const int base = E1.embed[E1.a0];
    std::vector<PartialIsometry> syms;
    for (const auto& p : E1.P) syms.push_back(transport(p, E1.embed));
    const PartialIsometry l({{base, k1}});
    syms.push_back(l);
    syms.push_back(l.inverse());
    GenSet P2 = make_genset(X2, syms, base, false);
    const auto oldsym = old_symbols(E1, P2, E1.embed);
    FiniteQuotient psi;
    psi.degree = G2.degree;
    for (int g = 0; g < P2.num_generators(); ++g) {
        const int r = P2.rep[g];
        if (oldsym[r] >= 0) psi.images.push_back(old[oldsym[r]]);
        else psi.images.push_back(P2.symbols[r] == l ? G2.k : inverse(G2.k));
    }
    std::vector<int> y_ident(k1);
    for (int y = 0; y < k1; ++y) y_ident[y] = y;
    auto R = seeded_quotient_extension(E1, X2, y_ident, P2, oldsym, psi, closure_cap);

    GroupExtension out;
    out.image_order = subgroup_closure(R.ext.smap, R.ext.space.size(), closure_cap).size();
    out.ext = std::move(R.ext);
    out.x_inj = E1.embed;
    out.y_inj = std::move(R.y_inj);
    return out;
}

}  // namespace sext
