#include "sext/extension.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "sext/completion.hpp"
#include "sext/oracle.hpp"

namespace sext {

const Perm& SExtension::image(const PartialIsometry& p) const {
    auto it = std::lower_bound(P.begin(), P.end(), p);
    if (it == P.end() || *it != p) throw Error(Errc::InvalidInput, "symbol not in P");
    return smap[it - P.begin()];
}

GenSet genset_of(const SExtension& E) { return make_genset(E.base, E.P, E.a0, false); }

FiniteQuotient word_map(const SExtension& E, const GenSet& P) {
    FiniteQuotient q;
    q.degree = E.space.size();
    for (int g = 0; g < P.num_generators(); ++g) q.images.push_back(E.image(P.symbols[P.rep[g]]));
    return q;
}

namespace {

Perm letter_perm(const std::vector<Perm>& action, int letter) {
    const Perm& p = action[std::abs(letter) - 1];
    return letter > 0 ? p : inverse(p);
}

std::vector<Perm> symbol_perms(const GenSet& P, const std::vector<Perm>& action) {
    std::vector<Perm> out;
    for (int l : P.letter_of) out.push_back(letter_perm(action, l));
    return out;
}

std::vector<std::tuple<int, int, Dist>> base_seeds(const FiniteMetricSpace& X, const std::vector<int>& omega) {
    std::vector<std::tuple<int, int, Dist>> seeds;
    for (int a = 0; a < X.size(); ++a) {
        for (int b = a + 1; b < X.size(); ++b) seeds.emplace_back(omega[a], omega[b], X.d(a, b));
    }
    return seeds;
}

std::vector<std::string> numbered(const std::string& prefix, int n) {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back(prefix + std::to_string(i));
    return v;
}

bool contained(const PartialIsometry& p, const PartialIsometry& q) {
    return std::all_of(p.pairs.begin(), p.pairs.end(), [&](const auto& pr) { return q.apply(pr.first) == pr.second; });
}

}  // namespace

std::vector<std::optional<Word>> reachable_representatives(const FiniteMetricSpace& X, const GenSet& P) {
    auto reps = transversal(X, P);
    std::vector<char> have(X.size(), 0);
    have[P.base] = 1;
    for (std::size_t s = 0; s < P.symbols.size(); ++s) {
        auto y = P.symbols[s].apply(P.base);
        if (y && !have[*y]) {
            have[*y] = 1;
            reps[*y] = Word{P.letter_of[s]};
        }
    }
    return reps;
}

std::vector<Word> point_representatives(const FiniteMetricSpace& X, const GenSet& P) {
    std::vector<Word> reps;
    const auto t = reachable_representatives(X, P);
    for (int a = 0; a < X.size(); ++a) {
        if (!t[a]) throw Error(Errc::InvalidGenSet, X.labels[a] + " is unreachable from the base point");
        reps.push_back(*t[a]);
    }
    return reps;
}

std::vector<ConditionInstance> condition_instances(const FiniteMetricSpace& X, const GenSet& P) {
    const int n = X.size();
    std::vector<ConditionInstance> out;
    if (n <= 1) return out;
    const auto t = point_representatives(X, P);
    auto link = [&](int c, int d) { return concat(inverse_word(t[c]), t[d]); };
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                for (int d = 0; d < n; ++d) {
                    if (X.d(a, b) == X.d(c, d)) continue;
                    out.push_back({ConditionKind::C1,
                                   {PatternItem::W(t[a]), PatternItem::H(), PatternItem::W(link(c, d)),
                                    PatternItem::H(), PatternItem::W(inverse_word(t[b]))},
                                   {a, b, c, d}});
                }
            }
        }
    }
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            out.push_back({ConditionKind::C2,
                           {PatternItem::W(t[a]), PatternItem::H(), PatternItem::W(inverse_word(t[b]))},
                           {a, b}});
        }
    }
    // Zero-length steps (c = d) only insert H and are skipped.
    std::vector<std::pair<int, int>> steps;
    for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
            if (c != d) steps.emplace_back(c, d);
        }
    }
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            const Dist target = X.d(a, b);
            std::vector<std::pair<int, int>> seq;
            auto dfs = [&](auto&& self, const Dist& sum) -> void {
                for (const auto& [c, d] : steps) {
                    Dist next = sum + X.d(c, d);
                    if (next >= target) continue;
                    seq.emplace_back(c, d);
                    ConditionInstance ci{ConditionKind::C3, {PatternItem::W(t[a]), PatternItem::H()}, {a, b}};
                    for (const auto& [ci_c, ci_d] : seq) {
                        ci.pattern.push_back(PatternItem::W(link(ci_c, ci_d)));
                        ci.pattern.push_back(PatternItem::H());
                        ci.points.push_back(ci_c);
                        ci.points.push_back(ci_d);
                    }
                    ci.pattern.push_back(PatternItem::W(inverse_word(t[b])));
                    out.push_back(std::move(ci));
                    self(self, next);
                    seq.pop_back();
                }
            };
            dfs(dfs, Dist(0));
        }
    }
    return out;
}

std::optional<std::size_t> first_violated(const FiniteQuotient& psi, const FiniteMetricSpace& X, const GenSet& P,
                                          const std::vector<ConditionInstance>& inst, std::size_t closure_cap) {
    const auto H = stabilizer_generators(X, P);
    for (std::size_t i = 0; i < inst.size(); ++i) {
        if (contains_identity_in_coset_product(psi, H, inst[i].pattern, closure_cap)) return i;
    }
    return std::nullopt;
}

namespace {

CosetAction coset_action_impl(const FiniteQuotient& psi, const FiniteMetricSpace& X, const GenSet& P,
                              std::size_t closure_cap, std::size_t max_cosets) {
    const auto H = stabilizer_generators(X, P);
    std::vector<Perm> kgens;
    for (const Word& w : H.gens) kgens.push_back(psi.image(w));
    const auto K = subgroup_closure(kgens, psi.degree, closure_cap);
    CosetAction ca;
    ca.subgroup_order = K.size();
    std::unordered_map<Perm, int, PermHash> coset_of;
    auto add_coset = [&](const Perm& r) {
        int id = static_cast<int>(ca.reps.size());
        if (max_cosets && ca.reps.size() >= max_cosets) throw Error(Errc::TooLarge, "more than " + std::to_string(max_cosets) + " cosets");
        if ((ca.reps.size() + 1) * K.size() > closure_cap) throw Error(Errc::ClosureBudgetExceeded, "image group exceeds cap");
        for (const Perm& k : K) coset_of.emplace(compose(r, k), id);
        ca.reps.push_back(r);
        return id;
    };
    add_coset(identity_perm(psi.degree));
    const int G = static_cast<int>(psi.images.size());
    std::vector<std::vector<int>> act(G);
    for (std::size_t c = 0; c < ca.reps.size(); ++c) {
        for (int g = 0; g < G; ++g) {
            Perm h = compose(psi.images[g], ca.reps[c]);
            auto it = coset_of.find(h);
            int id = it == coset_of.end() ? add_coset(h) : it->second;
            act[g].push_back(id);
        }
    }
    ca.action.assign(act.begin(), act.end());
    ca.group_order = ca.reps.size() * K.size();
    for (const auto& w : reachable_representatives(X, P)) ca.embed.push_back(w ? coset_of.at(psi.image(*w)) : -1);
    return ca;
}

CosetGraph coset_graph_from(CosetAction ca, const FiniteMetricSpace& X) {
    const int k = static_cast<int>(ca.reps.size());
    for (int a = 0; a < X.size(); ++a) {
        if (ca.embed[a] < 0) throw Error(Errc::InvalidGenSet, X.labels[a] + " is unreachable from the base point");
        for (int b = a + 1; b < X.size(); ++b) {
            if (ca.embed[a] == ca.embed[b]) throw Error(Errc::CollapsedPoints, X.labels[a] + " and " + X.labels[b]);
        }
    }
    std::vector<std::vector<std::optional<Dist>>> lab(k, std::vector<std::optional<Dist>>(k));
    std::vector<std::pair<int, int>> queue;
    auto assign = [&](int u, int v, const Dist& d) {
        if (lab[u][v]) {
            if (*lab[u][v] != d) {
                throw Error(Errc::ConflictingWeight, "c" + std::to_string(u) + "-c" + std::to_string(v) + ": " +
                                                         format_dist(*lab[u][v]) + " vs " + format_dist(d));
            }
            return;
        }
        lab[u][v] = lab[v][u] = d;
        queue.emplace_back(u, v);
    };
    for (int a = 0; a < X.size(); ++a) {
        for (int b = a + 1; b < X.size(); ++b) assign(ca.embed[a], ca.embed[b], X.d(a, b));
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        auto [u, v] = queue[i];
        Dist d = *lab[u][v];
        for (const Perm& g : ca.action) assign(g[u], g[v], d);
    }
    WeightedGraph G(numbered("c", k));
    for (int u = 0; u < k; ++u) {
        for (int v = u + 1; v < k; ++v) {
            if (lab[u][v]) G.add_edge(u, v, *lab[u][v]);
        }
    }
    return CosetGraph{std::move(ca), std::move(G)};
}

SExtension extension_from_graph(const CosetGraph& cg, const FiniteQuotient& psi, const FiniteMetricSpace& X,
                                const GenSet& P) {
    if (!is_reduced(cg.graph)) throw Error(Errc::NotReduced, "coset graph weight admits a shortcut");
    PseudoMetric M = path_metric(cg.graph);
    SExtension E;
    E.base = X;
    E.space = validate_metric(numbered("y", M.size()), std::move(M.pdist));
    E.embed = cg.cosets.embed;
    E.P = P.symbols;
    E.smap = symbol_perms(P, cg.cosets.action);
    E.a0 = P.base;
    E.quotient = psi;
    return E;
}

}  // namespace

CosetAction coset_action(const FiniteQuotient& psi, const FiniteMetricSpace& X, const GenSet& P,
                         std::size_t closure_cap, std::size_t max_cosets) {
    return coset_action_impl(psi, X, P, closure_cap, max_cosets);
}

CosetGraph coset_graph(const FiniteQuotient& psi, const FiniteMetricSpace& X, const GenSet& P,
                       std::size_t closure_cap) {
    return coset_graph_from(coset_action(psi, X, P, closure_cap), X);
}

SExtension build_extension_from_quotient(const FiniteQuotient& psi, const FiniteMetricSpace& X, const GenSet& P,
                                         std::size_t closure_cap) {
    return extension_from_graph(coset_graph(psi, X, P, closure_cap), psi, X, P);
}

SearchGenerators search_generators(const FiniteMetricSpace& X, const GenSet& P) {
    (void)X;
    const auto& S = P.symbols;
    const int n = static_cast<int>(S.size());
    auto strictly_inside = [&](int i, int j) { return S[j].size() > S[i].size() && contained(S[i], S[j]); };
    std::vector<char> maximal(n, 1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n && maximal[i]; ++j) {
            if (strictly_inside(i, j)) maximal[i] = 0;
        }
    }
    SearchGenerators sg;
    for (int i = 0; i < n; ++i) {
        if (maximal[i] && P.inverse_of[i] >= i) {
            sg.maps.push_back(S[i]);
            sg.involutive.push_back(P.inverse_of[i] == i);
        }
    }
    std::vector<int> lonely;
    for (int i = 0; i < n; ++i) {
        if (P.inverse_of[i] != i) continue;
        bool covered = false;
        for (std::size_t j = 0; j < sg.maps.size() && !covered; ++j) covered = sg.involutive[j] && contained(S[i], sg.maps[j]);
        if (!covered) lonely.push_back(i);
    }
    for (int i : lonely) {
        bool top = std::none_of(lonely.begin(), lonely.end(), [&](int j) { return strictly_inside(i, j); });
        if (top) {
            sg.maps.push_back(S[i]);
            sg.involutive.push_back(1);
        }
    }
    for (int g = 0; g < P.num_generators(); ++g) {
        const auto& p = S[P.rep[g]];
        int src = -1;
        bool inv = false;
        for (std::size_t j = 0; j < sg.maps.size() && src < 0; ++j) {
            if (P.involutive[g]) {
                if (sg.involutive[j] && contained(p, sg.maps[j])) src = static_cast<int>(j);
            } else if (contained(p, sg.maps[j])) {
                src = static_cast<int>(j);
            } else if (contained(p, sg.maps[j].inverse())) {
                src = static_cast<int>(j);
                inv = true;
            }
        }
        if (src < 0) throw Error(Errc::InvalidGenSet, "symbol without a searched cover");
        sg.generator_source.push_back(src);
        sg.generator_inverted.push_back(inv);
    }
    return sg;
}

namespace {

FiniteQuotient quotient_from_maps(const SearchGenerators& sg, const std::vector<Perm>& perms, int degree) {
    FiniteQuotient q;
    q.degree = degree;
    for (std::size_t g = 0; g < sg.generator_source.size(); ++g) {
        const Perm& p = perms[sg.generator_source[g]];
        q.images.push_back(sg.generator_inverted[g] ? inverse(p) : p);
    }
    return q;
}

Perm random_completion(const PartialIsometry& p, bool involutive, int m, std::mt19937_64& rng) {
    Perm f(m, -1);
    std::vector<char> hit(m, 0);
    for (const auto& [x, y] : p.pairs) {
        f[x] = y;
        hit[y] = 1;
    }
    std::vector<int> open, free;
    for (int x = 0; x < m; ++x) {
        if (f[x] < 0) open.push_back(x);
        if (!hit[x]) free.push_back(x);
    }
    if (!involutive) {
        std::shuffle(free.begin(), free.end(), rng);
        for (std::size_t i = 0; i < open.size(); ++i) f[open[i]] = free[i];
        return f;
    }
    std::shuffle(open.begin(), open.end(), rng);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < open.size(); ++i) {
        if (i + 1 < open.size() && coin(rng)) {
            f[open[i]] = open[i + 1];
            f[open[i + 1]] = open[i];
            ++i;
        } else {
            f[open[i]] = open[i];
        }
    }
    return f;
}

// Placement of X in Omega and order of the searched maps for one run.
struct SearchOrder {
    std::vector<int> pi;
    std::vector<int> maps;
};

// Identity first, then seeded shuffles of both.
std::vector<SearchOrder> search_orders(int n, int k, std::mt19937_64& rng) {
    constexpr int kOrders = 8;
    SearchOrder id;
    id.pi.resize(n);
    std::iota(id.pi.begin(), id.pi.end(), 0);
    id.maps.resize(k);
    std::iota(id.maps.begin(), id.maps.end(), 0);
    std::vector<SearchOrder> out{id};
    while (out.size() < kOrders) {
        SearchOrder o = id;
        std::shuffle(o.pi.begin(), o.pi.end(), rng);
        std::shuffle(o.maps.begin(), o.maps.end(), rng);
        out.push_back(std::move(o));
    }
    return out;
}

CompletionProblem ordered_problem(const SearchGenerators& sg, const SearchOrder& o, const FiniteMetricSpace& X, int m) {
    CompletionProblem prob;
    prob.degree = m;
    for (int j : o.maps) {
        std::vector<int> f(m, -1);
        for (const auto& [x, y] : sg.maps[j].pairs) f[o.pi[x]] = o.pi[y];
        prob.partial.push_back(std::move(f));
        prob.involutive.push_back(sg.involutive[j]);
    }
    prob.seeds = base_seeds(X, o.pi);
    prob.fresh_from = X.size();
    return prob;
}

}  // namespace

QuotientWitness find_admissible_quotient(const FiniteMetricSpace& X, const GenSet& P, const SearchBudget& budget) {
    const int n = X.size();
    std::vector<int> id(n);
    for (int i = 0; i < n; ++i) id[i] = i;
    const auto seeds = base_seeds(X, id);
    QuotientWitness w;

    if (P.num_generators() == 0) {
        w.psi = trivial_quotient(P);
        w.psi.degree = std::max(n, 1);
        w.omega = id;
        w.tier = "completion";
        return w;
    }

    const int bsize = budget.bootstrap_size < 0 ? n + 1 : budget.bootstrap_size;
    if (bsize >= n && bsize <= 7) {
        auto rep = brute_force_s_extension(X, P.symbols, bsize);
        w.candidates += rep.candidates;
        if (rep.found) {
            const SExtension& E = *rep.found;
            w.psi = word_map(E, P);
            w.omega = E.embed;
            w.tier = "bootstrap";
            if (action_consistent(w.psi.degree, w.psi.images, base_seeds(X, w.omega))) return w;
        }
    }

    // Runs are heavy tailed in the placement of X, so each degree is tried under a
    // few relabelings with escalating node budgets. Exhausted is exact for the degree.
    const SearchGenerators sg = search_generators(X, P);
    std::mt19937_64 rng(budget.seed);
    const auto orders = search_orders(n, static_cast<int>(sg.maps.size()), rng);
    for (int m = std::max(n, 1); m <= budget.max_degree; ++m) {
        bool exhausted = false;
        std::size_t spent = 0;
        for (std::size_t run_budget = 4096; !exhausted && spent < budget.max_candidates; run_budget *= 8) {
            for (const auto& o : orders) {
                const std::size_t b = std::min(run_budget, budget.max_candidates - spent);
                auto out = complete_action(ordered_problem(sg, o, X, m), b);
                w.candidates += out.nodes;
                spent += out.nodes;
                if (out.status == CompletionStatus::Found) {
                    std::vector<Perm> perms(sg.maps.size());
                    for (std::size_t j = 0; j < o.maps.size(); ++j) perms[o.maps[j]] = std::move(out.perms[j]);
                    w.psi = quotient_from_maps(sg, perms, m);
                    w.omega = o.pi;
                    w.tier = "completion";
                    return w;
                }
                if (out.status == CompletionStatus::Exhausted) {
                    exhausted = true;
                    break;
                }
                if (spent >= budget.max_candidates) break;
            }
        }
    }

    const int degrees = std::max(1, budget.max_degree - std::max(n, 1) + 1);
    // A full consistency check costs far more than a search node.
    const std::size_t per_degree = std::max<std::size_t>(1, budget.max_candidates / 1000 / degrees);
    for (int m = std::max(n, 1); m <= budget.max_degree; ++m) {
        for (std::size_t t = 0; t < per_degree; ++t) {
            std::vector<Perm> perms;
            for (std::size_t j = 0; j < sg.maps.size(); ++j) perms.push_back(random_completion(sg.maps[j], sg.involutive[j], m, rng));
            ++w.candidates;
            if (action_consistent(m, perms, seeds)) {
                w.psi = quotient_from_maps(sg, perms, m);
                w.omega = id;
                w.tier = "random";
                return w;
            }
        }
    }
    throw Error(Errc::BudgetExhausted, "no admissible quotient up to degree " + std::to_string(budget.max_degree));
}

SExtension action_extension(const QuotientWitness& w, const FiniteMetricSpace& X, const GenSet& P) {
    auto R = realize_orbit(w.psi.degree, w.psi.images, base_seeds(X, w.omega), w.omega[P.base]);
    SExtension E;
    E.base = X;
    E.space = std::move(R.space);
    for (int a = 0; a < X.size(); ++a) E.embed.push_back(R.index[w.omega[a]]);
    E.P = P.symbols;
    E.smap = symbol_perms(P, R.perms);
    E.a0 = P.base;
    E.quotient = w.psi;
    return E;
}

ExtendResult extend(const FiniteMetricSpace& X, const GenSet& P, const SearchBudget& budget, Route route,
                    int max_points) {
    ExtendResult r;
    r.witness = find_admissible_quotient(X, P, budget);
    if (route != Route::Action) {
        try {
            std::size_t limit = route == Route::Auto ? static_cast<std::size_t>(max_points) : 0;
            auto cg = coset_graph_from(coset_action_impl(r.witness.psi, X, P, budget.closure_cap, limit), X);
            r.ext = extension_from_graph(cg, r.witness.psi, X, P);
            r.route = Route::Quotient;
            return r;
        } catch (const Error& e) {
            if (route == Route::Quotient ||
                (e.code() != Errc::TooLarge && e.code() != Errc::ClosureBudgetExceeded)) {
                throw;
            }
        }
    }
    r.ext = action_extension(r.witness, X, P);
    r.route = Route::Action;
    return r;
}

VerifyReport verify_s_extension(const SExtension& E) {
    VerifyReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.violations.push_back(std::move(msg));
    };
    const int n = E.base.size();
    const int k = E.space.size();
    try {
        validate_metric(E.space.labels, E.space.dist);
    } catch (const Error& e) {
        fail(std::string("space is not a metric: ") + e.what());
        return rep;
    }
    if (static_cast<int>(E.embed.size()) != n) {
        fail("embedding has wrong size");
        return rep;
    }
    std::vector<char> seen(k, 0);
    for (int a = 0; a < n; ++a) {
        int y = E.embed[a];
        if (y < 0 || y >= k) {
            fail("embedding of " + E.base.labels[a] + " out of range");
            return rep;
        }
        if (seen[y]) fail("embedding is not injective at " + E.base.labels[a]);
        seen[y] = 1;
    }
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (E.space.d(E.embed[a], E.embed[b]) != E.base.d(a, b)) {
                fail("embedding distorts " + E.base.labels[a] + "-" + E.base.labels[b]);
            }
        }
    }
    if (E.smap.size() != E.P.size()) {
        fail("smap and P differ in size");
        return rep;
    }
    for (std::size_t i = 0; i < E.P.size(); ++i) {
        const auto& p = E.P[i];
        const Perm& g = E.smap[i];
        const std::string name = format_partial(E.base, p);
        if (!is_isometry(E.space, g)) {
            fail("image of " + name + " is not an isometry of Y");
            continue;
        }
        for (const auto& [x, y] : p.pairs) {
            if (g[E.embed[x]] != E.embed[y]) {
                fail("image does not extend " + name);
                break;
            }
        }
        auto inv = std::lower_bound(E.P.begin(), E.P.end(), p.inverse());
        if (inv == E.P.end() || *inv != p.inverse()) {
            fail("inverse of " + name + " missing from P");
        } else if (E.smap[inv - E.P.begin()] != inverse(g)) {
            fail("image of the inverse of " + name + " is not the inverse image");
        }
    }
    rep.full_partials = rep.ok && E.P == enumerate_partial_isometries(E.base);
    return rep;
}

namespace {

std::vector<char> orbit_of(const std::vector<Perm>& gens, int k, const std::vector<int>& roots) {
    std::vector<char> in(k, 0);
    std::vector<int> stack;
    for (int r : roots) {
        if (!in[r]) {
            in[r] = 1;
            stack.push_back(r);
        }
    }
    while (!stack.empty()) {
        int y = stack.back();
        stack.pop_back();
        for (const Perm& g : gens) {
            if (!in[g[y]]) {
                in[g[y]] = 1;
                stack.push_back(g[y]);
            }
        }
    }
    return in;
}

}  // namespace

bool is_minimal(const SExtension& E) {
    if (E.base.size() == 0) return E.space.size() == 0;
    auto in = orbit_of(E.smap, E.space.size(), {E.embed[E.a0]});
    return std::all_of(in.begin(), in.end(), [](char c) { return c != 0; });
}

SExtension minimalize(const SExtension& E) {
    auto in = orbit_of(E.smap, E.space.size(), E.embed);
    std::vector<int> keep;
    std::vector<int> idx(E.space.size(), -1);
    for (int y = 0; y < E.space.size(); ++y) {
        if (in[y]) {
            idx[y] = static_cast<int>(keep.size());
            keep.push_back(y);
        }
    }
    if (static_cast<int>(keep.size()) == E.space.size()) return E;
    SExtension out = E;
    out.space = subspace(E.space, keep);
    for (int& y : out.embed) y = idx[y];
    for (Perm& g : out.smap) {
        Perm h(keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i) h[i] = idx[g[keep[i]]];
        g = std::move(h);
    }
    return out;
}

PseudoMetric induced_pseudometric(const SExtension& E, const FiniteQuotient& psi, std::size_t closure_cap) {
    const GenSet P = genset_of(E);
    const CosetAction ca = coset_action(psi, E.base, P, closure_cap);
    const int k = static_cast<int>(ca.reps.size());
    const FiniteQuotient phi = word_map(E, P);
    std::vector<int> to_y(k, -1);
    to_y[0] = E.embed[E.a0];
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int c = queue.front();
        queue.pop_front();
        for (std::size_t g = 0; g < ca.action.size(); ++g) {
            int c2 = ca.action[g][c];
            int y2 = phi.images[g][to_y[c]];
            if (to_y[c2] < 0) {
                to_y[c2] = y2;
                queue.push_back(c2);
            } else if (to_y[c2] != y2) {
                throw Error(Errc::IncompatibleQuotient, "coset c" + std::to_string(c2) + " has two images");
            }
        }
    }
    for (int a = 0; a < E.base.size(); ++a) {
        if (ca.embed[a] >= 0 && to_y[ca.embed[a]] != E.embed[a]) throw Error(Errc::IncompatibleQuotient, "embedding mismatch at " + E.base.labels[a]);
    }
    PseudoMetric rho{numbered("c", k), DistMatrix(k, std::vector<Dist>(k))};
    for (int u = 0; u < k; ++u) {
        for (int v = 0; v < k; ++v) rho.pdist[u][v] = E.space.d(to_y[u], to_y[v]);
    }
    return rho;
}

SExtension quotient_extension(const FiniteQuotient& psi, const FiniteMetricSpace& X, const GenSet& P,
                              const PseudoMetric& rho, std::size_t closure_cap) {
    const CosetGraph cg = coset_graph(psi, X, P, closure_cap);
    const int k = cg.graph.size();
    if (rho.size() != k || !is_pseudometric(rho)) throw Error(Errc::InvalidInput, "rho is not a pseudometric on the cosets");
    for (std::size_t g = 0; g < cg.cosets.action.size(); ++g) {
        const Perm& f = cg.cosets.action[g];
        for (int u = 0; u < k; ++u) {
            for (int v = u + 1; v < k; ++v) {
                if (rho.pdist[f[u]][f[v]] != rho.pdist[u][v]) {
                    throw Error(Errc::NotInvariant, "generator " + std::to_string(g) + " moves c" + std::to_string(u) +
                                                        "-c" + std::to_string(v));
                }
            }
        }
    }
    for (const auto& [e, w] : cg.graph.edges()) {
        if (rho.pdist[e.first][e.second] != w) {
            throw Error(Errc::NotConsistent, "edge c" + std::to_string(e.first) + "-c" + std::to_string(e.second));
        }
    }
    Identification id = metric_identification(rho, cg.cosets.action);
    SExtension E;
    E.base = X;
    E.space = validate_metric(numbered("y", id.space.size()), std::move(id.space.dist));
    for (int c : cg.cosets.embed) E.embed.push_back(id.projection[c]);
    E.P = P.symbols;
    E.smap = symbol_perms(P, id.induced);
    E.a0 = P.base;
    E.quotient = psi;
    return E;
}

namespace {

struct IsoState {
    std::vector<int> pi, used;
};

bool iso_assign(const SExtension& E1, const SExtension& E2, IsoState& s, int y, int t) {
    std::vector<std::pair<int, int>> queue{{y, t}};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        auto [a, b] = queue[i];
        if (s.pi[a] == b) continue;
        if (s.pi[a] >= 0 || s.used[b] >= 0) return false;
        for (int z = 0; z < E1.space.size(); ++z) {
            if (s.pi[z] >= 0 && E1.space.d(a, z) != E2.space.d(b, s.pi[z])) return false;
        }
        s.pi[a] = b;
        s.used[b] = a;
        for (std::size_t g = 0; g < E1.smap.size(); ++g) queue.emplace_back(E1.smap[g][a], E2.smap[g][b]);
    }
    return true;
}

bool iso_rec(const SExtension& E1, const SExtension& E2, IsoState& s) {
    auto it = std::find(s.pi.begin(), s.pi.end(), -1);
    if (it == s.pi.end()) return true;
    int y = static_cast<int>(it - s.pi.begin());
    for (int t = 0; t < E2.space.size(); ++t) {
        if (s.used[t] >= 0) continue;
        IsoState next = s;
        if (iso_assign(E1, E2, next, y, t) && iso_rec(E1, E2, next)) {
            s = std::move(next);
            return true;
        }
    }
    return false;
}

}  // namespace

std::optional<Perm> isomorphism_check(const SExtension& E1, const SExtension& E2) {
    if (E1.space.size() != E2.space.size() || E1.base != E2.base || E1.P != E2.P || E1.embed.size() != E2.embed.size()) {
        return std::nullopt;
    }
    IsoState s{std::vector<int>(E1.space.size(), -1), std::vector<int>(E2.space.size(), -1)};
    for (std::size_t a = 0; a < E1.embed.size(); ++a) {
        if (!iso_assign(E1, E2, s, E1.embed[a], E2.embed[a])) return std::nullopt;
    }
    if (!iso_rec(E1, E2, s)) return std::nullopt;
    return s.pi;
}

}  // namespace sext
