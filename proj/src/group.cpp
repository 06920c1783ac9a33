#include "sext/group.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include <boost/container_hash/hash.hpp>

namespace sext {

std::size_t PermHash::operator()(const Perm& p) const noexcept {
    return boost::hash_range(p.begin(), p.end());
}

Word reduce_word(Word w) {
    Word out;
    out.reserve(w.size());
    for (int l : w) {
        if (!out.empty() && out.back() == -l) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return out;
}

Word inverse_word(const Word& w) {
    Word r(w.rbegin(), w.rend());
    for (int& l : r) l = -l;
    return r;
}

Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return reduce_word(std::move(r));
}

const PartialIsometry& GenSet::action(int letter) const {
    int g = std::abs(letter) - 1;
    int s = rep[g];
    return letter > 0 ? symbols[s] : symbols[inverse_of[s]];
}

int GenSet::symbol_of(const PartialIsometry& p) const {
    auto it = std::lower_bound(symbols.begin(), symbols.end(), p);
    if (it == symbols.end() || *it != p) return -1;
    return static_cast<int>(it - symbols.begin());
}

GenSet make_genset(const FiniteMetricSpace& X, std::vector<PartialIsometry> P, int base, bool require_reach) {
    if (base < 0 || base >= X.size()) throw Error(Errc::InvalidGenSet, "base point out of range");
    std::sort(P.begin(), P.end());
    P.erase(std::unique(P.begin(), P.end()), P.end());
    GenSet G;
    G.base = base;
    G.symbols = std::move(P);
    const int n = static_cast<int>(G.symbols.size());
    G.inverse_of.assign(n, -1);
    G.letter_of.assign(n, 0);
    for (int s = 0; s < n; ++s) {
        const auto& p = G.symbols[s];
        if (p.pairs.empty() || p.is_subidentity() || !is_partial_isometry(X, p)) {
            throw Error(Errc::InvalidGenSet, "symbol " + format_partial(X, p) + " is not in P_X");
        }
        int inv = G.symbol_of(p.inverse());
        if (inv < 0) throw Error(Errc::InvalidGenSet, "inverse of " + format_partial(X, p) + " missing");
        G.inverse_of[s] = inv;
    }
    for (int s = 0; s < n; ++s) {
        int inv = G.inverse_of[s];
        if (inv < s) continue;
        int g = static_cast<int>(G.rep.size());
        G.rep.push_back(s);
        G.involutive.push_back(inv == s ? 1 : 0);
        G.letter_of[s] = g + 1;
        if (inv != s) G.letter_of[inv] = -(g + 1);
    }
    if (require_reach) {
        for (int x = 0; x < X.size(); ++x) {
            if (x == base) continue;
            bool hit = std::any_of(G.symbols.begin(), G.symbols.end(),
                                   [&](const PartialIsometry& p) { return p.apply(base) == x; });
            if (!hit) throw Error(Errc::InvalidGenSet, X.labels[x] + " is not in P(a0)");
        }
    }
    return G;
}

GenSet standard_genset(const FiniteMetricSpace& X, int base) {
    return make_genset(X, enumerate_partial_isometries(X), base, true);
}

std::optional<int> evaluate_word(const GenSet& P, const Word& w, int x) {
    std::optional<int> cur = x;
    for (auto it = w.rbegin(); it != w.rend() && cur; ++it) cur = P.action(*it).apply(*cur);
    return cur;
}

namespace {

std::vector<int> letter_order(const GenSet& P) {
    std::vector<int> order;
    for (int g = 0; g < P.num_generators(); ++g) {
        order.push_back(g + 1);
        order.push_back(-(g + 1));
    }
    return order;
}

}  // namespace

std::vector<std::optional<Word>> transversal(const FiniteMetricSpace& X, const GenSet& P) {
    std::vector<std::optional<Word>> t(X.size());
    t[P.base] = Word{};
    std::deque<int> queue{P.base};
    const auto order = letter_order(P);
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int l : order) {
            auto y = P.action(l).apply(x);
            if (!y || t[*y]) continue;
            Word w{l};
            w.insert(w.end(), t[x]->begin(), t[x]->end());
            t[*y] = reduce_word(std::move(w));
            queue.push_back(*y);
        }
    }
    return t;
}

StabilizerGens stabilizer_generators(const FiniteMetricSpace& X, const GenSet& P) {
    auto t = transversal(X, P);
    StabilizerGens H;
    // Edges x --(+g)--> p(x); the tree edge itself reduces to the empty word.
    for (int g = 0; g < P.num_generators(); ++g) {
        const auto& p = P.symbols[P.rep[g]];
        for (const auto& [x, y] : p.pairs) {
            if (!t[x] || !t[y]) continue;
            Word w = inverse_word(*t[y]);
            w.push_back(g + 1);
            w.insert(w.end(), t[x]->begin(), t[x]->end());
            w = reduce_word(std::move(w));
            if (!w.empty()) H.gens.push_back(std::move(w));
        }
    }
    return H;
}

Perm FiniteQuotient::letter(int l) const {
    const Perm& p = images.at(std::abs(l) - 1);
    return l > 0 ? p : inverse(p);
}

Perm FiniteQuotient::image(const Word& w) const {
    Perm r = identity_perm(degree);
    for (int l : w) r = compose(r, letter(l));
    return r;
}

FiniteQuotient trivial_quotient(const GenSet& P) {
    FiniteQuotient q;
    q.degree = 1;
    q.images.assign(P.num_generators(), identity_perm(1));
    return q;
}

std::vector<Perm> subgroup_closure(const std::vector<Perm>& gens, int degree, std::size_t cap) {
    std::vector<Perm> elems{identity_perm(degree)};
    PermSet seen{elems.front()};
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const Perm& g : gens) {
            Perm h = compose(g, elems[i]);
            if (seen.insert(h).second) {
                if (elems.size() >= cap) {
                    throw Error(Errc::ClosureBudgetExceeded, "more than " + std::to_string(cap) + " elements");
                }
                elems.push_back(std::move(h));
            }
        }
    }
    return elems;
}

bool contains_identity_in_coset_product(const FiniteQuotient& psi, const StabilizerGens& H,
                                        const CosetPattern& pattern, std::size_t closure_cap) {
    std::vector<Perm> hgens;
    for (const Word& w : H.gens) hgens.push_back(psi.image(w));
    // Validates the cap; the fold itself only needs the generators.
    subgroup_closure(hgens, psi.degree, closure_cap);
    std::vector<Perm> cur{identity_perm(psi.degree)};
    for (const auto& item : pattern) {
        if (!item.hslot) {
            Perm g = psi.image(item.word);
            for (Perm& s : cur) s = compose(s, g);
            continue;
        }
        PermSet seen(cur.begin(), cur.end());
        for (std::size_t i = 0; i < cur.size(); ++i) {
            for (const Perm& h : hgens) {
                Perm sh = compose(cur[i], h);
                if (seen.insert(sh).second) {
                    if (cur.size() >= closure_cap) {
                        throw Error(Errc::ClosureBudgetExceeded, "coset product exceeds cap");
                    }
                    cur.push_back(std::move(sh));
                }
            }
        }
    }
    return std::any_of(cur.begin(), cur.end(), [](const Perm& p) { return is_identity(p); });
}

}  // namespace sext
