#include "sext/metric.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace sext {

namespace {

std::int64_t parse_int(const std::string& s, const std::string& whole) {
    std::int64_t v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
        throw Error(Errc::InvalidInput, "cannot parse distance '" + whole + "'");
    }
    return v;
}

}  // namespace

Dist parse_dist(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Dist(parse_int(text, text));
    std::int64_t num = parse_int(text.substr(0, slash), text);
    std::int64_t den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw Error(Errc::InvalidInput, "zero denominator in '" + text + "'");
    return Dist(num, den);
}

std::string format_dist(const Dist& d) {
    if (d.denominator() == 1) return std::to_string(d.numerator());
    return std::to_string(d.numerator()) + "/" + std::to_string(d.denominator());
}

Perm identity_perm(int n) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

Perm compose(const Perm& a, const Perm& b) {
    Perm r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm inverse(const Perm& a) {
    Perm r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
    return r;
}

bool is_identity(const Perm& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != static_cast<int>(i)) return false;
    }
    return true;
}

bool is_permutation(const Perm& a) {
    std::vector<char> seen(a.size(), 0);
    for (int v : a) {
        if (v < 0 || v >= static_cast<int>(a.size()) || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

int FiniteMetricSpace::index_of(const std::string& label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    return it == labels.end() ? -1 : static_cast<int>(it - labels.begin());
}

FiniteMetricSpace validate_metric(std::vector<std::string> labels, DistMatrix matrix) {
    const std::size_t n = labels.size();
    if (matrix.size() != n) throw Error(Errc::InvalidInput, "matrix size differs from label count");
    for (const auto& row : matrix) {
        if (row.size() != n) throw Error(Errc::InvalidInput, "matrix is not square");
    }
    std::set<std::string> uniq(labels.begin(), labels.end());
    if (uniq.size() != n) throw Error(Errc::InvalidInput, "duplicate point labels");
    for (std::size_t i = 0; i < n; ++i) {
        if (matrix[i][i] != Dist(0)) {
            throw Error(Errc::NonzeroDiagonal, "d(" + labels[i] + "," + labels[i] + ") != 0");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (matrix[i][j] < Dist(0)) {
                throw Error(Errc::NegativeDistance, "d(" + labels[i] + "," + labels[j] + ") < 0");
            }
            if (matrix[i][j] != matrix[j][i]) {
                throw Error(Errc::AsymmetricMatrix, "d(" + labels[i] + "," + labels[j] + ")");
            }
            if (i != j && matrix[i][j] == Dist(0)) {
                throw Error(Errc::ZeroOffDiagonal, "d(" + labels[i] + "," + labels[j] + ") = 0");
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (matrix[i][k] > matrix[i][j] + matrix[j][k]) {
                    throw Error(Errc::TriangleViolation,
                                "(" + std::to_string(i) + "," + std::to_string(j) + "," +
                                    std::to_string(k) + ")");
                }
            }
        }
    }
    return FiniteMetricSpace{std::move(labels), std::move(matrix)};
}

FiniteMetricSpace make_space(const DistMatrix& matrix, const std::string& prefix) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < matrix.size(); ++i) labels.push_back(prefix + std::to_string(i));
    return validate_metric(std::move(labels), matrix);
}

FiniteMetricSpace subspace(const FiniteMetricSpace& X, const std::vector<int>& points) {
    FiniteMetricSpace S;
    for (int i : points) S.labels.push_back(X.labels[i]);
    S.dist.assign(points.size(), std::vector<Dist>(points.size()));
    for (std::size_t a = 0; a < points.size(); ++a) {
        for (std::size_t b = 0; b < points.size(); ++b) S.dist[a][b] = X.d(points[a], points[b]);
    }
    return S;
}

Dist diameter(const FiniteMetricSpace& X) {
    Dist best(0);
    for (const auto& row : X.dist) {
        for (const auto& v : row) best = std::max(best, v);
    }
    return best;
}

std::vector<Dist> distance_set(const FiniteMetricSpace& X) {
    std::set<Dist> s;
    for (int i = 0; i < X.size(); ++i) {
        for (int j = i + 1; j < X.size(); ++j) s.insert(X.d(i, j));
    }
    return {s.begin(), s.end()};
}

bool is_isometry(const FiniteMetricSpace& X, const Perm& p) {
    if (static_cast<int>(p.size()) != X.size() || !is_permutation(p)) return false;
    for (int i = 0; i < X.size(); ++i) {
        for (int j = i + 1; j < X.size(); ++j) {
            if (X.d(i, j) != X.d(p[i], p[j])) return false;
        }
    }
    return true;
}

PartialIsometry::PartialIsometry(std::vector<std::pair<int, int>> p) : pairs(std::move(p)) {
    std::sort(pairs.begin(), pairs.end());
}

std::optional<int> PartialIsometry::apply(int x) const {
    auto it = std::lower_bound(pairs.begin(), pairs.end(), std::make_pair(x, -1));
    if (it != pairs.end() && it->first == x) return it->second;
    return std::nullopt;
}

std::optional<int> PartialIsometry::preimage(int y) const {
    for (const auto& [a, b] : pairs) {
        if (b == y) return a;
    }
    return std::nullopt;
}

PartialIsometry PartialIsometry::inverse() const {
    std::vector<std::pair<int, int>> inv;
    inv.reserve(pairs.size());
    for (const auto& [a, b] : pairs) inv.emplace_back(b, a);
    return PartialIsometry(std::move(inv));
}

bool PartialIsometry::is_subidentity() const {
    return std::all_of(pairs.begin(), pairs.end(), [](const auto& pr) { return pr.first == pr.second; });
}

bool PartialIsometry::extended_by(const Perm& g) const {
    return std::all_of(pairs.begin(), pairs.end(), [&](const auto& pr) {
        return pr.first < static_cast<int>(g.size()) && g[pr.first] == pr.second;
    });
}

std::vector<int> PartialIsometry::domain() const {
    std::vector<int> d;
    for (const auto& pr : pairs) d.push_back(pr.first);
    return d;
}

bool is_partial_isometry(const FiniteMetricSpace& X, const PartialIsometry& p) {
    std::set<int> src, dst;
    for (const auto& [a, b] : p.pairs) {
        if (a < 0 || b < 0 || a >= X.size() || b >= X.size()) return false;
        if (!src.insert(a).second || !dst.insert(b).second) return false;
    }
    for (const auto& [a, b] : p.pairs) {
        for (const auto& [c, e] : p.pairs) {
            if (X.d(a, c) != X.d(b, e)) return false;
        }
    }
    return true;
}

namespace {

void enumerate_rec(const FiniteMetricSpace& X, int x, std::vector<std::pair<int, int>>& cur,
                   std::vector<char>& used, std::vector<PartialIsometry>& out) {
    const int n = X.size();
    if (x == n) {
        if (cur.empty()) return;
        PartialIsometry p(cur);
        if (!p.is_subidentity()) out.push_back(std::move(p));
        return;
    }
    enumerate_rec(X, x + 1, cur, used, out);
    for (int y = 0; y < n; ++y) {
        if (used[y]) continue;
        bool ok = true;
        for (const auto& [a, b] : cur) {
            if (X.d(a, x) != X.d(b, y)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        used[y] = 1;
        cur.emplace_back(x, y);
        enumerate_rec(X, x + 1, cur, used, out);
        cur.pop_back();
        used[y] = 0;
    }
}

}  // namespace

std::vector<PartialIsometry> enumerate_partial_isometries(const FiniteMetricSpace& X) {
    std::vector<PartialIsometry> out;
    std::vector<std::pair<int, int>> cur;
    std::vector<char> used(X.size(), 0);
    enumerate_rec(X, 0, cur, used, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Composition> compose_partial(const PartialIsometry& p, const PartialIsometry& q) {
    std::vector<std::pair<int, int>> r;
    for (const auto& [x, qx] : q.pairs) {
        if (auto pqx = p.apply(qx)) r.emplace_back(x, *pqx);
    }
    if (r.empty()) return std::nullopt;
    Composition c{PartialIsometry(std::move(r)), false};
    c.subidentity = c.map.is_subidentity();
    return c;
}

std::string format_partial(const FiniteMetricSpace& X, const PartialIsometry& p) {
    std::string s = "{";
    for (std::size_t i = 0; i < p.pairs.size(); ++i) {
        if (i) s += ", ";
        s += X.labels[p.pairs[i].first] + "->" + X.labels[p.pairs[i].second];
    }
    return s + "}";
}

}  // namespace sext
