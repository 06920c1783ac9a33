#include "sext/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>

namespace sext {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int point(const FiniteMetricSpace& X, const Json& j, const char* what) {
    if (!j.is_string()) bad(std::string(what) + ": point ids are strings");
    const int i = X.index_of(j.get<std::string>());
    if (i < 0) bad(std::string(what) + ": unknown point \"" + j.get<std::string>() + "\"");
    return i;
}

Perm perm_from_json(const Json& j, int degree, const char* what) {
    if (!j.is_array()) bad(std::string(what) + ": permutation must be an array");
    Perm p;
    for (const auto& v : j) {
        if (!v.is_number_integer()) bad(std::string(what) + ": permutation entries are integers");
        p.push_back(v.get<int>());
    }
    if (static_cast<int>(p.size()) != degree || !is_permutation(p)) bad(std::string(what) + ": not a permutation of the degree");
    return p;
}

Perm labelled_perm(const FiniteMetricSpace& Y, const Json& j, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != Y.size()) bad(std::string(what) + ": image array has the wrong length");
    Perm p;
    for (const auto& v : j) p.push_back(point(Y, v, what));
    if (!is_permutation(p)) bad(std::string(what) + ": images are not a permutation");
    return p;
}

int symbol_index(const std::string& id, std::size_t count) {
    if (id.size() < 2 || id[0] != 'p' || !std::all_of(id.begin() + 1, id.end(), ::isdigit)) bad("bad symbol id \"" + id + "\"");
    const auto i = std::stoul(id.substr(1));
    if (i >= count) bad("symbol id \"" + id + "\" out of range");
    return static_cast<int>(i);
}

}  // namespace

Json space_to_json(const FiniteMetricSpace& X) {
    Json rows = Json::array();
    for (const auto& row : X.dist) {
        Json r = Json::array();
        for (const Dist& d : row) r.push_back(format_dist(d));
        rows.push_back(std::move(r));
    }
    return Json{{"points", X.labels}, {"dist", std::move(rows)}};
}

FiniteMetricSpace space_from_json(const Json& j) {
    const Json& pts = field(j, "points");
    const Json& rows = field(j, "dist");
    if (!pts.is_array() || !rows.is_array()) bad("space: \"points\" and \"dist\" must be arrays");
    std::vector<std::string> labels;
    for (const auto& p : pts) {
        if (!p.is_string()) bad("space: point ids are strings");
        labels.push_back(p.get<std::string>());
    }
    if (rows.size() != labels.size()) bad("space: matrix has the wrong number of rows");
    DistMatrix d;
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != labels.size()) bad("space: matrix row has the wrong length");
        std::vector<Dist> r;
        for (const auto& v : row) {
            if (v.is_string()) r.push_back(parse_dist(v.get<std::string>()));
            else if (v.is_number_integer()) r.push_back(Dist(v.get<std::int64_t>()));
            else bad("space: distances are \"p/q\" or \"n\" strings");
        }
        d.push_back(std::move(r));
    }
    return validate_metric(std::move(labels), std::move(d));
}

Json extension_to_json(const SExtension& E) {
    Json embed = Json::object();
    for (int x = 0; x < E.base.size(); ++x) embed[E.base.labels[x]] = E.space.labels[E.embed[x]];
    Json symbols = Json::object(), smap = Json::object();
    for (std::size_t i = 0; i < E.P.size(); ++i) {
        const std::string id = "p" + std::to_string(i);
        Json pairs = Json::array();
        for (const auto& [a, b] : E.P[i].pairs) pairs.push_back({E.base.labels[a], E.base.labels[b]});
        symbols[id] = std::move(pairs);
        Json img = Json::array();
        for (int y : E.smap[i]) img.push_back(E.space.labels[y]);
        smap[id] = std::move(img);
    }
    Json j{{"base", space_to_json(E.base)},
           {"space", space_to_json(E.space)},
           {"a0", E.base.labels[E.a0]},
           {"embed", std::move(embed)},
           {"symbols", std::move(symbols)},
           {"smap", std::move(smap)}};
    if (E.quotient) j["quotient"] = Json{{"degree", E.quotient->degree}, {"images", E.quotient->images}};
    return j;
}

SExtension extension_from_json(const Json& j) {
    SExtension E;
    E.base = space_from_json(field(j, "base"));
    E.space = space_from_json(field(j, "space"));
    E.a0 = point(E.base, field(j, "a0"), "a0");
    const Json& embed = field(j, "embed");
    if (!embed.is_object() || static_cast<int>(embed.size()) != E.base.size()) bad("embed must map every base point");
    E.embed.assign(E.base.size(), -1);
    for (const auto& [x, y] : embed.items()) E.embed[point(E.base, Json(x), "embed")] = point(E.space, y, "embed");

    const Json& symbols = field(j, "symbols");
    const Json& smap = field(j, "smap");
    if (!symbols.is_object() || !smap.is_object() || symbols.size() != smap.size()) bad("symbols and smap must match");
    E.P.resize(symbols.size());
    E.smap.resize(symbols.size());
    std::vector<char> seen(symbols.size(), 0);
    for (const auto& [id, pairs] : symbols.items()) {
        const int i = symbol_index(id, symbols.size());
        if (seen[i]++) bad("duplicate symbol id \"" + id + "\"");
        if (!pairs.is_array()) bad("symbol \"" + id + "\" must be a pair list");
        std::vector<std::pair<int, int>> p;
        for (const auto& ab : pairs) {
            if (!ab.is_array() || ab.size() != 2) bad("symbol \"" + id + "\" has a malformed pair");
            p.emplace_back(point(E.base, ab[0], "symbols"), point(E.base, ab[1], "symbols"));
        }
        E.P[i] = PartialIsometry(std::move(p));
        if (!smap.contains(id)) bad("smap lacks \"" + id + "\"");
        E.smap[i] = labelled_perm(E.space, smap.at(id), "smap");
    }
    if (!std::is_sorted(E.P.begin(), E.P.end())) {
        std::vector<std::size_t> order(E.P.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return E.P[a] < E.P[b]; });
        std::vector<PartialIsometry> P;
        std::vector<Perm> s;
        for (auto k : order) {
            P.push_back(E.P[k]);
            s.push_back(E.smap[k]);
        }
        E.P = std::move(P);
        E.smap = std::move(s);
    }
    if (j.contains("quotient")) {
        const Json& q = j.at("quotient");
        FiniteQuotient psi;
        psi.degree = field(q, "degree").get<int>();
        if (psi.degree < 1) bad("quotient degree must be positive");
        for (const auto& g : field(q, "images")) psi.images.push_back(perm_from_json(g, psi.degree, "quotient"));
        E.quotient = std::move(psi);
    }
    return E;
}

Json injection_to_json(const FiniteMetricSpace& from, const FiniteMetricSpace& to, const std::vector<int>& inj) {
    Json j = Json::object();
    for (int x = 0; x < from.size(); ++x) j[from.labels[x]] = to.labels[inj[x]];
    return j;
}

std::vector<int> injection_from_json(const Json& j, const FiniteMetricSpace& from, const FiniteMetricSpace& to) {
    if (!j.is_object() || static_cast<int>(j.size()) != from.size()) bad("injection must map every source point");
    std::vector<int> inj(from.size(), -1);
    for (const auto& [x, y] : j.items()) inj[point(from, Json(x), "injection")] = point(to, y, "injection");
    return inj;
}

Json group_spec_to_json(const GroupSpec& G) {
    return Json{{"degree", G.degree}, {"old_images", G.old_images}, {"k", G.k}, {"generators", G.generators}};
}

GroupSpec group_spec_from_json(const Json& j) {
    GroupSpec G;
    G.degree = field(j, "degree").get<int>();
    if (G.degree < 1) bad("group degree must be positive");
    if (j.contains("old_images")) {
        for (const auto& p : j.at("old_images")) G.old_images.push_back(perm_from_json(p, G.degree, "old_images"));
    }
    G.k = perm_from_json(field(j, "k"), G.degree, "k");
    if (j.contains("generators")) {
        for (const auto& p : j.at("generators")) G.generators.push_back(perm_from_json(p, G.degree, "generators"));
    }
    return G;
}

TowerInput tower_input_from_json(const Json& j) {
    TowerInput T;
    for (const auto& s : field(j, "stages")) T.nets.push_back(space_from_json(s));
    const Json& inj = field(j, "injections");
    if (inj.size() + 1 != T.nets.size()) bad("need one injection per consecutive pair of stages");
    for (std::size_t k = 0; k < inj.size(); ++k) T.inj.push_back(injection_from_json(inj[k], T.nets[k], T.nets[k + 1]));
    return T;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        bad(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) bad("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace sext
