// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 search or closure budget exhausted, 3 input error.
#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "sext/coherent.hpp"
#include "sext/extension.hpp"
#include "sext/json_io.hpp"
#include "sext/oracle.hpp"
#include "sext/ultrametric.hpp"

using namespace sext;

namespace {

enum Exit { Ok = 0, VerifyFailed = 1, Budget = 2, BadInput = 3 };

struct Options {
    std::uint64_t seed = 1;
    int max_degree = SearchBudget{}.max_degree;
    std::size_t max_candidates = SearchBudget{}.max_candidates;
    std::size_t closure_cap = kDefaultClosureCap;
    int jobs = 1;
    std::string out = "-";

    SearchBudget budget() const {
        SearchBudget b;
        b.seed = seed;
        b.max_degree = max_degree;
        b.max_candidates = max_candidates;
        b.closure_cap = closure_cap;
        return b;
    }
};

int exit_for(Errc c) {
    switch (c) {
        case Errc::BudgetExhausted:
        case Errc::ClosureBudgetExceeded:
        case Errc::TooLarge:
            return Budget;
        case Errc::NotReduced:
        case Errc::CollapsedPoints:
        case Errc::ConflictingWeight:
        case Errc::IncompatibleSeed:
        case Errc::IncompatibleQuotient:
        case Errc::NotInvariant:
        case Errc::NotConsistent:
            return VerifyFailed;
        default:
            return BadInput;
    }
}

Route parse_route(const std::string& s) {
    if (s == "auto") return Route::Auto;
    if (s == "quotient") return Route::Quotient;
    if (s == "action") return Route::Action;
    throw Error(Errc::InvalidInput, "route must be auto, quotient or action");
}

const char* route_name(Route r) {
    switch (r) {
        case Route::Quotient: return "quotient";
        case Route::Action: return "action";
        default: return "auto";
    }
}

int base_index(const FiniteMetricSpace& X, const std::string& label) {
    if (label.empty()) return 0;
    const int i = X.index_of(label);
    if (i < 0) throw Error(Errc::InvalidInput, "unknown base point \"" + label + "\"");
    return i;
}

Json verify_json(const SExtension& E) {
    const VerifyReport r = verify_s_extension(E);
    return Json{{"ok", r.ok}, {"full_partials", r.full_partials}, {"minimal", is_minimal(E)},
                {"points", E.space.size()}, {"violations", r.violations}};
}

// Nearest Y_k image for every point of Y_{k+1}, with its distance.
Json net_certificate(const SExtension& next, const std::vector<int>& y_inj, const Dist& eps) {
    Json nearest = Json::object();
    bool ok = true;
    for (int y = 0; y < next.space.size(); ++y) {
        int best = y_inj.front();
        for (int s : y_inj) {
            if (next.space.d(y, s) < next.space.d(y, best)) best = s;
        }
        ok = ok && next.space.d(y, best) < eps;
        nearest[next.space.labels[y]] = {next.space.labels[best], format_dist(next.space.d(y, best))};
    }
    return Json{{"eps", format_dist(eps)}, {"ok", ok}, {"nearest", std::move(nearest)}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite S-extensions of finite metric spaces"};
    app.require_subcommand(1);
    Options o;
    std::string route = "auto", base;
    int max_points = 64, max_size = 4;
    bool witnesses = false, minimal = false;
    std::string in1, in2, in3;

    auto common = [&](CLI::App* c) {
        c->add_option("--seed", o.seed, "Seed for every randomized choice");
        c->add_option("--max-degree", o.max_degree, "Largest permutation degree searched")->check(CLI::PositiveNumber);
        c->add_option("--max-candidates", o.max_candidates, "Candidate budget of the quotient search")->check(CLI::PositiveNumber);
        c->add_option("--closure-cap", o.closure_cap, "Largest group closure computed")->check(CLI::PositiveNumber);
        c->add_option("--jobs", o.jobs, "Worker count; the search runs sequentially")->check(CLI::PositiveNumber);
        c->add_option("--out", o.out, "Output file, - for stdout");
    };

    auto* extend_cmd = app.add_subcommand("extend", "S-extension of a space over all its partial isometries");
    extend_cmd->add_option("space", in1, "Space file")->required();
    extend_cmd->add_option("--route", route, "auto, quotient or action");
    extend_cmd->add_option("--base", base, "Base point label");
    extend_cmd->add_option("--max-points", max_points, "Largest coset graph built by the auto route");
    common(extend_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "Check an extension file");
    verify_cmd->add_option("extension", in1, "Extension file")->required();
    common(verify_cmd);

    auto* min_cmd = app.add_subcommand("minimalize", "Restrict an extension to the orbit of its base");
    min_cmd->add_option("extension", in1, "Extension file")->required();
    common(min_cmd);

    auto* coh_cmd = app.add_subcommand("coherent", "Coherent extension of E1 over a larger space");
    coh_cmd->add_option("e1", in1, "Extension file for X1")->required();
    coh_cmd->add_option("x2", in2, "Space file for X2")->required();
    coh_cmd->add_option("injection", in3, "Injection file X1 -> X2")->required();
    coh_cmd->add_option("--route", route, "auto, quotient or action");
    coh_cmd->add_option("--max-points", max_points, "Largest coset graph built by the auto route");
    common(coh_cmd);

    auto* group_cmd = app.add_subcommand("group-extend", "Extend E1 by one point realizing a larger group");
    group_cmd->add_option("e1", in1, "Extension file")->required();
    group_cmd->add_option("group", in2, "Group spec file")->required();
    common(group_cmd);

    auto* ultra_cmd = app.add_subcommand("ultra-extend", "Homogeneous S-extension of a finite ultrametric space");
    ultra_cmd->add_option("space", in1, "Space file")->required();
    ultra_cmd->add_flag("--witnesses", witnesses, "List an isometry from the base image to every point");
    ultra_cmd->add_flag("--minimal", minimal, "Restrict to the orbit of the base");
    common(ultra_cmd);

    auto* tower_cmd = app.add_subcommand("ultra-tower", "Coherent stages over nested nets");
    tower_cmd->add_option("tower", in1, "Tower file")->required();
    common(tower_cmd);

    auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive smallest S-extension search");
    oracle_cmd->add_option("space", in1, "Space file")->required();
    oracle_cmd->add_option("--max-size", max_size, "Largest candidate size (at most 7)");
    common(oracle_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*extend_cmd) {
            const auto X = space_from_json(read_json_file(in1));
            const GenSet P = standard_genset(X, base_index(X, base));
            const ExtendResult r = extend(X, P, o.budget(), parse_route(route), max_points);
            Json j = extension_to_json(r.ext);
            j["certificate"] = Json{{"route", route_name(r.route)}, {"tier", r.witness.tier},
                                    {"candidates", r.witness.candidates}, {"omega", r.witness.omega}};
            write_json_file(o.out, j);
            return Ok;
        }
        if (*verify_cmd) {
            const SExtension E = extension_from_json(read_json_file(in1));
            const Json report = verify_json(E);
            write_json_file(o.out, report);
            if (!report["ok"].get<bool>()) {
                for (const auto& v : report["violations"]) std::cerr << v.get<std::string>() << '\n';
                return VerifyFailed;
            }
            return Ok;
        }
        if (*min_cmd) {
            write_json_file(o.out, extension_to_json(minimalize(extension_from_json(read_json_file(in1)))));
            return Ok;
        }
        if (*coh_cmd) {
            const SExtension E1 = extension_from_json(read_json_file(in1));
            const auto X2 = space_from_json(read_json_file(in2));
            const auto inj = injection_from_json(read_json_file(in3), E1.base, X2);
            const GenSet P2 = standard_genset(X2, inj[E1.a0]);
            const CoherentResult r = coherent_extension(E1, X2, inj, P2, o.budget(), parse_route(route), max_points);
            Json j = extension_to_json(r.ext);
            j["y_inj"] = injection_to_json(E1.space, r.ext.space, r.y_inj);
            j["certificate"] = Json{{"route", route_name(r.route)}, {"candidates", r.candidates},
                                    {"coherent", is_coherent(E1, r.ext, inj, r.y_inj)}};
            write_json_file(o.out, j);
            return Ok;
        }
        if (*group_cmd) {
            const SExtension E1 = extension_from_json(read_json_file(in1));
            const GroupSpec G = group_spec_from_json(read_json_file(in2));
            const GroupExtension r = extend_group_by_one(E1, G, o.closure_cap);
            Json j = extension_to_json(r.ext);
            j["x_inj"] = injection_to_json(E1.base, r.ext.base, r.x_inj);
            j["y_inj"] = injection_to_json(E1.space, r.ext.space, r.y_inj);
            j["certificate"] = Json{{"image_order", r.image_order},
                                    {"coherent", is_coherent(E1, r.ext, r.x_inj, r.y_inj)}};
            write_json_file(o.out, j);
            return Ok;
        }
        if (*ultra_cmd) {
            const auto X = space_from_json(read_json_file(in1));
            SExtension E = ultra_s_extension(X);
            if (minimal) E = minimalize(E);
            Json j = extension_to_json(E);
            Json distances = Json::array();
            for (const Dist& d : distance_set(E.space)) distances.push_back(format_dist(d));
            Json cert{{"ultrametric", is_ultrametric(E.space)}, {"distance_set", std::move(distances)}};
            if (witnesses) {
                const int y0 = E.embed[E.a0];
                Json w = Json::object();
                for (int y = 0; y < E.space.size(); ++y) {
                    const Perm g = extend_partial_isometry_ultra(E.space, PartialIsometry({{y0, y}}));
                    Json img = Json::array();
                    for (int z : g) img.push_back(E.space.labels[z]);
                    w[E.space.labels[y]] = std::move(img);
                }
                cert["witnesses"] = std::move(w);
            }
            j["certificate"] = std::move(cert);
            write_json_file(o.out, j);
            return Ok;
        }
        if (*tower_cmd) {
            const TowerInput in = tower_input_from_json(read_json_file(in1));
            const UltraTower T = compact_stage_pipeline(in.nets, in.inj);
            Json stages = Json::array(), steps = Json::array();
            for (const auto& E : T.stages) stages.push_back(extension_to_json(E));
            bool ok = true;
            for (std::size_t k = 0; k < T.y_inj.size(); ++k) {
                const bool coh = is_coherent(T.stages[k], T.stages[k + 1], in.inj[k], T.y_inj[k]);
                Json net = net_certificate(T.stages[k + 1], T.y_inj[k], T.eps[k]);
                ok = ok && coh && net["ok"].get<bool>();
                steps.push_back(Json{{"y_inj", injection_to_json(T.stages[k].space, T.stages[k + 1].space, T.y_inj[k])},
                                     {"coherent", coh},
                                     {"net", std::move(net)}});
            }
            write_json_file(o.out, Json{{"stages", std::move(stages)}, {"steps", std::move(steps)}});
            return ok ? Ok : VerifyFailed;
        }
        if (*oracle_cmd) {
            const auto X = space_from_json(read_json_file(in1));
            const OracleReport r = brute_force_s_extension(X, enumerate_partial_isometries(X), max_size);
            Json j{{"found", r.found.has_value()}, {"candidates", r.candidates}, {"max_size_reached", r.max_size_reached}};
            if (r.found) j["extension"] = extension_to_json(*r.found);
            write_json_file(o.out, j);
            return r.found ? Ok : Budget;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return exit_for(e.code());
    } catch (const Json::exception& e) {
        std::cerr << "InvalidInput: " << e.what() << '\n';
        return BadInput;
    }
    return Ok;
}
