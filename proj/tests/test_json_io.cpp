#include <doctest.h>

#include "sext/json_io.hpp"
#include "support.hpp"

using namespace sext;
using fixture::q;

namespace {

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return Errc::InvalidInput;
}

bool same(const SExtension& a, const SExtension& b) {
    return a.base.labels == b.base.labels && a.base.dist == b.base.dist && a.space.labels == b.space.labels &&
           a.space.dist == b.space.dist && a.a0 == b.a0 && a.embed == b.embed && a.P == b.P && a.smap == b.smap &&
           a.quotient.has_value() == b.quotient.has_value() &&
           (!a.quotient || (a.quotient->degree == b.quotient->degree && a.quotient->images == b.quotient->images));
}

}  // namespace

TEST_CASE("space round trip") {
    const auto X = fixture::space({{q(0), q(1, 2), q(3, 4)}, {q(1, 2), q(0), q(1)}, {q(3, 4), q(1), q(0)}});
    const Json j = space_to_json(X);
    CHECK(j["dist"][0][1] == "1/2");
    const auto Y = space_from_json(Json::parse(j.dump()));
    CHECK(Y.labels == X.labels);
    CHECK(Y.dist == X.dist);

    const auto Z = space_from_json(Json::parse(R"({"points":["a","b"],"dist":[[0,2],[2,0]]})"));
    CHECK(Z.d(0, 1) == q(2));
}

TEST_CASE("extension round trip") {
    for (Route route : {Route::Quotient, Route::Action}) {
        const auto X = fixture::path3();
        const auto E = extend(X, standard_genset(X), {}, route).ext;
        const auto F = extension_from_json(Json::parse(extension_to_json(E).dump()));
        CHECK(same(E, F));
        CHECK(verify_s_extension(F).ok);
    }

    // Symbol ids out of canonical order are re-sorted with their images.
    const auto E = extend(fixture::pair(), standard_genset(fixture::pair())).ext;
    Json j = extension_to_json(E);
    Json sym = Json::object(), smap = Json::object();
    for (int i = static_cast<int>(E.P.size()) - 1; i >= 0; --i) {
        const std::string from = "p" + std::to_string(i), to = "p" + std::to_string(E.P.size() - 1 - i);
        sym[to] = j["symbols"][from];
        smap[to] = j["smap"][from];
    }
    j["symbols"] = sym;
    j["smap"] = smap;
    CHECK(same(E, extension_from_json(j)));
}

TEST_CASE("injections and group specs round trip") {
    const auto X = fixture::pair(), Y = fixture::path3();
    const std::vector<int> inj{2, 1};
    CHECK(injection_from_json(injection_to_json(X, Y, inj), X, Y) == inj);

    GroupSpec G;
    G.degree = 3;
    G.old_images = {{1, 0, 2}};
    G.k = {1, 2, 0};
    G.generators = {{1, 0, 2}, {1, 2, 0}};
    const GroupSpec H = group_spec_from_json(group_spec_to_json(G));
    CHECK(H.degree == 3);
    CHECK(H.old_images == G.old_images);
    CHECK(H.k == G.k);
    CHECK(H.generators == G.generators);
}

TEST_CASE("tower input") {
    const auto X = fixture::pair();
    const auto Y = fixture::path3();
    const Json j{{"stages", {space_to_json(X), space_to_json(Y)}}, {"injections", {injection_to_json(X, Y, {0, 1})}}};
    const auto T = tower_input_from_json(j);
    CHECK(T.nets.size() == 2);
    CHECK(T.inj == std::vector<std::vector<int>>{{0, 1}});
}

TEST_CASE("malformed input") {
    CHECK(code_of([] { space_from_json(Json::parse(R"({"points":["a"]})")); }) == Errc::InvalidInput);
    CHECK(code_of([] { space_from_json(Json::parse(R"({"points":["a","b"],"dist":[[0,1]]})")); }) == Errc::InvalidInput);
    CHECK(code_of([] { space_from_json(Json::parse(R"({"points":["a","b"],"dist":[[0,1.5],[1.5,0]]})")); }) ==
          Errc::InvalidInput);
    CHECK(code_of([] { space_from_json(Json::parse(R"({"points":["a","b"],"dist":[[0,1],[2,0]]})")); }) ==
          Errc::AsymmetricMatrix);

    const auto E = extend(fixture::pair(), standard_genset(fixture::pair())).ext;
    Json bad_label = extension_to_json(E);
    bad_label["a0"] = "nowhere";
    CHECK(code_of([&] { extension_from_json(bad_label); }) == Errc::InvalidInput);

    Json bad_perm = extension_to_json(E);
    bad_perm["smap"]["p0"] = {E.space.labels[0], E.space.labels[0]};
    CHECK(code_of([&] { extension_from_json(bad_perm); }) == Errc::InvalidInput);

    Json bad_id = extension_to_json(E);
    bad_id["symbols"]["q0"] = bad_id["symbols"]["p0"];
    bad_id["symbols"].erase("p0");
    CHECK(code_of([&] { extension_from_json(bad_id); }) == Errc::InvalidInput);

    CHECK(code_of([] { read_json_file("/nonexistent/file.json"); }) == Errc::InvalidInput);
}
