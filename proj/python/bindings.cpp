// Python entry points. Documents cross the boundary as JSON text in the formats of
// json_io.hpp; the package wrapper converts them to and from Python objects.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sext/coherent.hpp"
#include "sext/json_io.hpp"
#include "sext/oracle.hpp"
#include "sext/ultrametric.hpp"

namespace py = pybind11;
using namespace sext;

namespace {

Route parse_route(const std::string& s) {
    if (s == "auto") return Route::Auto;
    if (s == "quotient") return Route::Quotient;
    if (s == "action") return Route::Action;
    throw Error(Errc::InvalidInput, "route must be auto, quotient or action");
}

SearchBudget budget(std::uint64_t seed, int max_degree) {
    SearchBudget b;
    b.seed = seed;
    b.max_degree = max_degree;
    return b;
}

std::string extend_json(const std::string& space, const std::string& route, std::uint64_t seed, int max_degree) {
    const auto X = space_from_json(Json::parse(space));
    const auto r = extend(X, standard_genset(X), budget(seed, max_degree), parse_route(route));
    Json j = extension_to_json(r.ext);
    j["certificate"] = Json{{"tier", r.witness.tier}, {"candidates", r.witness.candidates}};
    return j.dump();
}

std::string verify_json(const std::string& ext) {
    const auto E = extension_from_json(Json::parse(ext));
    const auto r = verify_s_extension(E);
    return Json{{"ok", r.ok}, {"full_partials", r.full_partials}, {"minimal", is_minimal(E)},
                {"points", E.space.size()}, {"violations", r.violations}}
        .dump();
}

std::string minimalize_json(const std::string& ext) {
    return extension_to_json(minimalize(extension_from_json(Json::parse(ext)))).dump();
}

std::string coherent_json(const std::string& e1, const std::string& x2, const std::string& inj, std::uint64_t seed,
                          int max_degree) {
    const auto E1 = extension_from_json(Json::parse(e1));
    const auto X2 = space_from_json(Json::parse(x2));
    const auto x_inj = injection_from_json(Json::parse(inj), E1.base, X2);
    const auto r = coherent_extension(E1, X2, x_inj, standard_genset(X2, x_inj[E1.a0]), budget(seed, max_degree));
    Json j = extension_to_json(r.ext);
    j["y_inj"] = injection_to_json(E1.space, r.ext.space, r.y_inj);
    j["coherent"] = is_coherent(E1, r.ext, x_inj, r.y_inj);
    return j.dump();
}

std::string ultra_extend_json(const std::string& space, bool minimal) {
    SExtension E = ultra_s_extension(space_from_json(Json::parse(space)));
    if (minimal) E = minimalize(E);
    return extension_to_json(E).dump();
}

std::string oracle_json(const std::string& space, int max_size) {
    const auto X = space_from_json(Json::parse(space));
    const auto r = brute_force_s_extension(X, enumerate_partial_isometries(X), max_size);
    Json j{{"found", r.found.has_value()}, {"candidates", r.candidates}};
    if (r.found) j["extension"] = extension_to_json(*r.found);
    return j.dump();
}

bool is_homogeneous_json(const std::string& space, int cap) { return is_homogeneous(space_from_json(Json::parse(space)), cap); }

}  // namespace

PYBIND11_MODULE(_sext, m) {
    m.doc() = "Finite S-extensions of finite metric spaces";

    static py::exception<Error> error(m, "Error", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            PyErr_SetString(error.ptr(), e.what());
        } catch (const Json::exception& e) {
            PyErr_SetString(error.ptr(), (std::string("InvalidInput: ") + e.what()).c_str());
        }
    });

    m.def("extend", &extend_json, py::arg("space"), py::arg("route") = "auto", py::arg("seed") = 1,
          py::arg("max_degree") = SearchBudget{}.max_degree, py::call_guard<py::gil_scoped_release>());
    m.def("verify", &verify_json, py::arg("extension"));
    m.def("minimalize", &minimalize_json, py::arg("extension"));
    m.def("coherent", &coherent_json, py::arg("e1"), py::arg("x2"), py::arg("injection"), py::arg("seed") = 1,
          py::arg("max_degree") = SearchBudget{}.max_degree, py::call_guard<py::gil_scoped_release>());
    m.def("ultra_extend", &ultra_extend_json, py::arg("space"), py::arg("minimal") = false);
    m.def("oracle", &oracle_json, py::arg("space"), py::arg("max_size") = 4, py::call_guard<py::gil_scoped_release>());
    m.def("is_homogeneous", &is_homogeneous_json, py::arg("space"), py::arg("cap") = kDefaultIsoCap);
}
