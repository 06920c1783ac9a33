#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sext/coherent.hpp"
#include "sext/extension.hpp"
#include "sext/ultrametric.hpp"

namespace sext {

using Json = nlohmann::ordered_json;

// {"points": [...], "dist": [["0","1/2",...], ...]}, full row-major matrix.
Json space_to_json(const FiniteMetricSpace& X);
FiniteMetricSpace space_from_json(const Json& j);

// {"base", "space", "a0", "embed": {x: y}, "symbols": {"p<i>": [[x, x'], ...]},
//  "smap": {"p<i>": [y, ...]}, "quotient": {"degree", "images"}}; symbols are
// numbered in canonical order and smap arrays list images in space point order.
Json extension_to_json(const SExtension& E);
SExtension extension_from_json(const Json& j);

// {"x": "x'", ...} by labels, over every point of `from`.
Json injection_to_json(const FiniteMetricSpace& from, const FiniteMetricSpace& to, const std::vector<int>& inj);
std::vector<int> injection_from_json(const Json& j, const FiniteMetricSpace& from, const FiniteMetricSpace& to);

// {"degree", "old_images": [[...]], "k": [...], "generators": [[...]]}.
Json group_spec_to_json(const GroupSpec& G);
GroupSpec group_spec_from_json(const Json& j);

// {"stages": [space, ...], "injections": [{...}, ...]}.
struct TowerInput {
    std::vector<FiniteMetricSpace> nets;
    std::vector<std::vector<int>> inj;
};
TowerInput tower_input_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);  // "-" or "" is stdout

}  // namespace sext
