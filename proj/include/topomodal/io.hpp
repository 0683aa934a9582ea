#pragma once

#include "topomodal/morphism.hpp"
#include "topomodal/realline.hpp"
#include "topomodal/semantics.hpp"
#include "topomodal/topology.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>

namespace topomodal::io
{

using nlohmann::json;

/// Accepts `{"points": [...], "opens": [[...], ...]}`, the `"subbasis"`
/// variant, or a named space: "point", "sierpinski", "pseudoline",
/// "discrete:N", "indiscrete:N".
[[nodiscard]] FiniteSpace space_from_json(const json& j);
[[nodiscard]] json space_to_json(const FiniteSpace& s);
[[nodiscard]] FiniteSpace named_space(const std::string& name);

[[nodiscard]] json point_set_to_json(const FiniteSpace& s, PointSet set);
[[nodiscard]] PointSet point_set_from_json(const FiniteSpace& s, const json& j);

[[nodiscard]] FiniteValuation finite_valuation_from_json(const FiniteSpace& s, const json& j);
[[nodiscard]] json finite_valuation_to_json(const FiniteSpace& s, const FiniteValuation& val);
[[nodiscard]] RealValuation real_valuation_from_json(const json& j);

struct FiniteModel
{
    FiniteSpace space;
    FiniteValuation valuation;
};

struct RealModel
{
    RealValuation valuation;
};

using Model = std::variant< FiniteModel, RealModel >;

/// `{"space": <space or "R">, "valuation": {...}}`
[[nodiscard]] Model model_from_json(const json& j);

/// `{"from": <space>, "to": <space>, "map": {"a1": "a", ...}}`
[[nodiscard]] PointMap map_from_json(const json& j);
[[nodiscard]] json map_to_json(const PointMap& f);

/// Reads a JSON argument given inline (starting with '{' or '['), as a file
/// path, or, failing both, as a bare string.
[[nodiscard]] json load_argument(const std::string& arg);

} // namespace topomodal::io
