#include "topomodal/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace topomodal::io
{

namespace
{

std::vector< std::vector< std::string > > families(const json& j, const char* key)
{
    if (!j.at(key).is_array())
        throw TopologyError{ std::string("space JSON: '") + key + "' must be an array of point lists" };
    return j.at(key).get< std::vector< std::vector< std::string > > >();
}

std::size_t parse_count(const std::string& name, std::size_t prefix)
{
    const std::string digits = name.substr(prefix);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw TopologyError{ "malformed space name '" + name + "'" };
    return std::stoul(digits);
}

} // namespace

FiniteSpace named_space(const std::string& name)
{
    if (name == "point")
        return FiniteSpace::discrete(1);
    if (name == "sierpinski")
        return FiniteSpace::sierpinski();
    if (name == "pseudoline")
        return FiniteSpace::pseudo_line();
    if (name.rfind("discrete:", 0) == 0)
        return FiniteSpace::discrete(parse_count(name, 9));
    if (name.rfind("indiscrete:", 0) == 0)
        return FiniteSpace::indiscrete(parse_count(name, 11));
    throw TopologyError{ "unknown space '" + name +
                         "' (expected a JSON object, a file, point, sierpinski, pseudoline, discrete:N or indiscrete:N)" };
}

FiniteSpace space_from_json(const json& j)
{
    if (j.is_string())
        return named_space(j.get< std::string >());
    if (!j.is_object() || !j.contains("points"))
        throw TopologyError{ "space JSON must be an object with \"points\"" };
    auto points = j.at("points").get< std::vector< std::string > >();
    if (j.contains("opens"))
        return FiniteSpace::validate(std::move(points), families(j, "opens"));
    if (j.contains("subbasis"))
        return FiniteSpace::from_subbasis(std::move(points), families(j, "subbasis"));
    throw TopologyError{ "space JSON needs \"opens\" or \"subbasis\"" };
}

json point_set_to_json(const FiniteSpace& s, PointSet set) { return s.names(set); }

PointSet point_set_from_json(const FiniteSpace& s, const json& j)
{
    return s.subset(j.get< std::vector< std::string > >());
}

json space_to_json(const FiniteSpace& s)
{
    json opens = json::array();
    for (auto o : s.opens())
        opens.push_back(point_set_to_json(s, o));
    return json{ { "points", s.points() }, { "opens", opens } };
}

FiniteValuation finite_valuation_from_json(const FiniteSpace& s, const json& j)
{
    if (!j.is_object())
        throw TopologyError{ "valuation must be an object from variable names to point lists" };
    FiniteValuation val;
    for (const auto& [name, members] : j.items())
        val.emplace(name, point_set_from_json(s, members));
    return val;
}

json finite_valuation_to_json(const FiniteSpace& s, const FiniteValuation& val)
{
    json out = json::object();
    for (const auto& [name, set] : val)
        out[name] = point_set_to_json(s, set);
    return out;
}

RealValuation real_valuation_from_json(const json& j)
{
    if (!j.is_object())
        throw RegionError{ "valuation must be an object from variable names to region strings" };
    RealValuation val;
    for (const auto& [name, text] : j.items())
        val.emplace(name, Region::parse(text.get< std::string >()));
    return val;
}

Model model_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("space"))
        throw TopologyError{ "model JSON must be an object with \"space\" and \"valuation\"" };
    const json val = j.value("valuation", json::object());
    const json& space = j.at("space");
    if (space.is_string() && space.get< std::string >() == "R")
        return RealModel{ real_valuation_from_json(val) };
    FiniteSpace s = space_from_json(space);
    FiniteValuation fv = finite_valuation_from_json(s, val);
    return FiniteModel{ std::move(s), std::move(fv) };
}

PointMap map_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("from") || !j.contains("to") || !j.contains("map"))
        throw TopologyError{ "map JSON needs \"from\", \"to\" and \"map\"" };
    FiniteSpace from = space_from_json(j.at("from"));
    FiniteSpace to = space_from_json(j.at("to"));
    return PointMap::from_names(from, to, j.at("map").get< std::map< std::string, std::string > >());
}

json map_to_json(const PointMap& f)
{
    return json{ { "from", space_to_json(f.source()) }, { "to", space_to_json(f.target()) }, { "map", f.as_names() } };
}

json load_argument(const std::string& arg)
{
    const auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '['))
        return json::parse(arg);
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream in{ arg };
        std::stringstream buf;
        buf << in.rdbuf();
        return json::parse(buf.str());
    }
    return json(arg);
}

} // namespace topomodal::io
