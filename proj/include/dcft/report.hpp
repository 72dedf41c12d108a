#pragma once

// Structured reports: JSON documents with a schema version, the effective
// configuration and provenance on every value, plus a plain-text table
// rendering of the same document.

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcft/abgroup.hpp"
#include "dcft/cft.hpp"
#include "dcft/integer.hpp"

namespace dcft::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json integer(const Integer& n)
{
    if (fits_int64(n)) return to_int64(n);
    return n.get_str();
}

inline Json tagged(Json value, const std::string& provenance)
{
    return Json{{"value", std::move(value)}, {"provenance", provenance}};
}

inline Json tagged(const Integer& n, const std::string& provenance) { return tagged(integer(n), provenance); }

inline Json group(const FgAbGroup& g, const std::string& provenance)
{
    Json t = Json::array();
    for (const auto& x : g.torsion) t.push_back(integer(x));
    return Json{{"value", g.to_string()}, {"free_rank", g.free_rank}, {"torsion", t}, {"provenance", provenance}};
}

inline Json group(const ProfiniteFgAb& g, const std::string& provenance)
{
    Json t = Json::array();
    for (const auto& x : g.torsion) t.push_back(integer(x));
    return Json{{"value", g.to_string()}, {"zhat_rank", g.zhat_rank}, {"torsion", t}, {"provenance", provenance}};
}

inline Json check(const Check& c)
{
    return Json{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}, {"provenance", c.provenance}};
}

inline Json checks(const std::vector<Check>& cs)
{
    Json out = Json::array();
    for (const auto& c : cs) out.push_back(check(c));
    return out;
}

inline Json form(const QuadForm& f, const std::string& provenance)
{
    return Json{{"value", f.to_string()}, {"a", integer(f.a)}, {"b", integer(f.b)}, {"c", integer(f.c)}, {"provenance", provenance}};
}

inline Json ideal(const Ideal& i, const std::string& provenance)
{
    return Json{{"value", i.to_string()}, {"a", integer(i.a)}, {"b", integer(i.b)}, {"c", integer(i.c)}, {"provenance", provenance}};
}

// Skeleton of every report.
inline Json document(const std::string& command, const Json& config)
{
    return Json{{"schema_version", kSchemaVersion},
                {"command", command},
                {"config", config},
                {"results", Json::array()},
                {"checks", Json::array()},
                {"pass", true}};
}

// pass := all checks pass (and stays false once set false).
inline void finalize(Json& doc)
{
    bool ok = doc["pass"].get<bool>();
    for (const auto& c : doc["checks"]) ok = ok && c["pass"].get<bool>();
    doc["pass"] = ok;
}

inline Json theorem(const TheoremReport& r)
{
    Json verified = Json::array();
    for (const auto& c : r.verified) verified.push_back(check(c));
    Json predicted = Json::array();
    for (const auto& p : r.predicted)
        predicted.push_back(Json{{"name", p.name}, {"value", p.value}, {"verified", p.verified}, {"note", p.note}, {"provenance", p.provenance}});
    Json data = Json::array();
    for (const auto& v : r.data) data.push_back(Json{{"name", v.name}, {"value", v.value}, {"provenance", v.provenance}});
    Json levels = Json::array();
    for (const auto& n : r.levels) levels.push_back(integer(n));
    Json out{{"field", tagged(r.d, "ImagQuadField")},
             {"levels", levels},
             {"verified", verified},
             {"predicted", predicted},
             {"data", data}};
    if (r.artin) {
        const ArtinReport& a = *r.artin;
        out["artin"] = Json{{"polynomial", a.polynomial},
                            {"p_max", tagged(Integer(a.p_max), "input")},
                            {"checked", tagged(Integer(static_cast<long>(a.checked)), "artin_pi0_check")},
                            {"agreed", tagged(Integer(static_cast<long>(a.agreed)), "artin_pi0_check")},
                            {"pass", a.pass()}};
    } else {
        out["artin"] = nullptr;
    }
    out["provenance"] = r.provenance;
    return out;
}

namespace detail {

inline void render(std::ostringstream& os, const Json& j, const std::string& path)
{
    if (j.is_object() && j.contains("value") && j.contains("provenance") && !j["value"].is_structured()) {
        os << "  " << path << " = " << (j["value"].is_string() ? j["value"].get<std::string>() : j["value"].dump())
           << "    [" << j["provenance"].get<std::string>() << "]\n";
        return;
    }
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) render(os, v, path.empty() ? k : path + "." + k);
        return;
    }
    if (j.is_array()) {
        bool scalar = true;
        for (const auto& v : j) scalar = scalar && !v.is_structured();
        if (scalar) {
            os << "  " << path << " = " << j.dump() << "\n";
            return;
        }
        for (std::size_t i = 0; i < j.size(); ++i) render(os, j[i], path + "[" + std::to_string(i) + "]");
        return;
    }
    os << "  " << path << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

}  // namespace detail

// Human-readable table of a report document.
inline std::string render_table(const Json& doc)
{
    std::ostringstream os;
    os << "command: " << doc["command"].get<std::string>() << "  (schema " << doc["schema_version"].get<int>() << ")\n";
    os << "config:\n";
    detail::render(os, doc["config"], "");
    os << "results:\n";
    detail::render(os, doc["results"], "");
    os << "checks:\n";
    for (const auto& c : doc["checks"])
        os << "  [" << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "] " << c["name"].get<std::string>() << ": "
           << c["lhs"].get<std::string>() << " vs " << c["rhs"].get<std::string>() << "\n";
    os << "overall: " << (doc["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

}  // namespace dcft::report
