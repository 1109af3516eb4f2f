#include "expdyn/dynamics.hpp"

#include <json.hpp>

namespace expdyn {

using nlohmann::json;

namespace {

json complex_json(Complex z)
{
    return {{"re", z.real()}, {"im", z.imag()}};
}

json point_json(const SpherePoint& p)
{
    if (p.is_infinite())
        return "inf";
    return complex_json(p.value());
}

Complex complex_from(const json& j)
{
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

SpherePoint point_from(const json& j)
{
    if (j.is_string() && j.get<std::string>() == "inf")
        return SpherePoint::infinity();
    return SpherePoint::finite(complex_from(j));
}

Termination termination_from(const std::string& name)
{
    if (name == "cap_reached")
        return Termination::cap_reached;
    if (name == "overflow")
        return Termination::overflow;
    if (name == "boundary_hit")
        return Termination::boundary_hit;
    throw std::invalid_argument("unknown termination: " + name);
}

}  // namespace

std::string escape_result_to_json(const EscapeResult& r)
{
    json j;
    j["input"] = complex_json(r.input);
    j["tag"] = r.tag_name();
    auto steps = json::array();
    for (const auto& p : r.orbit_prefix)
        steps.push_back(point_json(p));
    j["steps"] = steps;
    j["entries"] = json::array();
    j["terminated_by"] = nullptr;
    if (auto* e = std::get_if<Escaped>(&r.tag)) {
        j["n"] = e->n;
    } else if (auto* b = std::get_if<Bounded>(&r.tag)) {
        j["n"] = b->n_max;
        j["last"] = point_json(b->last);
    } else if (auto* o = std::get_if<Overflowed>(&r.tag)) {
        j["n"] = o->n;
        j["value"] = {{"log_abs", o->value.log_abs}, {"arg", o->value.arg}};
    }
    return j.dump();
}

EscapeResult escape_result_from_json(const std::string& text)
{
    const auto j = json::parse(text);
    EscapeResult r;
    r.input = complex_from(j.at("input"));
    for (const auto& s : j.at("steps"))
        r.orbit_prefix.push_back(point_from(s));
    const auto tag = j.at("tag").get<std::string>();
    const int n = j.at("n").get<int>();
    if (tag == "escaped")
        r.tag = Escaped{n};
    else if (tag == "bounded")
        r.tag = Bounded{n, point_from(j.at("last"))};
    else if (tag == "overflowed")
        r.tag = Overflowed{n, {j.at("value").at("log_abs").get<double>(),
                               j.at("value").at("arg").get<double>()}};
    else
        throw std::invalid_argument("unknown orbit tag: " + tag);
    return r;
}

std::string itinerary_to_json(const Itinerary& it)
{
    json j;
    j["input"] = complex_json(it.input);
    j["tag"] = "itinerary";
    j["steps"] = json::array();
    j["entries"] = it.entries;
    j["terminated_by"] = it.termination_name();
    j["terminated_at"] = it.terminated_at;
    return j.dump();
}

Itinerary itinerary_from_json(const std::string& text)
{
    const auto j = json::parse(text);
    Itinerary it;
    it.input = complex_from(j.at("input"));
    it.entries = j.at("entries").get<std::vector<long>>();
    it.terminated_by = termination_from(j.at("terminated_by").get<std::string>());
    it.terminated_at = j.at("terminated_at").get<int>();
    return it;
}

}  // namespace expdyn
