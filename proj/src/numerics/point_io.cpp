#include "expdyn/numerics.hpp"
#include "expdyn/text.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace expdyn {

namespace text {

std::string format_double(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view s)
{
    s = trim(s);
    if (s == "inf" || s == "+inf")
        return std::numeric_limits<double>::infinity();
    if (s == "-inf")
        return -std::numeric_limits<double>::infinity();
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || std::isnan(x))
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return x;
}

long long parse_int(std::string_view s)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    long long x = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    return x;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> lines(std::string_view s)
{
    auto out = split(s, '\n');
    for (auto& l : out)
        if (!l.empty() && l.back() == '\r')
            l.remove_suffix(1);
    if (!out.empty() && out.back().empty())
        out.pop_back();
    return out;
}

void fail_at_line(std::size_t line, const std::string& what)
{
    throw std::invalid_argument("line " + std::to_string(line) + ": " + what);
}

}  // namespace text

std::string point_set_to_csv(const PointSet& points)
{
    std::ostringstream out;
    out << "re,im\n";
    for (const auto& p : points.points()) {
        if (p.is_infinite())
            out << "inf,inf\n";
        else
            out << text::format_double(p.re()) << ',' << text::format_double(p.im()) << '\n';
    }
    return out.str();
}

PointSet point_set_from_csv(const std::string& csv)
{
    const auto rows = text::lines(csv);
    if (rows.empty() || text::trim(rows[0]) != "re,im")
        text::fail_at_line(1, "expected header 're,im'");
    PointSet result;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto row = text::trim(rows[i]);
        if (row.empty())
            continue;
        try {
            if (row == "inf") {
                result.push_back(SpherePoint::infinity());
                continue;
            }
            const auto fields = text::split(row, ',');
            if (fields.size() != 2)
                throw std::invalid_argument("expected 2 fields");
            result.push_back(SpherePoint::finite(text::parse_double(fields[0]),
                                                 text::parse_double(fields[1])));
        } catch (const std::invalid_argument& e) {
            text::fail_at_line(i + 1, e.what());
        }
    }
    return result;
}

std::string point_set_to_json(const PointSet& points)
{
    auto arr = nlohmann::json::array();
    for (const auto& p : points.points()) {
        if (p.is_infinite())
            arr.push_back("inf");
        else
            arr.push_back({{"re", p.re()}, {"im", p.im()}});
    }
    return arr.dump();
}

PointSet point_set_from_json(const std::string& text)
{
    const auto doc = nlohmann::json::parse(text);
    if (!doc.is_array())
        throw std::invalid_argument("expected a JSON array of points");
    PointSet result;
    for (const auto& item : doc) {
        if (item.is_string() && item.get<std::string>() == "inf")
            result.push_back(SpherePoint::infinity());
        else if (item.is_object())
            result.push_back(
                SpherePoint::finite(item.at("re").get<double>(), item.at("im").get<double>()));
        else
            throw std::invalid_argument("malformed point entry: " + item.dump());
    }
    return result;
}

}  // namespace expdyn
