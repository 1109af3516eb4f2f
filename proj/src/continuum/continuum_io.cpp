#include "expdyn/continuum.hpp"
#include "expdyn/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace expdyn {

using nlohmann::json;

namespace {

void write_point(std::ostringstream& out, const SpherePoint& p)
{
    if (p.is_infinite()) {
        out << "inf,inf";
        return;
    }
    out << text::format_double(p.re()) << ',' << text::format_double(p.im());
}

SpherePoint read_point(std::string_view re, std::string_view im)
{
    const double x = text::parse_double(re);
    const double y = text::parse_double(im);
    if (std::isinf(x) || std::isinf(y))
        return SpherePoint::infinity();
    return SpherePoint::finite(x, y);
}

std::string join_word(const std::vector<long>& word)
{
    std::string s;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i > 0)
            s += ';';
        s += std::to_string(word[i]);
    }
    return s;
}

}  // namespace

std::string curves_to_csv(std::span<const SampledCurve> curves)
{
    std::ostringstream out;
    out << "generation,sign,param,re,im\n";
    for (const auto& c : curves)
        for (const auto& s : c.samples) {
            out << c.generation << ',' << sign_char(c.sign) << ',' << text::format_double(s.param)
                << ',';
            write_point(out, s.point);
            out << '\n';
        }
    return out.str();
}

std::vector<SampledCurve> curves_from_csv(const std::string& content)
{
    const auto rows = text::lines(content);
    if (rows.empty() || text::trim(rows[0]) != "generation,sign,param,re,im")
        text::fail_at_line(1, "expected header generation,sign,param,re,im");
    std::vector<SampledCurve> curves;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto row = text::trim(rows[i]);
        if (row.empty())
            continue;
        const auto fields = text::split(row, ',');
        if (fields.size() != 5)
            text::fail_at_line(i + 1, "expected 5 fields");
        try {
            const int generation = static_cast<int>(text::parse_int(fields[0]));
            const Sign sign = parse_sign(fields[1]);
            if (curves.empty() || curves.back().generation != generation ||
                curves.back().sign != sign) {
                SampledCurve c;
                c.generation = generation;
                c.sign = sign;
                curves.push_back(std::move(c));
            }
            curves.back().samples.push_back(
                {text::parse_double(fields[2]), read_point(fields[3], fields[4])});
        } catch (const std::invalid_argument& e) {
            text::fail_at_line(i + 1, e.what());
        }
    }
    // The file does not store resolution metadata; recover what the samples show.
    const auto inf = SpherePoint::infinity();
    for (auto& c : curves) {
        for (std::size_t i = 1; i < c.samples.size(); ++i)
            c.resolution = std::max(c.resolution,
                                    chordal_dist(c.samples[i - 1].point, c.samples[i].point));
        if (!c.samples.empty())
            c.truncation = std::min(chordal_dist(c.samples.front().point, inf),
                                    chordal_dist(c.samples.back().point, inf));
    }
    return curves;
}

std::string forest_to_csv(const PreimageForest& forest)
{
    std::ostringstream out;
    out << "depth,branch_word,re,im\n";
    for (std::size_t i = 0; i < forest.points.size(); ++i) {
        out << forest.depth_of[i] << ',' << join_word(forest.word(i)) << ',';
        write_point(out, forest.points[i]);
        out << '\n';
    }
    return out.str();
}

std::vector<ForestRow> forest_from_csv(const std::string& content)
{
    const auto rows = text::lines(content);
    if (rows.empty() || text::trim(rows[0]) != "depth,branch_word,re,im")
        text::fail_at_line(1, "expected header depth,branch_word,re,im");
    std::vector<ForestRow> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto row = text::trim(rows[i]);
        if (row.empty())
            continue;
        const auto fields = text::split(row, ',');
        if (fields.size() != 4)
            text::fail_at_line(i + 1, "expected 4 fields");
        try {
            ForestRow r;
            r.depth = static_cast<int>(text::parse_int(fields[0]));
            if (!text::trim(fields[1]).empty())
                for (auto part : text::split(fields[1], ';'))
                    r.word.push_back(static_cast<long>(text::parse_int(part)));
            if (r.word.size() != static_cast<std::size_t>(r.depth))
                text::fail_at_line(i + 1, "branch word length differs from depth");
            r.point = read_point(fields[2], fields[3]);
            out.push_back(std::move(r));
        } catch (const std::invalid_argument& e) {
            const std::string what = e.what();
            if (what.starts_with("line "))
                throw;
            text::fail_at_line(i + 1, what);
        }
    }
    return out;
}

std::string hausdorff_report_to_json(std::span<const HausdorffEntry> report, double delta)
{
    json entries = json::array();
    for (const auto& e : report)
        entries.push_back({{"k", e.generation}, {"d", e.distance}});
    return json{{"delta", delta}, {"metric", "chordal"}, {"entries", entries}}.dump(2);
}

std::string connectivity_report_to_json(const ConnectivityReport& report)
{
    json levels = json::array();
    for (const auto& l : report.levels)
        levels.push_back({{"eps", l.eps},
                          {"points", l.points},
                          {"components", l.components},
                          {"largest_share", l.largest_share}});
    json j{{"levels", levels}};
    j["resolution"] = report.resolution ? json(*report.resolution) : json(nullptr);
    j["connected_from_ratio"] =
        report.connected_from_ratio ? json(*report.connected_from_ratio) : json(nullptr);
    return j.dump(2);
}

std::string density_report_to_json(const DensityReport& report)
{
    return json{{"grid_n", report.grid_n},
                {"points", report.points},
                {"coverage", report.coverage},
                {"fraction", report.fraction()}}
        .dump(2);
}

}  // namespace expdyn
