#include "expdyn/rays.hpp"

#include "expdyn/text.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace expdyn {

namespace {

void check_entries(const std::vector<long>& entries)
{
    for (long e : entries)
        if (e > Address::kMaxEntry || e < -Address::kMaxEntry)
            throw std::invalid_argument("address entry out of range: " + std::to_string(e));
}

std::vector<long> parse_list(std::string_view text)
{
    std::vector<long> out;
    if (text::trim(text).empty())
        return out;
    for (auto part : text::split(text, ','))
        out.push_back(static_cast<long>(text::parse_int(text::trim(part))));
    return out;
}

std::string join(const std::vector<long>& entries)
{
    std::string out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0)
            out += ',';
        out += std::to_string(entries[i]);
    }
    return out;
}

}  // namespace

Address::Address(std::vector<long> head_, Tail tail_, std::vector<long> period_)
    : head(std::move(head_)), tail(tail_), period(std::move(period_))
{
    if (tail == Tail::periodic && period.empty())
        throw std::invalid_argument("periodic tail needs at least one entry");
    if (tail == Tail::zeros && !period.empty())
        throw std::invalid_argument("zero tail takes no period");
    check_entries(head);
    check_entries(period);
}

long Address::at(std::size_t n) const noexcept
{
    if (n < head.size())
        return head[n];
    if (tail == Tail::zeros)
        return 0;
    return period[(n - head.size()) % period.size()];
}

long Address::bound() const noexcept
{
    long b = 0;
    for (long e : head)
        b = std::max(b, std::labs(e));
    for (long e : period)
        b = std::max(b, std::labs(e));
    return b;
}

Address Address::shifted(std::size_t n) const
{
    if (n <= head.size())
        return Address({head.begin() + static_cast<std::ptrdiff_t>(n), head.end()}, tail, period);
    if (tail == Tail::zeros)
        return Address({}, tail);
    const std::size_t r = (n - head.size()) % period.size();
    std::vector<long> rotated(period.begin() + static_cast<std::ptrdiff_t>(r), period.end());
    rotated.insert(rotated.end(), period.begin(), period.begin() + static_cast<std::ptrdiff_t>(r));
    return Address({}, tail, std::move(rotated));
}

Address Address::negated() const
{
    Address out = *this;
    for (long& e : out.head)
        e = -e;
    for (long& e : out.period)
        e = -e;
    return out;
}

Address Address::parse(std::string_view textual)
{
    const auto bar = textual.find('|');
    if (bar == std::string_view::npos)
        throw std::invalid_argument("address must be `head|zeros` or `head|periodic:p0,p1,...`");
    auto head = parse_list(textual.substr(0, bar));
    const auto tail = text::trim(textual.substr(bar + 1));
    if (tail == "zeros")
        return Address(std::move(head), Tail::zeros);
    constexpr std::string_view kPeriodic = "periodic:";
    if (tail.substr(0, kPeriodic.size()) == kPeriodic)
        return Address(std::move(head), Tail::periodic, parse_list(tail.substr(kPeriodic.size())));
    throw std::invalid_argument("unknown address tail: " + std::string(tail));
}

std::string Address::to_string() const
{
    return join(head) + (tail == Tail::zeros ? "|zeros" : "|periodic:" + join(period));
}

}  // namespace expdyn
