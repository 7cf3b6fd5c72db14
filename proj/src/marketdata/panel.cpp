#include "spt/marketdata/panel.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "spt/common/number_format.hpp"

namespace spt::marketdata {

SecurityId::SecurityId(std::string value) : value_(std::move(value))
{
    if (value_.empty())
        throw std::invalid_argument("SecurityId must not be empty");
}

TradingDay TradingDay::parse(std::string_view iso)
{
    iso = trim(iso);
    auto bad = [&] { return std::invalid_argument("invalid ISO-8601 date '" + std::string(iso) + "'"); };
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-')
        throw bad();
    auto y = parse_integer<int>(iso.substr(0, 4));
    auto m = parse_integer<unsigned>(iso.substr(5, 2));
    auto d = parse_integer<unsigned>(iso.substr(8, 2));
    if (!y || !m || !d)
        throw bad();
    const std::chrono::year_month_day ymd{std::chrono::year{*y}, std::chrono::month{*m}, std::chrono::day{*d}};
    if (!ymd.ok())
        throw bad();
    return TradingDay(std::string(iso));
}

bool Record::operator==(const Record& other) const noexcept
{
    const bool same_return = (has_return() == other.has_return()) &&
                             (!has_return() || total_return == other.total_return);
    return security == other.security && same_return && market_cap == other.market_cap &&
           imputed == other.imputed;
}

const Record* DayRecords::find(SecurityIndex security) const noexcept
{
    auto it = std::lower_bound(records.begin(), records.end(), security,
                               [](const Record& r, SecurityIndex s) { return r.security < s; });
    if (it == records.end() || it->security != security)
        return nullptr;
    return &*it;
}

std::string_view to_string(MissingPolicy policy) noexcept
{
    switch (policy) {
    case MissingPolicy::drop: return "drop";
    case MissingPolicy::zero: return "zero";
    case MissingPolicy::carry_flag: return "carry-flag";
    }
    return "unknown";
}

MissingPolicy parse_missing_policy(std::string_view text)
{
    if (text == "drop")
        return MissingPolicy::drop;
    if (text == "zero")
        return MissingPolicy::zero;
    if (text == "carry-flag" || text == "carry_flag")
        return MissingPolicy::carry_flag;
    throw std::invalid_argument("unknown missing-return policy '" + std::string(text) +
                                "' (expected drop, zero or carry-flag)");
}

ReturnPanel::ReturnPanel(std::vector<SecurityId> securities, std::vector<DayRecords> days, PanelMetadata metadata)
    : securities_(std::move(securities)), days_(std::move(days)), metadata_(metadata)
{
    for (std::size_t i = 1; i < securities_.size(); ++i) {
        if (!(securities_[i - 1] < securities_[i]))
            throw std::invalid_argument("panel securities must be unique and ascending");
    }
    for (std::size_t d = 0; d < days_.size(); ++d) {
        const auto& day = days_[d];
        if (d > 0 && !(days_[d - 1].date < day.date))
            throw std::invalid_argument("panel dates must be strictly increasing (at " + day.date.iso() + ")");
        for (std::size_t r = 0; r < day.records.size(); ++r) {
            const Record& rec = day.records[r];
            if (rec.security >= securities_.size())
                throw std::invalid_argument("record references unknown security on " + day.date.iso());
            if (r > 0 && day.records[r - 1].security >= rec.security)
                throw std::invalid_argument("records must be sorted and unique per day (" + day.date.iso() + ")");
            if (!(rec.market_cap > 0.0) || !std::isfinite(rec.market_cap))
                throw std::invalid_argument("market cap must be positive for " + securities_[rec.security].str() +
                                            " on " + day.date.iso());
            if (rec.has_return() && (rec.total_return < -1.0 || !std::isfinite(rec.total_return)))
                throw std::invalid_argument("total return below -1 for " + securities_[rec.security].str() +
                                            " on " + day.date.iso());
        }
    }
}

std::size_t ReturnPanel::record_count() const noexcept
{
    std::size_t n = 0;
    for (const auto& d : days_)
        n += d.records.size();
    return n;
}

std::optional<SecurityIndex> ReturnPanel::find_security(const SecurityId& id) const
{
    auto it = std::lower_bound(securities_.begin(), securities_.end(), id);
    if (it == securities_.end() || *it != id)
        return std::nullopt;
    return static_cast<SecurityIndex>(it - securities_.begin());
}

std::optional<std::size_t> ReturnPanel::find_day(const TradingDay& date) const
{
    auto it = std::lower_bound(days_.begin(), days_.end(), date,
                               [](const DayRecords& d, const TradingDay& t) { return d.date < t; });
    if (it == days_.end() || it->date != date)
        return std::nullopt;
    return static_cast<std::size_t>(it - days_.begin());
}

std::vector<std::size_t> ReturnPanel::month_starts() const
{
    std::vector<std::size_t> starts;
    for (std::size_t d = 0; d < days_.size(); ++d) {
        if (d == 0 || days_[d].date.month_key() != days_[d - 1].date.month_key())
            starts.push_back(d);
    }
    return starts;
}

ReturnPanel ReturnPanel::with_days(std::vector<DayRecords> days, PanelMetadata metadata) const
{
    return ReturnPanel(securities_, std::move(days), metadata);
}

bool ReturnPanel::operator==(const ReturnPanel& other) const
{
    return securities_ == other.securities_ && days_ == other.days_;
}

} // namespace spt::marketdata
