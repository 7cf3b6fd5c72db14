#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spt::marketdata {

/// Opaque security identifier (a PERMNO-like token). Never empty.
class SecurityId
{
public:
    SecurityId() = default;
    explicit SecurityId(std::string value);

    const std::string& str() const noexcept { return value_; }
    auto operator<=>(const SecurityId&) const = default;

private:
    std::string value_;
};

/// A trading day, stored as an ISO-8601 calendar date (YYYY-MM-DD).
///
/// Dates are ordered lexicographically, which matches chronological order
/// for this format. No calendar arithmetic is done on them.
class TradingDay
{
public:
    TradingDay() = default;

    /// Throws std::invalid_argument unless `iso` is a valid YYYY-MM-DD date.
    static TradingDay parse(std::string_view iso);

    const std::string& iso() const noexcept { return iso_; }
    /// "YYYY-MM"; windows start on the first trading day of each month key.
    std::string_view month_key() const noexcept { return std::string_view(iso_).substr(0, 7); }

    auto operator<=>(const TradingDay&) const = default;

private:
    explicit TradingDay(std::string iso) : iso_(std::move(iso)) {}
    std::string iso_;
};

/// Position of a security in ReturnPanel::securities().
using SecurityIndex = std::uint32_t;

inline constexpr double kMissingReturn = std::numeric_limits<double>::quiet_NaN();

/// One security on one day. `total_return` is NaN while missing; `market_cap`
/// is the capitalization entering the day (prior close), which is what the
/// start-of-day ranking uses.
struct Record
{
    SecurityIndex security = 0;
    double total_return = kMissingReturn;
    double market_cap = 0.0;
    bool imputed = false;

    bool has_return() const noexcept { return !std::isnan(total_return); }
    bool operator==(const Record& other) const noexcept;
};

struct DayRecords
{
    TradingDay date;
    std::vector<Record> records; // sorted by security index, unique

    /// Record for `security`, or nullptr if absent that day.
    const Record* find(SecurityIndex security) const noexcept;
    bool operator==(const DayRecords&) const = default;
};

enum class MissingPolicy { drop, zero, carry_flag };

std::string_view to_string(MissingPolicy policy) noexcept;
/// Accepts "drop", "zero", "carry-flag" (or "carry_flag").
MissingPolicy parse_missing_policy(std::string_view text);

/// Provenance carried alongside a panel; not part of panel equality.
struct PanelMetadata
{
    std::size_t source_rows = 0;
    std::size_t duplicate_rows = 0;
    std::optional<double> cleaning_floor;
    std::size_t floor_replacements = 0;
    std::optional<MissingPolicy> missing_policy;
    std::size_t missing_returns = 0;
};

/// Date-indexed panel of per-security daily total returns and market caps.
///
/// Immutable once constructed, so any number of readers may share it. The
/// constructor checks the structural invariants: securities strictly
/// ascending (so index order is id order), dates strictly increasing,
/// per-day records sorted and unique, caps finite and positive, and every
/// present return >= -1.
class ReturnPanel
{
public:
    ReturnPanel() = default;
    ReturnPanel(std::vector<SecurityId> securities, std::vector<DayRecords> days, PanelMetadata metadata = {});

    std::span<const DayRecords> days() const noexcept { return days_; }
    const DayRecords& day(std::size_t index) const { return days_.at(index); }
    std::size_t day_count() const noexcept { return days_.size(); }
    std::size_t record_count() const noexcept;

    const std::vector<SecurityId>& securities() const noexcept { return securities_; }
    const SecurityId& security(SecurityIndex index) const { return securities_.at(index); }
    std::optional<SecurityIndex> find_security(const SecurityId& id) const;
    std::optional<std::size_t> find_day(const TradingDay& date) const;

    /// Index of the first trading day of every calendar month in the panel.
    std::vector<std::size_t> month_starts() const;

    const PanelMetadata& metadata() const noexcept { return metadata_; }

    /// A panel over the same securities with replaced day records.
    ReturnPanel with_days(std::vector<DayRecords> days, PanelMetadata metadata) const;

    /// Equality of the data (securities, dates, records); metadata is ignored.
    bool operator==(const ReturnPanel& other) const;

private:
    std::vector<SecurityId> securities_;
    std::vector<DayRecords> days_;
    PanelMetadata metadata_;
};

} // namespace spt::marketdata
