#include "spt/marketdata/cleaning.hpp"

#include <stdexcept>
#include <string>

namespace spt::marketdata {

CleanResult clean_panel(const ReturnPanel& panel, double floor)
{
    if (!(floor > -1.0 && floor <= 0.0))
        throw std::invalid_argument("cleaning floor must lie in (-1, 0], got " + std::to_string(floor));

    CleanResult result;
    std::vector<DayRecords> days(panel.days().begin(), panel.days().end());
    for (auto& day : days) {
        for (auto& rec : day.records) {
            if (rec.has_return() && rec.total_return == -1.0) {
                rec.total_return = floor;
                ++result.replacements;
            }
        }
    }
    PanelMetadata meta = panel.metadata();
    meta.cleaning_floor = floor;
    meta.floor_replacements += result.replacements;
    result.panel = panel.with_days(std::move(days), meta);
    return result;
}

MissingResult apply_missing_policy(const ReturnPanel& panel, MissingPolicy policy)
{
    MissingResult result;
    std::vector<DayRecords> days;
    days.reserve(panel.day_count());
    for (const auto& src : panel.days()) {
        DayRecords day{src.date, {}};
        day.records.reserve(src.records.size());
        for (Record rec : src.records) {
            if (!rec.has_return()) {
                ++result.affected;
                if (policy == MissingPolicy::drop)
                    continue;
                rec.total_return = 0.0;
                rec.imputed = (policy == MissingPolicy::carry_flag);
            }
            day.records.push_back(rec);
        }
        days.push_back(std::move(day));
    }
    PanelMetadata meta = panel.metadata();
    meta.missing_policy = policy;
    meta.missing_returns += result.affected;
    result.panel = panel.with_days(std::move(days), meta);
    return result;
}

} // namespace spt::marketdata
