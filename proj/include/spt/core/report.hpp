#pragma once

#include "spt/core/experiment.hpp"

#include <iosfwd>
#include "json.hpp"
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spt::core {

struct TableRowSpec
{
    std::string_view key;
    std::string_view label;
    std::string_view unit; // "percent" or "ratio"
};

/// The ten rows of the decomposition table, in order.
std::span<const TableRowSpec> table_row_specs() noexcept;

/// Rows = metrics, columns = strategies. Percent rows hold value x 100.
struct ReportTable
{
    std::vector<std::pair<std::string, std::string>> meta; // written as "# key=value"
    std::vector<std::string> columns;
    std::vector<std::vector<double>> values; // [row][column]

    bool operator==(const ReportTable&) const = default;
};

class ReportFormatError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

ReportTable make_report_table(const DecompositionReport& report,
                              std::vector<std::pair<std::string, std::string>> meta = {});

/// Layout: `metric,label,unit,<strategy columns>`, one line per row spec.
void write_report_table(const ReportTable& table, std::ostream& out);

/// Inverse of write_report_table. Throws ReportFormatError unless the row set
/// is exactly table_row_specs() in order and the columns are distinct
/// strategy names in CW, EW, LO, RW, IRW order.
ReportTable read_report_table(std::istream& in);

/// Full report: aggregates, percentile blocks, per-window series and checks.
nlohmann::json report_to_json(const DecompositionReport& report);

} // namespace spt::core
