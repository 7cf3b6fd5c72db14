#include "spt/core/report.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <sstream>

#include "spt/common/number_format.hpp"

namespace spt::core {

namespace {

constexpr std::array<TableRowSpec, 10> kRows = {{
    {"total_log_return", "Total log-return", "percent"},
    {"total_log_return_relative", "relative to cap-weighted index", "percent"},
    {"average_growth", "Average growth component", "percent"},
    {"average_growth_relative", "relative to cap-weighted index", "percent"},
    {"excess_growth", "Excess growth component", "percent"},
    {"excess_growth_relative", "relative to cap-weighted index", "percent"},
    {"arithmetic_return", "Total arithmetic return", "percent"},
    {"arithmetic_return_relative", "relative to cap-weighted index", "percent"},
    {"arithmetic_return_stdev", "Standard deviation", "percent"},
    {"sharpe_ratio", "Sharpe ratio", "ratio"},
}};

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ','))
        out.emplace_back(trim(item));
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

std::size_t canonical_position(const std::string& column)
{
    for (std::size_t i = 0; i < kAllStrategies.size(); ++i)
        if (short_name(kAllStrategies[i]) == column)
            return i;
    throw ReportFormatError("unknown strategy column '" + column + "'");
}

nlohmann::json metrics_json(const MetricSet& m)
{
    nlohmann::json j = nlohmann::json::object();
    for (auto metric : kAllMetrics)
        j[std::string(metric_key(metric))] = m.get(metric);
    return j;
}

} // namespace

std::span<const TableRowSpec> table_row_specs() noexcept
{
    return kRows;
}

ReportTable make_report_table(const DecompositionReport& report,
                              std::vector<std::pair<std::string, std::string>> meta)
{
    std::vector<const StrategySummary*> ordered;
    for (const auto& s : report.strategies)
        ordered.push_back(&s);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto* a, const auto* b) { return a->spec.kind() < b->spec.kind(); });

    ReportTable table;
    table.meta = std::move(meta);
    table.values.assign(kRows.size(), std::vector<double>(ordered.size()));
    for (std::size_t c = 0; c < ordered.size(); ++c) {
        const StrategySummary& s = *ordered[c];
        table.columns.emplace_back(s.spec.name());
        const MetricSet v = s.value;
        const MetricSet rel = report.relative(s);
        const double values[] = {v.total_log_return,   rel.total_log_return,   v.average_growth,
                                 rel.average_growth,   v.excess_growth,        rel.excess_growth,
                                 v.arithmetic_return,  rel.arithmetic_return,  v.arithmetic_stdev,
                                 v.sharpe_ratio};
        for (std::size_t r = 0; r < kRows.size(); ++r)
            table.values[r][c] = kRows[r].unit == "percent" ? values[r] * 100.0 : values[r];
    }
    return table;
}

void write_report_table(const ReportTable& table, std::ostream& out)
{
    if (table.values.size() != kRows.size())
        throw ReportFormatError("report table must have exactly " + std::to_string(kRows.size()) + " rows");
    for (const auto& [key, value] : table.meta)
        out << "# " << key << '=' << value << '\n';
    out << "metric,label,unit";
    for (const auto& c : table.columns)
        out << ',' << c;
    out << '\n';
    for (std::size_t r = 0; r < kRows.size(); ++r) {
        if (table.values[r].size() != table.columns.size())
            throw ReportFormatError("row '" + std::string(kRows[r].key) + "' has the wrong number of values");
        out << kRows[r].key << ',' << kRows[r].label << ',' << kRows[r].unit;
        for (double v : table.values[r])
            out << ',' << format_double(v);
        out << '\n';
    }
}

ReportTable read_report_table(std::istream& in)
{
    ReportTable table;
    std::string line;
    bool header_seen = false;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line.front() == '#') {
            if (header_seen)
                throw ReportFormatError("comment after header");
            auto body = std::string(trim(std::string_view(line).substr(1)));
            const auto eq = body.find('=');
            if (eq == std::string::npos)
                throw ReportFormatError("malformed metadata line '" + line + "'");
            table.meta.emplace_back(body.substr(0, eq), body.substr(eq + 1));
            continue;
        }
        const auto fields = split(line);
        if (!header_seen) {
            if (fields.size() < 4 || fields[0] != "metric" || fields[1] != "label" || fields[2] != "unit")
                throw ReportFormatError("header must start with metric,label,unit and name at least one strategy");
            table.columns.assign(fields.begin() + 3, fields.end());
            for (std::size_t c = 1; c < table.columns.size(); ++c)
                if (canonical_position(table.columns[c - 1]) >= canonical_position(table.columns[c]))
                    throw ReportFormatError("strategy columns must be distinct and in CW, EW, LO, RW, IRW order");
            canonical_position(table.columns.front());
            header_seen = true;
            continue;
        }
        if (row >= kRows.size())
            throw ReportFormatError("unexpected extra row '" + fields[0] + "'");
        const auto& spec = kRows[row];
        if (fields.size() != 3 + table.columns.size())
            throw ReportFormatError("row '" + fields[0] + "' has " + std::to_string(fields.size()) + " fields");
        if (fields[0] != spec.key || fields[1] != spec.label || fields[2] != spec.unit)
            throw ReportFormatError("expected row '" + std::string(spec.key) + "', found '" + fields[0] + "'");
        std::vector<double> values;
        for (std::size_t c = 3; c < fields.size(); ++c) {
            auto v = parse_double(fields[c]);
            if (!v)
                throw ReportFormatError("row '" + fields[0] + "': malformed value '" + fields[c] + "'");
            values.push_back(*v);
        }
        table.values.push_back(std::move(values));
        ++row;
    }
    if (!header_seen)
        throw ReportFormatError("missing header");
    if (row != kRows.size())
        throw ReportFormatError("expected " + std::to_string(kRows.size()) + " rows, found " + std::to_string(row));
    return table;
}

nlohmann::json report_to_json(const DecompositionReport& report)
{
    nlohmann::json j;
    j["universe_size"] = report.universe_size;
    j["window_months"] = report.window_months;
    j["n_random_draws"] = report.n_random_draws;
    j["units"] = "per-window (one-year) fractions averaged across windows; stdev across raw overlapping windows";
    j["cap_weighted_baseline"] = metrics_json(report.cap_weighted);

    nlohmann::json windows = nlohmann::json::array();
    for (const auto& w : report.windows)
        windows.push_back({{"start_month", w.start_month},
                           {"start_date", w.start_date.iso()},
                           {"first_day", w.first_day},
                           {"day_count", w.day_count},
                           {"risk_free", w.risk_free},
                           {"delistings", w.delistings}});
    j["windows"] = std::move(windows);

    nlohmann::json strategies = nlohmann::json::array();
    for (const auto& s : report.strategies) {
        nlohmann::json sj;
        sj["strategy"] = std::string(s.spec.name());
        sj["seed"] = s.spec.seed() ? nlohmann::json(*s.spec.seed()) : nlohmann::json(nullptr);
        sj["draws"] = s.draws;
        sj["value"] = metrics_json(s.value);
        sj["relative_to_cw"] = metrics_json(report.relative(s));
        if (s.p10 && s.p90) {
            sj["statistic"] = "median over draws";
            sj["p10"] = metrics_json(*s.p10);
            sj["p90"] = metrics_json(*s.p90);
            nlohmann::json draws = nlohmann::json::array();
            for (const auto& d : s.draw_aggregates)
                draws.push_back(metrics_json(d));
            sj["draw_aggregates"] = std::move(draws);
        }
        nlohmann::json series;
        std::vector<double> total, avg, excess, arith;
        for (const auto& w : s.windows) {
            total.push_back(w.total_log_return);
            avg.push_back(w.average_growth);
            excess.push_back(w.excess_growth);
            arith.push_back(w.arithmetic_return);
        }
        series["total_log_return"] = total;
        series["average_growth"] = avg;
        series["excess_growth"] = excess;
        series["arithmetic_return"] = arith;
        if (s.p10)
            series["statistic"] = "per-window median over draws";
        sj["per_window"] = std::move(series);
        strategies.push_back(std::move(sj));
    }
    j["strategies"] = std::move(strategies);

    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks)
        checks.push_back(
            {{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"status", c.pass ? "pass" : "fail"}});
    j["checks"] = std::move(checks);
    return j;
}

} // namespace spt::core
