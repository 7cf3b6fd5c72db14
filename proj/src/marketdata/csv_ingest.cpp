#include "spt/marketdata/csv_ingest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <unordered_map>

#include "spt/common/number_format.hpp"

namespace spt::marketdata {

namespace {

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        auto field = trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (field.size() >= 2 && field.front() == '"' && field.back() == '"')
            field = field.substr(1, field.size() - 2);
        fields.push_back(field);
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return fields;
}

bool is_missing_token(std::string_view t)
{
    return t.empty() || t == "NA" || t == "NaN" || t == "nan" || t == ".";
}

struct RawRow
{
    std::string date;
    std::string security;
    double total_return;
    double market_cap;
    bool imputed;
    std::size_t line;
    SecurityIndex index = 0;
};

} // namespace

IngestError::IngestError(const std::string& source, std::size_t line, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + message),
      line_(line)
{
}

IngestResult ingest_csv(std::istream& in, const CsvSchema& schema, const std::string& source)
{
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        auto view = trim(line);
        if (view.empty() || view.front() == '#')
            continue;
        for (auto f : split_fields(view))
            header.emplace_back(f);
        break;
    }
    if (header.empty())
        throw IngestError(source, 0, "missing header row");

    auto column = [&](const std::string& name, bool required) -> std::optional<std::size_t> {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            if (required)
                throw IngestError(source, line_no, "missing required column '" + name + "'");
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_date = *column(schema.date, true);
    const std::size_t c_id = *column(schema.security, true);
    const std::size_t c_ret = *column(schema.total_return, true);
    const std::size_t c_cap = *column(schema.market_cap, true);
    const auto c_imputed = column(schema.imputed, false);

    std::vector<RawRow> rows;
    std::map<std::string, TradingDay> parsed_dates;
    while (std::getline(in, line)) {
        ++line_no;
        auto view = trim(line);
        if (view.empty() || view.front() == '#')
            continue;
        const auto fields = split_fields(view);
        if (fields.size() != header.size())
            throw IngestError(source, line_no,
                              "expected " + std::to_string(header.size()) + " fields, found " +
                                  std::to_string(fields.size()));

        RawRow row;
        row.line = line_no;
        row.date = std::string(fields[c_date]);
        if (!parsed_dates.contains(row.date)) {
            try {
                parsed_dates.emplace(row.date, TradingDay::parse(row.date));
            } catch (const std::invalid_argument& e) {
                throw IngestError(source, line_no, e.what());
            }
        }
        row.security = std::string(fields[c_id]);
        if (row.security.empty())
            throw IngestError(source, line_no, "empty security id");

        const auto ret_token = fields[c_ret];
        if (is_missing_token(ret_token)) {
            row.total_return = kMissingReturn;
        } else {
            auto r = parse_double(ret_token);
            if (!r || !std::isfinite(*r))
                throw IngestError(source, line_no, "malformed return '" + std::string(ret_token) + "'");
            if (*r < -1.0)
                throw IngestError(source, line_no, "return " + std::string(ret_token) + " is below -1");
            row.total_return = *r;
        }

        auto cap = parse_double(fields[c_cap]);
        if (!cap || !std::isfinite(*cap) || *cap <= 0.0)
            throw IngestError(source, line_no,
                              "market cap must be a positive number, got '" + std::string(fields[c_cap]) + "'");
        row.market_cap = *cap;

        row.imputed = false;
        if (c_imputed) {
            const auto t = fields[*c_imputed];
            if (t == "1" || t == "true")
                row.imputed = true;
            else if (!(t.empty() || t == "0" || t == "false"))
                throw IngestError(source, line_no, "malformed imputed flag '" + std::string(t) + "'");
        }
        rows.push_back(std::move(row));
    }

    std::vector<std::string> ids;
    ids.reserve(rows.size());
    for (const auto& r : rows)
        ids.push_back(r.security);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::unordered_map<std::string, SecurityIndex> index_of;
    index_of.reserve(ids.size());
    std::vector<SecurityId> securities;
    securities.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        index_of.emplace(ids[i], static_cast<SecurityIndex>(i));
        securities.emplace_back(ids[i]);
    }

    for (auto& r : rows)
        r.index = index_of.at(r.security);

    IngestResult result;
    result.rows = rows.size();

    // Stable sort keeps file order within a (date, id) key, so the last
    // occurrence is the one that survives.
    std::stable_sort(rows.begin(), rows.end(), [&](const RawRow& a, const RawRow& b) {
        if (a.date != b.date)
            return a.date < b.date;
        return a.index < b.index;
    });

    std::vector<DayRecords> days;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const RawRow& row = rows[i];
        if (i + 1 < rows.size() && rows[i + 1].date == row.date && rows[i + 1].index == row.index) {
            ++result.duplicates;
            result.warnings.push_back(source + ":" + std::to_string(row.line) + ": duplicate (" + row.date + ", " +
                                      row.security + "); keeping line " + std::to_string(rows[i + 1].line));
            continue;
        }
        if (days.empty() || days.back().date.iso() != row.date)
            days.push_back(DayRecords{parsed_dates.at(row.date), {}});
        days.back().records.push_back(
            Record{row.index, row.total_return, row.market_cap, row.imputed});
    }

    PanelMetadata meta;
    meta.source_rows = result.rows;
    meta.duplicate_rows = result.duplicates;
    result.panel = ReturnPanel(std::move(securities), std::move(days), meta);
    return result;
}

IngestResult ingest_csv(const std::filesystem::path& path, const CsvSchema& schema)
{
    std::ifstream in(path);
    if (!in)
        throw IngestError(path.string(), 0, "cannot open file");
    return ingest_csv(in, schema, path.string());
}

void write_panel_csv(const ReturnPanel& panel, std::ostream& out, std::span<const std::string> comments)
{
    bool any_imputed = false;
    for (const auto& day : panel.days())
        for (const auto& rec : day.records)
            any_imputed = any_imputed || rec.imputed;

    for (const auto& c : comments)
        out << "# " << c << '\n';
    out << "date,security_id,total_return,market_cap" << (any_imputed ? ",imputed" : "") << '\n';
    for (const auto& day : panel.days()) {
        for (const auto& rec : day.records) {
            out << day.date.iso() << ',' << panel.security(rec.security).str() << ','
                << (rec.has_return() ? format_double(rec.total_return) : std::string()) << ','
                << format_double(rec.market_cap);
            if (any_imputed)
                out << ',' << (rec.imputed ? '1' : '0');
            out << '\n';
        }
    }
}

} // namespace spt::marketdata
