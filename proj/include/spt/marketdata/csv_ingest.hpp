#pragma once

#include "spt/marketdata/panel.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spt::marketdata {

/// Column names resolved against the CSV header. The canonical four-column
/// layout is `date,security_id,total_return,market_cap`; an optional
/// `imputed` column (0/1) is read when present.
struct CsvSchema
{
    std::string date = "date";
    std::string security = "security_id";
    std::string total_return = "total_return";
    std::string market_cap = "market_cap";
    std::string imputed = "imputed";
};

/// Malformed input. `line()` is the 1-based physical line (0 if not tied to one).
class IngestError : public std::runtime_error
{
public:
    IngestError(const std::string& source, std::size_t line, const std::string& message);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct IngestResult
{
    ReturnPanel panel;
    std::size_t rows = 0;
    std::size_t duplicates = 0;
    std::vector<std::string> warnings;
};

/// Reads a panel from CSV. Lines starting with '#' are comments. Rows may be
/// in any order; the panel comes back sorted by date with each duplicate
/// (date, id) resolved last-wins (and a warning). Empty, NA, NaN or "." in
/// the return column marks a missing return. Returns below -1 are rejected;
/// exactly -1 is kept for clean_panel to floor.
IngestResult ingest_csv(std::istream& in, const CsvSchema& schema = {}, const std::string& source = "<stream>");
IngestResult ingest_csv(const std::filesystem::path& path, const CsvSchema& schema = {});

/// Writes the canonical layout. Each comment line is emitted as "# <line>"
/// before the header. The `imputed` column appears only if some record is
/// flagged, so ingest_csv(write_panel_csv(p)) reproduces p.
void write_panel_csv(const ReturnPanel& panel, std::ostream& out, std::span<const std::string> comments = {});

} // namespace spt::marketdata
