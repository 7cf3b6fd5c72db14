#include "spt/marketdata/risk_free.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "spt/common/number_format.hpp"
#include "spt/marketdata/csv_ingest.hpp"

namespace spt::marketdata {

RiskFreeCurve::RiskFreeCurve(std::vector<std::pair<TradingDay, double>> observations)
    : observations_(std::move(observations))
{
    for (std::size_t i = 1; i < observations_.size(); ++i) {
        if (!(observations_[i - 1].first < observations_[i].first))
            throw std::invalid_argument("risk-free dates must be strictly increasing (at " +
                                        observations_[i].first.iso() + ")");
    }
}

double RiskFreeCurve::yield_on(const TradingDay& date) const
{
    auto it = std::upper_bound(observations_.begin(), observations_.end(), date,
                               [](const TradingDay& d, const auto& obs) { return d < obs.first; });
    if (it == observations_.begin())
        throw std::out_of_range("no risk-free observation on or before " + date.iso());
    return std::prev(it)->second;
}

RiskFreeCurve read_risk_free_csv(std::istream& in, const std::string& source)
{
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<std::pair<TradingDay, double>> obs;
    while (std::getline(in, line)) {
        ++line_no;
        auto view = trim(line);
        if (view.empty() || view.front() == '#')
            continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        const auto comma = view.find(',');
        if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos)
            throw IngestError(source, line_no, "expected two columns (date, yield)");
        TradingDay date;
        try {
            date = TradingDay::parse(view.substr(0, comma));
        } catch (const std::invalid_argument& e) {
            throw IngestError(source, line_no, e.what());
        }
        auto y = parse_double(view.substr(comma + 1));
        if (!y || !std::isfinite(*y))
            throw IngestError(source, line_no, "malformed yield '" + std::string(view.substr(comma + 1)) + "'");
        obs.emplace_back(date, *y);
    }
    if (!header_seen)
        throw IngestError(source, 0, "missing header row");
    try {
        return RiskFreeCurve(std::move(obs));
    } catch (const std::invalid_argument& e) {
        throw IngestError(source, 0, e.what());
    }
}

RiskFreeCurve read_risk_free_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IngestError(path.string(), 0, "cannot open risk-free file");
    return read_risk_free_csv(in, path.string());
}

void write_risk_free_csv(const RiskFreeCurve& curve, std::ostream& out)
{
    out << "date,yield\n";
    for (const auto& [date, y] : curve.observations())
        out << date.iso() << ',' << format_double(y) << '\n';
}

} // namespace spt::marketdata
