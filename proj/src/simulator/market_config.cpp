#include "spt/simulator/market_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "spt/common/key_value.hpp"
#include "spt/common/number_format.hpp"

namespace spt::sim {

std::string_view to_string(CorrelationModel model) noexcept
{
    return model == CorrelationModel::independent ? "independent" : "one_factor";
}

void MarketConfig::validate() const
{
    auto fail = [](const std::string& what) { throw std::invalid_argument("MarketConfig: " + what); };
    if (n_stocks < 2)
        fail("n_stocks must be at least 2");
    if (n_days < 1)
        fail("n_days must be at least 1");
    if (days_per_year < 12 || days_per_year > 336)
        fail("days_per_year must lie in [12, 336]");
    if (growth_by_rank.size() != n_stocks)
        fail("growth_by_rank needs one entry per stock");
    if (vol_by_rank.size() != n_stocks)
        fail("vol_by_rank needs one entry per stock");
    if (initial_caps.size() != n_stocks)
        fail("initial_caps needs one entry per stock");
    for (double g : growth_by_rank)
        if (!std::isfinite(g))
            fail("growth_by_rank entries must be finite");
    for (double v : vol_by_rank)
        if (!(v >= 0.0) || !std::isfinite(v))
            fail("vol_by_rank entries must be finite and non-negative");
    for (double c : initial_caps)
        if (!(c > 0.0) || !std::isfinite(c))
            fail("initial_caps entries must be positive");
    if (correlation == CorrelationModel::one_factor && !(factor_loading >= 0.0 && factor_loading < 1.0))
        fail("factor_loading must lie in [0, 1)");
}

std::vector<double> zipf_caps(std::size_t n, double exponent, double scale)
{
    std::vector<double> caps(n);
    for (std::size_t i = 0; i < n; ++i)
        caps[i] = scale / std::pow(static_cast<double>(i + 1), exponent);
    return caps;
}

std::vector<double> log_rank_ramp(std::size_t n, double lo, double hi)
{
    std::vector<double> out(n, lo);
    if (n < 2)
        return out;
    const double denom = std::log(static_cast<double>(n));
    for (std::size_t k = 1; k <= n; ++k)
        out[k - 1] = lo + (hi - lo) * std::log(static_cast<double>(k)) / denom;
    return out;
}

MarketConfig preset_paper_like(std::size_t n_stocks, std::size_t n_years, std::uint64_t seed)
{
    MarketConfig c;
    c.n_stocks = n_stocks;
    c.days_per_year = 250;
    c.n_days = n_years * c.days_per_year;
    c.growth_by_rank.assign(n_stocks, 0.05);
    c.vol_by_rank = log_rank_ramp(n_stocks, 0.15, 0.45);
    c.correlation = CorrelationModel::one_factor;
    c.factor_loading = 0.1;
    c.initial_caps = zipf_caps(n_stocks);
    c.seed = seed;
    return c;
}

namespace {

std::string join(const std::vector<double>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ", ";
        out += format_double(values[i]);
    }
    return out;
}

} // namespace

MarketConfig parse_market_config(std::istream& in)
{
    const auto entries = parse_key_values(in);
    std::map<std::string, KeyValueEntry> by_key;
    for (const auto& e : entries) {
        if (by_key.contains(e.key))
            throw ConfigError(e.key, "given more than once (line " + std::to_string(e.line) + ")");
        by_key.emplace(e.key, e);
    }
    static const char* known[] = {"preset", "n_stocks", "n_days", "n_years", "days_per_year", "start_year", "seed",
                                  "growth", "growth_by_rank", "vol", "vol_min", "vol_max", "vol_by_rank",
                                  "correlation", "factor_loading", "initial_caps", "cap_zipf_exponent", "cap_scale"};
    for (const auto& [key, e] : by_key) {
        if (std::find(std::begin(known), std::end(known), key) == std::end(known))
            throw ConfigError(key, "unknown key (line " + std::to_string(e.line) + ")");
    }
    auto get = [&](const char* key) -> const KeyValueEntry* {
        auto it = by_key.find(key);
        return it == by_key.end() ? nullptr : &it->second;
    };

    MarketConfig c;
    const std::size_t n_stocks = get("n_stocks") ? config_integer<std::size_t>(*get("n_stocks")) : 1000;
    const std::uint64_t seed = get("seed") ? config_integer<std::uint64_t>(*get("seed")) : 1;
    if (auto p = get("preset")) {
        if (p->value != "paper_like")
            throw ConfigError("preset", "unknown preset '" + p->value + "' (expected paper_like)");
        c = preset_paper_like(n_stocks, 20, seed);
    } else {
        c.n_stocks = n_stocks;
        c.seed = seed;
        c.n_days = 20 * c.days_per_year;
        c.growth_by_rank.assign(n_stocks, 0.0);
        c.initial_caps = zipf_caps(n_stocks);
    }

    if (auto e = get("days_per_year"))
        c.days_per_year = config_integer<std::size_t>(*e);
    if (get("n_days") && get("n_years"))
        throw ConfigError("n_years", "conflicts with n_days");
    if (auto e = get("n_days"))
        c.n_days = config_integer<std::size_t>(*e);
    if (auto e = get("n_years"))
        c.n_days = config_integer<std::size_t>(*e) * c.days_per_year;
    else if (!get("n_days") && get("days_per_year"))
        c.n_days = 20 * c.days_per_year;
    if (auto e = get("start_year"))
        c.start_year = config_integer<int>(*e);

    if (get("growth") && get("growth_by_rank"))
        throw ConfigError("growth_by_rank", "conflicts with growth");
    if (auto e = get("growth"))
        c.growth_by_rank.assign(n_stocks, config_double(*e));
    if (auto e = get("growth_by_rank")) {
        c.growth_by_rank = config_double_list(*e);
        if (c.growth_by_rank.size() != n_stocks)
            throw ConfigError(e->key, "expected " + std::to_string(n_stocks) + " entries");
    }

    const int vol_forms = (get("vol") ? 1 : 0) + (get("vol_by_rank") ? 1 : 0) +
                          ((get("vol_min") || get("vol_max")) ? 1 : 0);
    if (vol_forms > 1)
        throw ConfigError("vol_by_rank", "give only one of vol, vol_by_rank or vol_min/vol_max");
    if (auto e = get("vol"))
        c.vol_by_rank.assign(n_stocks, config_double(*e));
    if (auto e = get("vol_by_rank")) {
        c.vol_by_rank = config_double_list(*e);
        if (c.vol_by_rank.size() != n_stocks)
            throw ConfigError(e->key, "expected " + std::to_string(n_stocks) + " entries");
    }
    if (get("vol_min") || get("vol_max")) {
        if (!get("vol_min") || !get("vol_max"))
            throw ConfigError(get("vol_min") ? "vol_max" : "vol_min", "vol_min and vol_max go together");
        c.vol_by_rank = log_rank_ramp(n_stocks, config_double(*get("vol_min")), config_double(*get("vol_max")));
    }
    if (c.vol_by_rank.empty())
        throw ConfigError("vol_by_rank", "missing (give preset, vol, vol_by_rank or vol_min/vol_max)");

    if (auto e = get("correlation")) {
        if (e->value == "independent")
            c.correlation = CorrelationModel::independent;
        else if (e->value == "one_factor")
            c.correlation = CorrelationModel::one_factor;
        else
            throw ConfigError(e->key, "expected independent or one_factor, got '" + e->value + "'");
    }
    if (auto e = get("factor_loading"))
        c.factor_loading = config_double(*e);
    if (c.correlation == CorrelationModel::independent)
        c.factor_loading = 0.0;

    if (auto e = get("initial_caps")) {
        if (get("cap_zipf_exponent") || get("cap_scale"))
            throw ConfigError(e->key, "conflicts with cap_zipf_exponent/cap_scale");
        c.initial_caps = config_double_list(*e);
        if (c.initial_caps.size() != n_stocks)
            throw ConfigError(e->key, "expected " + std::to_string(n_stocks) + " entries");
    } else if (get("cap_zipf_exponent") || get("cap_scale")) {
        const double exponent = get("cap_zipf_exponent") ? config_double(*get("cap_zipf_exponent")) : 1.0;
        const double scale = get("cap_scale") ? config_double(*get("cap_scale")) : 1e9;
        c.initial_caps = zipf_caps(n_stocks, exponent, scale);
    }

    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("config", e.what());
    }
    return c;
}

MarketConfig load_market_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open simulator config '" + path + "'");
    return parse_market_config(in);
}

std::string to_config_text(const MarketConfig& c)
{
    std::ostringstream out;
    out << "n_stocks = " << c.n_stocks << '\n'
        << "n_days = " << c.n_days << '\n'
        << "days_per_year = " << c.days_per_year << '\n'
        << "start_year = " << c.start_year << '\n'
        << "seed = " << c.seed << '\n'
        << "correlation = " << to_string(c.correlation) << '\n'
        << "factor_loading = " << format_double(c.factor_loading) << '\n'
        << "growth_by_rank = " << join(c.growth_by_rank) << '\n'
        << "vol_by_rank = " << join(c.vol_by_rank) << '\n'
        << "initial_caps = " << join(c.initial_caps) << '\n';
    return out.str();
}

} // namespace spt::sim
