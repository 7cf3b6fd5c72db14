#include "spt/cli/run_config.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "spt/common/key_value.hpp"
#include "spt/common/number_format.hpp"
#include "spt/core/weights.hpp"
#include "spt/marketdata/panel.hpp"

namespace spt::cli {

void RunConfig::validate() const
{
    if (universe_size < 2)
        throw std::invalid_argument("universe_size must be at least 2");
    if (window_months < 1)
        throw std::invalid_argument("window_months must be at least 1");
    if (n_random_draws < 1)
        throw std::invalid_argument("n_random_draws must be at least 1");
    if (!(floor > -1.0 && floor <= 0.0))
        throw std::invalid_argument("floor must lie in (-1, 0]");
    if (!(lowess_fraction > 0.0 && lowess_fraction <= 1.0))
        throw std::invalid_argument("lowess_fraction must lie in (0, 1]");
    if (days_per_year == 0)
        throw std::invalid_argument("days_per_year must be positive");
    if (strategies.empty())
        throw std::invalid_argument("at least one strategy is required");
    for (const auto& s : strategies)
        core::parse_strategy_kind(s);
    marketdata::parse_missing_policy(missing_policy);
}

void apply_config_file(RunConfig& c, const std::string& path)
{
    for (const auto& e : read_key_value_file(path)) {
        const auto& k = e.key;
        if (k == "input")
            c.input = e.value;
        else if (k == "sim_config")
            c.sim_config = e.value;
        else if (k == "universe_size")
            c.universe_size = config_integer<std::size_t>(e);
        else if (k == "window_months")
            c.window_months = config_integer<std::size_t>(e);
        else if (k == "strategies")
            c.strategies = config_string_list(e);
        else if (k == "n_random_draws")
            c.n_random_draws = config_integer<std::size_t>(e);
        else if (k == "seed")
            c.seed = config_integer<std::uint64_t>(e);
        else if (k == "risk_free")
            c.risk_free = e.value;
        else if (k == "output")
            c.output = e.value;
        else if (k == "floor")
            c.floor = config_double(e);
        else if (k == "missing_policy")
            c.missing_policy = e.value;
        else if (k == "days_per_year")
            c.days_per_year = config_integer<std::size_t>(e);
        else if (k == "lowess_fraction")
            c.lowess_fraction = config_double(e);
        else if (k == "date_column")
            c.schema.date = e.value;
        else if (k == "id_column")
            c.schema.security = e.value;
        else if (k == "return_column")
            c.schema.total_return = e.value;
        else if (k == "cap_column")
            c.schema.market_cap = e.value;
        else if (k == "workers")
            c.workers = config_integer<unsigned>(e);
        else
            throw ConfigError(k, "unknown key (line " + std::to_string(e.line) + ")");
    }
}

std::string canonical_text(const RunConfig& c)
{
    std::ostringstream out;
    out << "universe_size=" << c.universe_size << '\n'
        << "window_months=" << c.window_months << '\n'
        << "strategies=";
    for (std::size_t i = 0; i < c.strategies.size(); ++i)
        out << (i ? "," : "") << c.strategies[i];
    out << '\n'
        << "n_random_draws=" << c.n_random_draws << '\n'
        << "seed=" << c.seed << '\n'
        << "floor=" << format_double(c.floor) << '\n'
        << "missing_policy=" << marketdata::to_string(marketdata::parse_missing_policy(c.missing_policy)) << '\n'
        << "days_per_year=" << c.days_per_year << '\n'
        << "lowess_fraction=" << format_double(c.lowess_fraction) << '\n'
        << "schema=" << c.schema.date << ',' << c.schema.security << ',' << c.schema.total_return << ','
        << c.schema.market_cap << '\n';
    return out.str();
}

std::string sha256_hex(std::string_view data)
{
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &len) != 1)
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::string file_sha256(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read '" + path.string() + "'");
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return sha256_hex(bytes);
}

} // namespace spt::cli
