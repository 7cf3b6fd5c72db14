#pragma once

#include "spt/common/number_format.hpp"

#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace spt {

/// One `key = value` line of a configuration file.
struct KeyValueEntry
{
    std::string key;
    std::string value;
    std::size_t line = 0;
};

class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error("config key '" + key + "': " + message), key_(std::move(key))
    {
    }

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Parses `key = value` lines. `#` starts a comment; blank lines are skipped.
inline std::vector<KeyValueEntry> parse_key_values(std::istream& in)
{
    std::vector<KeyValueEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos)
            view = view.substr(0, hash);
        view = trim(view);
        if (view.empty())
            continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(std::string(view), "expected 'key = value' on line " + std::to_string(line_no));
        KeyValueEntry entry;
        entry.key = std::string(trim(view.substr(0, eq)));
        entry.value = std::string(trim(view.substr(eq + 1)));
        entry.line = line_no;
        if (entry.key.empty())
            throw ConfigError("", "empty key on line " + std::to_string(line_no));
        entries.push_back(std::move(entry));
    }
    return entries;
}

inline std::vector<KeyValueEntry> read_key_value_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path + "'");
    return parse_key_values(in);
}

inline double config_double(const KeyValueEntry& e)
{
    auto v = parse_double(e.value);
    if (!v)
        throw ConfigError(e.key, "expected a number, got '" + e.value + "'");
    return *v;
}

template <typename Int>
Int config_integer(const KeyValueEntry& e)
{
    auto v = parse_integer<Int>(e.value);
    if (!v)
        throw ConfigError(e.key, "expected an integer, got '" + e.value + "'");
    return *v;
}

inline std::vector<double> config_double_list(const KeyValueEntry& e)
{
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto v = parse_double(item);
        if (!v)
            throw ConfigError(e.key, "expected a comma-separated list of numbers, got '" + item + "'");
        out.push_back(*v);
    }
    return out;
}

inline std::vector<std::string> config_string_list(const KeyValueEntry& e)
{
    std::vector<std::string> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto t = trim(item);
        if (!t.empty())
            out.emplace_back(t);
    }
    return out;
}

} // namespace spt
