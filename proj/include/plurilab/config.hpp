#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "plurilab/error.hpp"

namespace plurilab {

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Flat `key = value` file; `#` starts a comment. Every key must be read by
/// the subcommand (unused keys are reported as errors).
class Config {
public:
    Config() = default;
    static Config parse(std::istream& is);
    static Config parse_file(const std::string& path);
    static Config from_string(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    long long get_int(const std::string& key) const;
    long long get_int(const std::string& key, long long fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_doubles(const std::string& key) const;
    std::vector<long long> get_ints(const std::string& key) const;

    /// Keys present but never read.
    std::vector<std::string> unused() const;
    void require_all_used() const;

    /// Sorted `key=value` lines; input to the hash.
    std::string canonical() const;
    const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
    const std::string& raw(const std::string& key) const;

    std::map<std::string, std::string> values_;
    mutable std::set<std::string> used_;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& s);

}  // namespace plurilab
