#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace spg {

// Flat "key = value" configuration. Serialization is sorted by key so a
// resolved config file is a canonical, byte-stable artifact.
class KeyValueConfig {
public:
    static KeyValueConfig parse(std::string_view text);
    static KeyValueConfig load(const std::string& path);

    std::string serialize() const;
    void save(const std::string& path) const;

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    void set(const std::string& key, std::string value);
    void set_double(const std::string& key, double value);
    void set_int(const std::string& key, long long value);
    void set_u64(const std::string& key, std::uint64_t value);

    // Required lookups throw when the key is missing.
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key) const;
    long long get_int(const std::string& key, long long fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;

    // Values from other override entries here.
    void merge(const KeyValueConfig& other);

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace spg
