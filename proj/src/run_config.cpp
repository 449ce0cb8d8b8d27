#include "spg/run_config.hpp"

#include <stdexcept>

#include "spg/io.hpp"

namespace spg {

namespace {

std::string trim(std::string_view v) {
    std::size_t b = 0, e = v.size();
    while (b < e && (v[b] == ' ' || v[b] == '\t' || v[b] == '\r')) ++b;
    while (e > b && (v[e - 1] == ' ' || v[e - 1] == '\t' || v[e - 1] == '\r')) --e;
    return std::string(v.substr(b, e - b));
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text) {
    KeyValueConfig cfg;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        std::string stripped = trim(line);
        if (!stripped.empty() && stripped[0] != '#') {
            std::size_t eq = stripped.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("config line " + std::to_string(line_no) + ": expected 'key = value'");
            std::string key = trim(std::string_view(stripped).substr(0, eq));
            std::string value = trim(std::string_view(stripped).substr(eq + 1));
            if (key.empty()) throw std::runtime_error("config line " + std::to_string(line_no) + ": empty key");
            cfg.values_[key] = value;
        }
        if (eol == std::string_view::npos) break;
        pos = eol + 1;
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
    return parse(read_text_file(path));
}

std::string KeyValueConfig::serialize() const {
    std::string out;
    for (const auto& [key, value] : values_) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    }
    return out;
}

void KeyValueConfig::save(const std::string& path) const {
    write_file_atomic(path, serialize());
}

void KeyValueConfig::set(const std::string& key, std::string value) {
    values_[key] = std::move(value);
}

void KeyValueConfig::set_double(const std::string& key, double value) {
    values_[key] = format_double(value);
}

void KeyValueConfig::set_int(const std::string& key, long long value) {
    values_[key] = std::to_string(value);
}

void KeyValueConfig::set_u64(const std::string& key, std::uint64_t value) {
    values_[key] = std::to_string(value);
}

std::string KeyValueConfig::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw std::runtime_error("config: missing key '" + key + "'");
    return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key) const {
    return parse_double(get_string(key));
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_double(it->second);
}

long long KeyValueConfig::get_int(const std::string& key) const {
    return parse_int(get_string(key));
}

long long KeyValueConfig::get_int(const std::string& key, long long fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : parse_int(it->second);
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    return std::uint64_t(parse_int(it->second));
}

void KeyValueConfig::merge(const KeyValueConfig& other) {
    for (const auto& [key, value] : other.values_) values_[key] = value;
}

}  // namespace spg
