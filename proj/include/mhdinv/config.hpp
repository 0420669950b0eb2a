// Flat key/value config files: one `section.key = value` per line, `#`
// comments, blank lines ignored. Errors carry file:line context. Values are
// kept verbatim; typed getters parse on demand.
#pragma once

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"

namespace mhdinv {

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace detail

struct Config {
    std::string path = "<memory>";
    std::map<std::string, std::string> kv;

    bool has(const std::string& key) const { return kv.count(key) != 0; }

    std::string get(const std::string& key, const std::string& fallback) const {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    }

    std::string require_get(const std::string& key) const {
        auto it = kv.find(key);
        require(it != kv.end(), path + ": missing required key '" + key + "'");
        return it->second;
    }

    double get_double(const std::string& key, double fallback) const {
        auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        char* end = nullptr;
        double v = std::strtod(it->second.c_str(), &end);
        require(end != it->second.c_str() && detail::trim(end).empty(),
                path + ": key '" + key + "' is not a number: " + it->second);
        return v;
    }

    int get_int(const std::string& key, int fallback) const {
        auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        char* end = nullptr;
        long v = std::strtol(it->second.c_str(), &end, 10);
        require(end != it->second.c_str() && detail::trim(end).empty(),
                path + ": key '" + key + "' is not an integer: " + it->second);
        return static_cast<int>(v);
    }

    bool get_bool(const std::string& key, bool fallback) const {
        auto it = kv.find(key);
        if (it == kv.end()) return fallback;
        const std::string& v = it->second;
        if (v == "true" || v == "on" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "off" || v == "0" || v == "no") return false;
        fail(path + ": key '" + key + "' is not a boolean: " + v);
    }

    std::vector<std::string> get_list(const std::string& key) const {
        std::vector<std::string> out;
        auto it = kv.find(key);
        if (it == kv.end()) return out;
        std::stringstream ss(it->second);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = detail::trim(item);
            if (!item.empty()) out.push_back(item);
        }
        return out;
    }

    // canonical text: sorted key=value lines; the basis of the config hash
    std::string canonical() const {
        std::string out;
        for (const auto& [k, v] : kv) {
            out += k;
            out += '=';
            out += v;
            out += '\n';
        }
        return out;
    }
};

inline Config parse_config_text(const std::string& text, const std::string& path = "<memory>") {
    Config cfg;
    cfg.path = path;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        require(eq != std::string::npos,
                path + ":" + std::to_string(lineno) + ": expected 'key = value', got: " + line);
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        require(!key.empty(), path + ":" + std::to_string(lineno) + ": empty key");
        require(cfg.kv.count(key) == 0,
                path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
        cfg.kv[key] = value;
    }
    return cfg;
}

inline Config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), "cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

}  // namespace mhdinv
