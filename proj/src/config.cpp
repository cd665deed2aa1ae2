#include "groundseg/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "groundseg/errors.hpp"

namespace groundseg {

namespace {

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str());
}

Config Config::from_string(const std::string &text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        std::string key, value;
        auto eq = line.find('=');
        if (eq != std::string::npos) {
            key = trim(line.substr(0, eq));
            value = trim(line.substr(eq + 1));
        } else {
            auto ws = line.find_first_of(" \t");
            if (ws == std::string::npos) {
                key = line;
            } else {
                key = line.substr(0, ws);
                value = trim(line.substr(ws));
            }
        }
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": missing key");
        cfg.entries_.emplace_back(key, value);
    }
    return cfg;
}

void Config::set(const std::string &key, const std::string &value) {
    entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                  [&](const auto &kv) { return kv.first == key; }),
                   entries_.end());
    entries_.emplace_back(key, value);
}

void Config::append(const std::string &key, const std::string &value) {
    entries_.emplace_back(key, value);
}

void Config::apply_override(const std::string &assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override must look like key=value: " + assignment);
    set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

bool Config::has(const std::string &key) const { return get(key).has_value(); }

std::optional<std::string> Config::get(const std::string &key) const {
    for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
        if (it->first == key) return it->second;
    return std::nullopt;
}

std::string Config::get_or(const std::string &key, const std::string &fallback) const {
    auto v = get(key);
    return v ? *v : fallback;
}

double Config::get_double(const std::string &key, double fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
        std::size_t pos = 0;
        double d = std::stod(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("");
        return d;
    } catch (const std::exception &) {
        throw ConfigError("key '" + key + "': expected a number, got '" + *v + "'");
    }
}

int Config::get_int(const std::string &key, int fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
        std::size_t pos = 0;
        int i = std::stoi(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("");
        return i;
    } catch (const std::exception &) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + *v + "'");
    }
}

bool Config::get_bool(const std::string &key, bool fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    std::string s = *v;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
    if (s == "0" || s == "false" || s == "no" || s == "off") return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + *v + "'");
}

std::vector<std::string> Config::get_all(const std::string &key) const {
    std::vector<std::string> out;
    for (const auto &[k, v] : entries_)
        if (k == key) out.push_back(v);
    return out;
}

}  // namespace groundseg
