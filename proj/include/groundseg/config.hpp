#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace groundseg {

// Flat key/value text configuration. One entry per line, `key value` or
// `key = value`, `#` starts a comment. Keys may repeat (e.g. `laser`, `box`);
// scalar lookups take the last occurrence so later lines and --set overrides
// win.
class Config {
  public:
    Config() = default;

    static Config load(const std::filesystem::path &path);
    static Config from_string(const std::string &text);

    // Replaces every existing occurrence of `key`.
    void set(const std::string &key, const std::string &value);
    void append(const std::string &key, const std::string &value);

    // Parses a `key=value` override as passed on the command line.
    void apply_override(const std::string &assignment);

    bool has(const std::string &key) const;
    std::optional<std::string> get(const std::string &key) const;
    std::string get_or(const std::string &key, const std::string &fallback) const;
    double get_double(const std::string &key, double fallback) const;
    int get_int(const std::string &key, int fallback) const;
    bool get_bool(const std::string &key, bool fallback) const;

    // All values for a repeated key, in file order.
    std::vector<std::string> get_all(const std::string &key) const;

    const std::vector<std::pair<std::string, std::string>> &entries() const { return entries_; }

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace groundseg
