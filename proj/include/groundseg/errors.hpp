#pragma once

#include <stdexcept>
#include <string>

namespace groundseg {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string &msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string &msg) : std::runtime_error(msg) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string &msg) : std::runtime_error(msg) {}
};

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string &msg) : std::runtime_error(msg) {}
};

// Raised when the MRF stage cannot find at least one high-confidence seed of
// each class; the pipeline falls back to the coarse labels in that case.
struct SeedingError : std::runtime_error {
    explicit SeedingError(const std::string &msg) : std::runtime_error(msg) {}
};

}  // namespace groundseg
