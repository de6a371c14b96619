#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pubcausal {

// Bad or inconsistent configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or missing input data (CLI exit code 3).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Fixed-width float formatting so repeated runs emit byte-identical files.
std::string format_double(double v);

// Two-decimal rendering used by the effect tables ("0.795" -> "0.80").
std::string format_estimate2(double v);

// Lower-cased identifier made of [a-z0-9_]; runs of other characters
// collapse to a single underscore.
std::string slugify(const std::string& s);

std::string lower_ascii(std::string s);

// Collapses internal whitespace runs to single spaces and trims the ends.
std::string collapse_whitespace(const std::string& s);

std::vector<std::string> split(const std::string& s, char sep);

}  // namespace pubcausal
