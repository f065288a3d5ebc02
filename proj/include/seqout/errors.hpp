#pragma once

#include <stdexcept>
#include <string>

namespace seqout {

// Invalid parameters or configuration (bad M/K, mismatched alphabets, ...).
class config_error : public std::invalid_argument {
public:
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed or unusable input data (CSV/JSON files, degenerate corpora).
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace seqout
