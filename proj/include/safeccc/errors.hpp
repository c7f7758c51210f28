#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace safeccc {

// Process exit codes used by the CLI; one per error family.
enum class ErrorCategory : int {
    kUsage = 2,
    kConfig = 3,
    kDataset = 4,
    kIo = 5,
    kContract = 6,
    kHashMismatch = 7,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

// Precondition or invariant violated by a caller.
class ContractError : public Error {
public:
    explicit ContractError(const std::string& what) : Error(ErrorCategory::kContract, what) {}
};

class ConfigError : public Error {
public:
    ConfigError(const std::string& source, std::size_t line, const std::string& key,
                const std::string& message);
    explicit ConfigError(const std::string& what) : Error(ErrorCategory::kConfig, what) {}
};

// Malformed traffic data. `row` is the 1-based line number in the source
// file (0 when the problem is not tied to a single row).
class DatasetError : public Error {
public:
    DatasetError(const std::string& source, std::size_t row, const std::string& message);

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_ = 0;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCategory::kIo, what) {}
};

class HashMismatchError : public Error {
public:
    explicit HashMismatchError(const std::string& what)
        : Error(ErrorCategory::kHashMismatch, what) {}
};

} // namespace safeccc
