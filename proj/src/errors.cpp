#include "safeccc/errors.hpp"

namespace safeccc {

namespace {

std::string located(const std::string& source, std::size_t line, const std::string& message) {
    std::string out = source;
    if (line > 0) {
        out += ":" + std::to_string(line);
    }
    return out + ": " + message;
}

} // namespace

ConfigError::ConfigError(const std::string& source, std::size_t line, const std::string& key,
                         const std::string& message)
    : Error(ErrorCategory::kConfig,
            located(source, line, key.empty() ? message : "'" + key + "': " + message)) {}

DatasetError::DatasetError(const std::string& source, std::size_t row, const std::string& message)
    : Error(ErrorCategory::kDataset,
            located(source, row, row > 0 ? "row " + std::to_string(row) + ": " + message : message)),
      row_(row) {}

} // namespace safeccc
