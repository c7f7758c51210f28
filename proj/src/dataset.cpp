#include "safeccc/dataset.hpp"

#include <cmath>
#include <string>

#include "safeccc/errors.hpp"

namespace safeccc {

void TrafficDataset::validate() const {
    if (speeds.empty()) {
        throw ContractError("dataset: at least one vehicle is required");
    }
    if (!(dt > 0.0) || !std::isfinite(t0)) {
        throw ContractError("dataset: dt must be positive and t0 finite");
    }
    const std::size_t n = samples();
    if (n < 2) {
        throw ContractError("dataset: at least two samples are required");
    }
    for (std::size_t i = 0; i < speeds.size(); ++i) {
        if (speeds[i].size() != n) {
            throw ContractError("dataset: speed series " + std::to_string(i + 1) +
                                " has a different length");
        }
        for (double v : speeds[i]) {
            if (!std::isfinite(v) || v < 0.0) {
                throw ContractError("dataset: speed series " + std::to_string(i + 1) +
                                    " contains a negative or non-finite value");
            }
        }
    }
    if (has_positions()) {
        if (positions.size() != speeds.size()) {
            throw ContractError("dataset: positions must be given for every vehicle or none");
        }
        for (const auto& series : positions) {
            if (series.size() != n) {
                throw ContractError("dataset: position series length mismatch");
            }
        }
    }
}

} // namespace safeccc
