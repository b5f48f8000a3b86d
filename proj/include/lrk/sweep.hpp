#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace lrk {

// Ordered grid of computed observables: one label per column, all-numeric
// rows in declared grid order. The universal experiment output.
struct SweepTable {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;

    std::size_t n_cols() const { return labels.size(); }
    std::size_t n_rows() const { return rows.size(); }

    void add_row(std::vector<double> row) {
        if (row.size() != labels.size())
            throw domain_error("SweepTable: row width " + std::to_string(row.size()) +
                               " does not match " + std::to_string(labels.size()) + " labels");
        rows.push_back(std::move(row));
    }

    // column values by label (used by the fit command and tests)
    std::vector<double> column(const std::string& name) const {
        for (std::size_t c = 0; c < labels.size(); ++c) {
            if (labels[c] == name) {
                std::vector<double> out;
                out.reserve(rows.size());
                for (const auto& r : rows) out.push_back(r[c]);
                return out;
            }
        }
        throw domain_error("SweepTable: no column named '" + name + "'");
    }
};

} // namespace lrk
