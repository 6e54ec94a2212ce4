#include "blinkbench/dataset.hpp"

#include <cmath>
#include <stdexcept>

#include "blinkbench/errors.hpp"

namespace blinkbench {

void Dataset::validate() const {
    if (n == 0 || d == 0) throw EmptyData("dataset has no rows or no features");
    if (x.size() != n * d) throw RaggedRow("dataset matrix size does not match n*d");
    if (y.size() != n) throw RaggedRow("dataset label count does not match row count");
    if (feature_names.size() != d) {
        throw RaggedRow("dataset feature name count does not match d");
    }
    for (double v : x) {
        if (!std::isfinite(v)) throw ParseError("dataset contains a non-finite value");
    }
    for (int label : y) {
        if (label != 0 && label != 1) {
            throw ParseError("dataset label outside {0,1}");
        }
    }
}

namespace {

std::vector<std::size_t> resolve_columns(const std::vector<std::string>& names,
                                         const std::vector<std::string>& wanted) {
    std::vector<std::size_t> cols;
    if (wanted.empty()) {
        cols.resize(names.size());
        for (std::size_t i = 0; i < names.size(); ++i) cols[i] = i;
        return cols;
    }
    cols.reserve(wanted.size());
    for (const std::string& w : wanted) {
        bool found = false;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == w) {
                cols.push_back(i);
                found = true;
                break;
            }
        }
        if (!found) throw ParseError("unknown channel '" + w + "'");
    }
    return cols;
}

}  // namespace

Dataset dataset_from_recording(const Recording& rec,
                               const std::vector<std::string>& channels) {
    rec.validate();
    const std::vector<std::size_t> cols = resolve_columns(rec.channel_names(), channels);
    Dataset data;
    data.n = rec.length();
    data.d = cols.size();
    data.y = rec.labels;
    data.x.resize(data.n * data.d);
    data.feature_names.reserve(cols.size());
    for (std::size_t c : cols) data.feature_names.push_back(rec.channels[c].name);
    for (std::size_t i = 0; i < data.n; ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            data.x[i * data.d + j] = rec.channels[cols[j]].values[i];
        }
    }
    data.validate();
    return data;
}

Dataset dataset_from_epochs(const EpochSet& epochs,
                            const std::vector<std::string>& channels) {
    const std::vector<std::size_t> cols =
        resolve_columns(epochs.channel_names, channels);
    const std::size_t rows = epochs.row_count();
    const std::size_t full_d = epochs.channel_count();
    if (rows == 0) throw EmptyData("epoch set has no rows");
    Dataset data;
    data.n = rows;
    data.d = cols.size();
    data.y = epochs.labels;
    data.x.resize(data.n * data.d);
    data.feature_names.reserve(cols.size());
    for (std::size_t c : cols) data.feature_names.push_back(epochs.channel_names[c]);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            data.x[i * data.d + j] = epochs.rows[i * full_d + cols[j]];
        }
    }
    data.validate();
    return data;
}

Dataset dataset_subset(const Dataset& data, const std::vector<std::size_t>& rows) {
    Dataset out;
    out.d = data.d;
    out.n = rows.size();
    out.feature_names = data.feature_names;
    out.x.resize(out.n * out.d);
    out.y.resize(out.n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::size_t r = rows[i];
        if (r >= data.n) throw std::out_of_range("dataset_subset: row index out of range");
        for (std::size_t j = 0; j < data.d; ++j) {
            out.x[i * out.d + j] = data.x[r * data.d + j];
        }
        out.y[i] = data.y[r];
    }
    return out;
}

}  // namespace blinkbench
