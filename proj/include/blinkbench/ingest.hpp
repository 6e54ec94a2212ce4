#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "blinkbench/recording.hpp"

namespace blinkbench {

// ARFF subset used by eye-state recordings: numeric attributes followed
// by one binary class attribute (nominal {0,1} or numeric), '%' comments,
// case-insensitive keywords. Sparse and string attributes are rejected.
Recording parse_arff(std::string_view source, int sample_rate_hz = 128);

// Rectangular comma-delimited table, last column is the label. With
// has_header the first row supplies the channel names; without it channels
// are named ch1..chN. Lines starting with '#' are comments.
Recording parse_csv(std::string_view source, bool has_header, int sample_rate_hz = 128);

// True when the first row of a CSV document looks like column names rather
// than data (any non-numeric cell).
bool csv_has_header(std::string_view source);

// Header row of channel names plus "label"; values in shortest exact
// round-trip form, so parse_csv(write_csv(rec)) == rec.
std::string write_csv(const Recording& rec);

// ARFF document with numeric channel attributes and a {0,1} class attribute.
// Values are written with `precision` decimal places.
std::string write_arff(const Recording& rec, std::string_view relation, int precision = 4);

struct ChannelStats {
    std::string name;
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;
};

struct SummaryStats {
    std::vector<ChannelStats> channels;
    std::size_t rows = 0;
    std::size_t label_count[2] = {0, 0};
    std::size_t transition_count = 0;
};

SummaryStats summarize(const Recording& rec);

std::string summary_to_json(const SummaryStats& s);

// Plot-ready two-column CSV (label, count).
std::string summary_label_csv(const SummaryStats& s);

}  // namespace blinkbench
