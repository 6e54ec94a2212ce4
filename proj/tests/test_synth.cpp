#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest/doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "blinkbench/epochs.hpp"
#include "blinkbench/ingest.hpp"
#include "blinkbench/preprocess.hpp"
#include "blinkbench/synth.hpp"

using namespace blinkbench;

namespace {

const std::vector<std::string> kExpectedNames = {
    "AF3", "F7", "F3", "FC5", "T7",  "P7", "O1",
    "O2",  "P8", "T8", "FC6", "F4", "F8", "AF4"};

}  // namespace

TEST_CASE("the synthetic recording has the advertised shape") {
    const Recording rec = synthetic_recording();
    CHECK(rec.channel_count() == 14);
    CHECK(rec.length() == 14980);
    CHECK(rec.sample_rate_hz == 128);
    CHECK(rec.channel_names() == kExpectedNames);

    std::size_t ones = 0;
    for (int l : rec.labels) ones += static_cast<std::size_t>(l);
    CHECK(ones > 0);
    CHECK(ones < rec.length());
    // every blink episode contributes an onset and an offset
    CHECK(find_transitions(rec.labels).size() >= 40);
}

TEST_CASE("generation is deterministic per seed") {
    const Recording a = synthetic_recording();
    const Recording b = synthetic_recording();
    REQUIRE(a.channel_count() == b.channel_count());
    for (std::size_t c = 0; c < a.channel_count(); ++c) {
        CHECK(a.channels[c].values == b.channels[c].values);
    }
    CHECK(a.labels == b.labels);

    SynthConfig other;
    other.seed = 8;
    const Recording c = synthetic_recording(other);
    CHECK(a.channels[0].values != c.channels[0].values);
}

TEST_CASE("exactly three rows trip the ten-times rule") {
    const Recording rec = synthetic_recording();
    const auto [cleaned, report] = remove_outliers(rec);
    CHECK(report.removed_indices ==
          std::vector<std::size_t>{3445, 7789, 12133});
    CHECK(report.trigger_channels ==
          std::vector<std::string>{"F7", "O1", "AF4"});
    CHECK(cleaned.length() == 14977);

    // the margins built into the generator keep a second pass empty
    const auto [again, second] = remove_outliers(cleaned);
    CHECK(second.removed_indices.empty());
    CHECK(again.length() == 14977);
}

TEST_CASE("the cleaned recording supports the full epoch geometry") {
    const Recording rec = synthetic_recording();
    const auto [cleaned, report] = remove_outliers(rec);
    const Recording centered = center(cleaned);
    const EpochSet epochs = slice_windows(centered, 384, 20, 0);
    CHECK(epochs.windows.size() == 20);
    CHECK(epochs.row_count() == 7680);
}

TEST_CASE("blink episodes lift the frontal channels") {
    const Recording rec = synthetic_recording();
    double blink_mean = 0.0;
    double open_mean = 0.0;
    std::size_t blink_n = 0;
    std::size_t open_n = 0;
    const auto& af3 = rec.channels[0].values;
    for (std::size_t t = 0; t < rec.length(); ++t) {
        if (rec.labels[t] == 1) {
            blink_mean += af3[t];
            ++blink_n;
        } else {
            open_mean += af3[t];
            ++open_n;
        }
    }
    blink_mean /= static_cast<double>(blink_n);
    open_mean /= static_cast<double>(open_n);
    CHECK(blink_mean - open_mean > 10.0);
}

TEST_CASE("arff output reproduces the recording bit for bit") {
    const Recording direct = synthetic_recording();
    const Recording parsed = parse_arff(synthetic_arff());
    REQUIRE(parsed.channel_count() == direct.channel_count());
    REQUIRE(parsed.length() == direct.length());
    for (std::size_t c = 0; c < direct.channel_count(); ++c) {
        CHECK(parsed.channels[c].name == direct.channels[c].name);
        CHECK(parsed.channels[c].values == direct.channels[c].values);
    }
    CHECK(parsed.labels == direct.labels);
}

TEST_CASE("undersized configurations are rejected") {
    SynthConfig tiny;
    tiny.rows = 1000;
    CHECK_THROWS_AS(synthetic_recording(tiny), std::invalid_argument);
    SynthConfig bad_rate;
    bad_rate.sample_rate_hz = 0;
    CHECK_THROWS_AS(synthetic_recording(bad_rate), std::invalid_argument);
}
