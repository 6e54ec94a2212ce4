#pragma once

#include <cstdint>
#include <string>

#include "blinkbench/recording.hpp"

namespace blinkbench {

// Deterministic synthetic stand-in for a 14-channel eye-state recording.
// It is generated, not recorded: shared slow drifts give the channels a
// realistic correlation structure, blink episodes add frontal-dominant
// deflections under label 1, and exactly three spike rows exceed ten times
// the per-channel mean absolute value. The generator verifies those
// properties after rounding values to four decimals, so the emitted file
// reproduces them bit-for-bit after parsing.
struct SynthConfig {
    std::size_t rows = 14980;
    int sample_rate_hz = 128;
    std::uint64_t seed = 7;
};

Recording synthetic_recording(const SynthConfig& cfg = {});

// ARFF document of the synthetic recording (4-decimal values, {0,1} class).
std::string synthetic_arff(const SynthConfig& cfg = {});

}  // namespace blinkbench
