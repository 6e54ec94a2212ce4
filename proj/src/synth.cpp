#include "blinkbench/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "blinkbench/ingest.hpp"
#include "blinkbench/rng.hpp"

namespace blinkbench {

namespace {

constexpr double kPi = 3.14159265358979323846;

const char* const kChannelNames[14] = {
    "AF3", "F7", "F3", "FC5", "T7",  "P7",  "O1",
    "O2",  "P8", "T8", "FC6", "F4",  "F8",  "AF4",
};

// true = frontal sensor, false = temporal/posterior.
const bool kFrontal[14] = {
    true,  true,  true,  true,  false, false, false,
    false, false, false, true,  true,  true,  true,
};

struct Tone {
    double amp;
    double freq;
    double phase;
};

std::vector<Tone> draw_tones(Rng& rng, int count, double amp_lo, double amp_hi) {
    std::vector<Tone> tones;
    tones.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        tones.push_back(Tone{
            rng.uniform(amp_lo, amp_hi),
            rng.uniform(0.04, 0.35),
            rng.uniform(0.0, 2.0 * kPi),
        });
    }
    return tones;
}

double eval_tones(const std::vector<Tone>& tones, double t_seconds) {
    double v = 0.0;
    for (const Tone& tone : tones) {
        v += tone.amp * std::sin(2.0 * kPi * tone.freq * t_seconds + tone.phase);
    }
    return v;
}

double round4(double v) { return std::round(v * 10000.0) / 10000.0; }

}  // namespace

Recording synthetic_recording(const SynthConfig& cfg) {
    if (cfg.rows < 2000) {
        throw std::invalid_argument("synthetic_recording: rows must be >= 2000");
    }
    if (cfg.sample_rate_hz <= 0) {
        throw std::invalid_argument("synthetic_recording: sample rate must be positive");
    }
    const std::size_t n = cfg.rows;
    const double rate = static_cast<double>(cfg.sample_rate_hz);

    Rng rng(cfg.seed);

    double base[14];
    double w_global[14];
    double w_region[14];
    double blink_amp[14];
    for (int c = 0; c < 14; ++c) {
        base[c] = rng.uniform(4050.0, 4620.0);
        w_global[c] = rng.uniform(0.6, 1.2);
        w_region[c] = rng.uniform(0.5, 1.3);
        blink_amp[c] = kFrontal[c] ? rng.uniform(110.0, 180.0) : rng.uniform(14.0, 40.0);
    }

    const std::vector<Tone> global_drift = draw_tones(rng, 4, 5.0, 11.0);
    const std::vector<Tone> frontal_drift = draw_tones(rng, 3, 3.0, 8.0);
    const std::vector<Tone> posterior_drift = draw_tones(rng, 3, 3.0, 8.0);

    // Blink episodes: sub-second label-1 bursts separated by a few seconds of
    // open state. Gaps stay above three seconds so that windows centered on
    // successive onsets cannot collide.
    std::vector<double> env(n, 0.0);
    std::vector<int> labels(n, 0);
    const double total_s = static_cast<double>(n) / rate;
    double onset = 2.0 + rng.uniform(0.0, 1.0);
    int episodes = 0;
    while (true) {
        const double dur = rng.uniform(0.4, 1.1);
        if (onset + dur >= total_s - 2.0) break;
        const std::size_t lo = static_cast<std::size_t>(std::ceil(onset * rate));
        const std::size_t hi = static_cast<std::size_t>(std::floor((onset + dur) * rate));
        for (std::size_t t = lo; t <= hi && t < n; ++t) {
            const double u = (static_cast<double>(t) / rate - onset) / dur;
            env[t] = 0.5 * (1.0 - std::cos(2.0 * kPi * u));
            labels[t] = 1;
        }
        ++episodes;
        onset += dur + rng.uniform(3.2, 5.2);
    }
    if (episodes < 20) {
        throw std::logic_error("synthetic_recording: too few blink episodes");
    }

    Recording rec;
    rec.sample_rate_hz = cfg.sample_rate_hz;
    rec.labels = labels;
    rec.channels.resize(14);
    for (int c = 0; c < 14; ++c) {
        rec.channels[static_cast<std::size_t>(c)].name = kChannelNames[c];
        rec.channels[static_cast<std::size_t>(c)].values.resize(n);
    }

    for (std::size_t t = 0; t < n; ++t) {
        const double s = static_cast<double>(t) / rate;
        const double g = eval_tones(global_drift, s);
        const double rf = eval_tones(frontal_drift, s);
        const double rp = eval_tones(posterior_drift, s);
        for (int c = 0; c < 14; ++c) {
            const double region = kFrontal[c] ? rf : rp;
            double v = base[c] + w_global[c] * g + w_region[c] * region +
                       blink_amp[c] * env[t] + rng.normal() * 6.0;
            rec.channels[static_cast<std::size_t>(c)].values[t] = round4(v);
        }
    }

    // Three spike rows, far beyond the ten-times-mean-absolute-value bar.
    // Signs alternate so the rule is exercised on magnitude, not raw value.
    const std::size_t spike_rows[3] = {
        static_cast<std::size_t>(static_cast<double>(n) * 0.23),
        static_cast<std::size_t>(static_cast<double>(n) * 0.52),
        static_cast<std::size_t>(static_cast<double>(n) * 0.81),
    };
    const int spike_channels[3] = {1, 6, 13};
    const double spike_values[3] = {211840.0, -158730.0, 244210.0};
    for (int i = 0; i < 3; ++i) {
        rec.channels[static_cast<std::size_t>(spike_channels[i])]
            .values[spike_rows[i]] = spike_values[i];
    }

    // Verify the advertised structure on the rounded data. These are fixture
    // guarantees, so a failure here is a generator bug, not a data error.
    for (int c = 0; c < 14; ++c) {
        const auto& values = rec.channels[static_cast<std::size_t>(c)].values;
        double sum_abs = 0.0;
        for (double v : values) sum_abs += std::abs(v);
        const double threshold = 10.0 * (sum_abs / static_cast<double>(n));
        for (std::size_t t = 0; t < n; ++t) {
            const bool is_spike = (c == spike_channels[0] && t == spike_rows[0]) ||
                                  (c == spike_channels[1] && t == spike_rows[1]) ||
                                  (c == spike_channels[2] && t == spike_rows[2]);
            const double ratio = std::abs(values[t]) / threshold;
            if (is_spike && ratio < 1.5) {
                throw std::logic_error("synthetic_recording: spike below margin");
            }
            if (!is_spike && ratio > 0.5) {
                throw std::logic_error("synthetic_recording: background value too close to outlier bar");
            }
        }
    }

    rec.validate();
    return rec;
}

std::string synthetic_arff(const SynthConfig& cfg) {
    const Recording rec = synthetic_recording(cfg);
    return write_arff(rec, "synthetic-eye-state", 4);
}

}  // namespace blinkbench
