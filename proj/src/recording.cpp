#include "blinkbench/recording.hpp"

#include <cmath>
#include <unordered_set>

#include "blinkbench/errors.hpp"

namespace blinkbench {

std::vector<std::string> Recording::channel_names() const {
    std::vector<std::string> names;
    names.reserve(channels.size());
    for (const auto& ch : channels) names.push_back(ch.name);
    return names;
}

std::size_t Recording::channel_index(std::string_view name) const {
    for (std::size_t i = 0; i < channels.size(); ++i) {
        if (channels[i].name == name) return i;
    }
    throw DataError("no such channel: " + std::string(name));
}

void Recording::validate() const {
    if (channels.size() < 2) {
        throw DataError("recording needs at least 2 channels, got " +
                        std::to_string(channels.size()));
    }
    if (sample_rate_hz <= 0) {
        throw DataError("sample_rate_hz must be positive, got " +
                        std::to_string(sample_rate_hz));
    }
    const std::size_t len = labels.size();
    std::unordered_set<std::string> seen;
    for (const auto& ch : channels) {
        if (ch.name.empty()) {
            throw DataError("channel with empty name");
        }
        if (!seen.insert(ch.name).second) {
            throw DataError("duplicate channel name: " + ch.name);
        }
        if (ch.values.size() != len) {
            throw DataError("channel " + ch.name + " has " +
                            std::to_string(ch.values.size()) + " samples, labels have " +
                            std::to_string(len));
        }
        for (double v : ch.values) {
            if (!std::isfinite(v)) {
                throw DataError("non-finite sample in channel " + ch.name);
            }
        }
    }
    for (int l : labels) {
        if (l != 0 && l != 1) {
            throw DataError("label outside {0,1}: " + std::to_string(l));
        }
    }
}

}  // namespace blinkbench
