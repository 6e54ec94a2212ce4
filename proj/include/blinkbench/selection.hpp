#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "blinkbench/recording.hpp"

namespace blinkbench {

// Equal-width per-variable bins over [min, max]. Streams whose values all lie
// in {0,1} keep their natural two bins; a zero-range stream is degenerate.
struct HistogramConfig {
    int bin_count = 16;
};

struct MiResult {
    double nats = 0.0;
    bool degenerate = false;  // some variable had zero range; value is 0 by convention
};

// Histogram mutual information in nats. Cell terms are summed in sorted
// order, which makes the result independent of argument order.
MiResult mutual_information(std::span<const double> x, std::span<const double> y,
                            const HistogramConfig& cfg);

struct SelectionRanking {
    std::vector<std::string> channel_names;        // full universe, declaration order
    std::vector<std::size_t> order;                // channel index selected per step
    std::vector<double> scores;                    // winning score per step (nats)
    std::vector<std::vector<double>> step_scores;  // per step, score of every candidate; NaN once selected
    std::size_t n_select = 0;
};

// Greedy mRMR ranking: the first step scores pure relevance MI(channel, label);
// each later step scores relevance minus the mean MI against the already
// selected set. Ties pick the lowest channel index.
SelectionRanking mrmr_rank(const Recording& rec, const HistogramConfig& cfg,
                           std::size_t n_select);

struct AggregateRanking {
    std::vector<std::string> channel_names;
    std::vector<double> mean_score;          // mean score the channel attained at selection
    std::vector<double> mean_position;       // mean 0-based selection step
    std::vector<std::size_t> appearances;    // rankings that selected the channel
};

AggregateRanking average_ranking(const std::vector<SelectionRanking>& rankings);

// Channels ordered by mean selection position (earliest first); ties by higher
// mean score, then lower index.
std::vector<std::size_t> top_channels(const AggregateRanking& agg, std::size_t n);

std::string ranking_to_json(const SelectionRanking& ranking);

// Steps x channels matrix with columns in selection order, so the scores at
// selection sit on the diagonal.
std::string ranking_to_csv(const SelectionRanking& ranking);

std::string aggregate_to_json(const AggregateRanking& agg);
std::string aggregate_to_csv(const AggregateRanking& agg);

}  // namespace blinkbench
