#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blinkbench/recording.hpp"

namespace blinkbench {

enum class StateFilter { open = 0, blink = 1, all = 2 };

StateFilter parse_state_filter(std::string_view token);  // "0" | "1" | "all"
std::string to_string(StateFilter f);

// Optional restriction to a half-open timepoint range before label filtering.
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct CorrMatrix {
    std::vector<std::string> labels;          // channel names
    std::vector<std::vector<double>> values;  // C x C, symmetric, unit diagonal
    StateFilter state = StateFilter::all;
    std::size_t sample_count = 0;             // timepoints behind each entry
};

struct ChannelGraph {
    std::vector<std::string> labels;
    double tau = 0.0;
    std::vector<std::vector<int>> adjacency;  // binary, zero diagonal
    StateFilter eye_state = StateFilter::all;

    std::size_t edge_count() const;
};

// Correlation of raw sums of products over the timepoints whose label matches
// the filter (normalised by the root product of sums of squares). Requires
// zero-centered input channels; on centered data with filter `all` this is
// the Pearson coefficient.
CorrMatrix correlation_matrix(const Recording& rec, StateFilter filter,
                              std::optional<IndexRange> range = std::nullopt);

// Edge wherever the correlation reaches tau; the boundary counts as an edge
// and the diagonal is always zero.
ChannelGraph adjacency(const CorrMatrix& corr, double tau);

double average_degree(const ChannelGraph& g);

// Leaf order of agglomerative average-linkage clustering on distance
// 1 - correlation. Ties merge the lowest pair of cluster indices; a merged
// cluster concatenates lower-index leaves before higher-index ones.
std::vector<std::size_t> cluster_order(const CorrMatrix& corr);

enum class GraphFormat { edge_list, dot };

GraphFormat parse_graph_format(std::string_view token);  // "edge-list" | "dot"

std::string export_graph(const ChannelGraph& g, GraphFormat format);

// Reads back the edge-list format produced by export_graph.
ChannelGraph import_edge_list(std::string_view source);

// CSV with a header row and column of channel names. An order permutation
// (e.g. from cluster_order) rearranges rows and columns.
std::string corr_to_csv(const CorrMatrix& corr,
                        const std::vector<std::size_t>* order = nullptr);

}  // namespace blinkbench
