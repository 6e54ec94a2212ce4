#include "blinkbench/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "blinkbench/errors.hpp"
#include "blinkbench/util.hpp"

namespace blinkbench {

StateFilter parse_state_filter(std::string_view token) {
    if (token == "0" || token == "open") return StateFilter::open;
    if (token == "1" || token == "blink") return StateFilter::blink;
    if (token == "all") return StateFilter::all;
    throw std::invalid_argument("unknown state filter '" + std::string(token) +
                                "' (expected 0, 1, or all)");
}

std::string to_string(StateFilter f) {
    switch (f) {
        case StateFilter::open: return "0";
        case StateFilter::blink: return "1";
        case StateFilter::all: return "all";
    }
    return "all";
}

std::size_t ChannelGraph::edge_count() const {
    std::size_t edges = 0;
    for (std::size_t i = 0; i < adjacency.size(); ++i) {
        for (std::size_t j = i + 1; j < adjacency.size(); ++j) {
            edges += adjacency[i][j] != 0 ? 1 : 0;
        }
    }
    return edges;
}

CorrMatrix correlation_matrix(const Recording& rec, StateFilter filter,
                              std::optional<IndexRange> range) {
    rec.validate();
    const std::size_t c = rec.channel_count();
    const std::size_t len = rec.length();

    std::size_t lo = 0;
    std::size_t hi = len;
    if (range) {
        if (range->begin >= range->end || range->end > len) {
            throw std::invalid_argument("index range [" + std::to_string(range->begin) + ", " +
                                        std::to_string(range->end) + ") outside recording of " +
                                        std::to_string(len));
        }
        lo = range->begin;
        hi = range->end;
    }

    std::vector<std::size_t> selected;
    selected.reserve(hi - lo);
    for (std::size_t t = lo; t < hi; ++t) {
        if (filter == StateFilter::all || rec.labels[t] == static_cast<int>(filter)) {
            selected.push_back(t);
        }
    }
    if (selected.size() < 2) {
        throw EmptySubset("state filter " + to_string(filter) + " matches " +
                          std::to_string(selected.size()) + " timepoints");
    }

    // Precondition: channels were centered over their full series.
    for (const auto& ch : rec.channels) {
        double scale = 0.0;
        for (double v : ch.values) scale = std::max(scale, std::abs(v));
        const double m = mean(ch.values);
        if (std::abs(m) > 1e-6 * std::max(1.0, scale)) {
            throw NotCentered("channel " + ch.name + " has mean " + std::to_string(m) +
                              "; apply center() first");
        }
    }

    const std::size_t n = selected.size();
    std::vector<std::vector<double>> sub(c, std::vector<double>(n));
    for (std::size_t i = 0; i < c; ++i) {
        const auto& values = rec.channels[i].values;
        for (std::size_t k = 0; k < n; ++k) sub[i][k] = values[selected[k]];
    }

    std::vector<double> sumsq(c);
    std::vector<double> scratch(n);
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t k = 0; k < n; ++k) scratch[k] = sub[i][k] * sub[i][k];
        sumsq[i] = neumaier_sum(scratch);
        if (sumsq[i] == 0.0) {
            throw DegenerateChannel("channel " + rec.channels[i].name +
                                    " has zero sum of squares over filter " + to_string(filter));
        }
    }

    CorrMatrix corr;
    corr.labels = rec.channel_names();
    corr.state = filter;
    corr.sample_count = n;
    corr.values.assign(c, std::vector<double>(c, 0.0));
    for (std::size_t i = 0; i < c; ++i) {
        corr.values[i][i] = 1.0;
        for (std::size_t j = i + 1; j < c; ++j) {
            for (std::size_t k = 0; k < n; ++k) scratch[k] = sub[i][k] * sub[j][k];
            const double r = neumaier_sum(scratch) / std::sqrt(sumsq[i] * sumsq[j]);
            corr.values[i][j] = r;
            corr.values[j][i] = r;
        }
    }
    return corr;
}

ChannelGraph adjacency(const CorrMatrix& corr, double tau) {
    if (!(tau > -1.0 && tau < 1.0)) {
        throw std::invalid_argument("tau must lie in (-1, 1), got " + std::to_string(tau));
    }
    const std::size_t c = corr.labels.size();
    ChannelGraph g;
    g.labels = corr.labels;
    g.tau = tau;
    g.eye_state = corr.state;
    g.adjacency.assign(c, std::vector<int>(c, 0));
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            g.adjacency[i][j] = (i != j && corr.values[i][j] >= tau) ? 1 : 0;
        }
    }
    return g;
}

double average_degree(const ChannelGraph& g) {
    if (g.labels.empty()) return 0.0;
    return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.labels.size());
}

std::vector<std::size_t> cluster_order(const CorrMatrix& corr) {
    const std::size_t c = corr.labels.size();
    if (c == 0) return {};

    struct Cluster {
        std::vector<std::size_t> leaves;
        bool active = true;
    };
    std::vector<Cluster> clusters;
    clusters.reserve(2 * c);
    for (std::size_t i = 0; i < c; ++i) clusters.push_back({{i}, true});

    // dist[a][b]: average-linkage distance between clusters a and b,
    // maintained by the Lance-Williams update for UPGMA.
    std::vector<std::vector<double>> dist(c, std::vector<double>(c, 0.0));
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            if (i != j) dist[i][j] = 1.0 - corr.values[i][j];
        }
    }

    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < c; ++i) active.push_back(i);

    while (active.size() > 1) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0;
        std::size_t bj = 0;
        for (std::size_t a = 0; a < active.size(); ++a) {
            for (std::size_t b = a + 1; b < active.size(); ++b) {
                const double d = dist[active[a]][active[b]];
                if (d < best) {
                    best = d;
                    bi = active[a];
                    bj = active[b];
                }
            }
        }
        // active is sorted ascending, so the scan already favors the lowest
        // (i, j) pair on ties.
        Cluster merged;
        merged.leaves = clusters[bi].leaves;
        merged.leaves.insert(merged.leaves.end(), clusters[bj].leaves.begin(),
                             clusters[bj].leaves.end());
        const std::size_t ni = clusters[bi].leaves.size();
        const std::size_t nj = clusters[bj].leaves.size();
        clusters[bi].active = false;
        clusters[bj].active = false;
        const std::size_t id = clusters.size();
        clusters.push_back(std::move(merged));

        for (auto& row : dist) row.push_back(0.0);
        dist.emplace_back(clusters.size(), 0.0);
        for (std::size_t other : active) {
            if (other == bi || other == bj) continue;
            const double d = (static_cast<double>(ni) * dist[bi][other] +
                              static_cast<double>(nj) * dist[bj][other]) /
                             static_cast<double>(ni + nj);
            dist[id][other] = d;
            dist[other][id] = d;
        }

        std::vector<std::size_t> next;
        next.reserve(active.size() - 1);
        for (std::size_t idx : active) {
            if (idx != bi && idx != bj) next.push_back(idx);
        }
        next.push_back(id);
        std::sort(next.begin(), next.end());
        active = std::move(next);
    }
    return clusters[active.front()].leaves;
}

GraphFormat parse_graph_format(std::string_view token) {
    if (token == "edge-list" || token == "edgelist" || token == "edges") {
        return GraphFormat::edge_list;
    }
    if (token == "dot" || token == "DOT") return GraphFormat::dot;
    throw std::invalid_argument("unsupported graph format '" + std::string(token) +
                                "' (expected edge-list or dot)");
}

std::string export_graph(const ChannelGraph& g, GraphFormat format) {
    const std::size_t c = g.labels.size();
    std::ostringstream out;
    if (format == GraphFormat::edge_list) {
        out << "# nodes:";
        for (const auto& name : g.labels) out << ' ' << name;
        out << '\n';
        out << "# tau: " << format_double(g.tau) << '\n';
        out << "# state: " << to_string(g.eye_state) << '\n';
        for (std::size_t i = 0; i < c; ++i) {
            for (std::size_t j = i + 1; j < c; ++j) {
                if (g.adjacency[i][j]) out << g.labels[i] << ' ' << g.labels[j] << '\n';
            }
        }
        return out.str();
    }
    out << "graph channel_connectivity {\n";
    out << "  // tau " << format_double(g.tau) << ", eye-state " << to_string(g.eye_state)
        << "\n";
    out << "  node [shape=circle];\n";
    for (const auto& name : g.labels) out << "  \"" << name << "\";\n";
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = i + 1; j < c; ++j) {
            if (g.adjacency[i][j]) {
                out << "  \"" << g.labels[i] << "\" -- \"" << g.labels[j] << "\";\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

ChannelGraph import_edge_list(std::string_view source) {
    ChannelGraph g;
    g.eye_state = StateFilter::all;
    std::istringstream in{std::string(source)};
    std::string line;
    bool have_nodes = false;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = trim(line.substr(1));
            if (body.rfind("nodes:", 0) == 0) {
                std::istringstream names(body.substr(6));
                std::string name;
                while (names >> name) g.labels.push_back(name);
                g.adjacency.assign(g.labels.size(),
                                   std::vector<int>(g.labels.size(), 0));
                have_nodes = true;
            } else if (body.rfind("tau:", 0) == 0) {
                g.tau = parse_double(body.substr(4), "edge list tau header");
            } else if (body.rfind("state:", 0) == 0) {
                g.eye_state = parse_state_filter(trim(body.substr(6)));
            }
            continue;
        }
        if (!have_nodes) {
            throw ParseError("edge before '# nodes:' header in edge list");
        }
        std::istringstream pair(line);
        std::string a;
        std::string b;
        if (!(pair >> a >> b)) {
            throw ParseError("malformed edge line '" + line + "'");
        }
        const auto find = [&](const std::string& name) {
            for (std::size_t i = 0; i < g.labels.size(); ++i) {
                if (g.labels[i] == name) return i;
            }
            throw ParseError("edge references unknown node '" + name + "'");
        };
        const std::size_t i = find(a);
        const std::size_t j = find(b);
        g.adjacency[i][j] = 1;
        g.adjacency[j][i] = 1;
    }
    if (!have_nodes) {
        throw ParseError("edge list without '# nodes:' header");
    }
    return g;
}

std::string corr_to_csv(const CorrMatrix& corr, const std::vector<std::size_t>* order) {
    const std::size_t c = corr.labels.size();
    std::vector<std::size_t> perm(c);
    for (std::size_t i = 0; i < c; ++i) perm[i] = i;
    if (order) {
        if (order->size() != c) {
            throw std::invalid_argument("order permutation size mismatch");
        }
        perm = *order;
    }
    std::ostringstream out;
    out << "channel";
    for (std::size_t i : perm) out << ',' << corr.labels[i];
    out << '\n';
    for (std::size_t i : perm) {
        out << corr.labels[i];
        for (std::size_t j : perm) out << ',' << format_double(corr.values[i][j]);
        out << '\n';
    }
    return out.str();
}

}  // namespace blinkbench
