#include "blinkbench/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "blinkbench/errors.hpp"
#include "blinkbench/util.hpp"

namespace blinkbench {

namespace {

struct Discretized {
    std::vector<int> bins;
    int bin_count = 0;
    bool degenerate = false;
};

Discretized discretize(std::span<const double> x, int bin_count) {
    Discretized d;
    d.bins.resize(x.size());
    double lo = x[0];
    double hi = x[0];
    bool binary = true;
    for (double v : x) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        if (v != 0.0 && v != 1.0) binary = false;
    }
    if (lo == hi) {
        d.bin_count = 1;
        d.degenerate = true;
        return d;
    }
    if (binary) {
        d.bin_count = 2;
        for (std::size_t i = 0; i < x.size(); ++i) d.bins[i] = x[i] == 1.0 ? 1 : 0;
        return d;
    }
    d.bin_count = bin_count;
    const double range = hi - lo;
    for (std::size_t i = 0; i < x.size(); ++i) {
        int b = static_cast<int>((x[i] - lo) / range * static_cast<double>(bin_count));
        if (b >= bin_count) b = bin_count - 1;
        if (b < 0) b = 0;
        d.bins[i] = b;
    }
    return d;
}

}  // namespace

MiResult mutual_information(std::span<const double> x, std::span<const double> y,
                            const HistogramConfig& cfg) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("mutual_information: length mismatch (" +
                                    std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()) + ")");
    }
    if (x.size() < 2) {
        throw std::invalid_argument("mutual_information: need at least 2 samples");
    }
    if (cfg.bin_count < 2) {
        throw std::invalid_argument("bin_count must be >= 2");
    }

    const Discretized dx = discretize(x, cfg.bin_count);
    const Discretized dy = discretize(y, cfg.bin_count);
    MiResult result;
    if (dx.degenerate || dy.degenerate) {
        result.degenerate = true;
        return result;
    }

    const std::size_t n = x.size();
    const int nx = dx.bin_count;
    const int ny = dy.bin_count;
    std::vector<std::size_t> joint(static_cast<std::size_t>(nx) * ny, 0);
    std::vector<std::size_t> mx(nx, 0);
    std::vector<std::size_t> my(ny, 0);
    for (std::size_t i = 0; i < n; ++i) {
        ++joint[static_cast<std::size_t>(dx.bins[i]) * ny + dy.bins[i]];
        ++mx[dx.bins[i]];
        ++my[dy.bins[i]];
    }

    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> terms;
    terms.reserve(joint.size());
    for (int a = 0; a < nx; ++a) {
        for (int b = 0; b < ny; ++b) {
            const std::size_t cnt = joint[static_cast<std::size_t>(a) * ny + b];
            if (cnt == 0) continue;
            const double p = static_cast<double>(cnt) * inv_n;
            const double px = static_cast<double>(mx[a]) * inv_n;
            const double py = static_cast<double>(my[b]) * inv_n;
            terms.push_back(p * std::log(p / (px * py)));
        }
    }
    std::sort(terms.begin(), terms.end());
    result.nats = neumaier_sum(terms);
    return result;
}

SelectionRanking mrmr_rank(const Recording& rec, const HistogramConfig& cfg,
                           std::size_t n_select) {
    rec.validate();
    const std::size_t c = rec.channel_count();
    if (n_select < 1 || n_select > c) {
        throw std::invalid_argument("n_select must lie in [1, " + std::to_string(c) +
                                    "], got " + std::to_string(n_select));
    }

    std::vector<double> label_series(rec.length());
    for (std::size_t t = 0; t < rec.length(); ++t) {
        label_series[t] = static_cast<double>(rec.labels[t]);
    }

    std::vector<double> relevance(c);
    for (std::size_t j = 0; j < c; ++j) {
        relevance[j] = mutual_information(rec.channels[j].values, label_series, cfg).nats;
    }

    const double unset = -1.0;
    std::vector<std::vector<double>> pair_mi(c, std::vector<double>(c, unset));
    const auto pairwise = [&](std::size_t a, std::size_t b) {
        if (pair_mi[a][b] == unset) {
            const double v =
                mutual_information(rec.channels[a].values, rec.channels[b].values, cfg).nats;
            pair_mi[a][b] = v;
            pair_mi[b][a] = v;
        }
        return pair_mi[a][b];
    };

    SelectionRanking ranking;
    ranking.channel_names = rec.channel_names();
    ranking.n_select = n_select;
    std::vector<bool> selected(c, false);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (std::size_t step = 0; step < n_select; ++step) {
        std::vector<double> row(c, nan);
        std::size_t winner = c;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t f = 0; f < c; ++f) {
            if (selected[f]) continue;
            double score = relevance[f];
            if (!ranking.order.empty()) {
                double redundancy = 0.0;
                for (std::size_t s : ranking.order) redundancy += pairwise(f, s);
                score -= redundancy / static_cast<double>(ranking.order.size());
            }
            row[f] = score;
            if (score > best) {
                best = score;
                winner = f;
            }
        }
        selected[winner] = true;
        ranking.order.push_back(winner);
        ranking.scores.push_back(best);
        ranking.step_scores.push_back(std::move(row));
    }
    return ranking;
}

AggregateRanking average_ranking(const std::vector<SelectionRanking>& rankings) {
    if (rankings.empty()) {
        throw std::invalid_argument("average_ranking: no rankings given");
    }
    const auto& names = rankings.front().channel_names;
    for (const auto& r : rankings) {
        if (r.channel_names != names) {
            throw DataError("average_ranking: rankings cover different channel sets");
        }
    }
    const std::size_t c = names.size();
    AggregateRanking agg;
    agg.channel_names = names;
    agg.mean_score.assign(c, 0.0);
    agg.mean_position.assign(c, 0.0);
    agg.appearances.assign(c, 0);
    for (const auto& r : rankings) {
        for (std::size_t step = 0; step < r.order.size(); ++step) {
            const std::size_t ch = r.order[step];
            agg.mean_score[ch] += r.scores[step];
            agg.mean_position[ch] += static_cast<double>(step);
            ++agg.appearances[ch];
        }
    }
    for (std::size_t j = 0; j < c; ++j) {
        if (agg.appearances[j] > 0) {
            agg.mean_score[j] /= static_cast<double>(agg.appearances[j]);
            agg.mean_position[j] /= static_cast<double>(agg.appearances[j]);
        } else {
            agg.mean_score[j] = std::numeric_limits<double>::quiet_NaN();
            agg.mean_position[j] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return agg;
}

std::vector<std::size_t> top_channels(const AggregateRanking& agg, std::size_t n) {
    const std::size_t c = agg.channel_names.size();
    if (n < 1 || n > c) {
        throw std::invalid_argument("top_channels: n must lie in [1, " + std::to_string(c) +
                                    "]");
    }
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < c; ++j) {
        if (agg.appearances[j] > 0) idx.push_back(j);
    }
    if (idx.size() < n) {
        throw DataError("top_channels: only " + std::to_string(idx.size()) +
                        " channels were ever selected");
    }
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (agg.mean_position[a] != agg.mean_position[b]) {
            return agg.mean_position[a] < agg.mean_position[b];
        }
        if (agg.mean_score[a] != agg.mean_score[b]) {
            return agg.mean_score[a] > agg.mean_score[b];
        }
        return a < b;
    });
    idx.resize(n);
    return idx;
}

namespace {

nlohmann::json nan_safe(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

}  // namespace

std::string ranking_to_json(const SelectionRanking& ranking) {
    nlohmann::json j;
    j["channel_names"] = ranking.channel_names;
    j["n_select"] = ranking.n_select;
    j["order"] = ranking.order;
    nlohmann::json names = nlohmann::json::array();
    for (std::size_t idx : ranking.order) names.push_back(ranking.channel_names[idx]);
    j["order_names"] = names;
    j["scores"] = ranking.scores;
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& row : ranking.step_scores) {
        nlohmann::json r = nlohmann::json::array();
        for (double v : row) r.push_back(nan_safe(v));
        steps.push_back(r);
    }
    j["step_scores"] = steps;
    return j.dump(2);
}

std::string ranking_to_csv(const SelectionRanking& ranking) {
    std::ostringstream out;
    out << "step";
    for (std::size_t idx : ranking.order) out << ',' << ranking.channel_names[idx];
    out << '\n';
    for (std::size_t step = 0; step < ranking.step_scores.size(); ++step) {
        out << step + 1;
        for (std::size_t col : ranking.order) {
            const double v = ranking.step_scores[step][col];
            out << ',';
            if (!std::isnan(v)) out << format_double(v);
        }
        out << '\n';
    }
    return out.str();
}

std::string aggregate_to_json(const AggregateRanking& agg) {
    nlohmann::json j;
    j["channels"] = nlohmann::json::array();
    for (std::size_t i = 0; i < agg.channel_names.size(); ++i) {
        j["channels"].push_back({{"name", agg.channel_names[i]},
                                 {"mean_score", nan_safe(agg.mean_score[i])},
                                 {"mean_position", nan_safe(agg.mean_position[i])},
                                 {"appearances", agg.appearances[i]}});
    }
    return j.dump(2);
}

std::string aggregate_to_csv(const AggregateRanking& agg) {
    std::ostringstream out;
    out << "channel,mean_score,mean_position,appearances\n";
    for (std::size_t i = 0; i < agg.channel_names.size(); ++i) {
        out << agg.channel_names[i] << ',';
        if (!std::isnan(agg.mean_score[i])) out << format_double(agg.mean_score[i]);
        out << ',';
        if (!std::isnan(agg.mean_position[i])) out << format_double(agg.mean_position[i]);
        out << ',' << agg.appearances[i] << '\n';
    }
    return out.str();
}

}  // namespace blinkbench
