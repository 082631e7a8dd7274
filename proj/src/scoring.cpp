#include "eventscore/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "eventscore/csv.hpp"
#include "eventscore/errors.hpp"

namespace eventscore {

namespace {

constexpr double kWeightSumTolerance = 1e-9;

std::string fraction6(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

}  // namespace

void WeightConfig::validate() const {
    if (w_p < 0.0 || w_r < 0.0 || w_c < 0.0) {
        throw ConfigError("negative weight in (" + std::to_string(w_p) + "," +
                          std::to_string(w_r) + "," + std::to_string(w_c) + ")");
    }
    const double sum = w_p + w_r + w_c;
    if (std::fabs(sum - 1.0) > kWeightSumTolerance) {
        throw ConfigError("weights_sum: weights must sum to 1, got " + std::to_string(sum));
    }
}

std::vector<double> minmax_normalize(const std::vector<SignedScore>& column) {
    if (column.empty()) throw CorpusError("empty_column");

    double lo = column.front().value;
    double hi = column.front().value;
    for (const auto& score : column) {
        lo = std::min(lo, score.value);
        hi = std::max(hi, score.value);
    }

    std::vector<double> normalized;
    normalized.reserve(column.size());
    if (hi > lo) {
        const double span = hi - lo;
        for (const auto& score : column) normalized.push_back((score.value - lo) / span);
    } else {
        // Uninformative column: every event contributes its weight neutrally.
        normalized.assign(column.size(), 0.5);
    }
    return normalized;
}

double aggregate_event_score(double n_p, double n_r, double n_c, const WeightConfig& weights) {
    const double score = weights.w_p * n_p + weights.w_r * n_r + weights.w_c * n_c;
    return std::clamp(score, 0.0, 1.0);
}

std::vector<EventScoreRow> score_corpus(const FeatureMatrix& matrix,
                                        const WeightConfig& weights) {
    if (matrix.rows.empty()) throw CorpusError("empty_corpus");
    weights.validate();

    std::vector<SignedScore> p_col, r_col, c_col;
    p_col.reserve(matrix.rows.size());
    r_col.reserve(matrix.rows.size());
    c_col.reserve(matrix.rows.size());
    for (const auto& row : matrix.rows) {
        p_col.push_back(row.p_raw);
        r_col.push_back(row.r_raw);
        c_col.push_back(row.c_raw);
    }
    const auto n_p = minmax_normalize(p_col);
    const auto n_r = minmax_normalize(r_col);
    const auto n_c = minmax_normalize(c_col);

    std::vector<EventScoreRow> rows;
    rows.reserve(matrix.rows.size());
    for (std::size_t i = 0; i < matrix.rows.size(); ++i) {
        EventScoreRow row;
        row.name = matrix.rows[i].name;
        row.n_p = n_p[i];
        row.n_c = n_c[i];
        row.n_r = n_r[i];
        row.event_score = aggregate_event_score(n_p[i], n_r[i], n_c[i], weights);
        rows.push_back(std::move(row));
    }
    return rows;
}

RankedTable rank_events(std::vector<EventScoreRow> rows) {
    if (rows.empty()) throw CorpusError("empty_corpus");

    // Name breaks score ties; the remaining keys make the order a total
    // one, so permuting the input cannot permute the output.
    std::sort(rows.begin(), rows.end(), [](const EventScoreRow& a, const EventScoreRow& b) {
        if (a.event_score != b.event_score) return a.event_score > b.event_score;
        if (a.name != b.name) return a.name < b.name;
        if (a.n_p != b.n_p) return a.n_p < b.n_p;
        if (a.n_c != b.n_c) return a.n_c < b.n_c;
        return a.n_r < b.n_r;
    });

    RankedTable table;
    table.ranks.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == 0) {
            table.ranks.push_back(1);
        } else if (rows[i].event_score == rows[i - 1].event_score) {
            table.ranks.push_back(table.ranks.back());
        } else {
            table.ranks.push_back(table.ranks.back() + 1);
        }
    }
    table.rows = std::move(rows);
    return table;
}

std::string feature_matrix_csv(const FeatureMatrix& matrix) {
    std::ostringstream out;
    out << "activity_name,p_raw,r_raw,c_raw\n";
    for (const auto& row : matrix.rows) {
        out << csv_escape(row.name) << ',' << fraction6(row.p_raw.value) << ','
            << fraction6(row.r_raw.value) << ',' << fraction6(row.c_raw.value) << '\n';
    }
    return out.str();
}

}  // namespace eventscore
