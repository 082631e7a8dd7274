#ifndef EVENTSCORE_SCORING_HPP
#define EVENTSCORE_SCORING_HPP

#include <string>
#include <vector>

#include "eventscore/sentiment.hpp"

namespace eventscore {

// Nonnegative feature weights summing to 1 (within 1e-9).
struct WeightConfig {
    double w_p = 0.2;
    double w_r = 0.4;
    double w_c = 0.4;

    // Throws ConfigError on a negative weight or a bad sum.
    void validate() const;
};

struct FeatureRow {
    std::string name;
    SignedScore p_raw;
    SignedScore r_raw;
    SignedScore c_raw;
};

struct FeatureMatrix {
    std::vector<FeatureRow> rows;
};

struct EventScoreRow {
    std::string name;
    double n_p = 0.0;
    double n_c = 0.0;
    double n_r = 0.0;
    double event_score = 0.0;
};

// Rows sorted by event_score descending (ties by name ascending) with
// 1-based dense ranks: equal scores share a rank.
struct RankedTable {
    std::vector<EventScoreRow> rows;
    std::vector<int> ranks;
};

// x -> (x - min)/(max - min); a degenerate column (max == min, including
// singletons) maps everything to 0.5. Throws CorpusError("empty_column").
std::vector<double> minmax_normalize(const std::vector<SignedScore>& column);

// w_p*n_p + w_r*n_r + w_c*n_c, clamped to [0,1] against rounding dust.
double aggregate_event_score(double n_p, double n_r, double n_c, const WeightConfig& weights);

// Normalizes the three feature columns independently across the corpus,
// then aggregates per row. Output order equals input order. Throws
// CorpusError("empty_corpus").
std::vector<EventScoreRow> score_corpus(const FeatureMatrix& matrix, const WeightConfig& weights);

RankedTable rank_events(std::vector<EventScoreRow> rows);

// Debug serialization of the raw matrix:
// activity_name,p_raw,r_raw,c_raw with 6-decimal values.
std::string feature_matrix_csv(const FeatureMatrix& matrix);

}  // namespace eventscore

#endif  // EVENTSCORE_SCORING_HPP
