#ifndef EVENTSCORE_PIPELINE_HPP
#define EVENTSCORE_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "eventscore/corpus.hpp"
#include "eventscore/engine.hpp"
#include "eventscore/report.hpp"
#include "eventscore/scoring.hpp"

namespace eventscore {

enum class BackendChoice { Lexicon, Adapter };

struct RunConfig {
    std::string input_path;
    CorpusFormat input_format = CorpusFormat::Csv;
    BackendChoice backend = BackendChoice::Lexicon;
    std::string adapter_command_or_url;  // required iff backend == Adapter
    WeightConfig weights;
    bool renormalize_weights = false;
    std::optional<std::string> cache_path;
    std::string output_path = "-";
    OutputFormat output_format = OutputFormat::Csv;
    bool percent_mode = false;
    double timeout_seconds = 30.0;
};

// Parses "w_p,w_r,w_c". Without renormalize the sum must be 1 (+-1e-9);
// with it, weights are divided by their sum. Throws ConfigError.
WeightConfig load_weights_config(std::string_view raw, bool renormalize = false);

// Scores every record's three features through the engine, in record
// order. Invalid records must have been rejected already.
FeatureMatrix build_feature_matrix(const CorpusManifest& manifest, SentimentEngine& engine);

// Exit codes: 0 success, 1 usage/config, 2 corpus validation, 3 backend
// failure (including adapter timeouts and protocol violations).
int exit_code_for(const std::exception& error);

// Command drivers behind the CLI. Each returns the process exit code and
// writes its report to config.output_path ("-" = stdout); diagnostics and
// the one-line run summary go to stderr.
int run_score_command(const RunConfig& config);
int run_validate_command(const RunConfig& config);
int run_rank_command(const RunConfig& config);

}  // namespace eventscore

#endif  // EVENTSCORE_PIPELINE_HPP
