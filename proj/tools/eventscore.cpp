#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "eventscore/errors.hpp"
#include "eventscore/pipeline.hpp"

namespace {

using eventscore::BackendChoice;
using eventscore::CorpusFormat;
using eventscore::OutputFormat;
using eventscore::RunConfig;

struct CliState {
    RunConfig config;
    std::string weights_raw = "0.2,0.4,0.4";
    std::string cache_dir;
};

void add_common_output_flags(CLI::App* cmd, CliState& state) {
    cmd->add_option("--output", state.config.output_path, "Output path, '-' for stdout");
    cmd->add_option("--output-format", state.config.output_format, "Report format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, OutputFormat>{{"csv", OutputFormat::Csv},
                                                {"json", OutputFormat::Json},
                                                {"md", OutputFormat::Md}},
            CLI::ignore_case));
    cmd->add_flag("--percent", state.config.percent_mode,
                  "Two-decimal percentages instead of 6-decimal fractions");
}

void add_corpus_flags(CLI::App* cmd, CliState& state) {
    cmd->add_option("--input", state.config.input_path, "Corpus file, '-' for stdin")
        ->required();
    cmd->add_option("--format", state.config.input_format, "Corpus format")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, CorpusFormat>{{"csv", CorpusFormat::Csv},
                                                {"jsonl", CorpusFormat::Jsonl}},
            CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Event Score pipeline: sentiment-scores post-activity reports and ranks events"};
    app.require_subcommand(1);

    CliState state;

    CLI::App* score = app.add_subcommand("score", "Score a corpus and write the ranked table");
    add_corpus_flags(score, state);
    score->add_option("--backend", state.config.backend, "Sentiment backend")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, BackendChoice>{{"lexicon", BackendChoice::Lexicon},
                                                 {"adapter", BackendChoice::Adapter}},
            CLI::ignore_case));
    score->add_option("--adapter", state.config.adapter_command_or_url,
                      "Adapter command line or http(s) URL");
    score->add_option("--weights", state.weights_raw, "Feature weights 'w_p,w_r,w_c'");
    score->add_flag("--renormalize-weights", state.config.renormalize_weights,
                    "Divide weights by their sum instead of requiring sum == 1");
    score->add_option("--cache", state.cache_dir,
                      "Result cache directory (default: $EVENTSCORE_CACHE)");
    score->add_option("--timeout", state.config.timeout_seconds, "Adapter timeout in seconds")
        ->check(CLI::PositiveNumber);
    add_common_output_flags(score, state);

    CLI::App* validate = app.add_subcommand("validate", "Check every record against the schema");
    add_corpus_flags(validate, state);
    add_common_output_flags(validate, state);

    CLI::App* rank = app.add_subcommand("rank", "Re-sort an existing scores CSV");
    rank->add_option("--input", state.config.input_path, "Scores CSV, '-' for stdin")
        ->required();
    add_common_output_flags(rank, state);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (!state.cache_dir.empty()) state.config.cache_path = state.cache_dir;
        if (score->parsed()) {
            state.config.weights = eventscore::load_weights_config(
                state.weights_raw, state.config.renormalize_weights);
            return eventscore::run_score_command(state.config);
        }
        if (validate->parsed()) return eventscore::run_validate_command(state.config);
        return eventscore::run_rank_command(state.config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return eventscore::exit_code_for(e);
    }
}
