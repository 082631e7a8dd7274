#include "eventscore/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eventscore/adapter.hpp"
#include "eventscore/errors.hpp"
#include "eventscore/lexicon.hpp"

namespace eventscore {

namespace {

std::string read_input_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream input(path, std::ios::binary);
    if (!input) throw ConfigError("cannot open input file: " + path);
    std::ostringstream buffer;
    buffer << input.rdbuf();
    if (input.bad()) throw ConfigError("I/O error reading input file: " + path);
    return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream output(path, std::ios::binary | std::ios::trunc);
    if (!output) throw ConfigError("cannot open output file: " + path);
    output << content;
    if (!output.good()) throw ConfigError("failed writing output file: " + path);
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& warning : warnings) std::cerr << "warning: " << warning << '\n';
}

struct BackendBundle {
    std::unique_ptr<Backend> owned;
    Backend* backend = nullptr;
};

BackendBundle make_backend(const RunConfig& config) {
    BackendBundle bundle;
    switch (config.backend) {
        case BackendChoice::Lexicon:
            bundle.owned = std::make_unique<LexiconBackend>(default_lexicon());
            break;
        case BackendChoice::Adapter: {
            if (config.adapter_command_or_url.empty()) {
                throw ConfigError("--adapter is required when backend is 'adapter'");
            }
            AdapterOptions options;
            options.timeout = std::chrono::milliseconds(
                static_cast<long long>(config.timeout_seconds * 1000.0));
            bundle.owned = AdapterBackend::connect(config.adapter_command_or_url, options);
            break;
        }
    }
    bundle.backend = bundle.owned.get();
    return bundle;
}

std::optional<std::string> resolve_cache_path(const RunConfig& config) {
    if (config.cache_path) return config.cache_path;
    if (const char* env = std::getenv("EVENTSCORE_CACHE"); env && *env) {
        return std::string(env);
    }
    return std::nullopt;
}

std::string weights_summary(const WeightConfig& weights) {
    std::ostringstream out;
    out << '(' << weights.w_p << ',' << weights.w_r << ',' << weights.w_c << ')';
    return out.str();
}

}  // namespace

WeightConfig load_weights_config(std::string_view raw, bool renormalize) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (true) {
        const auto comma = raw.find(',', pos);
        auto token = raw.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                     : comma - pos);
        while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
        while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
            throw ConfigError("weights: non-numeric token '" + std::string(token) + "'");
        }
        values.push_back(value);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (values.size() != 3) {
        throw ConfigError("weights: expected three comma-separated numbers, got " +
                          std::to_string(values.size()));
    }
    WeightConfig weights{values[0], values[1], values[2]};
    if (weights.w_p < 0.0 || weights.w_r < 0.0 || weights.w_c < 0.0) {
        throw ConfigError("weights: negative weight in '" + std::string(raw) + "'");
    }
    if (renormalize) {
        const double sum = weights.w_p + weights.w_r + weights.w_c;
        if (sum <= 0.0) throw ConfigError("weights_sum: cannot renormalize zero weights");
        weights.w_p /= sum;
        weights.w_r /= sum;
        weights.w_c /= sum;
    }
    weights.validate();
    return weights;
}

FeatureMatrix build_feature_matrix(const CorpusManifest& manifest, SentimentEngine& engine) {
    std::vector<std::string> texts;
    texts.reserve(manifest.records.size() * 3);
    for (const auto& record : manifest.records) {
        const FeatureText features = select_features(record);
        texts.push_back(features.p);
        texts.push_back(features.r);
        texts.push_back(features.c);
    }
    const auto scores = engine.score_texts(texts);

    FeatureMatrix matrix;
    matrix.rows.reserve(manifest.records.size());
    for (std::size_t i = 0; i < manifest.records.size(); ++i) {
        FeatureRow row;
        row.name = manifest.records[i].name;
        row.p_raw = scores[i * 3];
        row.r_raw = scores[i * 3 + 1];
        row.c_raw = scores[i * 3 + 2];
        matrix.rows.push_back(std::move(row));
    }
    return matrix;
}

int exit_code_for(const std::exception& error) {
    if (const auto* typed = dynamic_cast<const Error*>(&error)) {
        switch (typed->kind()) {
            case ErrorKind::Config: return 1;
            case ErrorKind::Corpus: return 2;
            case ErrorKind::Backend:
            case ErrorKind::Protocol: return 3;
        }
    }
    return 1;
}

int run_score_command(const RunConfig& config) {
    config.weights.validate();

    const std::string data = read_input_file(config.input_path);
    ParseResult parsed = parse_corpus(data, config.input_format, config.input_path);
    print_warnings(parsed.warnings);

    std::vector<std::size_t> invalid_rows;
    for (std::size_t i = 0; i < parsed.manifest.records.size(); ++i) {
        if (validate_record(parsed.manifest.records[i]).status == ValidationStatus::Invalid) {
            invalid_rows.push_back(i);
        }
    }
    if (!invalid_rows.empty()) {
        std::string rows;
        for (std::size_t i = 0; i < invalid_rows.size(); ++i) {
            if (i) rows += ", ";
            rows += std::to_string(invalid_rows[i]);
        }
        throw CorpusError("corpus validation failed for row(s): " + rows +
                          " (run the validate command for details)");
    }
    if (parsed.manifest.records.empty()) throw CorpusError("empty_corpus");

    BackendBundle backend = make_backend(config);

    std::optional<ResultCache> cache;
    if (const auto cache_path = resolve_cache_path(config)) cache.emplace(*cache_path);

    SentimentEngine engine(*backend.backend, cache ? &*cache : nullptr);
    const FeatureMatrix matrix = build_feature_matrix(parsed.manifest, engine);
    print_warnings(engine.warnings());

    const auto rows = score_corpus(matrix, config.weights);
    const RankedTable table = rank_events(rows);
    write_output(config.output_path, render_table(table, config.output_format,
                                                  config.percent_mode));

    std::cerr << "scored " << parsed.manifest.record_count << " records backend="
              << backend.backend->descriptor().id << " weights="
              << weights_summary(config.weights)
              << " backend_calls=" << engine.stats().backend_calls
              << " cache_hits=" << engine.stats().cache_hits << '\n';
    return 0;
}

int run_validate_command(const RunConfig& config) {
    const std::string data = read_input_file(config.input_path);
    ParseResult parsed = parse_corpus(data, config.input_format, config.input_path);
    print_warnings(parsed.warnings);

    std::vector<ValidationResult> results;
    results.reserve(parsed.manifest.records.size());
    bool any_invalid = false;
    for (const auto& record : parsed.manifest.records) {
        results.push_back(validate_record(record));
        any_invalid |= results.back().status == ValidationStatus::Invalid;
    }

    const std::string report = config.output_format == OutputFormat::Json
                                   ? validation_report_json(results)
                                   : validation_report_text(results);
    write_output(config.output_path, report);

    std::cerr << "validated " << parsed.manifest.record_count << " records, "
              << (any_invalid ? "some invalid" : "all valid") << '\n';
    return any_invalid ? 2 : 0;
}

int run_rank_command(const RunConfig& config) {
    const std::string data = read_input_file(config.input_path);
    auto rows = parse_scores_csv(data);
    if (rows.empty()) throw CorpusError("empty_corpus");
    const RankedTable table = rank_events(std::move(rows));
    write_output(config.output_path, render_table(table, config.output_format,
                                                  config.percent_mode));
    std::cerr << "ranked " << table.rows.size() << " rows\n";
    return 0;
}

}  // namespace eventscore
