#include "eventscore/lexicon.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "eventscore/cache.hpp"
#include "eventscore/errors.hpp"

namespace eventscore {

namespace {

bool is_token_char(char c) {
    const auto uc = static_cast<unsigned char>(c);
    return std::isalnum(uc) != 0;
}

double parse_valence(std::string_view text, std::size_t line_no) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value) ||
        value < -1.0 || value > 1.0) {
        throw ConfigError("lexicon line " + std::to_string(line_no) +
                          ": valence must be a number in [-1,1]");
    }
    return value;
}

void check_token(const std::string& token, std::size_t line_no) {
    if (token.empty()) {
        throw ConfigError("lexicon line " + std::to_string(line_no) + ": empty token");
    }
    for (const char c : token) {
        const auto uc = static_cast<unsigned char>(c);
        if (std::isspace(uc) || std::isupper(uc)) {
            throw ConfigError("lexicon line " + std::to_string(line_no) +
                              ": tokens must be lowercase without whitespace");
        }
    }
}

// Distinguishes the configuration directives from plain comments.
void apply_directive(Lexicon& lexicon, std::string_view comment, std::size_t line_no) {
    const auto colon = comment.find(':');
    if (colon == std::string_view::npos) return;
    std::string key;
    for (const char c : comment.substr(0, colon)) {
        if (!std::isspace(static_cast<unsigned char>(c))) key += c;
    }
    std::istringstream rest{std::string(comment.substr(colon + 1))};
    if (key == "negators") {
        std::string word;
        while (rest >> word) {
            check_token(word, line_no);
            lexicon.negators.insert(word);
        }
    } else if (key == "negation_window") {
        int window = 0;
        if (!(rest >> window) || window < 1) {
            throw ConfigError("lexicon line " + std::to_string(line_no) +
                              ": negation_window must be a positive integer");
        }
        lexicon.negation_window = window;
    }
}

}  // namespace

const Lexicon& default_lexicon() {
    static const Lexicon lexicon = [] {
        Lexicon lex;
        lex.entries = {
            {"success", 0.8},  {"great", 0.9},    {"good", 0.6},   {"excellent", 1.0},
            {"smooth", 0.5},   {"engaging", 0.7}, {"delay", -0.4}, {"conflict", -0.5},
            {"problem", -0.6}, {"failure", -0.9}, {"cancelled", -0.8},
            {"issue", -0.5},   {"lack", -0.5},
        };
        lex.negators = {"not", "no", "never", "without", "cannot"};
        lex.negation_window = 3;
        return lex;
    }();
    return lexicon;
}

Lexicon load_lexicon_tsv(std::istream& input) {
    Lexicon lexicon;
    lexicon.negation_window = 3;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            apply_directive(lexicon, std::string_view(line).substr(1), line_no);
            continue;
        }
        const auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ConfigError("lexicon line " + std::to_string(line_no) +
                              ": expected token<TAB>valence");
        }
        std::string token = line.substr(0, tab);
        check_token(token, line_no);
        const double valence = parse_valence(std::string_view(line).substr(tab + 1), line_no);
        lexicon.entries[std::move(token)] = valence;
    }
    if (lexicon.entries.empty()) throw ConfigError("lexicon file has no entries");
    return lexicon;
}

Lexicon load_lexicon_file(const std::string& path) {
    std::ifstream input(path, std::ios::binary);
    if (!input) throw ConfigError("cannot open lexicon file: " + path);
    return load_lexicon_tsv(input);
}

std::vector<std::string> lexicon_tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (const char c : text) {
        if (is_token_char(c)) {
            current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

SentimentResult lexicon_analyze(const Lexicon& lexicon, std::string_view text) {
    std::vector<int> windows;  // remaining matched-token budget per active negator
    double sum = 0.0;
    std::size_t matched = 0;

    for (const auto& token : lexicon_tokenize(text)) {
        if (lexicon.negators.count(token)) {
            windows.push_back(lexicon.negation_window);
            continue;
        }
        const auto entry = lexicon.entries.find(token);
        if (entry == lexicon.entries.end()) continue;

        double valence = entry->second;
        if (windows.size() % 2 == 1) valence = -valence;
        for (auto& remaining : windows) --remaining;
        std::erase(windows, 0);

        sum += valence;
        ++matched;
    }

    if (matched == 0) return {SentimentLabel::Neu, 1.0};
    const double mean = sum / static_cast<double>(matched);
    SentimentResult result;
    if (mean > 0.05) {
        result.label = SentimentLabel::Pos;
        result.intensity = std::min(1.0, std::fabs(mean));
    } else if (mean < -0.05) {
        result.label = SentimentLabel::Neg;
        result.intensity = std::min(1.0, std::fabs(mean));
    } else {
        result.label = SentimentLabel::Neu;
        result.intensity = 1.0 - std::min(1.0, std::fabs(mean));
    }
    return result;
}

LexiconBackend::LexiconBackend(Lexicon lexicon) : lexicon_(std::move(lexicon)) {
    // Version fingerprints the lexicon content so cache keys change with it.
    std::ostringstream canonical;
    for (const auto& [token, valence] : lexicon_.entries) {
        canonical << token << '=' << valence << ';';
    }
    for (const auto& negator : lexicon_.negators) canonical << '!' << negator << ';';
    canonical << "w=" << lexicon_.negation_window;
    descriptor_.id = "lexicon";
    descriptor_.version = sha256_hex(canonical.str()).substr(0, 12);
    descriptor_.max_chunk_tokens = 120;
    descriptor_.parallelism = 1;
}

SentimentResult LexiconBackend::analyze_text(std::string_view text) {
    return lexicon_analyze(lexicon_, text);
}

}  // namespace eventscore
