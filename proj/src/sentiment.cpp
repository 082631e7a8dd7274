#include "eventscore/sentiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "eventscore/errors.hpp"

namespace eventscore {

std::string_view to_string(SentimentLabel label) {
    switch (label) {
        case SentimentLabel::Pos: return "POS";
        case SentimentLabel::Neg: return "NEG";
        case SentimentLabel::Neu: return "NEU";
    }
    return "NEU";
}

SentimentLabel label_from_string(std::string_view text) {
    if (text == "POS") return SentimentLabel::Pos;
    if (text == "NEG") return SentimentLabel::Neg;
    if (text == "NEU") return SentimentLabel::Neu;
    throw ProtocolError("unknown sentiment label: '" + std::string(text) + "'");
}

std::vector<SentimentResult> Backend::analyze_batch(const std::vector<std::string>& texts) {
    std::vector<SentimentResult> results;
    results.reserve(texts.size());
    for (const auto& text : texts) results.push_back(analyze_text(text));
    return results;
}

SentimentResult analyze(Backend& backend, std::string_view text) {
    if (text.empty()) return {SentimentLabel::Neu, 1.0};
    return backend.analyze_text(text);
}

SignedScore to_signed(const SentimentResult& result) {
    switch (result.label) {
        case SentimentLabel::Pos: return {result.intensity};
        case SentimentLabel::Neg: return {-result.intensity};
        case SentimentLabel::Neu: return {0.0};
    }
    return {0.0};
}

std::vector<std::string> chunk_text(std::string_view text, int max_tokens) {
    std::vector<std::string> chunks;
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) tokens.push_back(text.substr(start, i - start));
    }
    const auto stride = static_cast<std::size_t>(max_tokens < 1 ? 1 : max_tokens);
    for (std::size_t begin = 0; begin < tokens.size(); begin += stride) {
        std::string chunk;
        const std::size_t end = std::min(begin + stride, tokens.size());
        for (std::size_t t = begin; t < end; ++t) {
            if (t > begin) chunk += ' ';
            chunk += tokens[t];
        }
        chunks.push_back(std::move(chunk));
    }
    return chunks;
}

SignedScore chunk_and_pool(Backend& backend, std::string_view text) {
    const auto chunks = chunk_text(text, backend.descriptor().max_chunk_tokens);
    if (chunks.empty()) return {0.0};
    if (chunks.size() == 1) return to_signed(analyze(backend, text));

    double weighted_sum = 0.0;
    double total_tokens = 0.0;
    for (const auto& chunk : chunks) {
        const auto token_count =
            static_cast<double>(std::count(chunk.begin(), chunk.end(), ' ') + 1);
        weighted_sum += to_signed(analyze(backend, chunk)).value * token_count;
        total_tokens += token_count;
    }
    return {weighted_sum / total_tokens};
}

}  // namespace eventscore
