#include "eventscore/engine.hpp"

#include <algorithm>
#include <optional>

namespace eventscore {

SentimentEngine::SentimentEngine(Backend& backend, ResultCache* cache)
    : backend_(backend), cache_(cache) {}

SentimentResult SentimentEngine::analyze_one(const std::string& text) {
    if (text.empty()) return {SentimentLabel::Neu, 1.0};

    std::string key;
    if (cache_) {
        key = cache_key(backend_.descriptor(), text);
        if (auto hit = cache_->lookup(key, &warnings_)) {
            ++stats_.cache_hits;
            return *hit;
        }
    }
    ++stats_.backend_calls;
    const SentimentResult result = backend_.analyze_text(text);
    if (cache_) cache_->store(key, result, &warnings_);
    return result;
}

SignedScore SentimentEngine::score_text(const std::string& text) {
    return score_texts({text}).front();
}

std::vector<SignedScore> SentimentEngine::score_texts(const std::vector<std::string>& texts) {
    // Flatten every text into chunks, resolve what the cache already has,
    // then push the remaining chunks through the backend's batch path so an
    // adapter can pipeline them.
    struct ChunkRef {
        std::size_t text_index;
        double token_count;
        std::string chunk;
        std::string key;
        std::optional<SentimentResult> result;
    };
    std::vector<ChunkRef> chunks;
    std::vector<std::size_t> chunks_of_text(texts.size(), 0);

    const int max_tokens = backend_.descriptor().max_chunk_tokens;
    for (std::size_t t = 0; t < texts.size(); ++t) {
        for (auto& piece : chunk_text(texts[t], max_tokens)) {
            const auto tokens =
                static_cast<double>(std::count(piece.begin(), piece.end(), ' ') + 1);
            chunks.push_back(ChunkRef{t, tokens, std::move(piece), {}, std::nullopt});
            ++chunks_of_text[t];
        }
    }

    std::vector<std::string> pending;
    std::vector<std::size_t> pending_index;
    for (std::size_t i = 0; i < chunks.size(); ++i) {
        auto& ref = chunks[i];
        if (cache_) {
            ref.key = cache_key(backend_.descriptor(), ref.chunk);
            if (auto hit = cache_->lookup(ref.key, &warnings_)) {
                ++stats_.cache_hits;
                ref.result = *hit;
                continue;
            }
        }
        pending.push_back(ref.chunk);
        pending_index.push_back(i);
    }

    if (!pending.empty()) {
        const auto results = backend_.analyze_batch(pending);
        stats_.backend_calls += pending.size();
        for (std::size_t p = 0; p < pending.size(); ++p) {
            auto& ref = chunks[pending_index[p]];
            ref.result = results[p];
            if (cache_) cache_->store(ref.key, results[p], &warnings_);
        }
    }

    // Token-count-weighted pooling per text; textless inputs score 0 and a
    // lone chunk keeps its exact signed value.
    std::vector<SignedScore> scores(texts.size());
    std::vector<double> weighted_sum(texts.size(), 0.0);
    std::vector<double> token_total(texts.size(), 0.0);
    for (const auto& ref : chunks) {
        const SignedScore signed_score = to_signed(*ref.result);
        if (chunks_of_text[ref.text_index] == 1) {
            scores[ref.text_index] = signed_score;
        } else {
            weighted_sum[ref.text_index] += signed_score.value * ref.token_count;
            token_total[ref.text_index] += ref.token_count;
        }
    }
    for (std::size_t t = 0; t < texts.size(); ++t) {
        ++stats_.texts_scored;
        if (chunks_of_text[t] > 1) scores[t] = {weighted_sum[t] / token_total[t]};
    }
    return scores;
}

}  // namespace eventscore
