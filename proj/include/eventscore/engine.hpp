#ifndef EVENTSCORE_ENGINE_HPP
#define EVENTSCORE_ENGINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "eventscore/cache.hpp"
#include "eventscore/sentiment.hpp"

namespace eventscore {

struct EngineStats {
    std::uint64_t backend_calls = 0;  // actual backend invocations (cache misses)
    std::uint64_t cache_hits = 0;
    std::uint64_t texts_scored = 0;
};

// Drives one backend, optionally through a result cache, and keeps
// invocation counts for the run summary and for cache-transparency checks.
class SentimentEngine {
public:
    explicit SentimentEngine(Backend& backend, ResultCache* cache = nullptr);

    SentimentResult analyze_one(const std::string& text);

    // Chunk-and-pool with per-chunk caching.
    SignedScore score_text(const std::string& text);

    // Scores many texts; chunks that miss the cache go through the
    // backend's batch path so an adapter can pipeline them.
    std::vector<SignedScore> score_texts(const std::vector<std::string>& texts);

    Backend& backend() { return backend_; }
    const EngineStats& stats() const { return stats_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    Backend& backend_;
    ResultCache* cache_;
    EngineStats stats_;
    std::vector<std::string> warnings_;
};

}  // namespace eventscore

#endif  // EVENTSCORE_ENGINE_HPP
