#ifndef EVENTSCORE_CACHE_HPP
#define EVENTSCORE_CACHE_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eventscore/sentiment.hpp"

namespace eventscore {

std::string sha256_hex(std::string_view data);

// Content-addressed key over (backend id, backend version, text),
// length-framed so adjacent fields cannot collide.
std::string cache_key(const BackendDescriptor& backend, std::string_view text);

// Directory of one JSON entry per key. Corrupt entries read as misses and
// are overwritten on the next store; I/O failures degrade to uncached
// operation. Both conditions append a warning instead of throwing.
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path directory);

    std::optional<SentimentResult> lookup(const std::string& key,
                                          std::vector<std::string>* warnings = nullptr);
    void store(const std::string& key, const SentimentResult& result,
               std::vector<std::string>* warnings = nullptr);

    const std::filesystem::path& directory() const { return directory_; }

private:
    std::filesystem::path entry_path(const std::string& key) const;

    std::filesystem::path directory_;
};

// Transparent caching around analyze(): hits skip the backend, misses
// invoke it and store the result.
SentimentResult cached_analyze(ResultCache& cache, Backend& backend, std::string_view text,
                               std::vector<std::string>* warnings = nullptr);

}  // namespace eventscore

#endif  // EVENTSCORE_CACHE_HPP
