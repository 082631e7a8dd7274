#ifndef EVENTSCORE_SENTIMENT_HPP
#define EVENTSCORE_SENTIMENT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace eventscore {

enum class SentimentLabel { Pos, Neg, Neu };

std::string_view to_string(SentimentLabel label);

// Throws ProtocolError on anything other than "POS", "NEG", "NEU".
SentimentLabel label_from_string(std::string_view text);

// Polarity plus intensity in [0,1].
struct SentimentResult {
    SentimentLabel label = SentimentLabel::Neu;
    double intensity = 0.0;

    bool operator==(const SentimentResult&) const = default;
};

// Polarity-signed intensity in [-1,+1]; 0 for neutral.
struct SignedScore {
    double value = 0.0;

    bool operator==(const SignedScore&) const = default;
};

struct BackendDescriptor {
    std::string id;       // "lexicon" or "adapter"
    std::string version;  // participates in cache keys
    int max_chunk_tokens = 120;
    int parallelism = 1;  // max in-flight analyses the backend supports
};

class Backend {
public:
    virtual ~Backend() = default;

    virtual const BackendDescriptor& descriptor() const = 0;

    // Maps non-empty preprocessed text to a sentiment. May throw
    // BackendError or ProtocolError.
    virtual SentimentResult analyze_text(std::string_view text) = 0;

    // Analyzes many texts; the default runs them sequentially. Overrides
    // must never exceed descriptor().parallelism in-flight requests.
    virtual std::vector<SentimentResult> analyze_batch(const std::vector<std::string>& texts);
};

// Backend dispatch with the empty-text rule: "" never reaches the backend
// and comes back as (NEU, 1.0).
SentimentResult analyze(Backend& backend, std::string_view text);

// POS -> +intensity, NEG -> -intensity, NEU -> 0.
SignedScore to_signed(const SentimentResult& result);

// Consecutive chunks of at most `max_tokens` whitespace-delimited tokens,
// re-joined with single spaces.
std::vector<std::string> chunk_text(std::string_view text, int max_tokens);

// Splits long text into chunks, analyzes each, and pools the signed chunk
// scores by token-count-weighted mean. Text that fits in one chunk is
// exactly analyze + to_signed; zero tokens pool to 0.
SignedScore chunk_and_pool(Backend& backend, std::string_view text);

}  // namespace eventscore

#endif  // EVENTSCORE_SENTIMENT_HPP
