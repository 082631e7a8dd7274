#ifndef EVENTSCORE_LEXICON_HPP
#define EVENTSCORE_LEXICON_HPP

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "eventscore/sentiment.hpp"

namespace eventscore {

// Deterministic valence lexicon. Tokens are lowercase, non-empty and
// contain no whitespace; valences live in [-1,+1].
struct Lexicon {
    std::map<std::string, double> entries;
    std::set<std::string> negators;
    int negation_window = 3;
};

// The 13-entry / 5-negator lexicon the pipeline ships with. Small enough
// that every test value can be checked by hand.
const Lexicon& default_lexicon();

// TSV loader: lines of `token<TAB>valence`, `#` comments. Two optional
// directives configure negation:
//   # negators: not no never without cannot
//   # negation_window: 3
// Throws ConfigError on malformed lines or out-of-range valences.
Lexicon load_lexicon_tsv(std::istream& input);
Lexicon load_lexicon_file(const std::string& path);

// Rule-based analysis:
//   1. lowercase, split on maximal runs of non-alphanumeric characters;
//   2. a negator flips the sign of the next `negation_window`
//      lexicon-matched tokens (overlapping negators compose);
//   3. no matches -> (NEU, 1.0); otherwise m = mean of signed valences;
//   4. label POS if m > 0.05, NEG if m < -0.05, else NEU;
//   5. intensity = min(1,|m|) for POS/NEG, 1 - min(1,|m|) for NEU.
SentimentResult lexicon_analyze(const Lexicon& lexicon, std::string_view text);

// Lowercased alphanumeric tokens of `text`, in order.
std::vector<std::string> lexicon_tokenize(std::string_view text);

class LexiconBackend : public Backend {
public:
    explicit LexiconBackend(Lexicon lexicon);

    const BackendDescriptor& descriptor() const override { return descriptor_; }
    SentimentResult analyze_text(std::string_view text) override;

    const Lexicon& lexicon() const { return lexicon_; }

private:
    Lexicon lexicon_;
    BackendDescriptor descriptor_;
};

}  // namespace eventscore

#endif  // EVENTSCORE_LEXICON_HPP
