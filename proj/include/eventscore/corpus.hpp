#ifndef EVENTSCORE_CORPUS_HPP
#define EVENTSCORE_CORPUS_HPP

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace eventscore {

// One post-activity report row. Text fields are stored exactly as they
// appear on the wire; date and duration keep their raw form so validation
// can report malformed cells instead of dropping the row at parse time.
struct ActivityRecord {
    std::string name;
    std::string date;           // MM/DD/YYYY
    std::string duration_text;  // positive integer in days, may be empty
    std::string school_year;
    std::string term;
    std::string problems;
    std::string recommendations;
    std::string conclusion;

    // Parsed duration; nullopt when the cell is empty or not a positive integer.
    std::optional<long> duration_days() const;
};

struct CorpusManifest {
    std::vector<ActivityRecord> records;
    std::string source_id;
    std::size_t record_count = 0;
};

enum class CorpusFormat { Csv, Jsonl };

struct ParseResult {
    CorpusManifest manifest;
    std::vector<std::string> warnings;
};

// The eight required wire columns, in canonical order.
const std::vector<std::string>& corpus_columns();

// Reads the consolidated corpus from `input`. CSV requires the exact
// lowercase header; JSONL expects one object per line with the same field
// names. Unknown extra columns are ignored with a warning. Throws
// CorpusError on invalid UTF-8 (with byte offset) or a missing column.
ParseResult parse_corpus(std::istream& input, CorpusFormat format,
                         const std::string& source_id = "");
ParseResult parse_corpus(std::string_view data, CorpusFormat format,
                         const std::string& source_id = "");

enum class ValidationStatus { Valid, ValidWithFlags, Invalid };

struct ValidationResult {
    ValidationStatus status = ValidationStatus::Valid;
    std::vector<std::string> reasons;  // every violated rule, e.g. "bad_date_format"
    std::vector<std::string> flags;    // e.g. "empty:P"
};

std::string_view to_string(ValidationStatus status);

// Pure rule check, never throws: name must be non-empty after trimming,
// date must be a real MM/DD/YYYY calendar date, duration (when present)
// a positive integer. Empty feature texts become flags, not errors.
ValidationResult validate_record(const ActivityRecord& record);

// Cleanup applied to every feature text before sentiment analysis:
// control characters stripped, whitespace runs collapsed to single spaces,
// ends trimmed, and leading/trailing ellipsis runs ("..." or U+2026)
// removed. Case and interior text are preserved. Idempotent.
std::string preprocess_text(std::string_view raw);

// The three sentiment-bearing texts of a record, preprocessed. Metadata
// (date, duration, school year, term) never reaches this struct.
struct FeatureText {
    std::string p;
    std::string r;
    std::string c;
    std::set<std::string> flags;
};

FeatureText select_features(const ActivityRecord& record);

}  // namespace eventscore

#endif  // EVENTSCORE_CORPUS_HPP
