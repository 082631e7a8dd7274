#ifndef EVENTSCORE_REPORT_HPP
#define EVENTSCORE_REPORT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "eventscore/corpus.hpp"
#include "eventscore/scoring.hpp"

namespace eventscore {

enum class OutputFormat { Csv, Json, Md };

// "0.500000" style, six decimals.
std::string format_fraction(double value);

// Two-decimal percentage, rounded half-up, trailing '%': 0.69986 -> "69.99%".
std::string format_percent(double value);

// Renders the ranked table. CSV header is exactly
// rank,activity_name,problems_score,conclusion_score,recommendations_score,event_score
// and the JSON and markdown forms mirror the same fields in rank order.
std::string render_table(const RankedTable& table, OutputFormat format, bool percent_mode);

// Reads a scores CSV produced by render_table (either value mode) back
// into rows, for re-ranking. Throws CorpusError on schema mismatch.
std::vector<EventScoreRow> parse_scores_csv(std::string_view data);

// Machine form of per-row validation results:
// [{"row_index": 0, "status": "valid", "reasons": [], "flags": []}, ...]
std::string validation_report_json(const std::vector<ValidationResult>& results);

// One line per row, e.g. "row 3: invalid (bad_date_format)".
std::string validation_report_text(const std::vector<ValidationResult>& results);

}  // namespace eventscore

#endif  // EVENTSCORE_REPORT_HPP
