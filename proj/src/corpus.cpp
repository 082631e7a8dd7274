#include "eventscore/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "eventscore/csv.hpp"
#include "eventscore/errors.hpp"

namespace eventscore {

namespace {

constexpr std::string_view kEllipsisUtf8 = "\xE2\x80\xA6";  // U+2026

bool is_ws(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_ws(s[b])) ++b;
    while (e > b && is_ws(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

// Drops one boundary ellipsis run; returns true when something changed.
bool strip_edge_ellipses(std::string& s) {
    bool changed = false;
    // Leading.
    while (!s.empty()) {
        if (s.rfind(kEllipsisUtf8, 0) == 0) {
            s.erase(0, kEllipsisUtf8.size());
            changed = true;
            continue;
        }
        std::size_t dots = 0;
        while (dots < s.size() && s[dots] == '.') ++dots;
        if (dots >= 3) {
            s.erase(0, dots);
            changed = true;
            continue;
        }
        break;
    }
    // Trailing.
    while (!s.empty()) {
        if (s.size() >= kEllipsisUtf8.size() &&
            s.compare(s.size() - kEllipsisUtf8.size(), kEllipsisUtf8.size(), kEllipsisUtf8) == 0) {
            s.erase(s.size() - kEllipsisUtf8.size());
            changed = true;
            continue;
        }
        std::size_t dots = 0;
        while (dots < s.size() && s[s.size() - 1 - dots] == '.') ++dots;
        if (dots >= 3) {
            s.erase(s.size() - dots);
            changed = true;
            continue;
        }
        break;
    }
    return changed;
}

std::optional<long> parse_positive_long(std::string_view text) {
    long value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || value < 1) return std::nullopt;
    return value;
}

bool is_two_digits(std::string_view s) {
    return s.size() == 2 && std::isdigit(static_cast<unsigned char>(s[0])) &&
           std::isdigit(static_cast<unsigned char>(s[1]));
}

// Strict MM/DD/YYYY with a real calendar day.
bool is_valid_wire_date(std::string_view date) {
    if (date.size() != 10 || date[2] != '/' || date[5] != '/') return false;
    const auto mm = date.substr(0, 2);
    const auto dd = date.substr(3, 2);
    const auto yyyy = date.substr(6, 4);
    if (!is_two_digits(mm) || !is_two_digits(dd)) return false;
    for (const char c : yyyy) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    const int month = (mm[0] - '0') * 10 + (mm[1] - '0');
    const int day = (dd[0] - '0') * 10 + (dd[1] - '0');
    int year = 0;
    for (const char c : yyyy) year = year * 10 + (c - '0');
    if (year < 1 || month < 1 || month > 12 || day < 1) return false;
    static constexpr int days_in_month[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int max_day = days_in_month[month - 1];
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    if (month == 2 && leap) max_day = 29;
    return day <= max_day;
}

ActivityRecord record_from_fields(
    const std::unordered_map<std::string, std::string>& fields) {
    ActivityRecord r;
    auto get = [&](const char* key) {
        auto it = fields.find(key);
        return it == fields.end() ? std::string() : it->second;
    };
    r.name = get("activity_name");
    r.date = get("date");
    r.duration_text = get("duration_days");
    r.school_year = get("school_year");
    r.term = get("term");
    r.problems = get("problems_encountered");
    r.recommendations = get("recommendations");
    r.conclusion = get("conclusion");
    return r;
}

ParseResult parse_corpus_csv(std::string_view data, const std::string& source_id) {
    ParseResult result;
    result.manifest.source_id = source_id;

    const CsvTable table = parse_csv(data);
    if (table.header.empty()) throw CorpusError("schema error: missing header row");

    std::unordered_map<std::string, std::size_t> column_index;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        column_index.emplace(table.header[i], i);
    }
    for (const auto& required : corpus_columns()) {
        if (!column_index.count(required)) {
            throw CorpusError("schema error: missing required column '" + required + "'");
        }
    }
    for (const auto& name : table.header) {
        const auto& known = corpus_columns();
        if (std::find(known.begin(), known.end(), name) == known.end()) {
            result.warnings.push_back("ignoring unknown column '" + name + "'");
        }
    }

    for (std::size_t row_i = 0; row_i < table.rows.size(); ++row_i) {
        const auto& row = table.rows[row_i];
        if (row.size() == 1 && row[0].empty()) continue;  // blank line
        if (row.size() != table.header.size()) {
            result.warnings.push_back("row " + std::to_string(row_i) + " has " +
                                      std::to_string(row.size()) + " fields, expected " +
                                      std::to_string(table.header.size()));
        }
        std::unordered_map<std::string, std::string> fields;
        for (std::size_t c = 0; c < table.header.size(); ++c) {
            fields[table.header[c]] = c < row.size() ? row[c] : std::string();
        }
        result.manifest.records.push_back(record_from_fields(fields));
    }
    return result;
}

ParseResult parse_corpus_jsonl(std::string_view data, const std::string& source_id) {
    if (auto offset = find_invalid_utf8(data)) {
        throw CorpusError("encoding error: invalid UTF-8 at byte offset " +
                          std::to_string(*offset));
    }
    ParseResult result;
    result.manifest.source_id = source_id;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= data.size()) {
        const std::size_t nl = data.find('\n', pos);
        std::string_view line =
            data.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? data.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) continue;

        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw CorpusError("line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
        }
        if (!obj.is_object()) {
            throw CorpusError("line " + std::to_string(line_no) + ": expected a JSON object");
        }

        std::unordered_map<std::string, std::string> fields;
        for (const auto& required : corpus_columns()) {
            if (!obj.contains(required)) {
                throw CorpusError("schema error: line " + std::to_string(line_no) +
                                  " missing required column '" + required + "'");
            }
            const auto& v = obj.at(required);
            if (v.is_string()) {
                fields[required] = v.get<std::string>();
            } else if (v.is_number_integer()) {
                fields[required] = std::to_string(v.get<long long>());
            } else if (v.is_null()) {
                fields[required] = "";
            } else {
                fields[required] = v.dump();
            }
        }
        for (const auto& [key, value] : obj.items()) {
            (void)value;
            const auto& known = corpus_columns();
            if (std::find(known.begin(), known.end(), key) == known.end()) {
                result.warnings.push_back("line " + std::to_string(line_no) +
                                          ": ignoring unknown field '" + key + "'");
            }
        }
        result.manifest.records.push_back(record_from_fields(fields));
    }
    return result;
}

}  // namespace

std::optional<long> ActivityRecord::duration_days() const {
    return parse_positive_long(trim(duration_text));
}

const std::vector<std::string>& corpus_columns() {
    static const std::vector<std::string> columns = {
        "activity_name", "date",     "duration_days",        "school_year",
        "term",          "problems_encountered", "recommendations", "conclusion",
    };
    return columns;
}

ParseResult parse_corpus(std::string_view data, CorpusFormat format,
                         const std::string& source_id) {
    ParseResult result = format == CorpusFormat::Csv ? parse_corpus_csv(data, source_id)
                                                     : parse_corpus_jsonl(data, source_id);
    result.manifest.record_count = result.manifest.records.size();
    if (result.manifest.records.empty()) {
        result.warnings.push_back("empty corpus: no data rows in " +
                                  (source_id.empty() ? std::string("input") : source_id));
    }
    return result;
}

ParseResult parse_corpus(std::istream& input, CorpusFormat format,
                         const std::string& source_id) {
    std::ostringstream buffer;
    buffer << input.rdbuf();
    if (input.bad()) throw CorpusError("I/O error while reading " + source_id);
    const std::string data = buffer.str();
    return parse_corpus(std::string_view(data), format, source_id);
}

std::string_view to_string(ValidationStatus status) {
    switch (status) {
        case ValidationStatus::Valid: return "valid";
        case ValidationStatus::ValidWithFlags: return "valid_with_flags";
        case ValidationStatus::Invalid: return "invalid";
    }
    return "invalid";
}

ValidationResult validate_record(const ActivityRecord& record) {
    ValidationResult result;
    if (trim(record.name).empty()) result.reasons.push_back("empty_name");
    if (!is_valid_wire_date(trim(record.date))) result.reasons.push_back("bad_date_format");
    const std::string duration = trim(record.duration_text);
    if (!duration.empty() && !parse_positive_long(duration)) {
        result.reasons.push_back("bad_duration");
    }

    if (preprocess_text(record.problems).empty()) result.flags.push_back("empty:P");
    if (preprocess_text(record.recommendations).empty()) result.flags.push_back("empty:R");
    if (preprocess_text(record.conclusion).empty()) result.flags.push_back("empty:C");

    if (!result.reasons.empty()) {
        result.status = ValidationStatus::Invalid;
    } else if (!result.flags.empty()) {
        result.status = ValidationStatus::ValidWithFlags;
    } else {
        result.status = ValidationStatus::Valid;
    }
    return result;
}

std::string preprocess_text(std::string_view raw) {
    // Control characters go away, whitespace runs collapse to one space.
    std::string cleaned;
    cleaned.reserve(raw.size());
    bool pending_space = false;
    for (const char c : raw) {
        const auto uc = static_cast<unsigned char>(c);
        if (is_ws(c)) {
            pending_space = !cleaned.empty();
            continue;
        }
        if (uc < 0x20 || uc == 0x7F) continue;
        if (pending_space) {
            cleaned += ' ';
            pending_space = false;
        }
        cleaned += c;
    }

    // Boundary ellipsis runs may expose new whitespace or further runs.
    while (strip_edge_ellipses(cleaned)) {
        cleaned = trim(cleaned);
    }
    return cleaned;
}

FeatureText select_features(const ActivityRecord& record) {
    FeatureText features;
    features.p = preprocess_text(record.problems);
    features.r = preprocess_text(record.recommendations);
    features.c = preprocess_text(record.conclusion);
    if (features.p.empty()) features.flags.insert("empty:P");
    if (features.r.empty()) features.flags.insert("empty:R");
    if (features.c.empty()) features.flags.insert("empty:C");
    return features;
}

}  // namespace eventscore
