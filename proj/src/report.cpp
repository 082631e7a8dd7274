#include "eventscore/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "eventscore/csv.hpp"
#include "eventscore/errors.hpp"

namespace eventscore {

namespace {

constexpr std::string_view kScoresHeader =
    "rank,activity_name,problems_score,conclusion_score,recommendations_score,event_score";

std::string md_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (const char c : text) {
        if (c == '|') out += '\\';
        out += c;
    }
    return out;
}

double parse_score_cell(const std::string& cell, std::size_t row_index) {
    std::string_view view = cell;
    bool percent = false;
    if (!view.empty() && view.back() == '%') {
        percent = true;
        view.remove_suffix(1);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), value);
    if (ec != std::errc() || ptr != view.data() + view.size()) {
        throw CorpusError("scores row " + std::to_string(row_index) + ": bad score value '" +
                          cell + "'");
    }
    return percent ? value / 100.0 : value;
}

}  // namespace

std::string format_fraction(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::string format_percent(double value) {
    // Half-up at two decimals, in percent units.
    const auto cents = static_cast<long long>(std::floor(value * 10000.0 + 0.5));
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%lld.%02lld%%", cents / 100, cents % 100);
    return buf;
}

std::string render_table(const RankedTable& table, OutputFormat format, bool percent_mode) {
    const auto fmt = [&](double v) { return percent_mode ? format_percent(v) : format_fraction(v); };

    switch (format) {
        case OutputFormat::Csv: {
            std::ostringstream out;
            out << kScoresHeader << '\n';
            for (std::size_t i = 0; i < table.rows.size(); ++i) {
                const auto& row = table.rows[i];
                out << table.ranks[i] << ',' << csv_escape(row.name) << ',' << fmt(row.n_p)
                    << ',' << fmt(row.n_c) << ',' << fmt(row.n_r) << ',' << fmt(row.event_score)
                    << '\n';
            }
            return out.str();
        }
        case OutputFormat::Json: {
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < table.rows.size(); ++i) {
                const auto& row = table.rows[i];
                rows.push_back({
                    {"rank", table.ranks[i]},
                    {"activity_name", row.name},
                    {"problems_score", fmt(row.n_p)},
                    {"conclusion_score", fmt(row.n_c)},
                    {"recommendations_score", fmt(row.n_r)},
                    {"event_score", fmt(row.event_score)},
                });
            }
            return rows.dump(2) + "\n";
        }
        case OutputFormat::Md: {
            std::ostringstream out;
            out << "| rank | activity_name | problems_score | conclusion_score |"
                   " recommendations_score | event_score |\n";
            out << "| ---: | --- | ---: | ---: | ---: | ---: |\n";
            for (std::size_t i = 0; i < table.rows.size(); ++i) {
                const auto& row = table.rows[i];
                out << "| " << table.ranks[i] << " | " << md_escape(row.name) << " | "
                    << fmt(row.n_p) << " | " << fmt(row.n_c) << " | " << fmt(row.n_r) << " | "
                    << fmt(row.event_score) << " |\n";
            }
            return out.str();
        }
    }
    throw ConfigError("unknown output format");
}

std::vector<EventScoreRow> parse_scores_csv(std::string_view data) {
    const CsvTable table = parse_csv(data);
    std::vector<std::string> expected;
    {
        std::stringstream header{std::string(kScoresHeader)};
        std::string col;
        while (std::getline(header, col, ',')) expected.push_back(col);
    }
    if (table.header != expected) {
        throw CorpusError("scores CSV: unexpected header; expected '" +
                          std::string(kScoresHeader) + "'");
    }

    std::vector<EventScoreRow> rows;
    rows.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& cells = table.rows[i];
        if (cells.size() == 1 && cells[0].empty()) continue;
        if (cells.size() != expected.size()) {
            throw CorpusError("scores row " + std::to_string(i) + ": expected " +
                              std::to_string(expected.size()) + " fields");
        }
        EventScoreRow row;
        row.name = cells[1];
        row.n_p = parse_score_cell(cells[2], i);
        row.n_c = parse_score_cell(cells[3], i);
        row.n_r = parse_score_cell(cells[4], i);
        row.event_score = parse_score_cell(cells[5], i);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string validation_report_json(const std::vector<ValidationResult>& results) {
    nlohmann::ordered_json report = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        report.push_back({
            {"row_index", i},
            {"status", std::string(to_string(results[i].status))},
            {"reasons", results[i].reasons},
            {"flags", results[i].flags},
        });
    }
    return report.dump(2) + "\n";
}

std::string validation_report_text(const std::vector<ValidationResult>& results) {
    std::ostringstream out;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        out << "row " << i << ": " << to_string(r.status);
        if (!r.reasons.empty()) {
            out << " (";
            for (std::size_t k = 0; k < r.reasons.size(); ++k) {
                if (k) out << ", ";
                out << r.reasons[k];
            }
            out << ")";
        }
        if (!r.flags.empty()) {
            out << " [";
            for (std::size_t k = 0; k < r.flags.size(); ++k) {
                if (k) out << ", ";
                out << r.flags[k];
            }
            out << "]";
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace eventscore
