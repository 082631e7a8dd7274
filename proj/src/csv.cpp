#include "eventscore/csv.hpp"

#include <cstddef>

#include "eventscore/errors.hpp"

namespace eventscore {

std::optional<std::size_t> find_invalid_utf8(std::string_view data) {
    std::size_t i = 0;
    const std::size_t n = data.size();
    while (i < n) {
        const auto b0 = static_cast<unsigned char>(data[i]);
        std::size_t len;
        unsigned char lo = 0x80, hi = 0xBF;
        if (b0 < 0x80) {
            i += 1;
            continue;
        } else if (b0 >= 0xC2 && b0 <= 0xDF) {
            len = 2;
        } else if (b0 == 0xE0) {
            len = 3;
            lo = 0xA0;
        } else if (b0 >= 0xE1 && b0 <= 0xEC) {
            len = 3;
        } else if (b0 == 0xED) {
            len = 3;
            hi = 0x9F;  // exclude surrogates
        } else if (b0 >= 0xEE && b0 <= 0xEF) {
            len = 3;
        } else if (b0 == 0xF0) {
            len = 4;
            lo = 0x90;
        } else if (b0 >= 0xF1 && b0 <= 0xF3) {
            len = 4;
        } else if (b0 == 0xF4) {
            len = 4;
            hi = 0x8F;
        } else {
            return i;
        }
        if (i + len > n) return i;
        for (std::size_t k = 1; k < len; ++k) {
            const auto b = static_cast<unsigned char>(data[i + k]);
            const unsigned char klo = (k == 1) ? lo : 0x80;
            const unsigned char khi = (k == 1) ? hi : 0xBF;
            if (b < klo || b > khi) return i;
        }
        i += len;
    }
    return std::nullopt;
}

CsvTable parse_csv(std::string_view data) {
    if (auto offset = find_invalid_utf8(data)) {
        throw CorpusError("encoding error: invalid UTF-8 at byte offset " +
                          std::to_string(*offset));
    }
    // Strip a UTF-8 BOM if present.
    if (data.size() >= 3 && data.substr(0, 3) == "\xEF\xBB\xBF") data.remove_prefix(3);

    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool record_has_data = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
        record_has_data = true;
    };
    auto end_record = [&] {
        end_field();
        if (table.header.empty()) {
            table.header = std::move(record);
        } else {
            table.rows.push_back(std::move(record));
        }
        record.clear();
        record_has_data = false;
    };

    std::size_t i = 0;
    const std::size_t n = data.size();
    while (i < n) {
        const char c = data[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < n && data[i + 1] == '"') {
                    field += '"';
                    i += 2;
                } else {
                    in_quotes = false;
                    ++i;
                }
            } else {
                field += c;
                ++i;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty() || field_was_quoted) {
                    throw CorpusError("malformed CSV: stray quote at byte offset " +
                                      std::to_string(i));
                }
                in_quotes = true;
                field_was_quoted = true;
                ++i;
                break;
            case ',':
                end_field();
                ++i;
                break;
            case '\r':
                if (i + 1 < n && data[i + 1] == '\n') ++i;
                end_record();
                ++i;
                break;
            case '\n':
                end_record();
                ++i;
                break;
            default:
                field += c;
                ++i;
        }
    }
    if (in_quotes) throw CorpusError("malformed CSV: unterminated quoted field");
    if (record_has_data || !field.empty() || !record.empty()) end_record();
    return table;
}

std::string csv_escape(std::string_view field) {
    const bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out += '"';
    for (const char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace eventscore
