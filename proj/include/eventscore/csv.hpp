#ifndef EVENTSCORE_CSV_HPP
#define EVENTSCORE_CSV_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eventscore {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Validates that `data` is well-formed UTF-8. Returns the byte offset of the
// first invalid sequence, or nullopt when the whole buffer decodes.
std::optional<std::size_t> find_invalid_utf8(std::string_view data);

// RFC-4180 reader: comma separated, double-quote quoting with "" escapes,
// LF or CRLF record ends, quoted fields may span lines. The first record is
// the header. Throws CorpusError on malformed quoting or invalid UTF-8.
CsvTable parse_csv(std::string_view data);

// Quotes `field` when it contains a comma, quote, or line break.
std::string csv_escape(std::string_view field);

}  // namespace eventscore

#endif  // EVENTSCORE_CSV_HPP
