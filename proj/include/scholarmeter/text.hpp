#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace scholarmeter::text {

std::string to_lower_ascii(std::string_view s);
std::string trim(std::string_view s);

/// Trims and collapses every run of whitespace to a single space.
std::string collapse_whitespace(std::string_view s);

/// Decodes UTF-8, folds Latin-1/Latin Extended-A letters to their ASCII base
/// and drops combining marks. Invalid bytes pass through unchanged.
std::string strip_diacritics(std::string_view s);

/// Canonical "last, f." form used for every author comparison.
/// "Keller, Anna M." , "Anna Keller" and "KELLER, A." all map to "keller, a.".
std::string normalize_author(std::string_view name);

/// Lowercase, diacritic-free, punctuation folded to spaces, whitespace collapsed.
std::string normalize_title(std::string_view title);

/// Case-insensitive key with collapsed whitespace; '_' counts as a space.
std::string normalize_key(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

/// Fixed-point formatting independent of the global locale.
std::string format_fixed(double value, int decimals);

/// Round half away from zero to `decimals` places.
double round_to(double value, int decimals);

// ---------------------------------------------------------------------------
// Minimal RFC 4180 CSV support.

struct CsvRow {
    std::size_t line = 0;  // 1-based line on which the row starts
    std::vector<std::string> cells;
};

class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    /// Returns nullopt at end of input. Throws ParseError on an unterminated quote.
    std::optional<CsvRow> next();

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

/// Header-indexed view over a CSV stream.
class CsvTable {
public:
    explicit CsvTable(std::istream& in);

    const std::vector<std::string>& header() const { return header_; }
    std::optional<std::size_t> column(std::string_view name) const;
    std::size_t require_column(std::string_view name) const;
    std::optional<CsvRow> next() { return reader_.next(); }

private:
    CsvReader reader_;
    std::vector<std::string> header_;
};

std::string csv_escape(std::string_view cell);
void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace scholarmeter::text
