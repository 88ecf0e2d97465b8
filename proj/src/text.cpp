#include "scholarmeter/text.hpp"

#include "scholarmeter/errors.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

namespace scholarmeter {

std::string Diagnostic::to_string() const {
    std::string out;
    if (line) out += "line " + std::to_string(line);
    if (!field.empty()) out += (out.empty() ? "[" : " [") + field + "]";
    if (!out.empty()) out += ": ";
    return out + message;
}

namespace {
std::string join_diagnostics(const std::vector<Diagnostic>& diagnostics) {
    std::string out;
    for (const auto& d : diagnostics) {
        if (!out.empty()) out += "\n";
        out += d.to_string();
    }
    return out;
}
}  // namespace

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

}  // namespace scholarmeter

namespace scholarmeter::text {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// ASCII folds for U+0100..U+017F; '*' marks two-letter ligatures handled separately.
constexpr std::string_view kLatinExtA =
    "AaAaAaCcCcCcCcDdDdEeEeEeEeEeGgGgGgGgHhHhIiIiIiIiIi**JjKkkLlLlLlLlLlNnNnNnnNnOoOoOo**RrRrRrSsSsSsSsTtTtTtUuUuUuUuUuUuWwYyYZzZzZzs";
static_assert(kLatinExtA.size() == 128);

std::string_view fold_latin1(char32_t cp) {
    static constexpr std::array<std::string_view, 64> table = {
        "A", "A", "A", "A", "A", "A", "AE", "C", "E", "E", "E", "E", "I", "I", "I", "I",
        "D", "N", "O", "O", "O", "O", "O", "x", "O", "U", "U", "U", "U", "Y", "TH", "ss",
        "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
        "d", "n", "o", "o", "o", "o", "o", "/", "o", "u", "u", "u", "u", "y", "th", "y"};
    return table[cp - 0xC0];
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

}  // namespace

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    bool pending = false;
    for (char c : s) {
        if (is_space(c)) {
            pending = !out.empty();
            continue;
        }
        if (pending) out += ' ';
        pending = false;
        out += c;
    }
    return out;
}

std::string strip_diacritics(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        auto b0 = static_cast<unsigned char>(s[i]);
        std::size_t len = b0 < 0x80 ? 1 : (b0 >> 5) == 0x6 ? 2 : (b0 >> 4) == 0xE ? 3 : (b0 >> 3) == 0x1E ? 4 : 0;
        bool valid = len != 0 && i + len <= s.size();
        char32_t cp = 0;
        if (valid) {
            cp = len == 1 ? b0 : len == 2 ? (b0 & 0x1F) : len == 3 ? (b0 & 0x0F) : (b0 & 0x07);
            for (std::size_t k = 1; k < len; ++k) {
                auto bk = static_cast<unsigned char>(s[i + k]);
                if ((bk & 0xC0) != 0x80) {
                    valid = false;
                    break;
                }
                cp = (cp << 6) | (bk & 0x3F);
            }
        }
        if (!valid) {
            out += s[i++];
            continue;
        }
        i += len;
        if (cp >= 0xC0 && cp <= 0xFF) {
            out += fold_latin1(cp);
        } else if (cp >= 0x100 && cp <= 0x17F) {
            switch (cp) {
                case 0x132: out += "IJ"; break;
                case 0x133: out += "ij"; break;
                case 0x152: out += "OE"; break;
                case 0x153: out += "oe"; break;
                default: out += kLatinExtA[cp - 0x100];
            }
        } else if (cp >= 0x300 && cp <= 0x36F) {
            // combining mark
        } else {
            append_utf8(out, cp);
        }
    }
    return out;
}

std::string normalize_author(std::string_view name) {
    std::string plain = collapse_whitespace(strip_diacritics(name));
    std::string last, given;
    if (auto comma = plain.find(','); comma != std::string::npos) {
        last = trim(std::string_view(plain).substr(0, comma));
        given = trim(std::string_view(plain).substr(comma + 1));
    } else if (auto space = plain.rfind(' '); space != std::string::npos) {
        last = plain.substr(space + 1);
        given = plain.substr(0, space);
    } else {
        last = plain;
    }
    std::string surname;
    for (char c : last)
        if (c != '.') surname += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    surname = collapse_whitespace(surname);
    for (char c : given) {
        if (std::isalpha(static_cast<unsigned char>(c))) {
            return surname + ", " + static_cast<char>(std::tolower(static_cast<unsigned char>(c))) + ".";
        }
    }
    return surname;
}

std::string normalize_title(std::string_view title) {
    std::string folded = strip_diacritics(title);
    for (auto& c : folded) {
        auto u = static_cast<unsigned char>(c);
        c = std::isalnum(u) ? static_cast<char>(std::tolower(u)) : ' ';
    }
    return collapse_whitespace(folded);
}

std::string normalize_key(std::string_view s) {
    std::string out = to_lower_ascii(s);
    for (auto& c : out)
        if (c == '_') c = ' ';
    return collapse_whitespace(out);
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        parts.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::string format_fixed(double value, int decimals) {
    // Avoid "-0.0" for tiny negatives.
    if (value == 0.0 || std::abs(value) < 0.5 * std::pow(10.0, -decimals)) value = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, round_to(value, decimals));
    return buf;
}

double round_to(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    // Nudge by a few ulps so that values printed as x.x5 in decimal round up.
    return std::round(value * scale * (1.0 + 4 * std::numeric_limits<double>::epsilon())) / scale;
}

// ---------------------------------------------------------------------------

std::optional<CsvRow> CsvReader::next() {
    while (true) {
        int ch = in_.get();
        if (ch == EOF) return std::nullopt;
        ++line_;
        CsvRow row;
        row.line = line_;
        std::string cell;
        bool quoted = false;
        bool any = false;
        while (true) {
            if (ch == EOF) {
                if (quoted) throw ParseError("unterminated quoted field", row.line);
                break;
            }
            char c = static_cast<char>(ch);
            if (quoted) {
                if (c == '"') {
                    if (in_.peek() == '"') {
                        cell += '"';
                        in_.get();
                    } else {
                        quoted = false;
                    }
                } else {
                    if (c == '\n') ++line_;
                    cell += c;
                }
            } else if (c == '"') {
                quoted = true;
                any = true;
            } else if (c == ',') {
                row.cells.push_back(std::move(cell));
                cell.clear();
                any = true;
            } else if (c == '\n') {
                break;
            } else if (c != '\r') {
                cell += c;
                any = true;
            }
            ch = in_.get();
        }
        if (!any && cell.empty() && row.cells.empty()) continue;  // blank line
        row.cells.push_back(std::move(cell));
        return row;
    }
}

CsvTable::CsvTable(std::istream& in) : reader_(in) {
    auto first = reader_.next();
    if (!first) throw ParseError("no records: empty CSV input");
    for (auto& h : first->cells) header_.push_back(to_lower_ascii(trim(h)));
    if (!header_.empty() && header_[0].starts_with("\xEF\xBB\xBF")) header_[0].erase(0, 3);
}

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
        if (header_[i] == name) return i;
    return std::nullopt;
}

std::size_t CsvTable::require_column(std::string_view name) const {
    if (auto c = column(name)) return *c;
    throw ParseError("missing required column '" + std::string(name) + "'", 1, std::string(name));
}

std::string csv_escape(std::string_view cell) {
    if (cell.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(cell);
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << csv_escape(cells[i]);
    }
    out << '\n';
}

}  // namespace scholarmeter::text
