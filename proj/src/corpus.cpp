#include "scholarmeter/corpus.hpp"

#include "scholarmeter/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <set>
#include <stdexcept>

namespace scholarmeter {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::array<std::string_view, kDocKindCount> kDocNames = {
    "Article", "Editorial", "Letter", "Meeting Abstract", "News Item", "Note", "Proceedings Paper", "Review", "Other"};

std::string squash(std::string_view raw) {
    std::string key;
    for (char c : raw) {
        if (c == ' ' || c == '-' || c == '_' || c == '\t') continue;
        key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return key;
}

}  // namespace

std::string DocType::display_name() const {
    if (kind == DocKind::Other) return label.empty() ? "Other" : label;
    return std::string(kDocNames[static_cast<std::size_t>(kind)]);
}

DocType normalize_doc_type(std::string_view raw) {
    static const std::map<std::string, DocKind, std::less<>> known = {
        {"article", DocKind::Article},
        {"editorial", DocKind::Editorial},
        {"editorialmaterial", DocKind::Editorial},
        {"letter", DocKind::Letter},
        {"meetingabstract", DocKind::MeetingAbstract},
        {"newsitem", DocKind::NewsItem},
        {"note", DocKind::Note},
        {"proceedingspaper", DocKind::ProceedingsPaper},
        {"review", DocKind::Review},
    };
    if (auto it = known.find(squash(raw)); it != known.end()) return DocType::of(it->second);
    return DocType::other(std::string(raw));
}

DocTypeSet DocTypeSet::substantive() {
    return {DocKind::Article, DocKind::Note, DocKind::ProceedingsPaper, DocKind::Review};
}

DocTypeSet DocTypeSet::all() {
    DocTypeSet s;
    for (std::size_t i = 0; i < kDocKindCount; ++i) s.insert(static_cast<DocKind>(i));
    return s;
}

DocTypeSet DocTypeSet::complement() const {
    DocTypeSet s;
    for (std::size_t i = 0; i < kDocKindCount; ++i)
        if (!contains(static_cast<DocKind>(i))) s.insert(static_cast<DocKind>(i));
    return s;
}

DocTypeSet DocTypeSet::parse(std::string_view list) {
    DocTypeSet s;
    for (const auto& part : text::split(list, ',')) {
        auto item = text::trim(part);
        if (item.empty()) continue;
        if (squash(item) == "all") return all();
        auto type = normalize_doc_type(item);
        if (type.kind == DocKind::Other && squash(item) != "other")
            throw ParseError("unknown document type '" + item + "' in type list");
        s.insert(type.kind);
    }
    if (s.empty()) throw ParseError("document type list is empty");
    return s;
}

std::string DocTypeSet::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < kDocKindCount; ++i) {
        if (!contains(static_cast<DocKind>(i))) continue;
        if (!out.empty()) out += ',';
        out += kDocNames[i];
    }
    return out;
}

bool ResearcherProfile::is_researcher(std::string_view author) const {
    const auto key = text::normalize_author(author);
    if (key.empty()) return false;
    if (!name.empty() && key == text::normalize_author(name)) return true;
    return std::any_of(aliases.begin(), aliases.end(),
                       [&](const std::string& a) { return key == text::normalize_author(a); });
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Collector {
    std::vector<Diagnostic> diagnostics;
    void add(std::size_t line, std::string field, std::string message) {
        diagnostics.push_back({line, std::move(field), std::move(message)});
    }
};

template <typename T>
std::optional<T> get_field(const json& obj, const char* key, std::size_t line, Collector& out, bool required = true) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        if (required) out.add(line, key, "missing required field");
        return std::nullopt;
    }
    try {
        if constexpr (std::is_same_v<T, std::int64_t>) {
            if (!it->is_number_integer()) throw std::invalid_argument("");
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!it->is_string()) throw std::invalid_argument("");
        } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
            if (!it->is_array()) throw std::invalid_argument("");
            for (const auto& e : *it)
                if (!e.is_string()) throw std::invalid_argument("");
        }
        return it->get<T>();
    } catch (const std::exception&) {
        out.add(line, key, "wrong type");
        return std::nullopt;
    }
}

std::optional<Publication> publication_from_json(const json& obj, std::size_t line, Collector& out) {
    const auto before = out.diagnostics.size();
    Publication p;
    if (auto v = get_field<std::string>(obj, "id", line, out)) p.id = text::trim(*v);
    if (auto v = get_field<std::string>(obj, "title", line, out)) p.title = *v;
    if (auto v = get_field<std::vector<std::string>>(obj, "authors", line, out)) p.authors = *v;
    if (auto v = get_field<std::int64_t>(obj, "year", line, out)) p.year = static_cast<int>(*v);
    if (auto v = get_field<std::string>(obj, "doc_type", line, out)) p.doc_type = normalize_doc_type(*v);
    if (auto v = get_field<std::string>(obj, "journal", line, out)) p.journal = *v;
    if (auto v = get_field<std::vector<std::string>>(obj, "categories", line, out)) p.categories = *v;
    if (auto v = get_field<std::int64_t>(obj, "citation_count", line, out)) p.citation_count = *v;
    p.self_citation_count = get_field<std::int64_t>(obj, "self_citation_count", line, out, false);

    if (auto it = obj.find("citing_records"); it != obj.end() && !it->is_null()) {
        if (!it->is_array()) {
            out.add(line, "citing_records", "wrong type");
        } else {
            std::vector<CitingRecord> records;
            for (const auto& r : *it) {
                if (!r.is_object()) {
                    out.add(line, "citing_records", "entry is not an object");
                    break;
                }
                CitingRecord c;
                if (auto v = get_field<std::string>(r, "citing_id", line, out)) c.citing_id = *v;
                if (auto v = get_field<std::vector<std::string>>(r, "citing_authors", line, out)) c.citing_authors = *v;
                if (auto v = get_field<std::int64_t>(r, "citing_year", line, out)) c.citing_year = static_cast<int>(*v);
                records.push_back(std::move(c));
            }
            p.citing_records = std::move(records);
        }
    }
    if (out.diagnostics.size() != before) return std::nullopt;
    return p;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    auto t = text::trim(s);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) return std::nullopt;
    return v;
}

std::vector<std::string> split_list(std::string_view cell) {
    std::vector<std::string> out;
    for (auto& part : text::split(cell, ';')) {
        auto t = text::trim(part);
        if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
}

struct ParsedRecords {
    std::vector<Publication> publications;
    std::vector<std::size_t> lines;
};

void check_records(const ResearcherProfile& profile, std::span<const std::size_t> lines, Collector& out) {
    auto line_of = [&](std::size_t i) { return i < lines.size() ? lines[i] : i + 1; };
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < profile.publications.size(); ++i) {
        const auto& p = profile.publications[i];
        const auto line = line_of(i);
        if (p.id.empty()) out.add(line, "id", "empty id");
        if (auto [it, fresh] = seen.emplace(p.id, line); !fresh)
            out.add(line, "id", "duplicate id '" + p.id + "' (first seen on line " + std::to_string(it->second) + ")");
        if (p.authors.empty()) out.add(line, "authors", "authors must be non-empty");
        if (p.year < kEarliestYear || p.year > profile.census_year)
            out.add(line, "year",
                    "year " + std::to_string(p.year) + " outside [" + std::to_string(kEarliestYear) + ", " +
                        std::to_string(profile.census_year) + "]");
        if (p.citation_count < 0) out.add(line, "citation_count", "negative citation count");
        if (p.self_citation_count) {
            if (*p.self_citation_count < 0) out.add(line, "self_citation_count", "negative self-citation count");
            if (*p.self_citation_count > p.citation_count)
                out.add(line, "self_citation_count", "self-citations exceed citation_count");
        }
        if (p.citing_records && static_cast<std::int64_t>(p.citing_records->size()) != p.citation_count)
            out.add(line, "citing_records",
                    std::to_string(p.citing_records->size()) + " citing records but citation_count " +
                        std::to_string(p.citation_count));
    }
}

ResearcherProfile finish_profile(ParsedRecords parsed, ResearcherProfile profile, const ProfileOptions& options,
                                 Collector& out) {
    if (!options.name.empty()) profile.name = options.name;
    if (!options.aliases.empty()) profile.aliases = options.aliases;
    if (options.census_year) profile.census_year = options.census_year;
    if (!profile.census_year) {
        for (const auto& p : parsed.publications) profile.census_year = std::max(profile.census_year, p.year);
    }
    profile.publications = std::move(parsed.publications);
    check_records(profile, parsed.lines, out);
    if (!out.diagnostics.empty()) throw ValidationError(std::move(out.diagnostics));
    return profile;
}

ResearcherProfile parse_jsonl(std::istream& source, const ProfileOptions& options) {
    ResearcherProfile profile;
    ParsedRecords parsed;
    Collector out;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(source, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
        }
        if (!obj.is_object()) throw ParseError("record is not a JSON object", line_no);
        if (first && obj.contains("researcher")) {
            first = false;
            const auto& r = obj["researcher"];
            if (!r.is_object()) throw ParseError("researcher header is not an object", line_no, "researcher");
            if (auto v = get_field<std::string>(r, "name", line_no, out, false)) profile.name = *v;
            if (auto v = get_field<std::vector<std::string>>(r, "aliases", line_no, out, false)) profile.aliases = *v;
            if (auto v = get_field<std::int64_t>(r, "census_year", line_no, out, false))
                profile.census_year = static_cast<int>(*v);
            continue;
        }
        first = false;
        if (auto p = publication_from_json(obj, line_no, out)) {
            parsed.publications.push_back(std::move(*p));
            parsed.lines.push_back(line_no);
        }
    }
    if (parsed.publications.empty() && out.diagnostics.empty()) throw ValidationError("no records");
    return finish_profile(std::move(parsed), std::move(profile), options, out);
}

ResearcherProfile parse_csv(std::istream& source, const ProfileOptions& options) {
    text::CsvTable table(source);
    const auto c_id = table.require_column("id");
    const auto c_title = table.require_column("title");
    const auto c_authors = table.require_column("authors");
    const auto c_year = table.require_column("year");
    const auto c_type = table.require_column("doc_type");
    const auto c_journal = table.require_column("journal");
    const auto c_categories = table.require_column("categories");
    const auto c_cites = table.require_column("citation_count");
    const auto c_self = table.column("self_citation_count");

    ParsedRecords parsed;
    Collector out;
    while (auto row = table.next()) {
        const auto& cells = row->cells;
        if (cells.size() != table.header().size()) {
            out.add(row->line, {},
                    "expected " + std::to_string(table.header().size()) + " cells, found " + std::to_string(cells.size()));
            continue;
        }
        Publication p;
        const auto before = out.diagnostics.size();
        p.id = text::trim(cells[c_id]);
        p.title = cells[c_title];
        p.authors = split_list(cells[c_authors]);
        if (auto y = parse_int(cells[c_year]))
            p.year = static_cast<int>(*y);
        else
            out.add(row->line, "year", "not an integer: '" + cells[c_year] + "'");
        p.doc_type = normalize_doc_type(text::trim(cells[c_type]));
        p.journal = cells[c_journal];
        p.categories = split_list(cells[c_categories]);
        if (auto c = parse_int(cells[c_cites]))
            p.citation_count = *c;
        else
            out.add(row->line, "citation_count", "not an integer: '" + cells[c_cites] + "'");
        if (c_self && !text::trim(cells[*c_self]).empty()) {
            if (auto s = parse_int(cells[*c_self]))
                p.self_citation_count = *s;
            else
                out.add(row->line, "self_citation_count", "not an integer: '" + cells[*c_self] + "'");
        }
        if (out.diagnostics.size() != before) continue;
        parsed.publications.push_back(std::move(p));
        parsed.lines.push_back(row->line);
    }
    if (parsed.publications.empty() && out.diagnostics.empty()) throw ValidationError("no records");
    return finish_profile(std::move(parsed), ResearcherProfile{}, options, out);
}

}  // namespace

ResearcherProfile parse_publications(std::istream& source, InputFormat format, const ProfileOptions& options) {
    if (format == InputFormat::Csv) {
        // An empty stream has no header either.
        if (source.peek() == std::char_traits<char>::eof()) throw ValidationError("no records");
        return parse_csv(source, options);
    }
    return parse_jsonl(source, options);
}

std::vector<Diagnostic> validate_profile(const ResearcherProfile& profile) {
    Collector out;
    if (profile.publications.empty()) out.add(0, {}, "no records");
    check_records(profile, {}, out);
    return std::move(out.diagnostics);
}

void serialize_publications(const ResearcherProfile& profile, std::ostream& out) {
    ordered_json header;
    header["researcher"] = {{"name", profile.name}, {"aliases", profile.aliases}, {"census_year", profile.census_year}};
    out << header.dump() << '\n';
    for (const auto& p : profile.publications) {
        ordered_json j;
        j["id"] = p.id;
        j["title"] = p.title;
        j["authors"] = p.authors;
        j["year"] = p.year;
        j["doc_type"] = p.doc_type.display_name();
        j["journal"] = p.journal;
        j["categories"] = p.categories;
        j["citation_count"] = p.citation_count;
        if (p.self_citation_count) j["self_citation_count"] = *p.self_citation_count;
        if (p.citing_records) {
            auto arr = ordered_json::array();
            for (const auto& c : *p.citing_records)
                arr.push_back(ordered_json{
                    {"citing_id", c.citing_id}, {"citing_authors", c.citing_authors}, {"citing_year", c.citing_year}});
            j["citing_records"] = std::move(arr);
        }
        out << j.dump() << '\n';
    }
}

std::vector<Publication> filter_substantive(const ResearcherProfile& profile, const DocTypeSet& allowed) {
    if (allowed.empty()) throw std::invalid_argument("filter_substantive: allowed document types must be non-empty");
    std::vector<Publication> out;
    for (const auto& p : profile.publications)
        if (allowed.contains(p.doc_type)) out.push_back(p);
    return out;
}

// ---------------------------------------------------------------------------
// Reconciliation

std::vector<PersonalEntry> parse_personal_list(std::istream& source) {
    if (source.peek() == std::char_traits<char>::eof()) throw ValidationError("no records");
    text::CsvTable table(source);
    const auto c_id = table.column("id");
    const auto c_title = table.require_column("title");
    const auto c_year = table.require_column("year");
    std::vector<PersonalEntry> entries;
    Collector out;
    while (auto row = table.next()) {
        const auto& cells = row->cells;
        if (cells.size() != table.header().size()) {
            out.add(row->line, {}, "expected " + std::to_string(table.header().size()) + " cells");
            continue;
        }
        PersonalEntry e;
        if (c_id && !text::trim(cells[*c_id]).empty()) e.id = text::trim(cells[*c_id]);
        e.title = cells[c_title];
        if (text::trim(e.title).empty()) out.add(row->line, "title", "title is required");
        if (auto y = parse_int(cells[c_year]))
            e.year = static_cast<int>(*y);
        else
            out.add(row->line, "year", "not an integer: '" + cells[c_year] + "'");
        entries.push_back(std::move(e));
    }
    if (!out.diagnostics.empty()) throw ValidationError(std::move(out.diagnostics));
    return entries;
}

ReconciliationReport reconcile(std::span<const PersonalEntry> left, std::span<const PersonalEntry> right) {
    std::vector<bool> used_left(left.size()), used_right(right.size());
    std::size_t matched = 0;
    auto id_key = [](const PersonalEntry& e) { return text::to_lower_ascii(text::trim(*e.id)); };

    // Records carrying ids on both sides are decided by id alone.
    std::map<std::string, std::vector<std::size_t>> right_ids;
    for (std::size_t j = 0; j < right.size(); ++j)
        if (right[j].id) right_ids[id_key(right[j])].push_back(j);
    std::map<std::string, std::size_t> cursor;
    for (std::size_t i = 0; i < left.size(); ++i) {
        if (!left[i].id) continue;
        auto key = id_key(left[i]);
        auto it = right_ids.find(key);
        if (it == right_ids.end()) continue;
        auto& pos = cursor[key];
        if (pos < it->second.size()) {
            used_left[i] = true;
            used_right[it->second[pos++]] = true;
            ++matched;
        }
    }

    // Remaining records pair on (normalized title, year) unless both carry ids.
    struct Group {
        std::vector<std::size_t> left_id, left_plain, right_id, right_plain;
    };
    std::map<std::pair<std::string, int>, Group> groups;
    for (std::size_t i = 0; i < left.size(); ++i) {
        if (used_left[i]) continue;
        auto& g = groups[{text::normalize_title(left[i].title), left[i].year}];
        (left[i].id ? g.left_id : g.left_plain).push_back(i);
    }
    for (std::size_t j = 0; j < right.size(); ++j) {
        if (used_right[j]) continue;
        auto& g = groups[{text::normalize_title(right[j].title), right[j].year}];
        (right[j].id ? g.right_id : g.right_plain).push_back(j);
    }
    auto pair_up = [&](std::vector<std::size_t>& ls, std::vector<std::size_t>& rs) {
        std::size_t k = 0;
        for (; k < ls.size() && k < rs.size(); ++k) {
            used_left[ls[k]] = true;
            used_right[rs[k]] = true;
            ++matched;
        }
        ls.erase(ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(k));
        rs.erase(rs.begin(), rs.begin() + static_cast<std::ptrdiff_t>(k));
    };
    for (auto& [key, g] : groups) {
        pair_up(g.left_id, g.right_plain);
        pair_up(g.left_plain, g.right_id);
        pair_up(g.left_plain, g.right_plain);
    }

    ReconciliationReport report;
    report.matched = matched;
    auto label = [](const PersonalEntry& e) { return e.id ? *e.id : e.title; };
    for (std::size_t i = 0; i < left.size(); ++i)
        if (!used_left[i]) report.only_in_search.push_back(label(left[i]));
    for (std::size_t j = 0; j < right.size(); ++j)
        if (!used_right[j]) report.only_in_personal.push_back(label(right[j]));
    return report;
}

ReconciliationReport cross_check(const ResearcherProfile& searched, std::span<const PersonalEntry> personal) {
    std::vector<PersonalEntry> entries;
    entries.reserve(searched.publications.size());
    for (const auto& p : searched.publications) entries.push_back({p.id, p.title, p.year});
    return reconcile(entries, personal);
}

}  // namespace scholarmeter
