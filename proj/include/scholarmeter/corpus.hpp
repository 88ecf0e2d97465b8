#pragma once

#include "scholarmeter/errors.hpp"

#include <compare>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scholarmeter {

enum class DocKind : std::uint8_t {
    Article,
    Editorial,
    Letter,
    MeetingAbstract,
    NewsItem,
    Note,
    ProceedingsPaper,
    Review,
    Other,
};

inline constexpr std::size_t kDocKindCount = 9;

/// Document type as classified by the citation database. Unknown labels are
/// kept verbatim in `label` under DocKind::Other.
struct DocType {
    DocKind kind = DocKind::Article;
    std::string label;  // only meaningful for Other

    static DocType of(DocKind k) { return DocType{k, {}}; }
    static DocType other(std::string raw) { return DocType{DocKind::Other, std::move(raw)}; }

    /// "Proceedings Paper", "Meeting Abstract", or the preserved label.
    std::string display_name() const;

    friend bool operator==(const DocType&, const DocType&) = default;
    friend auto operator<=>(const DocType&, const DocType&) = default;
};

/// Case-, space-, hyphen- and underscore-insensitive; never fails.
DocType normalize_doc_type(std::string_view raw);

/// Set of document kinds. Including Other admits every unrecognized label.
class DocTypeSet {
public:
    DocTypeSet() = default;
    DocTypeSet(std::initializer_list<DocKind> kinds) {
        for (auto k : kinds) insert(k);
    }

    /// Article, Note, Proceedings Paper and Review.
    static DocTypeSet substantive();
    static DocTypeSet all();
    /// Parses a comma list such as "article,note,proceedings paper,review". Throws ParseError.
    static DocTypeSet parse(std::string_view list);

    void insert(DocKind k) { bits_ |= bit(k); }
    bool contains(DocKind k) const { return bits_ & bit(k); }
    bool contains(const DocType& t) const { return contains(t.kind); }
    bool empty() const { return bits_ == 0; }
    DocTypeSet complement() const;
    std::string to_string() const;

    friend bool operator==(const DocTypeSet&, const DocTypeSet&) = default;

private:
    static std::uint16_t bit(DocKind k) { return static_cast<std::uint16_t>(1u << static_cast<unsigned>(k)); }
    std::uint16_t bits_ = 0;
};

struct CitingRecord {
    std::string citing_id;
    std::vector<std::string> citing_authors;
    int citing_year = 0;

    friend bool operator==(const CitingRecord&, const CitingRecord&) = default;
};

struct Publication {
    std::string id;
    std::string title;
    std::vector<std::string> authors;
    int year = 0;
    DocType doc_type;
    std::string journal;
    std::vector<std::string> categories;
    std::int64_t citation_count = 0;
    std::optional<std::int64_t> self_citation_count;
    std::optional<std::vector<CitingRecord>> citing_records;

    friend bool operator==(const Publication&, const Publication&) = default;
};

struct ResearcherProfile {
    std::string name;
    std::vector<std::string> aliases;
    int census_year = 0;
    std::vector<Publication> publications;

    /// True when `author` names this researcher after normalization.
    bool is_researcher(std::string_view author) const;

    friend bool operator==(const ResearcherProfile&, const ResearcherProfile&) = default;
};

enum class InputFormat { Jsonl, Csv };

/// Profile-level defaults; a JSONL header line overrides name, aliases and
/// census year, and a non-zero `census_year` here overrides both.
struct ProfileOptions {
    std::string name;
    std::vector<std::string> aliases;
    int census_year = 0;  // 0: header value, else the latest publication year
};

inline constexpr int kEarliestYear = 1800;

/// Parses and validates a publication list. Malformed syntax throws
/// ParseError; invariant violations throw ValidationError carrying one
/// line-numbered Diagnostic per offending record.
ResearcherProfile parse_publications(std::istream& source, InputFormat format, const ProfileOptions& options = {});

/// Writes JSON lines (header line + one record per line) that parse back to `profile`.
void serialize_publications(const ResearcherProfile& profile, std::ostream& out);

/// Checks every record and profile invariant; returns the violations.
std::vector<Diagnostic> validate_profile(const ResearcherProfile& profile);

/// Publications whose type is in `allowed`, in original order.
std::vector<Publication> filter_substantive(const ResearcherProfile& profile,
                                            const DocTypeSet& allowed = DocTypeSet::substantive());

struct PersonalEntry {
    std::optional<std::string> id;
    std::string title;
    int year = 0;
};

/// Reads personal_list.csv (columns id (optional), title, year).
std::vector<PersonalEntry> parse_personal_list(std::istream& source);

struct ReconciliationReport {
    std::size_t matched = 0;
    std::vector<std::string> only_in_search;    // id, or title when no id
    std::vector<std::string> only_in_personal;

    bool consistent() const { return only_in_search.empty() && only_in_personal.empty(); }
};

/// Matches two record lists by id when both carry one, otherwise by
/// normalized title plus year. Swapping the arguments swaps the remainders.
ReconciliationReport reconcile(std::span<const PersonalEntry> left, std::span<const PersonalEntry> right);

ReconciliationReport cross_check(const ResearcherProfile& searched, std::span<const PersonalEntry> personal);

}  // namespace scholarmeter
