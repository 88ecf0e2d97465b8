#pragma once

#include "scholarmeter/corpus.hpp"

#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scholarmeter {

struct CategoryEntry {
    std::string category;
    double jif = 0.0;
};

struct JournalRecord {
    std::string journal;
    std::vector<CategoryEntry> category_entries;
};

struct RankedJournal {
    std::string journal;
    double jif = 0.0;
    int rank = 0;  // competition rank: ties share the better rank
};

/// One subject category with its journals ordered by JIF, highest first.
struct RankedCategory {
    std::string category;
    std::vector<RankedJournal> journals;

    int size() const { return static_cast<int>(journals.size()); }
    std::optional<int> rank_of(std::string_view journal) const;
};

/// Case-insensitive with whitespace collapsed.
std::string journal_key(std::string_view name);

/// Reads journals.csv (journal, category, jif) into one record per distinct
/// journal in order of first appearance. Throws ParseError on a negative or
/// non-numeric JIF or a repeated (journal, category) pair.
std::vector<JournalRecord> load_journal_table(std::istream& source);

/// Groups the table by category and ranks each category by descending JIF
/// (stable; equal JIFs share a rank and leave a gap after them).
std::vector<RankedCategory> rank_categories(std::span<const JournalRecord> table);

/// rank / size. Throws std::invalid_argument unless 1 <= rank <= size.
double category_rank_fraction(int rank, int size);

/// Mean rank fraction over every category listing the journal.
/// Throws std::invalid_argument for a journal no category lists.
double njp_of_journal(std::string_view journal, std::span<const RankedCategory> ranked);

/// Precomputed journal -> NJP lookup over a ranked table.
class JournalRanking {
public:
    JournalRanking() = default;
    explicit JournalRanking(std::vector<RankedCategory> ranked);
    static JournalRanking from_table(std::span<const JournalRecord> table);

    std::optional<double> njp(std::string_view journal) const;
    /// Spelling used in the table, if known.
    std::optional<std::string> canonical_name(std::string_view journal) const;
    const std::vector<RankedCategory>& categories() const { return ranked_; }
    bool empty() const { return ranked_.empty(); }

private:
    std::vector<RankedCategory> ranked_;
    std::map<std::string, std::pair<std::string, double>> njp_;  // key -> (name, njp)
};

struct JournalNjp {
    std::string journal;
    int pub_count = 0;
    double njp = 0.0;
};

struct JournalSummary {
    std::optional<double> mean;         // unweighted over distinct journals
    std::vector<JournalNjp> journals;   // ascending NJP, then name
    int covered_pubs = 0;
    int uncovered_pubs = 0;
    std::vector<std::string> uncovered_journals;  // first-seen spelling, in order
};

/// Unweighted arithmetic mean of the per-journal NJPs; nullopt when empty.
std::optional<double> mean_of_journals(std::span<const JournalNjp> journals);

/// NJP breakdown over the publications whose journal the table ranks.
JournalSummary mean_njp(const ResearcherProfile& profile, const JournalRanking& ranking,
                        const DocTypeSet& doc_types = DocTypeSet::all());

}  // namespace scholarmeter
