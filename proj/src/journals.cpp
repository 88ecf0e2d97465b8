#include "scholarmeter/journals.hpp"

#include "scholarmeter/text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <stdexcept>

namespace scholarmeter {

std::string journal_key(std::string_view name) { return text::to_lower_ascii(text::collapse_whitespace(name)); }

std::optional<int> RankedCategory::rank_of(std::string_view journal) const {
    const auto key = journal_key(journal);
    for (const auto& j : journals)
        if (journal_key(j.journal) == key) return j.rank;
    return std::nullopt;
}

std::vector<JournalRecord> load_journal_table(std::istream& source) {
    text::CsvTable table(source);
    const auto c_journal = table.require_column("journal");
    const auto c_category = table.require_column("category");
    const auto c_jif = table.require_column("jif");

    std::vector<JournalRecord> records;
    std::map<std::string, std::size_t> index;
    std::map<std::pair<std::string, std::string>, std::size_t> seen;
    while (auto row = table.next()) {
        if (row->cells.size() != table.header().size())
            throw ParseError("expected " + std::to_string(table.header().size()) + " cells", row->line);
        auto journal = text::collapse_whitespace(row->cells[c_journal]);
        auto category = text::collapse_whitespace(row->cells[c_category]);
        if (journal.empty()) throw ParseError("empty journal name", row->line, "journal");
        if (category.empty()) throw ParseError("empty category", row->line, "category");
        auto raw = text::trim(row->cells[c_jif]);
        double jif = 0;
        auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), jif);
        if (raw.empty() || ec != std::errc() || ptr != raw.data() + raw.size() || !std::isfinite(jif))
            throw ParseError("non-numeric jif '" + raw + "'", row->line, "jif");
        if (jif < 0) throw ParseError("negative jif " + raw, row->line, "jif");

        auto key = journal_key(journal);
        if (auto [it, fresh] = seen.emplace(std::make_pair(key, journal_key(category)), row->line); !fresh)
            throw ParseError("duplicate (journal, category) pair, first on line " + std::to_string(it->second), row->line,
                             "category");
        auto [it, fresh] = index.emplace(key, records.size());
        if (fresh) records.push_back({journal, {}});
        records[it->second].category_entries.push_back({category, jif});
    }
    return records;
}

std::vector<RankedCategory> rank_categories(std::span<const JournalRecord> table) {
    std::vector<RankedCategory> out;
    std::map<std::string, std::size_t> index;
    for (const auto& record : table) {
        for (const auto& entry : record.category_entries) {
            auto [it, fresh] = index.emplace(journal_key(entry.category), out.size());
            if (fresh) out.push_back({entry.category, {}});
            out[it->second].journals.push_back({record.journal, entry.jif, 0});
        }
    }
    for (auto& category : out) {
        auto& js = category.journals;
        std::stable_sort(js.begin(), js.end(), [](const auto& a, const auto& b) { return a.jif > b.jif; });
        for (std::size_t i = 0; i < js.size(); ++i)
            js[i].rank = (i > 0 && js[i].jif == js[i - 1].jif) ? js[i - 1].rank : static_cast<int>(i) + 1;
    }
    return out;
}

double category_rank_fraction(int rank, int size) {
    if (size < 1 || rank < 1 || rank > size)
        throw std::invalid_argument("rank " + std::to_string(rank) + " outside category of size " + std::to_string(size));
    return static_cast<double>(rank) / static_cast<double>(size);
}

double njp_of_journal(std::string_view journal, std::span<const RankedCategory> ranked) {
    double sum = 0;
    int n = 0;
    for (const auto& category : ranked) {
        if (auto rank = category.rank_of(journal)) {
            sum += category_rank_fraction(*rank, category.size());
            ++n;
        }
    }
    if (n == 0) throw std::invalid_argument("journal '" + std::string(journal) + "' is not ranked in any category");
    return sum / n;
}

JournalRanking::JournalRanking(std::vector<RankedCategory> ranked) : ranked_(std::move(ranked)) {
    std::map<std::string, std::pair<double, int>> sums;
    std::map<std::string, std::string> names;
    for (const auto& category : ranked_) {
        for (const auto& j : category.journals) {
            auto key = journal_key(j.journal);
            auto& [sum, n] = sums[key];
            sum += category_rank_fraction(j.rank, category.size());
            ++n;
            names.try_emplace(key, j.journal);
        }
    }
    for (const auto& [key, acc] : sums) njp_[key] = {names[key], acc.first / acc.second};
}

JournalRanking JournalRanking::from_table(std::span<const JournalRecord> table) {
    return JournalRanking(rank_categories(table));
}

std::optional<double> JournalRanking::njp(std::string_view journal) const {
    auto it = njp_.find(journal_key(journal));
    if (it == njp_.end()) return std::nullopt;
    return it->second.second;
}

std::optional<std::string> JournalRanking::canonical_name(std::string_view journal) const {
    auto it = njp_.find(journal_key(journal));
    if (it == njp_.end()) return std::nullopt;
    return it->second.first;
}

std::optional<double> mean_of_journals(std::span<const JournalNjp> journals) {
    if (journals.empty()) return std::nullopt;
    double sum = 0;
    for (const auto& j : journals) sum += j.njp;
    return sum / static_cast<double>(journals.size());
}

JournalSummary mean_njp(const ResearcherProfile& profile, const JournalRanking& ranking, const DocTypeSet& doc_types) {
    JournalSummary summary;
    std::map<std::string, std::size_t> index;
    std::set<std::string> missing;
    for (const auto& pub : profile.publications) {
        if (!doc_types.contains(pub.doc_type)) continue;
        auto njp = ranking.njp(pub.journal);
        if (!njp) {
            ++summary.uncovered_pubs;
            auto label = text::collapse_whitespace(pub.journal);
            if (missing.insert(journal_key(label)).second) summary.uncovered_journals.push_back(label);
            continue;
        }
        ++summary.covered_pubs;
        auto [it, fresh] = index.emplace(journal_key(pub.journal), summary.journals.size());
        if (fresh) summary.journals.push_back({*ranking.canonical_name(pub.journal), 0, *njp});
        ++summary.journals[it->second].pub_count;
    }
    std::stable_sort(summary.journals.begin(), summary.journals.end(), [](const auto& a, const auto& b) {
        if (a.njp != b.njp) return a.njp < b.njp;
        return a.journal < b.journal;
    });
    summary.mean = mean_of_journals(summary.journals);
    return summary;
}

}  // namespace scholarmeter
