#pragma once

#include "scholarmeter/corpus.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace scholarmeter {

/// Citation-count distribution of one (field, year) pair, stored as a
/// histogram. Immutable once built.
class ReferenceSet {
public:
    /// Throws std::invalid_argument on empty input or a negative count.
    static ReferenceSet from_counts(std::string field, int year, std::span<const std::int64_t> counts);
    /// Histogram entries with equal counts are merged; frequencies must be positive.
    static ReferenceSet from_histogram(std::string field, int year, const std::map<std::int64_t, std::int64_t>& histogram);

    const std::string& field() const { return field_; }
    int year() const { return year_; }
    std::int64_t size() const { return n_; }
    const std::map<std::int64_t, std::int64_t>& histogram() const { return histogram_; }

    /// Number of reference publications with at least `citations` citations.
    std::int64_t count_at_least(std::int64_t citations) const;

    /// Arithmetic mean of the counts.
    double mean() const;

    friend bool operator==(const ReferenceSet& a, const ReferenceSet& b) {
        return a.field_ == b.field_ && a.year_ == b.year_ && a.histogram_ == b.histogram_;
    }

private:
    ReferenceSet() = default;
    void index();

    std::string field_;
    int year_ = 0;
    std::int64_t n_ = 0;
    std::map<std::int64_t, std::int64_t> histogram_;
    std::vector<std::int64_t> values_;    // ascending distinct counts
    std::vector<std::int64_t> at_least_;  // at_least_[i] = #{q >= values_[i]}
};

ReferenceSet build_reference_set(std::string field, int year, std::span<const std::int64_t> counts);

/// 100 * #{q in refset : q >= citations} / n. Lower is better; zero
/// citations always scores exactly 100.
double percentile_of(std::int64_t citations, const ReferenceSet& refset);

/// Lookup of reference sets by (normalized field, year).
class ReferenceSetCollection {
public:
    ReferenceSetCollection() = default;
    explicit ReferenceSetCollection(std::vector<ReferenceSet> sets);

    /// Throws std::invalid_argument when the (field, year) key already exists.
    void add(ReferenceSet set);
    const ReferenceSet* find(std::string_view field, int year) const;
    std::size_t size() const { return sets_.size(); }
    bool empty() const { return sets_.empty(); }
    std::vector<const ReferenceSet*> all() const;

private:
    std::map<std::pair<std::string, int>, ReferenceSet> sets_;
};

/// Reads one `citation_count,frequency` CSV.
ReferenceSet load_reference_set(std::istream& source, std::string field, int year);
/// Reads a combined `field,year,citation_count,frequency` CSV.
ReferenceSetCollection load_reference_sets_combined(std::istream& source);
/// A directory of `<field>__<year>.csv` files, or a single combined CSV.
ReferenceSetCollection load_reference_sets(const std::filesystem::path& path);
void write_reference_set(const ReferenceSet& set, std::ostream& out);

enum class FieldChoice { First, Average };

struct PercentileOptions {
    int exclude_recent_years = 1;
    FieldChoice field_choice = FieldChoice::Average;
    DocTypeSet doc_types = DocTypeSet::substantive();
};

struct PercentileAssignment {
    std::string publication_id;
    std::optional<double> percentile;  // present iff covered
    std::string field_used;            // categories that matched, joined by "; "
    int year_used = 0;
    bool covered = false;
    bool recent = false;  // inside the short citation window before the census year
};

/// Publications from years after census_year - exclude_recent_years.
bool in_recent_window(int year, int census_year, int exclude_recent_years);

/// One assignment per publication passing the document-type filter.
/// Categories without a reference set are skipped; none matching leaves the
/// publication uncovered.
std::vector<PercentileAssignment> assign_percentiles(const ResearcherProfile& profile,
                                                     const ReferenceSetCollection& refsets,
                                                     const PercentileOptions& options = {});

struct Lognormal {
    double mu = 1.0;
    double sigma = 1.2;
};
struct Zipf {
    double s = 2.0;
};
using SyntheticShape = std::variant<Lognormal, Zipf>;

/// Parses "lognormal:1.0,1.2" / "zipf:2.0". Throws ParseError.
SyntheticShape parse_shape(std::string_view shape_text);
std::string shape_to_string(const SyntheticShape& shape);

/// Deterministic heavy-tailed counts: lognormal draws are rounded to the
/// nearest integer, Zipf draws
/// are shifted to start at zero. Throws std::invalid_argument on bad parameters.
ReferenceSet generate_synthetic_refset(std::string field, int year, std::int64_t n, const SyntheticShape& shape,
                                       std::uint64_t seed);

}  // namespace scholarmeter
