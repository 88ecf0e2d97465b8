#pragma once

#include "scholarmeter/corpus.hpp"
#include "scholarmeter/refsets.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace scholarmeter {

inline constexpr double kDefaultSelfCitationThreshold = 0.30;
inline constexpr int kMinimumReliableSet = 50;
inline constexpr double kTopDecilePercentile = 10.0;

struct ProductivitySummary {
    std::map<DocType, int> counts_by_type;  // every known type, zero counts included
    int total = 0;
    int substantive_total = 0;
    int first_author = 0;
    int solo_author = 0;
    int first_year = 0;
    int census_year = 0;
    int years_active = 0;  // census_year - first_year + 1
    double pubs_per_year = 0.0;
};

/// Productivity over all document types. Throws std::invalid_argument on an
/// empty profile or one whose census year precedes its first publication.
ProductivitySummary productivity_summary(const ResearcherProfile& profile,
                                         const DocTypeSet& substantive = DocTypeSet::substantive());

/// Inclusive span of publishing years.
int years_active(int first_year, int census_year);

/// Largest h with at least h counts >= h.
std::int64_t h_index(std::span<const std::int64_t> citation_counts);
std::int64_t h_index(std::span<const Publication> publications);

/// h / years_active. Throws std::invalid_argument when years_active < 1.
double m_quotient(std::int64_t h, int years_active);

struct CitationSummary {
    std::int64_t total = 0;
    double per_pub = 0.0;
    std::int64_t self_citations = 0;
    std::int64_t self_basis = 0;  // citations of publications carrying self-citation data
    double self_rate = 0.0;
    bool self_rate_known = false;
    bool flag = false;  // self_rate above the threshold
};

/// Citation totals over the substantive set. Self-citations come from
/// citing_records when present (a citing paper listing the researcher or an
/// alias), else from self_citation_count. Throws std::invalid_argument on an
/// empty list.
CitationSummary citation_summary(std::span<const Publication> substantive, const ResearcherProfile& profile,
                                 double threshold = kDefaultSelfCitationThreshold);

/// Which assignments count toward aggregate percentile indicators.
struct WindowOptions {
    int census_year = 0;
    int exclude_recent_years = 1;
};

/// Covered and outside the recent-years window.
bool eligible(const PercentileAssignment& a, const WindowOptions& window);

/// Median; mean of the middle pair for even sizes. Throws on empty input.
double median(std::vector<double> values);

/// Median of eligible percentiles. Throws std::invalid_argument when none are eligible.
double median_percentile(std::span<const PercentileAssignment> assignments, const WindowOptions& window);

struct Top10Summary {
    int p_top10 = 0;
    int covered = 0;        // eligible assignments, the PP denominator
    double pp_top10 = 0.0;  // percentage
    double quotient = 0.0;  // p_top10 / years_active
};

/// Throws std::invalid_argument when no assignment is eligible or years_active < 1.
Top10Summary top10_counts(std::span<const PercentileAssignment> assignments, int years_active,
                          const WindowOptions& window);

struct ImpactSummary {
    std::int64_t total_citations = 0;
    double citations_per_pub = 0.0;
    double self_citation_rate = 0.0;
    bool self_citation_known = false;
    bool self_citation_flag = false;
    std::int64_t h_index = 0;
    double m_quotient = 0.0;
    std::optional<double> median_percentile;  // absent without coverage
    int p_top10 = 0;
    std::optional<double> pp_top10;
    double p_top10_quotient = 0.0;
    int percentile_coverage = 0;
};

ImpactSummary impact_summary(std::span<const Publication> substantive, const ResearcherProfile& profile,
                             std::span<const PercentileAssignment> assignments, int years_active,
                             const WindowOptions& window, double self_cite_threshold = kDefaultSelfCitationThreshold);

}  // namespace scholarmeter
