#include "scholarmeter/indicators.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace scholarmeter {

int years_active(int first_year, int census_year) { return census_year - first_year + 1; }

ProductivitySummary productivity_summary(const ResearcherProfile& profile, const DocTypeSet& substantive) {
    if (profile.publications.empty()) throw std::invalid_argument("productivity summary of an empty profile");
    ProductivitySummary s;
    for (std::size_t k = 0; k + 1 < kDocKindCount; ++k) s.counts_by_type[DocType::of(static_cast<DocKind>(k))] = 0;
    s.first_year = profile.publications.front().year;
    for (const auto& p : profile.publications) {
        ++s.counts_by_type[p.doc_type];
        ++s.total;
        if (substantive.contains(p.doc_type)) ++s.substantive_total;
        if (!p.authors.empty() && profile.is_researcher(p.authors.front())) {
            ++s.first_author;
            if (p.authors.size() == 1) ++s.solo_author;
        }
        s.first_year = std::min(s.first_year, p.year);
    }
    s.census_year = profile.census_year;
    s.years_active = years_active(s.first_year, s.census_year);
    if (s.years_active < 1)
        throw std::invalid_argument("census year " + std::to_string(s.census_year) + " precedes first publication " +
                                    std::to_string(s.first_year));
    s.pubs_per_year = static_cast<double>(s.total) / s.years_active;
    return s;
}

std::int64_t h_index(std::span<const std::int64_t> citation_counts) {
    std::vector<std::int64_t> sorted(citation_counts.begin(), citation_counts.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    std::int64_t h = 0;
    while (h < static_cast<std::int64_t>(sorted.size()) && sorted[static_cast<std::size_t>(h)] >= h + 1) ++h;
    return h;
}

std::int64_t h_index(std::span<const Publication> publications) {
    std::vector<std::int64_t> counts;
    counts.reserve(publications.size());
    for (const auto& p : publications) counts.push_back(p.citation_count);
    return h_index(counts);
}

double m_quotient(std::int64_t h, int years_active) {
    if (years_active < 1) throw std::invalid_argument("years_active must be >= 1");
    return static_cast<double>(h) / years_active;
}

CitationSummary citation_summary(std::span<const Publication> substantive, const ResearcherProfile& profile,
                                 double threshold) {
    if (substantive.empty()) throw std::invalid_argument("citations per publication undefined for an empty set");
    CitationSummary s;
    for (const auto& p : substantive) {
        s.total += p.citation_count;
        if (p.citing_records) {
            s.self_basis += p.citation_count;
            for (const auto& c : *p.citing_records) {
                if (std::any_of(c.citing_authors.begin(), c.citing_authors.end(),
                                [&](const std::string& a) { return profile.is_researcher(a); }))
                    ++s.self_citations;
            }
            s.self_rate_known = true;
        } else if (p.self_citation_count) {
            s.self_basis += p.citation_count;
            s.self_citations += *p.self_citation_count;
            s.self_rate_known = true;
        }
    }
    s.per_pub = static_cast<double>(s.total) / static_cast<double>(substantive.size());
    if (s.self_basis > 0) s.self_rate = static_cast<double>(s.self_citations) / static_cast<double>(s.self_basis);
    s.flag = s.self_rate_known && s.self_rate > threshold;
    return s;
}

bool eligible(const PercentileAssignment& a, const WindowOptions& window) {
    return a.covered && a.percentile && !in_recent_window(a.year_used, window.census_year, window.exclude_recent_years);
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty list");
    std::sort(values.begin(), values.end());
    const auto n = values.size();
    return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

double median_percentile(std::span<const PercentileAssignment> assignments, const WindowOptions& window) {
    std::vector<double> values;
    for (const auto& a : assignments)
        if (eligible(a, window)) values.push_back(*a.percentile);
    if (values.empty()) throw std::invalid_argument("no percentile coverage");
    return median(std::move(values));
}

Top10Summary top10_counts(std::span<const PercentileAssignment> assignments, int years_active,
                          const WindowOptions& window) {
    if (years_active < 1) throw std::invalid_argument("years_active must be >= 1");
    Top10Summary s;
    for (const auto& a : assignments) {
        if (!eligible(a, window)) continue;
        ++s.covered;
        if (*a.percentile <= kTopDecilePercentile) ++s.p_top10;
    }
    if (s.covered == 0) throw std::invalid_argument("no percentile coverage");
    s.pp_top10 = 100.0 * s.p_top10 / s.covered;
    s.quotient = static_cast<double>(s.p_top10) / years_active;
    return s;
}

ImpactSummary impact_summary(std::span<const Publication> substantive, const ResearcherProfile& profile,
                             std::span<const PercentileAssignment> assignments, int years_active,
                             const WindowOptions& window, double self_cite_threshold) {
    ImpactSummary s;
    if (!substantive.empty()) {
        auto c = citation_summary(substantive, profile, self_cite_threshold);
        s.total_citations = c.total;
        s.citations_per_pub = c.per_pub;
        s.self_citation_rate = c.self_rate;
        s.self_citation_known = c.self_rate_known;
        s.self_citation_flag = c.flag;
    }
    s.h_index = h_index(substantive);
    s.m_quotient = m_quotient(s.h_index, years_active);
    for (const auto& a : assignments) s.percentile_coverage += eligible(a, window) ? 1 : 0;
    if (s.percentile_coverage > 0) {
        s.median_percentile = median_percentile(assignments, window);
        auto top = top10_counts(assignments, years_active, window);
        s.p_top10 = top.p_top10;
        s.pp_top10 = top.pp_top10;
        s.p_top10_quotient = top.quotient;
    }
    return s;
}

}  // namespace scholarmeter
