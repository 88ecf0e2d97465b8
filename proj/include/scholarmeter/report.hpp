#pragma once

#include "scholarmeter/corpus.hpp"
#include "scholarmeter/indicators.hpp"
#include "scholarmeter/journals.hpp"
#include "scholarmeter/refsets.hpp"

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace scholarmeter {

inline constexpr int kReportSchemaVersion = 1;

struct EvaluationOptions {
    DocTypeSet doc_types = DocTypeSet::substantive();
    int exclude_recent_years = 1;
    FieldChoice field_choice = FieldChoice::Average;
    double self_cite_threshold = kDefaultSelfCitationThreshold;
};

struct YearBeam {
    std::vector<double> percentiles;  // publication order
    double median = 0.0;
    bool flagged = false;  // inside the recent-years window
};

/// Data behind a beam plot: per-year percentiles with their medians, the
/// overall median line and the percentile-50 reference line.
struct BeamPlotDataset {
    std::map<int, YearBeam> per_year;
    double overall_median = 0.0;
    double reference_line = 50.0;
    bool census_year_flagged = false;
};

/// Groups covered percentiles by publication year. The overall median is
/// taken over unflagged years (the same set median_percentile uses) and
/// falls back to every listed value when all years are flagged.
/// Throws std::invalid_argument without a covered assignment.
BeamPlotDataset beam_plot_dataset(std::span<const PercentileAssignment> assignments, int census_year,
                                  int exclude_recent_years = 1);

struct SvgOptions {
    int width = 800;
    int height = 480;
    std::string title;
};

/// Standalone SVG: grey rhombi per publication, red triangles for yearly
/// medians, a dashed overall-median line and a solid line at 50. The y axis
/// is inverted so better (lower) percentiles sit higher.
/// Throws std::invalid_argument for an empty dataset or a canvas without plot area.
std::string render_beam_svg(const BeamPlotDataset& dataset, const SvgOptions& options = {});

void write_beam_csv(const BeamPlotDataset& dataset, std::ostream& out);

struct IndicatorReport {
    std::string researcher;
    int census_year = 0;
    EvaluationOptions options;
    ProductivitySummary productivity;
    ImpactSummary impact;
    JournalSummary journal_table;
    std::vector<std::string> warnings;
    std::map<int, int> publications_per_year;
    std::vector<PercentileAssignment> assignments;
    std::optional<BeamPlotDataset> beam;  // absent without percentile coverage
};

/// Runs the full indicator pipeline for one researcher.
IndicatorReport build_report(const ResearcherProfile& profile, const ReferenceSetCollection& refsets,
                             const JournalRanking& journals, const EvaluationOptions& options = {});

/// Overview grid: one row per indicator, one column per researcher.
struct IndicatorTable {
    struct Row {
        std::string label;
        std::vector<std::string> cells;  // empty for section headings
    };
    std::vector<std::string> columns;
    std::vector<Row> rows;
    std::vector<std::string> footnotes;
};

IndicatorTable indicator_table(std::span<const IndicatorReport> reports);
std::string render_table_text(const IndicatorTable& table);
void write_table_csv(const IndicatorTable& table, std::ostream& out);

/// report.json body, keys in a fixed order.
std::string report_json(const IndicatorReport& report);
std::string reports_json(std::span<const IndicatorReport> reports);

void write_journal_table_csv(const JournalSummary& summary, std::ostream& out);
void write_doc_type_csv(const ProductivitySummary& productivity, std::ostream& out);
void write_year_counts_csv(const std::map<int, int>& per_year, std::ostream& out);

}  // namespace scholarmeter
