#include "scholarmeter/report.hpp"

#include "scholarmeter/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace scholarmeter {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Beam plot

BeamPlotDataset beam_plot_dataset(std::span<const PercentileAssignment> assignments, int census_year,
                                  int exclude_recent_years) {
    BeamPlotDataset ds;
    std::vector<double> unflagged, everything;
    for (const auto& a : assignments) {
        if (!a.covered || !a.percentile) continue;
        auto& year = ds.per_year[a.year_used];
        year.percentiles.push_back(*a.percentile);
        year.flagged = in_recent_window(a.year_used, census_year, exclude_recent_years);
        everything.push_back(*a.percentile);
        if (!year.flagged) unflagged.push_back(*a.percentile);
    }
    if (everything.empty()) throw std::invalid_argument("beam plot needs at least one covered percentile");
    for (auto& [y, beam] : ds.per_year) {
        beam.median = median(beam.percentiles);
        ds.census_year_flagged = ds.census_year_flagged || beam.flagged;
    }
    ds.overall_median = median(unflagged.empty() ? everything : unflagged);
    return ds;
}

namespace {

std::string num(double v) { return text::format_fixed(v, 2); }

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

constexpr double kMarginLeft = 56, kMarginRight = 16, kMarginTop = 28, kMarginBottom = 40;
constexpr double kMarker = 5;

}  // namespace

std::string render_beam_svg(const BeamPlotDataset& dataset, const SvgOptions& options) {
    if (dataset.per_year.empty()) throw std::invalid_argument("beam plot dataset is empty");
    const double width = options.width, height = options.height;
    const double plot_w = width - kMarginLeft - kMarginRight;
    const double plot_h = height - kMarginTop - kMarginBottom;
    if (options.width <= 0 || options.height <= 0 || plot_w <= 0 || plot_h <= 0)
        throw std::invalid_argument("canvas " + std::to_string(options.width) + "x" + std::to_string(options.height) +
                                    " leaves no plot area");

    const int first = dataset.per_year.begin()->first;
    const int last = dataset.per_year.rbegin()->first;
    const double span = last - first + 1;
    auto x_of = [&](double year) { return kMarginLeft + (year - first + 0.5) / span * plot_w; };
    // Percentile 0 at the top edge, 100 at the bottom.
    auto y_of = [&](double percentile) { return kMarginTop + percentile / 100.0 * plot_h; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.width << "\" height=\""
        << options.height << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n";
    svg << "<title>" << xml_escape(options.title.empty() ? "Percentiles by publication year" : options.title)
        << "</title>\n";
    svg << "<desc>y-axis: citation percentile, inverted (0 at top; lower percentile = more citations). "
           "Rhombi: publications; triangles: yearly medians; dashed line: overall median "
        << num(dataset.overall_median) << "; solid line: percentile 50."
        << (dataset.census_year_flagged ? " Faded years fall in the short citation window." : "") << "</desc>\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << options.width << "\" height=\"" << options.height
        << "\" fill=\"#ffffff\"/>\n";
    svg << "<rect class=\"frame\" x=\"" << num(kMarginLeft) << "\" y=\"" << num(kMarginTop) << "\" width=\""
        << num(plot_w) << "\" height=\"" << num(plot_h) << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    // Axis ticks and labels.
    svg << "<g class=\"axis\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#333333\">\n";
    std::string ticks;
    for (int p = 0; p <= 100; p += 25) {
        const double y = y_of(p);
        ticks += "M" + num(kMarginLeft - 4) + " " + num(y) + "H" + num(kMarginLeft) + " ";
        svg << "<text x=\"" << num(kMarginLeft - 6) << "\" y=\"" << num(y + 3) << "\" text-anchor=\"end\">" << p
            << "</text>\n";
    }
    const int step = std::max(1, static_cast<int>(std::ceil(span / 16.0)));
    for (int year = first; year <= last; year += step) {
        const double x = x_of(year);
        ticks += "M" + num(x) + " " + num(kMarginTop + plot_h) + "V" + num(kMarginTop + plot_h + 4) + " ";
        svg << "<text x=\"" << num(x) << "\" y=\"" << num(kMarginTop + plot_h + 16) << "\" text-anchor=\"middle\">"
            << year << "</text>\n";
    }
    if (!ticks.empty()) ticks.pop_back();
    svg << "<path d=\"" << ticks << "\" stroke=\"#333333\" fill=\"none\"/>\n";
    svg << "<text x=\"14\" y=\"" << num(kMarginTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << num(kMarginTop + plot_h / 2) << ")\">Percentile</text>\n";
    svg << "</g>\n";

    svg << "<line class=\"reference\" x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(y_of(dataset.reference_line))
        << "\" x2=\"" << num(kMarginLeft + plot_w) << "\" y2=\"" << num(y_of(dataset.reference_line))
        << "\" stroke=\"#999999\" stroke-width=\"1.5\"/>\n";
    svg << "<line class=\"overall-median\" x1=\"" << num(kMarginLeft) << "\" y1=\"" << num(y_of(dataset.overall_median))
        << "\" x2=\"" << num(kMarginLeft + plot_w) << "\" y2=\"" << num(y_of(dataset.overall_median))
        << "\" stroke=\"#cc0000\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";

    for (const auto& [year, beam] : dataset.per_year) {
        const double x = x_of(year);
        const char* extra = beam.flagged ? " fill-opacity=\"0.4\"" : "";
        for (double p : beam.percentiles) {
            const double y = y_of(p);
            svg << "<polygon class=\"publication" << (beam.flagged ? " flagged" : "") << "\" points=\"" << num(x) << ','
                << num(y - kMarker) << ' ' << num(x + kMarker) << ',' << num(y) << ' ' << num(x) << ','
                << num(y + kMarker) << ' ' << num(x - kMarker) << ',' << num(y) << "\" fill=\"#9e9e9e\"" << extra
                << "/>\n";
        }
        const double ym = y_of(beam.median);
        svg << "<polygon class=\"year-median" << (beam.flagged ? " flagged" : "") << "\" points=\"" << num(x) << ','
            << num(ym - kMarker) << ' ' << num(x + kMarker) << ',' << num(ym + kMarker) << ' ' << num(x - kMarker)
            << ',' << num(ym + kMarker) << "\" fill=\"#cc0000\"" << extra << "/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_beam_csv(const BeamPlotDataset& dataset, std::ostream& out) {
    out << "year,percentile\n";
    for (const auto& [year, beam] : dataset.per_year)
        for (double p : beam.percentiles) out << year << ',' << text::format_fixed(p, 4) << '\n';
}

// ---------------------------------------------------------------------------
// Pipeline

IndicatorReport build_report(const ResearcherProfile& profile, const ReferenceSetCollection& refsets,
                             const JournalRanking& journals, const EvaluationOptions& options) {
    IndicatorReport r;
    r.researcher = profile.name;
    r.census_year = profile.census_year;
    r.options = options;
    r.productivity = productivity_summary(profile, options.doc_types);
    for (const auto& p : profile.publications) ++r.publications_per_year[p.year];

    const auto substantive = filter_substantive(profile, options.doc_types);
    r.assignments = assign_percentiles(profile, refsets, {options.exclude_recent_years, options.field_choice, options.doc_types});
    const WindowOptions window{profile.census_year, options.exclude_recent_years};
    r.impact = impact_summary(substantive, profile, r.assignments, r.productivity.years_active, window,
                              options.self_cite_threshold);
    r.journal_table = mean_njp(profile, journals);

    int covered = 0, recent = 0;
    for (const auto& a : r.assignments) {
        if (!a.covered) continue;
        ++covered;
        if (in_recent_window(a.year_used, profile.census_year, options.exclude_recent_years)) ++recent;
    }
    if (covered > 0) r.beam = beam_plot_dataset(r.assignments, profile.census_year, options.exclude_recent_years);

    auto& w = r.warnings;
    if (r.productivity.substantive_total < kMinimumReliableSet)
        w.push_back("only " + std::to_string(r.productivity.substantive_total) +
                    " publications of the analysed document types; about " + std::to_string(kMinimumReliableSet) +
                    " are needed for reliable citation indicators");
    if (!r.impact.self_citation_known)
        w.push_back("no self-citation data (citing_records or self_citation_count) in the analysed publications");
    else if (r.impact.self_citation_flag)
        w.push_back("self-citation rate " + text::format_fixed(100 * r.impact.self_citation_rate, 1) +
                    "% exceeds the " + text::format_fixed(100 * options.self_cite_threshold, 1) + "% threshold");
    const auto uncovered = static_cast<int>(r.assignments.size()) - covered;
    if (covered == 0)
        w.push_back("no percentile coverage: none of the " + std::to_string(r.assignments.size()) +
                    " analysed publications matches a reference set");
    else if (uncovered > 0)
        w.push_back(std::to_string(uncovered) + " of " + std::to_string(r.assignments.size()) +
                    " analysed publications have no matching reference set and no percentile");
    if (r.journal_table.covered_pubs == 0)
        w.push_back("no journal coverage: no publication appeared in a journal of the journal table");
    else if (r.journal_table.uncovered_pubs > 0)
        w.push_back(std::to_string(r.journal_table.uncovered_pubs) + " publications in " +
                    std::to_string(r.journal_table.uncovered_journals.size()) +
                    " journals missing from the journal table are excluded from the NJP");
    if (recent > 0)
        w.push_back(std::to_string(recent) + " percentiles from " +
                    (options.exclude_recent_years == 1
                         ? std::to_string(profile.census_year)
                         : std::to_string(profile.census_year - options.exclude_recent_years + 1) + "-" +
                               std::to_string(profile.census_year)) +
                    " are shown but excluded from aggregate percentile indicators (citation window too short)");
    return r;
}

// ---------------------------------------------------------------------------
// Table

namespace {

std::string plural_label(DocKind k) {
    switch (k) {
        case DocKind::Article: return "articles";
        case DocKind::Editorial: return "editorials";
        case DocKind::Letter: return "letters";
        case DocKind::MeetingAbstract: return "meeting abstracts";
        case DocKind::NewsItem: return "news items";
        case DocKind::Note: return "notes";
        case DocKind::ProceedingsPaper: return "proceedings papers";
        case DocKind::Review: return "reviews";
        case DocKind::Other: return "other documents";
    }
    return "documents";
}

std::string substantive_label(const DocTypeSet& set) {
    std::vector<std::string> names;
    // Table order: articles first, then alphabetical.
    for (auto k : {DocKind::Article, DocKind::Editorial, DocKind::Letter, DocKind::MeetingAbstract, DocKind::NewsItem,
                   DocKind::Note, DocKind::ProceedingsPaper, DocKind::Review, DocKind::Other})
        if (set.contains(k)) names.push_back(plural_label(k));
    std::string out = "Number of ";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += (i + 1 == names.size()) ? " and " : ", ";
        out += names[i];
    }
    return out;
}

std::string pct(double fraction_percent) { return text::format_fixed(fraction_percent, 1) + "%"; }
const std::string kNotAvailable = "n/a";

}  // namespace

IndicatorTable indicator_table(std::span<const IndicatorReport> reports) {
    IndicatorTable t;
    std::set<DocType> types;
    for (const auto& r : reports) {
        t.columns.push_back(r.researcher);
        for (const auto& [type, count] : r.productivity.counts_by_type) types.insert(type);
    }
    auto add = [&](std::string label, auto cell) {
        IndicatorTable::Row row{std::move(label), {}};
        for (const auto& r : reports) row.cells.push_back(cell(r));
        t.rows.push_back(std::move(row));
    };
    auto section = [&](std::string label) { t.rows.push_back({std::move(label), {}}); };
    auto integer = [](auto v) { return std::to_string(v); };

    section("Productivity");
    for (const auto& type : types) {
        add(type.display_name(), [&](const IndicatorReport& r) {
            auto it = r.productivity.counts_by_type.find(type);
            return std::to_string(it == r.productivity.counts_by_type.end() ? 0 : it->second);
        });
    }
    add("Total publications", [&](const IndicatorReport& r) { return integer(r.productivity.total); });
    bool same_types = std::all_of(reports.begin(), reports.end(), [&](const IndicatorReport& r) {
        return r.options.doc_types == reports.front().options.doc_types;
    });
    add(reports.empty() || !same_types ? "Number of publications of the analysed document types"
                                       : substantive_label(reports.front().options.doc_types),
        [&](const IndicatorReport& r) { return integer(r.productivity.substantive_total); });
    add("Number of publications as first author", [&](const IndicatorReport& r) { return integer(r.productivity.first_author); });
    add("Number of publications with no co-authors", [&](const IndicatorReport& r) { return integer(r.productivity.solo_author); });
    add("Year of first publication", [&](const IndicatorReport& r) { return integer(r.productivity.first_year); });
    bool same_census = std::all_of(reports.begin(), reports.end(),
                                   [&](const IndicatorReport& r) { return r.census_year == reports.front().census_year; });
    add("Number of years between the first publication and " +
            (reports.empty() || !same_census ? std::string("the census year") : std::to_string(reports.front().census_year)),
        [&](const IndicatorReport& r) { return integer(r.productivity.years_active); });
    add("Number of publications per year (arithmetic average)",
        [&](const IndicatorReport& r) { return text::format_fixed(r.productivity.pubs_per_year, 1); });

    section("Impact");
    add("Total citations", [&](const IndicatorReport& r) { return integer(r.impact.total_citations); });
    add("Number of citations per publication (arithmetic average)",
        [&](const IndicatorReport& r) { return text::format_fixed(r.impact.citations_per_pub, 1); });
    add("Proportion of self-citations in total citations", [&](const IndicatorReport& r) {
        return r.impact.self_citation_known ? pct(100 * r.impact.self_citation_rate) : kNotAvailable;
    });
    add("h index", [&](const IndicatorReport& r) { return integer(r.impact.h_index); });
    add("m quotient", [&](const IndicatorReport& r) { return text::format_fixed(r.impact.m_quotient, 1); });
    add("Average percentile (median)", [&](const IndicatorReport& r) {
        return r.impact.median_percentile ? text::format_fixed(*r.impact.median_percentile, 1) : kNotAvailable;
    });
    add("P_top10%", [&](const IndicatorReport& r) { return integer(r.impact.p_top10); });
    add("PP_top10%", [&](const IndicatorReport& r) { return r.impact.pp_top10 ? pct(*r.impact.pp_top10) : kNotAvailable; });
    add("P_top10% quotient", [&](const IndicatorReport& r) { return text::format_fixed(r.impact.p_top10_quotient, 1); });
    add("Publications with a percentile", [&](const IndicatorReport& r) { return integer(r.impact.percentile_coverage); });
    add("Normalized Journal Position (mean over journals)", [&](const IndicatorReport& r) {
        return r.journal_table.mean ? text::format_fixed(*r.journal_table.mean, 2) : kNotAvailable;
    });

    for (const auto& r : reports)
        for (const auto& w : r.warnings) t.footnotes.push_back((reports.size() > 1 ? r.researcher + ": " : "") + w);
    return t;
}

std::string render_table_text(const IndicatorTable& table) {
    std::size_t label_w = std::string_view("Indicator").size();
    for (const auto& row : table.rows) label_w = std::max(label_w, row.label.size());
    std::vector<std::size_t> col_w;
    for (const auto& c : table.columns) col_w.push_back(c.size());
    for (const auto& row : table.rows)
        for (std::size_t i = 0; i < row.cells.size() && i < col_w.size(); ++i) col_w[i] = std::max(col_w[i], row.cells[i].size());

    std::ostringstream out;
    auto pad_right = [](const std::string& s, std::size_t w) { return s + std::string(w - std::min(w, s.size()), ' '); };
    auto pad_left = [](const std::string& s, std::size_t w) { return std::string(w - std::min(w, s.size()), ' ') + s; };
    std::string header = pad_right("Indicator", label_w);
    for (std::size_t i = 0; i < table.columns.size(); ++i) header += "  " + pad_left(table.columns[i], col_w[i]);
    out << header << '\n' << std::string(header.size(), '-') << '\n';
    for (const auto& row : table.rows) {
        if (row.cells.empty()) {
            out << row.label << '\n';
            continue;
        }
        std::string line = pad_right(row.label, label_w);
        for (std::size_t i = 0; i < row.cells.size(); ++i) line += "  " + pad_left(row.cells[i], col_w[i]);
        out << line << '\n';
    }
    if (!table.footnotes.empty()) {
        out << '\n';
        for (std::size_t i = 0; i < table.footnotes.size(); ++i) out << '[' << i + 1 << "] " << table.footnotes[i] << '\n';
    }
    return out.str();
}

void write_table_csv(const IndicatorTable& table, std::ostream& out) {
    std::vector<std::string> header{"indicator"};
    header.insert(header.end(), table.columns.begin(), table.columns.end());
    text::write_csv_row(out, header);
    for (const auto& row : table.rows) {
        std::vector<std::string> cells{row.label};
        if (row.cells.empty())
            cells.resize(header.size());
        else
            cells.insert(cells.end(), row.cells.begin(), row.cells.end());
        text::write_csv_row(out, cells);
    }
}

// ---------------------------------------------------------------------------
// JSON

namespace {

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json to_json(const IndicatorReport& r) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["researcher"] = r.researcher;
    j["census_year"] = r.census_year;
    j["settings"] = {
        {"doc_types", r.options.doc_types.to_string()},
        {"exclude_recent_years", r.options.exclude_recent_years},
        {"field_choice", r.options.field_choice == FieldChoice::Average ? "average" : "first"},
        {"self_cite_threshold", r.options.self_cite_threshold},
    };

    const auto& p = r.productivity;
    ordered_json counts = ordered_json::object();
    for (const auto& [type, count] : p.counts_by_type) counts[type.display_name()] = count;
    j["productivity"] = {
        {"counts_by_type", counts},
        {"total", p.total},
        {"substantive_total", p.substantive_total},
        {"first_author", p.first_author},
        {"solo_author", p.solo_author},
        {"first_year", p.first_year},
        {"years_active", p.years_active},
        {"pubs_per_year", p.pubs_per_year},
    };
    ordered_json per_year = ordered_json::array();
    for (const auto& [year, count] : r.publications_per_year) per_year.push_back({{"year", year}, {"count", count}});
    j["productivity"]["publications_per_year"] = per_year;

    const auto& i = r.impact;
    j["impact"] = {
        {"total_citations", i.total_citations},
        {"citations_per_pub", i.citations_per_pub},
        {"self_citation_rate", i.self_citation_known ? ordered_json(i.self_citation_rate) : ordered_json(nullptr)},
        {"self_citation_flag", i.self_citation_flag},
        {"h_index", i.h_index},
        {"m_quotient", i.m_quotient},
        {"median_percentile", optional_number(i.median_percentile)},
        {"p_top10", i.p_top10},
        {"pp_top10", optional_number(i.pp_top10)},
        {"p_top10_quotient", i.p_top10_quotient},
        {"percentile_coverage", i.percentile_coverage},
    };

    const auto& jt = r.journal_table;
    ordered_json journals = ordered_json::array();
    for (const auto& e : jt.journals) journals.push_back({{"journal", e.journal}, {"pub_count", e.pub_count}, {"njp", e.njp}});
    j["journal_table"] = {
        {"mean_njp", optional_number(jt.mean)},
        {"covered_pubs", jt.covered_pubs},
        {"uncovered_pubs", jt.uncovered_pubs},
        {"uncovered_journals", jt.uncovered_journals},
        {"journals", journals},
    };
    j["warnings"] = r.warnings;

    if (r.beam) {
        ordered_json years = ordered_json::array();
        for (const auto& [year, beam] : r.beam->per_year)
            years.push_back({{"year", year}, {"median", beam.median}, {"flagged", beam.flagged}, {"percentiles", beam.percentiles}});
        j["beam_plot"] = {
            {"y_axis", "inverted"},
            {"reference_line", r.beam->reference_line},
            {"overall_median", r.beam->overall_median},
            {"census_year_flagged", r.beam->census_year_flagged},
            {"years", years},
        };
    } else {
        j["beam_plot"] = nullptr;
    }

    ordered_json assignments = ordered_json::array();
    for (const auto& a : r.assignments)
        assignments.push_back({{"id", a.publication_id},
                               {"percentile", optional_number(a.percentile)},
                               {"field_used", a.field_used},
                               {"year", a.year_used},
                               {"covered", a.covered},
                               {"recent", a.recent}});
    j["percentiles"] = assignments;
    return j;
}

}  // namespace

std::string report_json(const IndicatorReport& report) { return to_json(report).dump(2) + "\n"; }

std::string reports_json(std::span<const IndicatorReport> reports) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["reports"] = arr;
    return j.dump(2) + "\n";
}

void write_journal_table_csv(const JournalSummary& summary, std::ostream& out) {
    out << "journal,pub_count,njp\n";
    for (const auto& j : summary.journals)
        text::write_csv_row(out, {j.journal, std::to_string(j.pub_count), text::format_fixed(j.njp, 3)});
}

void write_doc_type_csv(const ProductivitySummary& productivity, std::ostream& out) {
    out << "doc_type,count\n";
    for (const auto& [type, count] : productivity.counts_by_type)
        text::write_csv_row(out, {type.display_name(), std::to_string(count)});
}

void write_year_counts_csv(const std::map<int, int>& per_year, std::ostream& out) {
    out << "year,count\n";
    for (const auto& [year, count] : per_year) out << year << ',' << count << '\n';
}

}  // namespace scholarmeter
