#include "scholarmeter/cli.hpp"
#include "scholarmeter/corpus.hpp"
#include "scholarmeter/indicators.hpp"
#include "scholarmeter/journals.hpp"
#include "scholarmeter/refsets.hpp"
#include "scholarmeter/report.hpp"
#include "scholarmeter/text.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fstream>
#include <sstream>

namespace py = pybind11;
namespace sm = scholarmeter;

namespace {

sm::ResearcherProfile profile_from_text(const std::string& content, const std::string& format, int census_year,
                                        const std::string& name, const std::vector<std::string>& aliases) {
    std::istringstream in(content);
    auto fmt = sm::text::to_lower_ascii(format) == "csv" ? sm::InputFormat::Csv : sm::InputFormat::Jsonl;
    return sm::parse_publications(in, fmt, {name, aliases, census_year});
}

std::string evaluate_json(const std::string& pubs, const std::string& refsets, const std::optional<std::string>& journals,
                          int census_year, const std::string& doc_types, int exclude_recent,
                          const std::string& field_choice, double self_cite_threshold) {
    std::ifstream in(pubs, std::ios::binary);
    if (!in) throw sm::ParseError("cannot open " + pubs);
    auto format = sm::text::to_lower_ascii(std::filesystem::path(pubs).extension().string()) == ".csv"
                      ? sm::InputFormat::Csv
                      : sm::InputFormat::Jsonl;
    auto profile = sm::parse_publications(in, format, {{}, {}, census_year});
    auto sets = sm::load_reference_sets(refsets);
    sm::JournalRanking ranking;
    if (journals) {
        std::ifstream jin(*journals, std::ios::binary);
        if (!jin) throw sm::ParseError("cannot open " + *journals);
        auto table = sm::load_journal_table(jin);
        ranking = sm::JournalRanking::from_table(table);
    }
    sm::EvaluationOptions options;
    if (!doc_types.empty()) options.doc_types = sm::DocTypeSet::parse(doc_types);
    options.exclude_recent_years = exclude_recent;
    options.field_choice = field_choice == "first" ? sm::FieldChoice::First : sm::FieldChoice::Average;
    options.self_cite_threshold = self_cite_threshold;
    return sm::report_json(sm::build_report(profile, sets, ranking, options));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bibliometric indicators for individual researchers";

    py::register_exception<sm::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<sm::ValidationError>(m, "ValidationError", PyExc_ValueError);

    m.def("normalize_doc_type", [](const std::string& raw) { return sm::normalize_doc_type(raw).display_name(); },
          py::arg("raw"), "Canonical document type label; unknown labels are returned verbatim.");
    m.def("normalize_author", &sm::text::normalize_author, py::arg("name"));

    m.def("parse_publications",
          [](const std::string& content, const std::string& format, int census_year, const std::string& name,
             const std::vector<std::string>& aliases) {
              auto profile = profile_from_text(content, format, census_year, name, aliases);
              py::dict d;
              d["name"] = profile.name;
              d["census_year"] = profile.census_year;
              d["publications"] = profile.publications.size();
              d["substantive"] = sm::filter_substantive(profile).size();
              py::list ids;
              for (const auto& p : profile.publications) ids.append(p.id);
              d["ids"] = ids;
              return d;
          },
          py::arg("content"), py::arg("format") = "jsonl", py::arg("census_year") = 0, py::arg("name") = "",
          py::arg("aliases") = std::vector<std::string>{});

    py::class_<sm::ReferenceSet>(m, "ReferenceSet")
        .def_property_readonly("field", &sm::ReferenceSet::field)
        .def_property_readonly("year", &sm::ReferenceSet::year)
        .def_property_readonly("size", &sm::ReferenceSet::size)
        .def_property_readonly("histogram", &sm::ReferenceSet::histogram)
        .def("mean", &sm::ReferenceSet::mean)
        .def("__len__", &sm::ReferenceSet::size)
        .def("__repr__", [](const sm::ReferenceSet& s) {
            return "<ReferenceSet " + s.field() + " " + std::to_string(s.year()) + " n=" + std::to_string(s.size()) + ">";
        });

    m.def("build_reference_set",
          [](std::string field, int year, const std::vector<std::int64_t>& counts) {
              return sm::build_reference_set(std::move(field), year, counts);
          },
          py::arg("field"), py::arg("year"), py::arg("counts"));
    m.def("percentile_of", &sm::percentile_of, py::arg("citations"), py::arg("refset"));
    m.def("generate_synthetic_refset",
          [](std::string field, int year, std::int64_t n, const std::string& shape, std::uint64_t seed) {
              return sm::generate_synthetic_refset(std::move(field), year, n, sm::parse_shape(shape), seed);
          },
          py::arg("field"), py::arg("year"), py::arg("n"), py::arg("shape") = "lognormal:1.0,1.2", py::arg("seed") = 7);

    m.def("h_index", [](const std::vector<std::int64_t>& counts) { return sm::h_index(counts); }, py::arg("citation_counts"));
    m.def("m_quotient", &sm::m_quotient, py::arg("h"), py::arg("years_active"));
    m.def("median", &sm::median, py::arg("values"));

    m.def("category_rank_fraction", &sm::category_rank_fraction, py::arg("rank"), py::arg("size"));
    m.def("journal_njp",
          [](const std::string& csv) {
              std::istringstream in(csv);
              auto table = sm::load_journal_table(in);
              auto ranked = sm::rank_categories(table);
              std::map<std::string, double> out;
              for (const auto& record : table) out[record.journal] = sm::njp_of_journal(record.journal, ranked);
              return out;
          },
          py::arg("journals_csv"), "NJP of every journal in a journals.csv text.");

    m.def("evaluate_json", &evaluate_json, py::arg("pubs"), py::arg("refsets"), py::arg("journals") = py::none(),
          py::arg("census_year") = 0, py::arg("doc_types") = "", py::arg("exclude_recent") = 1,
          py::arg("field_choice") = "average", py::arg("self_cite_threshold") = 0.30);

    m.def("render_beam_svg",
          [](const std::map<int, std::vector<double>>& percentiles_by_year, int census_year, int exclude_recent,
             int width, int height) {
              std::vector<sm::PercentileAssignment> assignments;
              for (const auto& [year, values] : percentiles_by_year)
                  for (double p : values) assignments.push_back({"", p, "", year, true, false});
              auto ds = sm::beam_plot_dataset(assignments, census_year, exclude_recent);
              return sm::render_beam_svg(ds, {width, height, {}});
          },
          py::arg("percentiles_by_year"), py::arg("census_year"), py::arg("exclude_recent") = 1, py::arg("width") = 800,
          py::arg("height") = 480);

    m.def("run_cli",
          [](const std::vector<std::string>& args) {
              std::vector<const char*> argv{"scholarmeter"};
              for (const auto& a : args) argv.push_back(a.c_str());
              std::ostringstream out, err;
              int code = sm::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Run the command-line interface; returns (exit_code, stdout, stderr).");
}
