#include "scholarmeter/cli.hpp"

#include "scholarmeter/journals.hpp"
#include "scholarmeter/report.hpp"
#include "scholarmeter/text.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>

namespace scholarmeter::cli {

namespace fs = std::filesystem;

namespace {

InputFormat format_of(const fs::path& path) {
    auto ext = text::to_lower_ascii(path.extension().string());
    return ext == ".csv" ? InputFormat::Csv : InputFormat::Jsonl;
}

ResearcherProfile load_profile(const fs::path& path, const RunConfig& config) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    ProfileOptions options{config.name, config.aliases, config.census_year};
    auto profile = parse_publications(in, format_of(path), options);
    if (profile.name.empty()) profile.name = path.stem().string();
    return profile;
}

JournalRanking load_ranking(const RunConfig& config) {
    if (!config.journals_path) return {};
    std::ifstream in(*config.journals_path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + config.journals_path->string());
    auto table = load_journal_table(in);
    return JournalRanking::from_table(table);
}

ReferenceSetCollection load_refsets(const RunConfig& config) { return load_reference_sets(*config.refsets_path); }

EvaluationOptions evaluation_options(const RunConfig& config) {
    return {config.doc_types, config.exclude_recent_years, config.field_choice, config.self_cite_threshold};
}

bool wants(const RunConfig& config, OutputFormat f) { return config.formats.contains(f); }

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path.string());
    out << content;
    if (!out) throw ParseError("write failed for " + path.string());
}

template <typename Fn>
void write_with(const fs::path& path, Fn&& fn) {
    std::ostringstream buf;
    fn(buf);
    write_file(path, buf.str());
}

void emit_warnings(const IndicatorReport& report, std::ostream& err) {
    for (const auto& w : report.warnings) err << "warning: " << report.researcher << ": " << w << '\n';
}

void ensure_output_dir(const RunConfig& config) {
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw ParseError("cannot create output directory " + config.output_dir.string() + ": " + ec.message());
}

void write_beam(const IndicatorReport& report, const RunConfig& config) {
    if (!report.beam) return;
    if (wants(config, OutputFormat::Svg))
        write_file(config.output_dir / "beam.svg",
                   render_beam_svg(*report.beam, {config.svg_width, config.svg_height, report.researcher}));
    if (wants(config, OutputFormat::Csv))
        write_with(config.output_dir / "beam.csv", [&](std::ostream& o) { write_beam_csv(*report.beam, o); });
}

int validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    int status = kExitOk;
    for (const auto& path : config.pubs_paths) {
        auto profile = load_profile(path, config);
        auto substantive = filter_substantive(profile, config.doc_types);
        out << path.string() << ": " << profile.publications.size() << " publications ("
            << substantive.size() << " of the analysed document types), census year " << profile.census_year << '\n';
        if (static_cast<int>(substantive.size()) < kMinimumReliableSet)
            err << "warning: " << profile.name << ": only " << substantive.size()
                << " publications of the analysed document types; about " << kMinimumReliableSet
                << " are needed for reliable citation indicators\n";
        if (config.personal_list_path) {
            std::ifstream in(*config.personal_list_path, std::ios::binary);
            if (!in) throw ParseError("cannot open " + config.personal_list_path->string());
            auto personal = parse_personal_list(in);
            auto report = cross_check(profile, personal);
            out << "cross-check: matched=" << report.matched << " only_in_search=" << report.only_in_search.size()
                << " only_in_personal=" << report.only_in_personal.size() << '\n';
            for (const auto& s : report.only_in_search) out << "  only in search: " << s << '\n';
            for (const auto& s : report.only_in_personal) out << "  only in personal list: " << s << '\n';
            if (!report.consistent()) {
                err << "error: searched publications and personal list disagree\n";
                status = kExitValidation;
            }
            if (!config.output_dir.empty() && wants(config, OutputFormat::Json)) {
                ensure_output_dir(config);
                nlohmann::ordered_json j;
                j["matched"] = report.matched;
                j["only_in_search"] = report.only_in_search;
                j["only_in_personal"] = report.only_in_personal;
                write_file(config.output_dir / "reconciliation.json", j.dump(2) + "\n");
            }
        }
    }
    if (config.refsets_path) {
        auto sets = load_refsets(config);
        out << "reference sets: " << sets.size() << '\n';
    }
    if (config.journals_path) {
        auto ranking = load_ranking(config);
        out << "journal categories: " << ranking.categories().size() << '\n';
    }
    return status;
}

std::vector<IndicatorReport> evaluate_all(const RunConfig& config, std::ostream& err, int& status) {
    const auto refsets = load_refsets(config);
    const auto ranking = load_ranking(config);
    std::vector<IndicatorReport> reports;
    for (const auto& path : config.pubs_paths) {
        auto profile = load_profile(path, config);
        reports.push_back(build_report(profile, refsets, ranking, evaluation_options(config)));
        emit_warnings(reports.back(), err);
        if (reports.back().impact.percentile_coverage == 0) {
            err << "error: " << reports.back().researcher << ": no percentile coverage\n";
            status = kExitValidation;
        }
    }
    return reports;
}

int evaluate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    int status = kExitOk;
    auto reports = evaluate_all(config, err, status);
    if (status != kExitOk) return status;
    const auto& report = reports.front();
    ensure_output_dir(config);
    const auto table = indicator_table(reports);
    if (wants(config, OutputFormat::Json)) write_file(config.output_dir / "report.json", report_json(report));
    if (wants(config, OutputFormat::Csv)) {
        write_with(config.output_dir / "report.csv", [&](std::ostream& o) { write_table_csv(table, o); });
        write_with(config.output_dir / "journal_table.csv",
                   [&](std::ostream& o) { write_journal_table_csv(report.journal_table, o); });
        write_with(config.output_dir / "doc_types.csv", [&](std::ostream& o) { write_doc_type_csv(report.productivity, o); });
        write_with(config.output_dir / "publications_per_year.csv",
                   [&](std::ostream& o) { write_year_counts_csv(report.publications_per_year, o); });
    }
    if (wants(config, OutputFormat::Txt)) write_file(config.output_dir / "table.txt", render_table_text(table));
    write_beam(report, config);
    out << render_table_text(table);
    return kExitOk;
}

int compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
    int status = kExitOk;
    auto reports = evaluate_all(config, err, status);
    if (status != kExitOk) return status;
    ensure_output_dir(config);
    const auto table = indicator_table(reports);
    if (wants(config, OutputFormat::Json)) write_file(config.output_dir / "report.json", reports_json(reports));
    if (wants(config, OutputFormat::Csv))
        write_with(config.output_dir / "report.csv", [&](std::ostream& o) { write_table_csv(table, o); });
    if (wants(config, OutputFormat::Txt)) write_file(config.output_dir / "table.txt", render_table_text(table));
    out << render_table_text(table);
    return kExitOk;
}

int plot(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto refsets = load_refsets(config);
    auto profile = load_profile(config.pubs_paths.front(), config);
    auto assignments = assign_percentiles(profile, refsets,
                                          {config.exclude_recent_years, config.field_choice, config.doc_types});
    if (std::none_of(assignments.begin(), assignments.end(), [](const auto& a) { return a.covered; })) {
        err << "error: " << profile.name << ": no percentile coverage\n";
        return kExitValidation;
    }
    auto dataset = beam_plot_dataset(assignments, profile.census_year, config.exclude_recent_years);
    ensure_output_dir(config);
    IndicatorReport shell;
    shell.researcher = profile.name;
    shell.beam = dataset;
    write_beam(shell, config);
    out << "beam plot: " << dataset.per_year.size() << " years, overall median "
        << text::format_fixed(dataset.overall_median, 1) << '\n';
    return kExitOk;
}

int synth(const RunConfig& config, std::ostream& out) {
    auto set = generate_synthetic_refset(config.synth_field, config.synth_year, config.synth_n, config.synth_shape,
                                         config.seed);
    ensure_output_dir(config);
    auto path = config.output_dir / (config.synth_field + "__" + std::to_string(config.synth_year) + ".csv");
    write_with(path, [&](std::ostream& o) { write_reference_set(set, o); });
    std::int64_t below = 0;
    const double mean = set.mean();
    for (auto [count, freq] : set.histogram())
        if (static_cast<double>(count) < mean) below += freq;
    out << path.string() << ": n=" << set.size() << " shape=" << shape_to_string(config.synth_shape)
        << " seed=" << config.seed << " mean=" << text::format_fixed(mean, 3) << " below_mean="
        << text::format_fixed(100.0 * static_cast<double>(below) / static_cast<double>(set.size()), 1) << "%\n";
    return kExitOk;
}

}  // namespace

std::vector<std::string> check_config(Command command, const RunConfig& config) {
    std::vector<std::string> problems;
    if (config.self_cite_threshold < 0 || config.self_cite_threshold > 1)
        problems.push_back("--self-cite-threshold must lie in [0, 1]");
    if (config.exclude_recent_years < 0) problems.push_back("--exclude-recent must be >= 0");
    if (config.census_year != 0 && (config.census_year < kEarliestYear || config.census_year > 9999))
        problems.push_back("--census-year " + std::to_string(config.census_year) + " is not a plausible year");
    if (config.doc_types.empty()) problems.push_back("--doc-types must name at least one type");
    if (config.svg_width <= 0 || config.svg_height <= 0) problems.push_back("SVG canvas must have positive size");
    switch (command) {
        case Command::Validate:
            if (config.pubs_paths.empty()) problems.push_back("--pubs is required");
            break;
        case Command::Evaluate:
        case Command::Plot:
            if (config.pubs_paths.size() != 1) problems.push_back("exactly one --pubs is required");
            if (!config.refsets_path) problems.push_back("--refsets is required");
            break;
        case Command::Compare:
            if (config.pubs_paths.size() < 2) problems.push_back("compare needs at least two --pubs");
            if (!config.refsets_path) problems.push_back("--refsets is required");
            break;
        case Command::Synth:
            if (config.synth_n < 1) problems.push_back("--n must be >= 1");
            break;
    }
    return problems;
}

int execute(Command command, const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (auto problems = check_config(command, config); !problems.empty()) {
        for (const auto& p : problems) err << "error: " << p << '\n';
        return kExitValidation;
    }
    try {
        switch (command) {
            case Command::Validate: return validate(config, out, err);
            case Command::Evaluate: return evaluate(config, out, err);
            case Command::Compare: return compare(config, out, err);
            case Command::Plot: return plot(config, out, err);
            case Command::Synth: return synth(config, out);
        }
    } catch (const ValidationError& e) {
        for (const auto& d : e.diagnostics()) err << "error: " << d.to_string() << '\n';
        return kExitValidation;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitIo;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bibliometric evaluation of individual researchers", "scholarmeter"};
    app.require_subcommand(1);

    RunConfig config;
    std::vector<std::string> pubs;
    std::string refsets, journals, personal, doc_types, field_choice = "average", formats, shape = "lognormal:1.0,1.2";
    std::string out_dir;
    std::optional<std::uint64_t> seed;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--pubs", pubs, "Publication list (.jsonl or .csv); repeat for compare");
        sub->add_option("--refsets", refsets, "Directory of <field>__<year>.csv files or a combined CSV");
        sub->add_option("--journals", journals, "journals.csv (journal, category, jif)");
        sub->add_option("--personal-list", personal, "personal_list.csv (id, title, year)");
        sub->add_option("--census-year", config.census_year, "Evaluation cutoff year");
        sub->add_option("--name", config.name, "Researcher name (overrides the input header)");
        sub->add_option("--alias", config.aliases, "Alternative author spelling; repeatable");
        sub->add_option("--doc-types", doc_types, "Comma list of analysed document types");
        sub->add_option("--exclude-recent", config.exclude_recent_years, "Recent years left out of percentile aggregates");
        sub->add_option("--field-choice", field_choice, "first|average for multi-category publications");
        sub->add_option("--self-cite-threshold", config.self_cite_threshold, "Self-citation share that raises a warning");
        sub->add_option("--out", out_dir, "Output directory");
        sub->add_option("--format", formats, "Comma list of json,csv,txt,svg");
        sub->add_option("--svg-width", config.svg_width, "Beam plot width in pixels");
        sub->add_option("--svg-height", config.svg_height, "Beam plot height in pixels");
    };

    std::map<CLI::App*, Command> commands;
    commands[app.add_subcommand("validate", "Check inputs and cross-check against a personal list")] = Command::Validate;
    commands[app.add_subcommand("evaluate", "Full indicator report for one researcher")] = Command::Evaluate;
    commands[app.add_subcommand("compare", "Side-by-side indicator table for several researchers")] = Command::Compare;
    commands[app.add_subcommand("plot", "Beam plot outputs only")] = Command::Plot;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic reference set");
    commands[synth_cmd] = Command::Synth;
    for (auto& [sub, cmd] : commands) add_common(sub);
    synth_cmd->add_option("--field", config.synth_field, "Field name");
    synth_cmd->add_option("--year", config.synth_year, "Publication year");
    synth_cmd->add_option("--n", config.synth_n, "Number of counts");
    synth_cmd->add_option("--shape", shape, "lognormal:MU,SIGMA or zipf:S");
    synth_cmd->add_option("--seed", seed, "Random seed (SCHOLARMETER_SEED overrides)");

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        app.exit(e, out, err);
        return kExitIo;
    }

    Command command = Command::Validate;
    for (auto& [sub, cmd] : commands)
        if (sub->parsed()) command = cmd;

    try {
        for (const auto& p : pubs) config.pubs_paths.emplace_back(p);
        if (!refsets.empty()) config.refsets_path = refsets;
        if (!journals.empty()) config.journals_path = journals;
        if (!personal.empty()) config.personal_list_path = personal;
        if (!doc_types.empty()) config.doc_types = DocTypeSet::parse(doc_types);
        auto fc = text::to_lower_ascii(text::trim(field_choice));
        if (fc == "first")
            config.field_choice = FieldChoice::First;
        else if (fc == "average")
            config.field_choice = FieldChoice::Average;
        else
            throw ParseError("--field-choice must be first or average");
        if (!formats.empty()) {
            config.formats.clear();
            for (const auto& f : text::split(formats, ',')) {
                auto name = text::to_lower_ascii(text::trim(f));
                if (name == "json") config.formats.insert(OutputFormat::Json);
                else if (name == "csv") config.formats.insert(OutputFormat::Csv);
                else if (name == "txt") config.formats.insert(OutputFormat::Txt);
                else if (name == "svg") config.formats.insert(OutputFormat::Svg);
                else throw ParseError("unknown format '" + f + "'");
            }
        }
        if (!out_dir.empty())
            config.output_dir = out_dir;
        else if (command == Command::Validate)
            config.output_dir.clear();
        config.synth_shape = parse_shape(shape);
        if (seed) config.seed = *seed;
        if (const char* env = std::getenv(kSeedEnvironmentVariable); env && *env) {
            std::string_view v(env);
            std::uint64_t parsed = 0;
            auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), parsed);
            if (ec != std::errc() || ptr != v.data() + v.size())
                throw ParseError(std::string(kSeedEnvironmentVariable) + " is not an unsigned integer: '" + env + "'");
            config.seed = parsed;
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return execute(command, config, out, err);
}

}  // namespace scholarmeter::cli
