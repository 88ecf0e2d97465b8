#include "scholarmeter/cli.hpp"
#include "support.hpp"

#include <nlohmann/json.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>

using namespace scholarmeter;
namespace fs = std::filesystem;
using testsupport::fixture;
using testsupport::slurp;

namespace {

struct Run {
    int code = -1;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::vector<const char*> argv{"scholarmeter"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("scholarmeter_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::vector<std::string> evaluate_args(const std::string& person, const fs::path& out) {
    return {"evaluate", "--pubs", fixture(person).string(), "--refsets", fixture("refsets.csv").string(),
            "--journals", fixture("journals.csv").string(), "--out", out.string()};
}

// Every file under `dir`, by relative name.
std::map<std::string, std::string> outputs(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file()) files[fs::relative(e.path(), dir).string()] = slurp(e.path());
    return files;
}

std::map<std::string, std::string> evaluate_with(const std::string& person, std::vector<std::string> extra,
                                                 const std::string& tag) {
    auto dir = scratch(tag);
    auto args = evaluate_args(person, dir);
    args.insert(args.end(), extra.begin(), extra.end());
    auto r = run(args);
    EXPECT_EQ(r.code, 0) << tag << ": " << r.err;
    return outputs(dir);
}

}  // namespace

TEST(Cli, EvaluatePerson1WritesReport) {
    auto dir = scratch("p1");
    auto r = run(evaluate_args("person1.jsonl", dir));
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* f : {"report.json", "report.csv", "table.txt", "beam.svg", "beam.csv", "journal_table.csv",
                          "doc_types.csv", "publications_per_year.csv"})
        EXPECT_TRUE(fs::exists(dir / f)) << f;
    auto j = nlohmann::json::parse(slurp(dir / "report.json"));
    EXPECT_EQ(j["schema_version"], 1);
    EXPECT_EQ(j["impact"]["h_index"], 54);
    EXPECT_EQ(j["impact"]["total_citations"], 15192);
    EXPECT_EQ(j["productivity"]["total"], 190);
    // warnings are echoed on stderr
    for (const auto& w : j["warnings"]) EXPECT_NE(r.err.find(w.get<std::string>()), std::string::npos);
}

TEST(Cli, ValidateWithMatchingPersonalList) {
    auto r = run({"validate", "--pubs", fixture("person1.jsonl").string(), "--personal-list",
                  fixture("person1_personal.csv").string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("matched=190"), std::string::npos);
}

TEST(Cli, ValidateWithShortPersonalListFails) {
    auto dir = scratch("short_list");
    fs::create_directories(dir);
    auto list = slurp(fixture("person1_personal.csv"));
    list = list.substr(0, list.rfind('\n', list.size() - 2) + 1);  // drop the last entry
    {
        std::ofstream(dir / "list.csv") << list;
    }
    auto r = run({"validate", "--pubs", fixture("person1.jsonl").string(), "--personal-list",
                  (dir / "list.csv").string(), "--out", dir.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("only_in_search=1"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir / "reconciliation.json"));
}

TEST(Cli, ZeroCoverageIsValidationFailure) {
    auto dir = scratch("nocov");
    fs::create_directories(dir);
    {
        std::ofstream(dir / "refsets.csv") << "field,year,citation_count,frequency\nBotany,2005,0,10\n";
    }
    auto r = run({"evaluate", "--pubs", fixture("person2.jsonl").string(), "--refsets", (dir / "refsets.csv").string(),
                  "--out", (dir / "out").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("no percentile coverage"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({"evaluate", "--pubs", fixture("person1.jsonl").string()}).code, 1);  // missing --refsets
    EXPECT_EQ(run({"evaluate", "--pubs", "/nonexistent.jsonl", "--refsets", fixture("refsets.csv").string()}).code, 2);
    auto base = evaluate_args("person1.jsonl", scratch("codes"));
    auto with = [&](std::vector<std::string> extra) {
        auto a = base;
        a.insert(a.end(), extra.begin(), extra.end());
        return run(a).code;
    };
    EXPECT_EQ(with({"--self-cite-threshold", "1.5"}), 1);
    EXPECT_EQ(with({"--exclude-recent", "-1"}), 1);
    EXPECT_EQ(with({"--census-year", "20"}), 1);
    EXPECT_EQ(with({"--census-year", "2005"}), 1);  // publications after the census year
    EXPECT_EQ(with({"--doc-types", "sonnet"}), 2);
    EXPECT_EQ(with({"--format", "pdf"}), 2);
    EXPECT_EQ(run({"compare", "--pubs", fixture("person1.jsonl").string(), "--refsets",
                   fixture("refsets.csv").string()}).code,
              1);
}

TEST(Cli, EveryKnobChangesAnOutput) {
    auto base = evaluate_with("person1.jsonl", {}, "knob_base");
    auto differs = [&](std::vector<std::string> extra, const std::string& tag) {
        return evaluate_with("person1.jsonl", extra, tag) != base;
    };
    EXPECT_TRUE(differs({"--census-year", "2013"}, "knob_census"));
    EXPECT_TRUE(differs({"--doc-types", "article,letter,note,proceedings paper,review"}, "knob_doctypes"));
    EXPECT_TRUE(differs({"--exclude-recent", "2"}, "knob_recent"));
    EXPECT_TRUE(differs({"--self-cite-threshold", "0.02"}, "knob_threshold"));
    EXPECT_TRUE(differs({"--name", "Someone Else"}, "knob_name"));
    EXPECT_TRUE(differs({"--svg-width", "640"}, "knob_width"));
    EXPECT_TRUE(differs({"--svg-height", "300"}, "knob_height"));
    EXPECT_TRUE(differs({"--format", "json"}, "knob_format"));

    // field choice only matters for publications in several covered categories
    auto two_avg = evaluate_with("two_fields.jsonl", {}, "knob_fc_avg");
    auto two_first = evaluate_with("two_fields.jsonl", {"--field-choice", "first"}, "knob_fc_first");
    EXPECT_NE(two_avg.at("report.json"), two_first.at("report.json"));

    // aliases drive first-author counts when the header carries none
    auto csv_args = [](const fs::path& out) {
        return std::vector<std::string>{"evaluate", "--pubs", fixture("person3.csv").string(), "--refsets",
                                        fixture("refsets.csv").string(), "--name", "Person 3", "--out",
                                        out.string(), "--format", "json"};
    };
    auto d1 = scratch("knob_alias_none"), d2 = scratch("knob_alias_some");
    ASSERT_EQ(run(csv_args(d1)).code, 0);
    auto with_alias = csv_args(d2);
    with_alias.insert(with_alias.end(), {"--alias", "Lindqvist, E."});
    ASSERT_EQ(run(with_alias).code, 0);
    auto j1 = nlohmann::json::parse(slurp(d1 / "report.json"));
    auto j2 = nlohmann::json::parse(slurp(d2 / "report.json"));
    EXPECT_EQ(j1["productivity"]["first_author"], 0);
    EXPECT_EQ(j2["productivity"]["first_author"], 38);

    // journals table
    auto d3 = scratch("knob_journals");
    ASSERT_EQ(run({"evaluate", "--pubs", fixture("person1.jsonl").string(), "--refsets",
                   fixture("refsets.csv").string(), "--out", d3.string()})
                  .code,
              0);
    EXPECT_NE(outputs(d3), base);
}

TEST(Cli, OutputDirKnob) {
    auto a = scratch("outdir_a");
    ASSERT_EQ(run(evaluate_args("person2.jsonl", a)).code, 0);
    EXPECT_TRUE(fs::exists(a / "report.json"));
}

TEST(Cli, CompareWritesSideBySideTable) {
    auto dir = scratch("compare");
    auto r = run({"compare", "--pubs", fixture("person1.jsonl").string(), "--pubs", fixture("person2.jsonl").string(),
                  "--pubs", fixture("person3.jsonl").string(), "--refsets", fixture("refsets.csv").string(),
                  "--journals", fixture("journals.csv").string(), "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    auto csv = slurp(dir / "report.csv");
    EXPECT_NE(csv.find("m quotient,1.7,2.5,1.2"), std::string::npos);
    auto j = nlohmann::json::parse(slurp(dir / "report.json"));
    EXPECT_EQ(j["reports"].size(), 3u);
}

TEST(Cli, PlotWritesBeamOnly) {
    auto dir = scratch("plot");
    auto r = run({"plot", "--pubs", fixture("person2.jsonl").string(), "--refsets", fixture("refsets.csv").string(),
                  "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir / "beam.svg"));
    EXPECT_TRUE(fs::exists(dir / "beam.csv"));
    EXPECT_FALSE(fs::exists(dir / "report.json"));
}

TEST(Cli, SynthSeedFromFlagAndEnvironment) {
    auto a = scratch("synth_a"), b = scratch("synth_b"), c = scratch("synth_c");
    auto synth = [](const fs::path& out, std::vector<std::string> extra) {
        std::vector<std::string> args{"synth", "--field", "demo", "--year", "2009", "--n", "2000", "--out", out.string()};
        args.insert(args.end(), extra.begin(), extra.end());
        return run(args);
    };
    ::unsetenv(cli::kSeedEnvironmentVariable);
    ASSERT_EQ(synth(a, {"--seed", "1"}).code, 0);
    ASSERT_EQ(synth(b, {"--seed", "2"}).code, 0);
    EXPECT_NE(slurp(a / "demo__2009.csv"), slurp(b / "demo__2009.csv"));
    ::setenv(cli::kSeedEnvironmentVariable, "1", 1);
    auto r = synth(c, {"--seed", "2"});
    ::unsetenv(cli::kSeedEnvironmentVariable);
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(slurp(a / "demo__2009.csv"), slurp(c / "demo__2009.csv"));
    EXPECT_NE(r.out.find("seed=1"), std::string::npos);

    ::setenv(cli::kSeedEnvironmentVariable, "banana", 1);
    EXPECT_EQ(synth(c, {}).code, 2);
    ::unsetenv(cli::kSeedEnvironmentVariable);

    auto z = scratch("synth_zipf");
    ASSERT_EQ(synth(z, {"--shape", "zipf:2.0"}).code, 0);
    EXPECT_NE(slurp(z / "demo__2009.csv"), slurp(a / "demo__2009.csv"));
    EXPECT_EQ(synth(z, {"--shape", "zipf:0.5"}).code, 1);
}

TEST(Cli, SynthOutputLoadsAsReferenceSetDirectory) {
    auto dir = scratch("synth_dir");
    ASSERT_EQ(run({"synth", "--field", "Chemistry, Physical", "--year", "1999", "--n", "500", "--out", dir.string()}).code,
              0);
    auto sets = load_reference_sets(dir);
    ASSERT_TRUE(sets.find("chemistry, physical", 1999));
    EXPECT_EQ(sets.find("chemistry, physical", 1999)->size(), 500);
}
