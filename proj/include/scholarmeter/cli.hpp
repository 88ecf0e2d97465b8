#pragma once

#include "scholarmeter/corpus.hpp"
#include "scholarmeter/refsets.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace scholarmeter::cli {

enum class Command { Validate, Evaluate, Compare, Plot, Synth };
enum class OutputFormat { Json, Csv, Txt, Svg };

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

inline constexpr const char* kSeedEnvironmentVariable = "SCHOLARMETER_SEED";

struct RunConfig {
    std::vector<std::filesystem::path> pubs_paths;
    std::optional<std::filesystem::path> refsets_path;
    std::optional<std::filesystem::path> journals_path;
    std::optional<std::filesystem::path> personal_list_path;
    int census_year = 0;  // 0: from the input
    std::string name;
    std::vector<std::string> aliases;
    DocTypeSet doc_types = DocTypeSet::substantive();
    int exclude_recent_years = 1;
    FieldChoice field_choice = FieldChoice::Average;
    double self_cite_threshold = 0.30;
    std::filesystem::path output_dir = "out";
    std::set<OutputFormat> formats{OutputFormat::Json, OutputFormat::Csv, OutputFormat::Txt, OutputFormat::Svg};
    int svg_width = 800;
    int svg_height = 480;

    // synth
    std::string synth_field = "synthetic";
    int synth_year = 2011;
    std::int64_t synth_n = 10000;
    SyntheticShape synth_shape = Lognormal{};
    std::uint64_t seed = 7;
};

/// Config invariant violations, empty when the config is usable for `command`.
std::vector<std::string> check_config(Command command, const RunConfig& config);

/// Runs one command. Returns 0 on success, 1 on validation failure and 2 on
/// I/O or parse errors. Warnings and diagnostics go to `err`.
int execute(Command command, const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses flags (reading SCHOLARMETER_SEED from the environment) and executes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scholarmeter::cli
