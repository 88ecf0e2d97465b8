#pragma once

#include "scholarmeter/corpus.hpp"
#include "scholarmeter/journals.hpp"
#include "scholarmeter/refsets.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace testsupport {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(SCHOLARMETER_FIXTURES_DIR) / name;
}

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline scholarmeter::ResearcherProfile load_person(int n) {
    std::ifstream in(fixture("person" + std::to_string(n) + ".jsonl"), std::ios::binary);
    return scholarmeter::parse_publications(in, scholarmeter::InputFormat::Jsonl);
}

inline scholarmeter::ResearcherProfile parse_jsonl(const std::string& text) {
    std::istringstream in(text);
    return scholarmeter::parse_publications(in, scholarmeter::InputFormat::Jsonl);
}

inline const scholarmeter::ReferenceSetCollection& fixture_refsets() {
    static const auto sets = scholarmeter::load_reference_sets(fixture("refsets.csv"));
    return sets;
}

inline const scholarmeter::JournalRanking& fixture_journals() {
    static const auto ranking = [] {
        std::ifstream in(fixture("journals.csv"), std::ios::binary);
        auto table = scholarmeter::load_journal_table(in);
        return scholarmeter::JournalRanking::from_table(table);
    }();
    return ranking;
}

// Reference per-journal (publication count, NJP) columns of the journal table.
inline const std::vector<std::pair<int, double>>& table2(int person) {
    static const std::vector<std::pair<int, double>> p1{
        {1, 0.01}, {3, 0.05}, {26, 0.06}, {1, 0.07}, {3, 0.07}, {1, 0.07}, {2, 0.08}, {1, 0.08}, {1, 0.08},
        {1, 0.10}, {1, 0.10}, {1, 0.16}, {1, 0.17}, {72, 0.19}, {1, 0.22}, {1, 0.22}, {1, 0.24}, {6, 0.26},
        {1, 0.30}, {1, 0.30}, {2, 0.30}, {1, 0.34}, {3, 0.37}, {1, 0.41}, {2, 0.42}, {1, 0.42}, {4, 0.44},
        {4, 0.45}, {1, 0.47}, {1, 0.49}, {1, 0.52}, {1, 0.59}, {1, 0.60}, {2, 0.63}, {9, 0.64}, {2, 0.64},
        {1, 0.64}, {1, 0.70}, {1, 0.70}, {1, 0.77}, {1, 0.77}, {1, 0.80}, {1, 0.91}};
    static const std::vector<std::pair<int, double>> p2{
        {3, 0.01}, {1, 0.01}, {9, 0.03}, {5, 0.05}, {1, 0.05}, {1, 0.05}, {3, 0.06}, {1, 0.07}, {1, 0.07},
        {2, 0.08}, {1, 0.09}, {3, 0.09}, {1, 0.09}, {1, 0.10}, {2, 0.11}, {1, 0.11}, {2, 0.13}, {7, 0.14},
        {1, 0.17}, {3, 0.19}, {1, 0.23}, {6, 0.30}, {2, 0.34}, {1, 0.38}, {1, 0.47}, {1, 0.56}, {1, 0.59},
        {1, 0.59}};
    static const std::vector<std::pair<int, double>> p3{
        {1, 0.01}, {1, 0.03}, {3, 0.03}, {1, 0.05}, {3, 0.06}, {1, 0.08}, {5, 0.08}, {3, 0.09}, {2, 0.10},
        {1, 0.14}, {1, 0.18}, {4, 0.20}, {2, 0.24}, {3, 0.24}, {2, 0.24}, {3, 0.26}, {1, 0.27}, {1, 0.30},
        {1, 0.30}, {2, 0.31}, {34, 0.31}, {2, 0.38}, {1, 0.41}, {1, 0.43}, {1, 0.49}, {2, 0.62}, {1, 0.66},
        {1, 0.88}, {1, 0.93}};
    switch (person) {
        case 1: return p1;
        case 2: return p2;
        case 3: return p3;
    }
    throw std::out_of_range("no such person");
}

inline std::vector<scholarmeter::JournalNjp> table2_rows(int person) {
    std::vector<scholarmeter::JournalNjp> rows;
    int j = 0;
    for (auto [count, njp] : table2(person))
        rows.push_back({"Person " + std::to_string(person) + " Journal " + std::to_string(++j), count, njp});
    return rows;
}

}  // namespace testsupport
