#include "scholarmeter/refsets.hpp"

#include "scholarmeter/text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

namespace scholarmeter {

namespace {

std::optional<std::int64_t> parse_int(std::string_view s) {
    auto t = text::trim(s);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
    return v;
}

std::optional<double> parse_double(std::string_view s) {
    auto t = text::trim(s);
    double v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
    return v;
}

std::int64_t require_int(const text::CsvRow& row, std::size_t col, const char* name) {
    if (col >= row.cells.size()) throw ParseError("missing cell", row.line, name);
    if (auto v = parse_int(row.cells[col])) return *v;
    throw ParseError("not an integer: '" + row.cells[col] + "'", row.line, name);
}

}  // namespace

// ---------------------------------------------------------------------------

ReferenceSet ReferenceSet::from_counts(std::string field, int year, std::span<const std::int64_t> counts) {
    if (counts.empty()) throw std::invalid_argument("reference set for " + field + " " + std::to_string(year) + " is empty");
    ReferenceSet set;
    set.field_ = std::move(field);
    set.year_ = year;
    for (auto c : counts) {
        if (c < 0) throw std::invalid_argument("negative citation count in reference set");
        ++set.histogram_[c];
    }
    set.index();
    return set;
}

ReferenceSet ReferenceSet::from_histogram(std::string field, int year,
                                          const std::map<std::int64_t, std::int64_t>& histogram) {
    ReferenceSet set;
    set.field_ = std::move(field);
    set.year_ = year;
    for (auto [count, freq] : histogram) {
        if (count < 0) throw std::invalid_argument("negative citation count in reference set");
        if (freq <= 0) throw std::invalid_argument("non-positive frequency in reference set");
        set.histogram_[count] += freq;
    }
    if (set.histogram_.empty())
        throw std::invalid_argument("reference set for " + set.field_ + " " + std::to_string(year) + " is empty");
    set.index();
    return set;
}

void ReferenceSet::index() {
    values_.clear();
    at_least_.clear();
    n_ = 0;
    for (auto [count, freq] : histogram_) {
        values_.push_back(count);
        n_ += freq;
    }
    at_least_.resize(values_.size());
    std::int64_t running = 0;
    auto it = histogram_.rbegin();
    for (std::size_t i = values_.size(); i-- > 0; ++it) {
        running += it->second;
        at_least_[i] = running;
    }
}

std::int64_t ReferenceSet::count_at_least(std::int64_t citations) const {
    auto pos = std::lower_bound(values_.begin(), values_.end(), citations);
    if (pos == values_.end()) return 0;
    return at_least_[static_cast<std::size_t>(pos - values_.begin())];
}

double ReferenceSet::mean() const {
    long double sum = 0;
    for (auto [count, freq] : histogram_) sum += static_cast<long double>(count) * freq;
    return static_cast<double>(sum / n_);
}

ReferenceSet build_reference_set(std::string field, int year, std::span<const std::int64_t> counts) {
    return ReferenceSet::from_counts(std::move(field), year, counts);
}

double percentile_of(std::int64_t citations, const ReferenceSet& refset) {
    if (citations <= 0) return 100.0;
    return 100.0 * static_cast<double>(refset.count_at_least(citations)) / static_cast<double>(refset.size());
}

// ---------------------------------------------------------------------------

ReferenceSetCollection::ReferenceSetCollection(std::vector<ReferenceSet> sets) {
    for (auto& s : sets) add(std::move(s));
}

void ReferenceSetCollection::add(ReferenceSet set) {
    auto key = std::make_pair(text::normalize_key(set.field()), set.year());
    if (sets_.contains(key))
        throw std::invalid_argument("duplicate reference set for " + set.field() + " " + std::to_string(set.year()));
    sets_.emplace(std::move(key), std::move(set));
}

const ReferenceSet* ReferenceSetCollection::find(std::string_view field, int year) const {
    auto it = sets_.find({text::normalize_key(field), year});
    return it == sets_.end() ? nullptr : &it->second;
}

std::vector<const ReferenceSet*> ReferenceSetCollection::all() const {
    std::vector<const ReferenceSet*> out;
    for (const auto& [key, set] : sets_) out.push_back(&set);
    return out;
}

ReferenceSet load_reference_set(std::istream& source, std::string field, int year) {
    text::CsvTable table(source);
    const auto c_count = table.require_column("citation_count");
    const auto c_freq = table.require_column("frequency");
    std::map<std::int64_t, std::int64_t> histogram;
    while (auto row = table.next()) {
        auto count = require_int(*row, c_count, "citation_count");
        auto freq = require_int(*row, c_freq, "frequency");
        if (count < 0) throw ParseError("negative citation count", row->line, "citation_count");
        if (freq <= 0) throw ParseError("frequency must be positive", row->line, "frequency");
        histogram[count] += freq;
    }
    if (histogram.empty()) throw ParseError("reference set " + field + " " + std::to_string(year) + " has no rows");
    return ReferenceSet::from_histogram(std::move(field), year, histogram);
}

ReferenceSetCollection load_reference_sets_combined(std::istream& source) {
    text::CsvTable table(source);
    const auto c_field = table.require_column("field");
    const auto c_year = table.require_column("year");
    const auto c_count = table.require_column("citation_count");
    const auto c_freq = table.require_column("frequency");
    // Keyed by normalized field so spelling variants merge; the first spelling is kept.
    std::map<std::pair<std::string, int>, std::pair<std::string, std::map<std::int64_t, std::int64_t>>> grouped;
    std::vector<std::pair<std::string, int>> order;
    while (auto row = table.next()) {
        if (c_field >= row->cells.size()) throw ParseError("missing cell", row->line, "field");
        auto field = text::trim(row->cells[c_field]);
        if (field.empty()) throw ParseError("empty field name", row->line, "field");
        auto year = static_cast<int>(require_int(*row, c_year, "year"));
        auto count = require_int(*row, c_count, "citation_count");
        auto freq = require_int(*row, c_freq, "frequency");
        if (count < 0) throw ParseError("negative citation count", row->line, "citation_count");
        if (freq <= 0) throw ParseError("frequency must be positive", row->line, "frequency");
        auto key = std::make_pair(text::normalize_key(field), year);
        auto [it, fresh] = grouped.try_emplace(key, field, std::map<std::int64_t, std::int64_t>{});
        if (fresh) order.push_back(key);
        it->second.second[count] += freq;
    }
    ReferenceSetCollection out;
    for (const auto& key : order) {
        auto& [field, histogram] = grouped[key];
        out.add(ReferenceSet::from_histogram(field, key.second, histogram));
    }
    return out;
}

ReferenceSetCollection load_reference_sets(const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    if (fs::is_regular_file(path)) {
        std::ifstream in(path);
        if (!in) throw ParseError("cannot open " + path.string());
        return load_reference_sets_combined(in);
    }
    if (!fs::is_directory(path)) throw ParseError("reference set path not found: " + path.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path))
        if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    ReferenceSetCollection out;
    for (const auto& file : files) {
        auto stem = file.stem().string();
        auto sep = stem.rfind("__");
        auto year = sep == std::string::npos ? std::nullopt : parse_int(stem.substr(sep + 2));
        if (!year) throw ParseError("reference set file name must be <field>__<year>.csv: " + file.filename().string());
        std::ifstream in(file);
        if (!in) throw ParseError("cannot open " + file.string());
        try {
            out.add(load_reference_set(in, stem.substr(0, sep), static_cast<int>(*year)));
        } catch (const ParseError& e) {
            throw ParseError(file.filename().string() + ": " + e.what());
        }
    }
    return out;
}

void write_reference_set(const ReferenceSet& set, std::ostream& out) {
    out << "citation_count,frequency\n";
    for (auto [count, freq] : set.histogram()) out << count << ',' << freq << '\n';
}

// ---------------------------------------------------------------------------

bool in_recent_window(int year, int census_year, int exclude_recent_years) {
    return year > census_year - exclude_recent_years;
}

std::vector<PercentileAssignment> assign_percentiles(const ResearcherProfile& profile,
                                                     const ReferenceSetCollection& refsets,
                                                     const PercentileOptions& options) {
    if (options.exclude_recent_years < 0) throw std::invalid_argument("exclude_recent_years must be >= 0");
    std::vector<PercentileAssignment> out;
    for (const auto& pub : profile.publications) {
        if (!options.doc_types.contains(pub.doc_type)) continue;
        PercentileAssignment a;
        a.publication_id = pub.id;
        a.year_used = pub.year;
        a.recent = in_recent_window(pub.year, profile.census_year, options.exclude_recent_years);

        std::set<std::string> seen;
        double sum = 0;
        int used = 0;
        for (const auto& category : pub.categories) {
            if (!seen.insert(text::normalize_key(category)).second) continue;
            const auto* set = refsets.find(category, pub.year);
            if (!set) continue;
            sum += percentile_of(pub.citation_count, *set);
            if (used++) a.field_used += "; ";
            a.field_used += category;
            if (options.field_choice == FieldChoice::First) break;
        }
        if (used) {
            a.covered = true;
            a.percentile = sum / used;
        }
        out.push_back(std::move(a));
    }
    return out;
}

// ---------------------------------------------------------------------------

SyntheticShape parse_shape(std::string_view shape_text) {
    auto colon = shape_text.find(':');
    auto name = text::to_lower_ascii(text::trim(shape_text.substr(0, colon)));
    std::vector<double> params;
    if (colon != std::string_view::npos) {
        for (const auto& part : text::split(shape_text.substr(colon + 1), ',')) {
            auto v = parse_double(part);
            if (!v) throw ParseError("bad shape parameter '" + part + "'");
            params.push_back(*v);
        }
    }
    if (name == "lognormal") {
        if (params.empty()) return Lognormal{};
        if (params.size() != 2) throw ParseError("lognormal takes mu,sigma");
        return Lognormal{params[0], params[1]};
    }
    if (name == "zipf") {
        if (params.empty()) return Zipf{};
        if (params.size() != 1) throw ParseError("zipf takes one exponent");
        return Zipf{params[0]};
    }
    throw ParseError("unknown shape '" + std::string(shape_text) + "'");
}

std::string shape_to_string(const SyntheticShape& shape) {
    if (const auto* l = std::get_if<Lognormal>(&shape))
        return "lognormal:" + text::format_fixed(l->mu, 3) + "," + text::format_fixed(l->sigma, 3);
    return "zipf:" + text::format_fixed(std::get<Zipf>(shape).s, 3);
}

namespace {

// Bit-level definitions so that the same seed gives the same counts with any
// standard library.
double uniform_open(std::mt19937_64& rng) { return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53; }

std::int64_t draw_lognormal(std::mt19937_64& rng, const Lognormal& p) {
    // Box-Muller; one normal per draw keeps the stream position simple.
    const double u1 = uniform_open(rng), u2 = uniform_open(rng);
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    const double x = std::exp(p.mu + p.sigma * z);
    return static_cast<std::int64_t>(std::min(std::floor(x + 0.5), 1e15));
}

std::int64_t draw_zipf(std::mt19937_64& rng, const Zipf& p) {
    // Devroye's rejection sampler for P(k) proportional to k^-s, k >= 1.
    const double b = std::pow(2.0, p.s - 1.0);
    while (true) {
        const double u = uniform_open(rng), v = uniform_open(rng);
        const double x = std::floor(std::pow(u, -1.0 / (p.s - 1.0)));
        if (!(x >= 1.0) || x > 1e15) continue;
        const double t = std::pow(1.0 + 1.0 / x, p.s - 1.0);
        if (v * x * (t - 1.0) / (b - 1.0) <= t / b) return static_cast<std::int64_t>(x) - 1;
    }
}

}  // namespace

ReferenceSet generate_synthetic_refset(std::string field, int year, std::int64_t n, const SyntheticShape& shape,
                                       std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("synthetic reference set size must be >= 1");
    if (const auto* l = std::get_if<Lognormal>(&shape)) {
        if (!std::isfinite(l->mu) || !std::isfinite(l->sigma) || l->sigma <= 0)
            throw std::invalid_argument("lognormal needs finite mu and sigma > 0");
    } else if (const auto& z = std::get<Zipf>(shape); !std::isfinite(z.s) || z.s <= 1.0) {
        throw std::invalid_argument("zipf exponent must be > 1");
    }
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> counts;
    counts.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        counts.push_back(std::visit(
            [&](const auto& p) {
                if constexpr (std::is_same_v<std::decay_t<decltype(p)>, Lognormal>)
                    return draw_lognormal(rng, p);
                else
                    return draw_zipf(rng, p);
            },
            shape));
    }
    return ReferenceSet::from_counts(std::move(field), year, counts);
}

}  // namespace scholarmeter
