#pragma once

// Citation normalization baseline: median citations per
// (publication year, subject category) stratum.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "refaudit/corpus_model.hpp"
#include "refaudit/csv.hpp"
#include "refaudit/dates.hpp"
#include "refaudit/error.hpp"

namespace refaudit {

/// Which publications enter a stratum's median.
enum class BaselineInclusion {
    cited_only, ///< citations >= 1 (default)
    all,        ///< uncited publications too; strata whose median is 0 get no entry
};

inline std::string_view to_string(BaselineInclusion b) {
    return b == BaselineInclusion::cited_only ? "cited_only" : "all";
}

inline BaselineInclusion parse_baseline_inclusion(std::string_view s) {
    if (s == "cited_only") return BaselineInclusion::cited_only;
    if (s == "all") return BaselineInclusion::all;
    throw InputError("baseline inclusion must be cited_only or all, got '" + std::string(s) + "'");
}

struct StratumKey {
    int year = 0;
    std::string category;

    auto operator<=>(const StratumKey&) const = default;
};

/// Median of `values`; midpoint of the two central values for even sizes.
template <typename T>
double median(std::vector<T> values) {
    if (values.empty()) throw std::invalid_argument("median of empty set");
    auto n = values.size();
    auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(values.begin(), mid, values.end());
    double upper = static_cast<double>(*mid);
    if (n % 2 == 1) return upper;
    double lower = static_cast<double>(*std::max_element(values.begin(), mid));
    return (lower + upper) / 2.0;
}

class CitationBaseline {
public:
    CitationBaseline() = default;
    CitationBaseline(Date census_date, std::map<StratumKey, double> medians)
        : census_date_(census_date), medians_(std::move(medians)) {
        for (const auto& [key, me] : medians_)
            if (!(me > 0.0))
                throw ValidationError("non-positive median for stratum (" + std::to_string(key.year) + ", " +
                                      key.category + ")");
    }

    Date census_date() const noexcept { return census_date_; }
    const std::map<StratumKey, double>& medians() const noexcept { return medians_; }
    std::size_t size() const noexcept { return medians_.size(); }

    std::optional<double> median(int year, std::string_view category) const {
        auto it = medians_.find(StratumKey{year, std::string(category)});
        if (it == medians_.end()) return std::nullopt;
        return it->second;
    }

private:
    Date census_date_;
    std::map<StratumKey, double> medians_;
};

/// Builds the baseline from a reference corpus. A publication filed under k
/// subject categories contributes its citation count to each of the k strata.
inline CitationBaseline compute_baseline(std::span<const Publication> corpus, Date census_date,
                                         BaselineInclusion inclusion = BaselineInclusion::cited_only) {
    if (corpus.empty()) throw ValidationError("cannot build a citation baseline from an empty corpus");
    std::map<StratumKey, std::vector<std::int64_t>> strata;
    for (const auto& pub : corpus) {
        if (inclusion == BaselineInclusion::cited_only && pub.citations < 1) continue;
        auto cats = pub.subject_categories;
        std::sort(cats.begin(), cats.end());
        cats.erase(std::unique(cats.begin(), cats.end()), cats.end());
        for (const auto& cat : cats) strata[StratumKey{pub.year, cat}].push_back(pub.citations);
    }
    std::map<StratumKey, double> medians;
    for (auto& [key, counts] : strata) {
        double me = median(std::move(counts));
        if (me > 0.0) medians.emplace(key, me);
    }
    return CitationBaseline(census_date, std::move(medians));
}

/// c / Me for a publication; the arithmetic mean over those of its categories
/// that have a baseline entry when it is filed under several.
inline double normalized_impact(const Publication& pub, const CitationBaseline& baseline) {
    if (pub.citations == 0) return 0.0;
    double sum = 0.0;
    int matched = 0;
    for (const auto& cat : pub.subject_categories) {
        if (auto me = baseline.median(pub.year, cat)) {
            sum += static_cast<double>(pub.citations) / *me;
            ++matched;
        }
    }
    if (matched == 0) throw MissingBaselineError(pub.pub_id);
    return sum / matched;
}

// ---------------------------------------------------------------------------
// Cache file: year,category,me
// ---------------------------------------------------------------------------

inline std::string baseline_csv(const CitationBaseline& baseline) {
    CsvWriter out({"year", "category", "me"});
    for (const auto& [key, me] : baseline.medians())
        out.row({std::to_string(key.year), key.category, format_fixed(me, 6)});
    return out.str();
}

inline CitationBaseline parse_baseline_csv(std::istream& in, const std::string& source, Date census_date) {
    auto table = CsvTable::parse(in, source, {"year", "category", "me"});
    std::map<StratumKey, double> medians;
    for (const auto& row : table.rows()) {
        auto where = table.location(row.line());
        StratumKey key;
        double me = 0;
        if (!parse_int(row["year"], key.year)) throw InputError(where + ": bad year");
        key.category = row["category"];
        if (key.category.empty()) throw InputError(where + ": empty category");
        if (!parse_double(row["me"], me)) throw InputError(where + ": bad median");
        if (!(me > 0.0)) throw ValidationError(where + ": median must be positive");
        if (!medians.emplace(std::move(key), me).second) throw ValidationError(where + ": duplicate stratum");
    }
    return CitationBaseline(census_date, std::move(medians));
}

inline CitationBaseline load_baseline_csv(const std::string& path, Date census_date) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    return parse_baseline_csv(in, path, census_date);
}

} // namespace refaudit
