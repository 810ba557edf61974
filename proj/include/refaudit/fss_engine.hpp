#pragma once

// Fractional Scientific Strength: yearly field-normalized, fractionally
// credited citation productivity, and its within-SDS percentile ranking.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "refaudit/baseline.hpp"
#include "refaudit/corpus_model.hpp"
#include "refaudit/dates.hpp"
#include "refaudit/error.hpp"

namespace refaudit {

enum class WeightingMode {
    uniform,    ///< 1/s for every co-author
    positional, ///< life-science convention keyed on author position
};

enum class ActivityClass { non_active, QIV, QIII, QII, QI };

inline std::string_view to_string(ActivityClass c) {
    switch (c) {
    case ActivityClass::non_active: return "non_active";
    case ActivityClass::QIV: return "QIV";
    case ActivityClass::QIII: return "QIII";
    case ActivityClass::QII: return "QII";
    case ActivityClass::QI: return "QI";
    }
    return "non_active";
}

inline ActivityClass parse_activity_class(std::string_view s) {
    if (s == "non_active") return ActivityClass::non_active;
    if (s == "QIV") return ActivityClass::QIV;
    if (s == "QIII") return ActivityClass::QIII;
    if (s == "QII") return ActivityClass::QII;
    if (s == "QI") return ActivityClass::QI;
    throw InputError("unknown activity class '" + std::string(s) + "'");
}

/// Quartile class of an active researcher's percentile.
inline ActivityClass quartile_class(double percentile) {
    if (percentile < 25.0) return ActivityClass::QIV;
    if (percentile < 50.0) return ActivityClass::QIII;
    if (percentile < 75.0) return ActivityClass::QII;
    return ActivityClass::QI;
}

enum class RankPopulation {
    active, ///< percentiles among researchers with fss > 0 (default)
    all,    ///< non-active researchers occupy the bottom ranks
};

inline RankPopulation parse_rank_population(std::string_view s) {
    if (s == "active") return RankPopulation::active;
    if (s == "all") return RankPopulation::all;
    throw InputError("rank population must be active or all, got '" + std::string(s) + "'");
}

inline std::string_view to_string(RankPopulation p) { return p == RankPopulation::active ? "active" : "all"; }

struct ScoreCard {
    std::string researcher_id;
    std::string official_sds;
    double t = 0.0; ///< years worked inside the window
    double fss = 0.0;
    std::optional<double> percentile; ///< absent for non-active researchers
    ActivityClass activity_class = ActivityClass::non_active;

    bool active() const noexcept { return fss > 0.0; }
};

// ---------------------------------------------------------------------------
// Authorship credit
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<double> positional_weights(const Publication& pub) {
    const std::size_t s = pub.author_count();
    std::vector<double> w(s, 0.0);
    if (s <= 2) {
        std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(s));
        return w;
    }
    const bool intramural = pub.authors.front().institution_id == pub.authors.back().institution_id;
    if (intramural) {
        w.front() = 0.40;
        w.back() = 0.40;
        const double rest = 0.20 / static_cast<double>(s - 2);
        for (std::size_t i = 1; i + 1 < s; ++i) w[i] = rest;
        return w;
    }

    // Extramural. Assignment (not accumulation) gives a position that plays
    // two roles (s = 3) its role share once.
    w[0] = 0.30;
    w[s - 1] = 0.30;
    w[1] = 0.15;
    w[s - 2] = 0.15;
    if (s > 4) {
        const double rest = 0.10 / static_cast<double>(s - 4);
        for (std::size_t i = 2; i + 2 < s; ++i) w[i] = rest;
        return w;
    }
    double total = 0.0;
    for (double x : w) total += x;
    for (double& x : w) x /= total;
    return w;
}

} // namespace detail

/// Credit share of every author position; sums to 1.
inline std::vector<double> authorship_weights(const Publication& pub, WeightingMode mode) {
    const std::size_t s = pub.author_count();
    if (s == 0) throw ValidationError("publication '" + pub.pub_id + "' has no authors");
    if (mode == WeightingMode::uniform) return std::vector<double>(s, 1.0 / static_cast<double>(s));
    return detail::positional_weights(pub);
}

/// Credit share of the author at 1-based `position`.
inline double authorship_weight(const Publication& pub, std::size_t position, WeightingMode mode) {
    if (position < 1 || position > pub.author_count())
        throw std::out_of_range("author position " + std::to_string(position) + " outside 1.." +
                                std::to_string(pub.author_count()) + " for publication '" + pub.pub_id + "'");
    return authorship_weights(pub, mode)[position - 1];
}

inline WeightingMode weighting_for(const Researcher& researcher, const FieldTaxonomy& taxonomy) {
    return taxonomy.at(researcher.official_sds).positional_weighting ? WeightingMode::positional
                                                                     : WeightingMode::uniform;
}

// ---------------------------------------------------------------------------
// Scoring
// ---------------------------------------------------------------------------

/// FSS of one researcher over `pubs` (their publications in `window`).
/// Returns nothing when the researcher worked no time inside the window.
inline std::optional<ScoreCard> compute_fss(const Researcher& researcher, std::span<const Publication* const> pubs,
                                            const CitationBaseline& baseline, const FieldTaxonomy& taxonomy,
                                            YearWindow window) {
    const double t = researcher.years_in(window);
    if (!(t > 0.0)) return std::nullopt;

    const auto mode = weighting_for(researcher, taxonomy);
    double sum = 0.0;
    for (const Publication* pub : pubs) {
        if (!window.contains(pub->year))
            throw ValidationError("publication '" + pub->pub_id + "' lies outside window " + window.str());
        const auto position = pub->position_of(researcher.researcher_id);
        if (position == 0)
            throw ValidationError("researcher '" + researcher.researcher_id + "' is not an author of '" + pub->pub_id +
                                  "'");
        const double impact = normalized_impact(*pub, baseline);
        if (impact == 0.0) continue;
        sum += impact * authorship_weight(*pub, position, mode);
    }

    ScoreCard card;
    card.researcher_id = researcher.researcher_id;
    card.official_sds = researcher.official_sds;
    card.t = t;
    card.fss = sum / t;
    return card;
}

/// Assigns percentiles and classes within each SDS. Active researchers get
/// 100 * (mean tied rank - 0.5) / N, rank 1 being the lowest fss.
inline void rank_within_sds(std::vector<ScoreCard>& cards, RankPopulation population = RankPopulation::active) {
    std::map<std::string, std::vector<ScoreCard*>> by_sds;
    for (auto& card : cards) {
        card.percentile.reset();
        card.activity_class = ActivityClass::non_active;
        if (population == RankPopulation::all || card.active()) by_sds[card.official_sds].push_back(&card);
    }
    for (auto& [sds, group] : by_sds) {
        std::stable_sort(group.begin(), group.end(), [](const ScoreCard* a, const ScoreCard* b) { return a->fss < b->fss; });
        const double n = static_cast<double>(group.size());
        for (std::size_t lo = 0; lo < group.size();) {
            std::size_t hi = lo;
            while (hi < group.size() && group[hi]->fss == group[lo]->fss) ++hi;
            // ranks lo+1 .. hi share their mean
            const double mean_rank = (static_cast<double>(lo + 1) + static_cast<double>(hi)) / 2.0;
            const double pct = 100.0 * (mean_rank - 0.5) / n;
            for (std::size_t i = lo; i < hi; ++i) {
                if (!group[i]->active()) continue;
                group[i]->percentile = pct;
                group[i]->activity_class = quartile_class(pct);
            }
            lo = hi;
        }
    }
}

struct SkippedResearcher {
    std::string researcher_id;
    std::string reason;
};

struct ScoringResult {
    std::vector<ScoreCard> cards; ///< roster order
    std::vector<SkippedResearcher> skipped;
};

/// Scores and ranks every roster researcher against `corpus`.
inline ScoringResult score_roster(const Roster& roster, std::span<const Publication> corpus,
                                  const CitationBaseline& baseline, const FieldTaxonomy& taxonomy, YearWindow window,
                                  RankPopulation population = RankPopulation::active) {
    std::map<std::string, std::vector<const Publication*>, std::less<>> authored;
    for (const auto& pub : corpus) {
        if (!window.contains(pub.year)) continue;
        for (const auto& slot : pub.authors)
            if (slot.researcher_id) authored[*slot.researcher_id].push_back(&pub);
    }

    ScoringResult result;
    result.cards.reserve(roster.size());
    static const std::vector<const Publication*> none;
    for (const auto& researcher : roster.researchers()) {
        auto it = authored.find(researcher.researcher_id);
        const auto& pubs = it == authored.end() ? none : it->second;
        if (auto card = compute_fss(researcher, pubs, baseline, taxonomy, window)) {
            result.cards.push_back(std::move(*card));
        } else {
            result.skipped.push_back({researcher.researcher_id, "no employment inside window " + window.str()});
        }
    }
    rank_within_sds(result.cards, population);
    return result;
}

} // namespace refaudit
