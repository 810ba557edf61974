#pragma once

// Referee adequacy for one call for proposals: do the selected referees'
// fields match the applicants', and how do the referees rank nationally.
//
// Field match is official-SDS equality. It estimates alignment; it cannot
// observe which referee actually reviewed which proposal.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "refaudit/corpus_model.hpp"
#include "refaudit/csv.hpp"
#include "refaudit/fss_engine.hpp"

namespace refaudit {

struct Applicant {
    std::string applicant_id;
    std::string official_sds;
};

struct CallForProposals {
    std::vector<Applicant> applicants;
    std::vector<std::string> referees; ///< register expert ids
};

inline CallForProposals parse_call(std::istream& applicants_in, const std::string& applicants_source,
                                   std::istream& referees_in, const std::string& referees_source,
                                   const FieldTaxonomy& taxonomy) {
    CallForProposals call;
    auto applicants = CsvTable::parse(applicants_in, applicants_source, {"applicant_id", "official_sds"});
    std::set<std::string, std::less<>> seen;
    for (const auto& row : applicants.rows()) {
        auto where = applicants.location(row.line());
        Applicant a{std::string(row["applicant_id"]), std::string(row["official_sds"])};
        if (a.applicant_id.empty()) throw InputError(where + ": empty applicant_id");
        if (!taxonomy.contains(a.official_sds))
            throw ValidationError(where + ": applicant '" + a.applicant_id + "' has unknown SDS '" + a.official_sds + "'");
        if (!seen.insert(a.applicant_id).second)
            throw ValidationError(where + ": duplicate applicant_id '" + a.applicant_id + "'");
        call.applicants.push_back(std::move(a));
    }

    auto referees = CsvTable::parse(referees_in, referees_source, {"expert_id"});
    seen.clear();
    for (const auto& row : referees.rows()) {
        auto where = referees.location(row.line());
        std::string id(row["expert_id"]);
        if (id.empty()) throw InputError(where + ": empty expert_id");
        if (!seen.insert(id).second) throw ValidationError(where + ": referee '" + id + "' listed twice");
        call.referees.push_back(std::move(id));
    }
    return call;
}

inline CallForProposals load_call(const std::string& applicants_path, const std::string& referees_path,
                                  const FieldTaxonomy& taxonomy) {
    std::ifstream a(applicants_path, std::ios::binary);
    if (!a) throw InputError("cannot open '" + applicants_path + "'");
    std::ifstream r(referees_path, std::ios::binary);
    if (!r) throw InputError("cannot open '" + referees_path + "'");
    return parse_call(a, applicants_path, r, referees_path, taxonomy);
}

struct ResolvedReferee {
    const RegisterEntry* entry = nullptr;
    std::vector<std::string> fields; ///< official SDS (academic) or declared set
    std::string uda_code;
};

/// Looks up each referee in the register and fixes their field and UDA.
/// A non-academic referee is filed under the UDA holding most of their
/// declared SDSs (ties to the lower UDA code).
inline std::vector<ResolvedReferee> resolve_referees(const CallForProposals& call, const ExpertRegister& reg,
                                                     const Roster& roster, const FieldTaxonomy& taxonomy) {
    std::vector<ResolvedReferee> out;
    out.reserve(call.referees.size());
    for (const auto& id : call.referees) {
        ResolvedReferee ref;
        ref.entry = reg.find(id);
        if (!ref.entry) throw ValidationError("referee '" + id + "' is not in the register");
        if (ref.entry->academic()) {
            const auto* r = roster.find(*ref.entry->researcher_id);
            if (!r) throw ValidationError("referee '" + id + "' links to unknown researcher");
            ref.fields = {r->official_sds};
            ref.uda_code = taxonomy.uda_of(r->official_sds);
        } else {
            ref.fields = ref.entry->declared_sds;
            std::map<std::string, std::size_t> votes;
            for (const auto& sds : ref.fields) ++votes[taxonomy.uda_of(sds)];
            std::size_t best = 0;
            for (const auto& [uda, n] : votes)
                if (n > best) {
                    best = n;
                    ref.uda_code = uda;
                }
        }
        out.push_back(std::move(ref));
    }
    return out;
}

struct MatchRow {
    std::string uda_code;
    std::string uda_name;
    std::size_t applicant_count = 0;
    std::size_t referee_count = 0;
    std::size_t applicant_sds_count = 0;
    std::size_t referee_covered_sds_count = 0;
    std::size_t uncovered_sds_count = 0;
    std::size_t applicants_in_uncovered_sds = 0;

    double pct_applicants_in_uncovered_sds() const {
        return percent(static_cast<double>(applicants_in_uncovered_sds), static_cast<double>(applicant_count));
    }
};

struct MatchReport {
    std::vector<MatchRow> rows; ///< taxonomy UDA order
    MatchRow totals;
};

inline MatchReport match_analysis(const CallForProposals& call, const ExpertRegister& reg, const Roster& roster,
                                  const FieldTaxonomy& taxonomy) {
    const auto referees = resolve_referees(call, reg, roster, taxonomy);
    std::set<std::string, std::less<>> referee_fields;
    for (const auto& ref : referees) referee_fields.insert(ref.fields.begin(), ref.fields.end());

    std::map<std::string, MatchRow> rows;
    std::map<std::string, std::set<std::string>> applicant_sds;
    for (const auto& a : call.applicants) {
        const auto& uda = taxonomy.uda_of(a.official_sds);
        auto& row = rows[uda];
        ++row.applicant_count;
        applicant_sds[uda].insert(a.official_sds);
        if (!referee_fields.contains(a.official_sds)) ++row.applicants_in_uncovered_sds;
    }
    for (const auto& ref : referees) ++rows[ref.uda_code].referee_count;

    MatchReport report;
    report.totals.uda_code = "TOTAL";
    report.totals.uda_name = "Total";
    for (const auto& uda : taxonomy.uda_codes()) {
        MatchRow row = rows[uda];
        row.uda_code = uda;
        row.uda_name = taxonomy.uda_name(uda);
        const auto& sds_set = applicant_sds[uda];
        row.applicant_sds_count = sds_set.size();
        row.referee_covered_sds_count = static_cast<std::size_t>(std::count_if(
            sds_set.begin(), sds_set.end(), [&](const std::string& s) { return referee_fields.contains(s); }));
        row.uncovered_sds_count = row.applicant_sds_count - row.referee_covered_sds_count;

        auto& t = report.totals;
        t.applicant_count += row.applicant_count;
        t.referee_count += row.referee_count;
        t.applicant_sds_count += row.applicant_sds_count;
        t.referee_covered_sds_count += row.referee_covered_sds_count;
        t.uncovered_sds_count += row.uncovered_sds_count;
        t.applicants_in_uncovered_sds += row.applicants_in_uncovered_sds;
        report.rows.push_back(std::move(row));
    }
    return report;
}

struct ProfileRow {
    std::string uda_code;
    std::string uda_name;
    std::size_t referee_count = 0;      ///< scored referees
    std::size_t below_median_count = 0; ///< includes the inactive ones
    std::size_t inactive_count = 0;

    double below_median_pct() const {
        return percent(static_cast<double>(below_median_count), static_cast<double>(referee_count));
    }
    double inactive_pct() const {
        return percent(static_cast<double>(inactive_count), static_cast<double>(referee_count));
    }
};

struct RefereeProfile {
    std::vector<ProfileRow> rows;
    ProfileRow totals;
    std::vector<std::string> unscored; ///< referees without a scorecard, call order
};

/// National standing of the call's referees. Below median means active with
/// percentile < 50, or inactive.
inline RefereeProfile referee_profile(const CallForProposals& call, const ExpertRegister& reg,
                                      std::span<const ScoreCard> scorecards, const FieldTaxonomy& taxonomy) {
    std::map<std::string, const ScoreCard*, std::less<>> cards;
    for (const auto& c : scorecards) cards.emplace(c.researcher_id, &c);

    std::map<std::string, ProfileRow> rows;
    RefereeProfile profile;
    for (const auto& id : call.referees) {
        const auto* entry = reg.find(id);
        if (!entry) throw ValidationError("referee '" + id + "' is not in the register");
        const ScoreCard* card = nullptr;
        if (entry->academic())
            if (auto it = cards.find(*entry->researcher_id); it != cards.end()) card = it->second;
        if (!card) {
            profile.unscored.push_back(id);
            continue;
        }
        auto& row = rows[taxonomy.uda_of(card->official_sds)];
        ++row.referee_count;
        const bool inactive = card->activity_class == ActivityClass::non_active;
        if (inactive) ++row.inactive_count;
        if (inactive || (card->percentile && *card->percentile < 50.0)) ++row.below_median_count;
    }

    profile.totals.uda_code = "TOTAL";
    profile.totals.uda_name = "Total";
    for (const auto& uda : taxonomy.uda_codes()) {
        ProfileRow row = rows[uda];
        row.uda_code = uda;
        row.uda_name = taxonomy.uda_name(uda);
        profile.totals.referee_count += row.referee_count;
        profile.totals.below_median_count += row.below_median_count;
        profile.totals.inactive_count += row.inactive_count;
        profile.rows.push_back(std::move(row));
    }
    return profile;
}

} // namespace refaudit
