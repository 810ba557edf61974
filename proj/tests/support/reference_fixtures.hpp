#pragma once

// Synthetic datasets whose aggregate counts match the published register
// and call-for-proposals tables. Built in memory; write_* dumps them in the
// on-disk formats the CLI reads.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "refaudit/refaudit.hpp"

namespace refaudit::fixtures {

struct UdaFigures {
    const char* code;
    const char* name;
    const char* prefixes[2]; ///< SDS code families
    int family_sizes[2];
    bool positional;

    // register coverage
    int experts;
    int academics;
    int uncovered;
    int single;

    // academics by official SDS vs national staff
    int official_academics;
    int staff;
    double published_index;

    // call for proposals
    int applicants;
    int referees;
    int applicant_sds;
    int covered_sds;
    int published_uncovered_pct;
    int below_median;
    int inactive;
};

// Rows in the published table order.
inline const std::array<UdaFigures, 9>& uda_figures() {
    static const std::array<UdaFigures, 9> rows{{
        {"08", "Civil engineering", {"ICAR", ""}, {22, 0}, false, 130, 59, 2, 1, 40, 1455, 1.14, 16, 3, 6, 3, 31, 0, 0},
        {"09", "Industrial and information engineering", {"ING-IND", "ING-INF"}, {35, 7}, false, 774, 509, 0, 0, 438,
         5488, 3.30, 41, 8, 23, 6, 83, 4, 2},
        {"07", "Agriculture and veterinary science", {"AGR", "VET"}, {20, 10}, true, 147, 86, 3, 4, 74, 3153, 0.97, 43,
         8, 27, 6, 77, 5, 3},
        {"05", "Biology", {"BIO", ""}, {19, 0}, true, 207, 113, 1, 1, 80, 5792, 0.57, 65, 9, 17, 6, 52, 4, 1},
        {"03", "Chemistry", {"CHIM", ""}, {12, 0}, false, 238, 143, 0, 0, 99, 3610, 1.13, 32, 8, 11, 6, 44, 4, 1},
        {"04", "Earth science", {"GEO", ""}, {12, 0}, false, 54, 21, 1, 2, 13, 1440, 0.37, 14, 3, 9, 3, 71, 1, 1},
        {"02", "Physics", {"FIS", ""}, {8, 0}, false, 196, 100, 0, 0, 78, 2872, 1.12, 17, 2, 5, 2, 59, 0, 0},
        {"01", "Mathematics and computer science", {"MAT", "INF"}, {9, 1}, false, 176, 88, 0, 1, 49, 3516, 0.58, 6,
         2, 4, 2, 50, 1, 0},
        {"06", "Medicine", {"MED", ""}, {50, 0}, true, 117, 89, 11, 16, 85, 12186, 0.29, 93, 12, 28, 10, 52, 3, 0},
    }};
    return rows;
}

inline std::string sds_code(const char* prefix, int n) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s/%02d", prefix, n);
    return buf;
}

/// 205 hard-science SDSs in nine UDAs.
inline FieldTaxonomy hard_science_taxonomy() {
    std::vector<SdsEntry> entries;
    for (const auto& u : uda_figures())
        for (int f = 0; f < 2; ++f)
            for (int i = 1; i <= u.family_sizes[f]; ++i) {
                auto code = sds_code(u.prefixes[f], i);
                entries.push_back({code, "Sector " + code, u.code, u.name, u.positional});
            }
    return FieldTaxonomy(std::move(entries));
}

inline std::string numbered(const char* prefix, std::size_t n, int width = 6) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, n);
    return buf;
}

// ---------------------------------------------------------------------------
// Register dataset: national roster + expert register
// ---------------------------------------------------------------------------

struct RegisterDataset {
    FieldTaxonomy taxonomy;
    Roster roster;
    ExpertRegister reg;
};

namespace detail {

/// SDS -> researcher ids with that official SDS, roster order.
inline std::map<std::string, std::vector<std::string>> staff_by_sds(const Roster& roster) {
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& r : roster.researchers()) out[r.official_sds].push_back(r.researcher_id);
    return out;
}

} // namespace detail

inline const std::map<std::string, std::vector<std::pair<std::string, int>>>& colonizers() {
    // colonized SDS -> (source SDS, number of academics declaring it)
    static const std::map<std::string, std::vector<std::pair<std::string, int>>> c{
        {"ING-IND/05", {{"ING-IND/08", 3}, {"ING-IND/01", 1}, {"ING-IND/02", 1}, {"ING-IND/03", 1}}},
        {"MED/06",
         {{"MED/04", 6}, {"MED/01", 1}, {"MED/02", 1}, {"MED/03", 1}, {"MED/05", 1}, {"MED/07", 1}, {"MED/08", 1}}},
    };
    return c;
}

inline RegisterDataset register_dataset() {
    auto taxonomy = hard_science_taxonomy();

    // Roster: each UDA's staff dealt round-robin over its SDSs.
    std::vector<Researcher> staff;
    std::size_t next_id = 1;
    for (const auto& u : uda_figures()) {
        const auto& members = taxonomy.sds_in_uda(u.code);
        for (int i = 0; i < u.staff; ++i) {
            Researcher r;
            r.researcher_id = numbered("R", next_id++);
            r.official_sds = members[static_cast<std::size_t>(i) % members.size()];
            r.institution_id = numbered("U", static_cast<std::size_t>(i % 67) + 1, 2);
            r.employment_start = Date(1998, 11, 1);
            r.rank = i % 3 == 0 ? AcademicRank::full : (i % 3 == 1 ? AcademicRank::associate : AcademicRank::assistant);
            staff.push_back(std::move(r));
        }
    }
    Roster roster(std::move(staff), taxonomy);
    auto pool = detail::staff_by_sds(roster);

    struct Draft {
        std::string expert_id;
        std::optional<std::string> researcher_id;
        std::string official_sds;
        std::string uda;
        ExpertCategory category;
        std::set<std::string> declared;
    };
    std::vector<Draft> academics;
    std::map<std::string, int> declarers;
    std::map<std::string, std::string> role; // SDS -> uncovered | single | multi
    std::map<std::string, std::vector<std::string>> multi_targets; // per UDA, excluding colonized SDSs

    for (const auto& u : uda_figures()) {
        const auto& members = taxonomy.sds_in_uda(u.code);
        std::vector<std::string> multi(members.begin(), members.end() - u.uncovered - u.single);
        std::vector<std::string> single(members.end() - u.uncovered - u.single, members.end() - u.uncovered);
        for (const auto& s : multi) role[s] = "multi";
        for (const auto& s : single) role[s] = "single";
        for (auto it = members.end() - u.uncovered; it != members.end(); ++it) role[*it] = "uncovered";

        std::vector<std::string> eligible;
        for (const auto& s : multi)
            if (!colonizers().contains(s)) eligible.push_back(s);
        multi_targets[u.code] = eligible;

        // Quotas first: one native per single-expert SDS, enough natives in
        // every colonizing source, then round-robin.
        std::map<std::string, int> quota;
        for (const auto& s : single) quota[s] = 1;
        for (const auto& [target, sources] : colonizers())
            for (const auto& [source, count] : sources)
                if (taxonomy.uda_of(source) == u.code) quota[source] = std::max(quota[source], count);
        std::vector<std::string> placement;
        for (const auto& s : single) placement.push_back(s);
        for (const auto& [s, q] : quota)
            if (role[s] == "multi")
                for (int i = 0; i < q; ++i) placement.push_back(s);
        for (std::size_t i = 0; placement.size() < static_cast<std::size_t>(u.official_academics); ++i)
            placement.push_back(eligible[i % eligible.size()]);
        placement.resize(static_cast<std::size_t>(u.official_academics));

        std::map<std::string, std::size_t> taken;
        for (const auto& sds : placement) {
            Draft d;
            d.expert_id = numbered("E", academics.size() + 1, 5);
            d.researcher_id = pool.at(sds).at(taken[sds]++);
            d.official_sds = sds;
            d.uda = u.code;
            d.category = academics.size() % 9 == 8 ? ExpertCategory::C : ExpertCategory::A;
            d.declared.insert(sds);
            ++declarers[sds];
            academics.push_back(std::move(d));
        }
    }

    // Colonizing declarations.
    for (const auto& [target, sources] : colonizers()) {
        for (const auto& [source, count] : sources) {
            int added = 0;
            for (auto& d : academics)
                if (added < count && d.official_sds == source && !d.declared.contains(target)) {
                    d.declared.insert(target);
                    ++declarers[target];
                    ++added;
                }
        }
    }

    // Academics declaring outside their own UDA, so per-UDA academic counts
    // reach the coverage table's figures.
    std::size_t cursor = 0;
    for (const auto& u : uda_figures()) {
        int extra = u.academics - u.official_academics;
        const auto& targets = multi_targets[u.code];
        std::size_t t = 0;
        while (extra > 0) {
            auto& d = academics[cursor++ % academics.size()];
            if (d.uda == u.code) continue;
            bool already = std::any_of(d.declared.begin(), d.declared.end(),
                                       [&](const std::string& s) { return taxonomy.uda_of(s) == u.code; });
            if (already) continue;
            const auto& sds = targets[t++ % targets.size()];
            d.declared.insert(sds);
            ++declarers[sds];
            --extra;
        }
    }

    // Non-academics: one token per (expert, UDA) attribution, dealt so no
    // expert gets the same UDA twice.
    const std::size_t total_experts = 1492;
    const std::size_t non_academic = total_experts - academics.size();
    std::vector<Draft> others(non_academic);
    for (std::size_t i = 0; i < non_academic; ++i) {
        others[i].expert_id = numbered("E", academics.size() + i + 1, 5);
        static constexpr ExpertCategory cats[] = {ExpertCategory::B, ExpertCategory::C, ExpertCategory::B,
                                                  ExpertCategory::unspecified};
        others[i].category = cats[i % 4];
    }
    std::size_t token = 0;
    for (const auto& u : uda_figures()) {
        const auto& members = taxonomy.sds_in_uda(u.code);
        std::vector<std::string> needs; // SDSs that still lack declarers, first
        for (const auto& s : members) {
            int want = role[s] == "single" ? 1 : (role[s] == "multi" ? 2 : 0);
            for (int k = declarers[s]; k < want; ++k) needs.push_back(s);
        }
        const auto& targets = multi_targets[u.code];
        std::size_t t = 0;
        for (int k = 0; k < u.experts - u.academics; ++k) {
            auto& d = others[token++ % non_academic];
            std::string sds = static_cast<std::size_t>(k) < needs.size() ? needs[static_cast<std::size_t>(k)]
                                                                         : targets[t++ % targets.size()];
            d.declared.insert(sds);
            ++declarers[sds];
        }
    }

    std::vector<RegisterEntry> entries;
    entries.reserve(total_experts);
    for (auto* group : {&academics, &others})
        for (auto& d : *group)
            entries.push_back({d.expert_id, d.researcher_id, d.category, {d.declared.begin(), d.declared.end()}});
    ExpertRegister reg(std::move(entries), taxonomy, roster);
    return {std::move(taxonomy), std::move(roster), std::move(reg)};
}

// ---------------------------------------------------------------------------
// Call-for-proposals dataset
// ---------------------------------------------------------------------------

struct CallDataset {
    FieldTaxonomy taxonomy;
    Roster roster;
    ExpertRegister reg;
    CallForProposals call;
    std::vector<Publication> corpus;
};

/// Applicants in uncovered SDSs implied by a published integer percentage.
inline int uncovered_applicants(const UdaFigures& u) {
    // smallest count that rounds to the published percentage
    for (int k = 0; k <= u.applicants; ++k)
        if (round_percent(100.0 * k / u.applicants) == u.published_uncovered_pct) return k;
    return -1;
}

inline CallDataset call_dataset() {
    auto taxonomy = hard_science_taxonomy();
    std::vector<Applicant> applicants;
    std::vector<Researcher> staff;
    std::vector<RegisterEntry> entries;
    std::vector<std::string> referee_ids;
    std::vector<Publication> corpus;

    enum class Standing { inactive, low, high };
    std::size_t researcher_no = 1;
    auto hire = [&](const std::string& sds) {
        Researcher r;
        r.researcher_id = numbered("S", researcher_no++, 5);
        r.official_sds = sds;
        r.institution_id = numbered("U", researcher_no % 60 + 1, 2);
        r.employment_start = Date(2001, 3, 1);
        r.rank = AcademicRank::full;
        staff.push_back(r);
        return r.researcher_id;
    };
    auto publish = [&](const std::string& researcher_id, const std::string& sds, std::int64_t citations) {
        Publication p;
        p.pub_id = numbered("P", corpus.size() + 1, 5);
        p.year = 2006;
        p.subject_categories = {"SC-" + sds};
        p.citations = citations;
        p.authors = {{researcher_id, "U01"}};
        corpus.push_back(std::move(p));
    };

    for (const auto& u : uda_figures()) {
        const auto& members = taxonomy.sds_in_uda(u.code);
        const int uncovered_sds = u.applicant_sds - u.covered_sds;
        const int in_uncovered = uncovered_applicants(u);
        std::vector<std::string> covered(members.begin(), members.begin() + u.covered_sds);
        std::vector<std::string> bare(members.begin() + u.covered_sds, members.begin() + u.applicant_sds);

        for (int i = 0; i < u.applicants; ++i) {
            const bool in_bare = i < in_uncovered;
            const auto& sds = in_bare ? bare[static_cast<std::size_t>(i) % static_cast<std::size_t>(uncovered_sds)]
                                      : covered[static_cast<std::size_t>(i - in_uncovered) % covered.size()];
            applicants.push_back({numbered("A", applicants.size() + 1, 4), sds});
        }

        std::map<std::string, int> referees_in_sds;
        for (int i = 0; i < u.referees; ++i) {
            const auto& sds = covered[static_cast<std::size_t>(i) % covered.size()];
            ++referees_in_sds[sds];
            Standing standing = i < u.inactive ? Standing::inactive
                                               : (i < u.below_median ? Standing::low : Standing::high);
            auto rid = hire(sds);
            auto eid = numbered("X", referee_ids.size() + 1, 4);
            entries.push_back({eid, rid, ExpertCategory::A, {sds}});
            referee_ids.push_back(eid);
            if (standing == Standing::low) publish(rid, sds, 1);
            if (standing == Standing::high) publish(rid, sds, 100);
        }
        // Peers outnumber referees four to one, all between low and high.
        for (const auto& [sds, n] : referees_in_sds)
            for (int k = 0; k < 4 * n; ++k) publish(hire(sds), sds, 10);
    }

    Roster roster(std::move(staff), taxonomy);
    ExpertRegister reg(std::move(entries), taxonomy, roster);
    CallForProposals call{std::move(applicants), std::move(referee_ids)};
    return {std::move(taxonomy), std::move(roster), std::move(reg), std::move(call), std::move(corpus)};
}

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

inline std::string taxonomy_csv(const FieldTaxonomy& taxonomy) {
    CsvWriter out({"sds_code", "sds_name", "uda_code", "uda_name", "positional_weighting"});
    for (const auto& e : taxonomy.entries())
        out.row({e.sds_code, e.sds_name, e.uda_code, e.uda_name, e.positional_weighting ? "1" : "0"});
    return out.str();
}

inline std::string roster_csv(const Roster& roster) {
    CsvWriter out({"researcher_id", "official_sds", "institution_id", "employment_start", "employment_end", "rank"});
    for (const auto& r : roster.researchers())
        out.row({r.researcher_id, r.official_sds, r.institution_id, r.employment_start.str(),
                 r.employment_end ? r.employment_end->str() : std::string(), std::string(to_string(r.rank))});
    return out.str();
}

inline std::string register_csv(const ExpertRegister& reg) {
    CsvWriter out({"expert_id", "category", "researcher_id", "declared_sds"});
    for (const auto& e : reg.entries())
        out.row({e.expert_id, std::string(to_string(e.category)), e.researcher_id.value_or(""), join(e.declared_sds)});
    return out.str();
}

inline std::string corpus_jsonl(const std::vector<Publication>& corpus) {
    std::string out;
    for (const auto& p : corpus) out += to_json(p).dump() + "\n";
    return out;
}

inline void write_register_dataset(const std::filesystem::path& dir, const RegisterDataset& d) {
    std::filesystem::create_directories(dir);
    write_text(dir / "taxonomy.csv", taxonomy_csv(d.taxonomy));
    write_text(dir / "roster.csv", roster_csv(d.roster));
    write_text(dir / "register.csv", register_csv(d.reg));
}

inline void write_call_dataset(const std::filesystem::path& dir, const CallDataset& d) {
    std::filesystem::create_directories(dir);
    write_text(dir / "taxonomy.csv", taxonomy_csv(d.taxonomy));
    write_text(dir / "roster.csv", roster_csv(d.roster));
    write_text(dir / "register.csv", register_csv(d.reg));
    write_text(dir / "publications.jsonl", corpus_jsonl(d.corpus));
    CsvWriter applicants({"applicant_id", "official_sds"});
    for (const auto& a : d.call.applicants) applicants.row({a.applicant_id, a.official_sds});
    write_text(dir / "applicants.csv", applicants.str());
    CsvWriter referees({"expert_id"});
    for (const auto& r : d.call.referees) referees.row({r});
    write_text(dir / "call_referees.csv", referees.str());
}

} // namespace refaudit::fixtures
