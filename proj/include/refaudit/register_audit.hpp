#pragma once

// Register audit: how well a register's declared competencies cover the
// field taxonomy, and how its academics are spread against national staff.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "refaudit/corpus_model.hpp"
#include "refaudit/csv.hpp"

namespace refaudit {

struct CoverageRow {
    std::string uda_code;
    std::string uda_name;
    std::size_t total_sds = 0;
    std::size_t expert_count = 0;   ///< distinct experts declaring any SDS of the UDA
    std::size_t academic_count = 0; ///< of which academics
    std::vector<std::string> uncovered_sds;
    std::vector<std::string> single_expert_sds;

    double uncovered_pct() const { return percent(static_cast<double>(uncovered_sds.size()), static_cast<double>(total_sds)); }
    double single_pct() const { return percent(static_cast<double>(single_expert_sds.size()), static_cast<double>(total_sds)); }
};

struct CoverageReport {
    std::vector<CoverageRow> rows; ///< taxonomy UDA order
    CoverageRow totals;            ///< expert counts here are distinct register entries

    /// Column sums of the per-UDA counts; experts declaring in several UDAs
    /// appear in each, so these exceed the totals row.
    std::size_t expert_column_sum() const {
        std::size_t n = 0;
        for (const auto& r : rows) n += r.expert_count;
        return n;
    }
    std::size_t academic_column_sum() const {
        std::size_t n = 0;
        for (const auto& r : rows) n += r.academic_count;
        return n;
    }
};

inline CoverageReport coverage_table(const ExpertRegister& reg, const FieldTaxonomy& taxonomy) {
    std::map<std::string, std::size_t> declarers;
    std::map<std::string, std::set<std::size_t>> uda_experts;
    for (std::size_t i = 0; i < reg.entries().size(); ++i) {
        for (const auto& sds : reg.entries()[i].declared_sds) {
            ++declarers[sds];
            uda_experts[taxonomy.uda_of(sds)].insert(i);
        }
    }

    CoverageReport report;
    report.totals.uda_code = "TOTAL";
    report.totals.uda_name = "Total";
    for (const auto& uda : taxonomy.uda_codes()) {
        CoverageRow row;
        row.uda_code = uda;
        row.uda_name = taxonomy.uda_name(uda);
        const auto& members = taxonomy.sds_in_uda(uda);
        row.total_sds = members.size();
        const auto& experts = uda_experts[uda];
        row.expert_count = experts.size();
        row.academic_count = static_cast<std::size_t>(std::count_if(
            experts.begin(), experts.end(), [&](std::size_t i) { return reg.entries()[i].academic(); }));
        for (const auto& sds : members) {
            auto n = declarers.count(sds) ? declarers[sds] : 0;
            if (n == 0) row.uncovered_sds.push_back(sds);
            if (n == 1) row.single_expert_sds.push_back(sds);
        }
        report.totals.total_sds += row.total_sds;
        report.totals.uncovered_sds.insert(report.totals.uncovered_sds.end(), row.uncovered_sds.begin(),
                                           row.uncovered_sds.end());
        report.totals.single_expert_sds.insert(report.totals.single_expert_sds.end(), row.single_expert_sds.begin(),
                                               row.single_expert_sds.end());
        report.rows.push_back(std::move(row));
    }
    report.totals.expert_count = reg.size();
    report.totals.academic_count = reg.academic_count();
    return report;
}

struct ConcentrationRow {
    std::string uda_code;
    std::string uda_name;
    std::size_t academic_experts = 0;
    std::size_t national_staff = 0;
    double expert_share = 0.0; ///< fraction of all academic experts
    double staff_share = 0.0;  ///< fraction of national staff
    std::optional<double> concentration_index; ///< empty when the UDA has no staff
};

struct ConcentrationReport {
    std::vector<ConcentrationRow> rows;
    std::size_t academic_experts = 0;
    std::size_t national_staff = 0;
};

/// Ratio of each UDA's share of register academics (placed by official SDS)
/// to its share of national staff.
inline ConcentrationReport concentration_index(const ExpertRegister& reg, const Roster& roster,
                                               const FieldTaxonomy& taxonomy) {
    if (roster.empty()) throw ValidationError("concentration index needs a non-empty roster");
    std::map<std::string, std::size_t> experts;
    ConcentrationReport report;
    for (const auto& e : reg.entries()) {
        if (!e.academic()) continue;
        const auto* r = roster.find(*e.researcher_id);
        if (!r) throw ValidationError("expert '" + e.expert_id + "' links to unknown researcher");
        ++experts[taxonomy.uda_of(r->official_sds)];
        ++report.academic_experts;
    }
    const auto staff = roster.staff_by_uda(taxonomy);
    report.national_staff = roster.size();

    const double e_total = static_cast<double>(report.academic_experts);
    const double s_total = static_cast<double>(report.national_staff);
    for (const auto& uda : taxonomy.uda_codes()) {
        ConcentrationRow row;
        row.uda_code = uda;
        row.uda_name = taxonomy.uda_name(uda);
        row.academic_experts = experts.count(uda) ? experts.at(uda) : 0;
        row.national_staff = staff.count(uda) ? staff.at(uda) : 0;
        row.expert_share = e_total > 0 ? static_cast<double>(row.academic_experts) / e_total : 0.0;
        row.staff_share = static_cast<double>(row.national_staff) / s_total;
        if (row.national_staff > 0) row.concentration_index = row.expert_share / row.staff_share;
        report.rows.push_back(std::move(row));
    }
    return report;
}

struct ColonizedSds {
    std::string sds_code;
    std::size_t declaring_experts = 0; ///< academics only
    std::size_t native_declaring = 0;  ///< always 0 for emitted rows
    std::string top_foreign_source_sds;
    std::size_t top_foreign_count = 0;
};

/// SDSs declared by academics none of whom officially belongs to them,
/// sorted by SDS code.
inline std::vector<ColonizedSds> cross_colonization(const ExpertRegister& reg, const Roster& roster,
                                                    const FieldTaxonomy& /*taxonomy*/) {
    struct Tally {
        std::size_t declaring = 0;
        std::size_t native = 0;
        std::map<std::string, std::size_t> sources;
    };
    std::map<std::string, Tally> by_sds;
    for (const auto& e : reg.entries()) {
        if (!e.academic()) continue;
        const auto* r = roster.find(*e.researcher_id);
        if (!r) throw ValidationError("expert '" + e.expert_id + "' links to unknown researcher");
        for (const auto& sds : e.declared_sds) {
            auto& tally = by_sds[sds];
            ++tally.declaring;
            if (r->official_sds == sds) {
                ++tally.native;
            } else {
                ++tally.sources[r->official_sds];
            }
        }
    }

    std::vector<ColonizedSds> out;
    for (const auto& [sds, tally] : by_sds) {
        if (tally.declaring == 0 || tally.native > 0) continue;
        ColonizedSds row{sds, tally.declaring, 0, {}, 0};
        // std::map iterates in code order, so strict > keeps the smallest code on ties
        for (const auto& [source, count] : tally.sources) {
            if (count > row.top_foreign_count) {
                row.top_foreign_count = count;
                row.top_foreign_source_sds = source;
            }
        }
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace refaudit
