#pragma once

// CSV and aligned plain-text renderings of every report. CSVs carry
// unrounded values; text tables round percentages to integers.

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "refaudit/call_match.hpp"
#include "refaudit/csv.hpp"
#include "refaudit/fss_engine.hpp"
#include "refaudit/register_audit.hpp"

namespace refaudit {

/// Column-aligned table: first column left-justified, the rest right-justified.
class TextTable {
public:
    explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }

    void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    void add_rule() { rules_.push_back(rows_.size()); }

    std::string str() const {
        std::vector<std::size_t> width;
        for (const auto& row : rows_) {
            if (width.size() < row.size()) width.resize(row.size(), 0);
            for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], display_width(row[i]));
        }
        std::size_t total = 0;
        for (auto w : width) total += w;
        total += width.empty() ? 0 : 2 * (width.size() - 1);
        const std::string rule(total, '-');

        std::ostringstream out;
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            if (std::find(rules_.begin(), rules_.end(), r) != rules_.end()) out << rule << '\n';
            const auto& row = rows_[r];
            std::string line;
            for (std::size_t i = 0; i < row.size(); ++i) {
                std::string pad(width[i] - display_width(row[i]), ' ');
                if (i) line += "  ";
                line += i == 0 ? row[i] + pad : pad + row[i];
            }
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out << line << '\n';
            if (r == 0) out << rule << '\n';
        }
        return out.str();
    }

private:
    // counts UTF-8 code points
    static std::size_t display_width(const std::string& s) {
        std::size_t n = 0;
        for (unsigned char c : s)
            if ((c & 0xC0) != 0x80) ++n;
        return n;
    }

    std::vector<std::vector<std::string>> rows_;
    std::vector<std::size_t> rules_;
};

inline std::string count_with_pct(std::size_t count, double pct) {
    return std::to_string(count) + " (" + std::to_string(round_percent(pct)) + "%)";
}

// ---------------------------------------------------------------------------
// Scorecards
// ---------------------------------------------------------------------------

inline std::string scorecards_csv(const std::vector<ScoreCard>& cards) {
    CsvWriter out({"researcher_id", "official_sds", "t", "fss", "percentile", "activity_class"});
    for (const auto& c : cards)
        out.row({c.researcher_id, c.official_sds, format_fixed(c.t, 6), format_fixed(c.fss, 9),
                 c.percentile ? format_fixed(*c.percentile, 6) : std::string(), std::string(to_string(c.activity_class))});
    return out.str();
}

inline std::vector<ScoreCard> parse_scorecards_csv(std::istream& in, const std::string& source) {
    auto table =
        CsvTable::parse(in, source, {"researcher_id", "official_sds", "t", "fss", "percentile", "activity_class"});
    std::vector<ScoreCard> cards;
    for (const auto& row : table.rows()) {
        auto where = table.location(row.line());
        ScoreCard c;
        c.researcher_id = row["researcher_id"];
        c.official_sds = row["official_sds"];
        if (!parse_double(row["t"], c.t) || !parse_double(row["fss"], c.fss))
            throw InputError(where + ": bad numeric field");
        if (auto p = row["percentile"]; !p.empty()) {
            double v = 0;
            if (!parse_double(p, v)) throw InputError(where + ": bad percentile");
            c.percentile = v;
        }
        try {
            c.activity_class = parse_activity_class(row["activity_class"]);
        } catch (const InputError& e) {
            throw InputError(where + ": " + e.what());
        }
        if ((c.activity_class == ActivityClass::non_active) == c.percentile.has_value())
            throw ValidationError(where + ": percentile must be present exactly for active researchers");
        cards.push_back(std::move(c));
    }
    return cards;
}

inline std::vector<ScoreCard> load_scorecards_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    return parse_scorecards_csv(in, path);
}

inline std::string skipped_csv(const std::vector<SkippedResearcher>& skipped) {
    CsvWriter out({"researcher_id", "reason"});
    for (const auto& s : skipped) out.row({s.researcher_id, s.reason});
    return out.str();
}

// ---------------------------------------------------------------------------
// Register coverage
// ---------------------------------------------------------------------------

inline std::string coverage_csv(const CoverageReport& report) {
    CsvWriter out({"uda_code", "uda_name", "total_sds", "expert_count", "expert_share_pct", "academic_count",
                   "academic_share_pct", "uncovered_count", "uncovered_pct", "single_expert_count",
                   "single_expert_pct", "uncovered_sds", "single_expert_sds"});
    const double experts = static_cast<double>(report.expert_column_sum());
    const double academics = static_cast<double>(report.academic_column_sum());
    auto emit = [&](const CoverageRow& r, bool total) {
        out.row({r.uda_code, r.uda_name, std::to_string(r.total_sds), std::to_string(r.expert_count),
                 total ? std::string() : format_fixed(percent(static_cast<double>(r.expert_count), experts)),
                 std::to_string(r.academic_count),
                 total ? std::string() : format_fixed(percent(static_cast<double>(r.academic_count), academics)),
                 std::to_string(r.uncovered_sds.size()), format_fixed(r.uncovered_pct()),
                 std::to_string(r.single_expert_sds.size()), format_fixed(r.single_pct()), join(r.uncovered_sds),
                 join(r.single_expert_sds)});
    };
    for (const auto& r : report.rows) emit(r, false);
    emit(report.totals, true);
    return out.str();
}

inline std::string coverage_text(const CoverageReport& report) {
    TextTable table({"UDA", "Total SDSs", "No. of experts", "Of which academics", "SDSs not covered (%)",
                     "SDSs covered by a single expert (%)"});
    const double experts = static_cast<double>(report.expert_column_sum());
    const double academics = static_cast<double>(report.academic_column_sum());
    for (const auto& r : report.rows)
        table.add_row({r.uda_name, std::to_string(r.total_sds),
                       count_with_pct(r.expert_count, percent(static_cast<double>(r.expert_count), experts)),
                       count_with_pct(r.academic_count, percent(static_cast<double>(r.academic_count), academics)),
                       count_with_pct(r.uncovered_sds.size(), r.uncovered_pct()),
                       count_with_pct(r.single_expert_sds.size(), r.single_pct())});
    table.add_rule();
    const auto& t = report.totals;
    table.add_row({t.uda_name, std::to_string(t.total_sds), std::to_string(t.expert_count),
                   std::to_string(t.academic_count), count_with_pct(t.uncovered_sds.size(), t.uncovered_pct()),
                   count_with_pct(t.single_expert_sds.size(), t.single_pct())});
    return "Register coverage of SDSs by UDA\n"
           "(experts declaring SDSs in several UDAs are counted in each)\n\n" +
           table.str();
}

// ---------------------------------------------------------------------------
// Concentration
// ---------------------------------------------------------------------------

inline std::string concentration_csv(const ConcentrationReport& report) {
    CsvWriter out({"uda_code", "uda_name", "academic_experts", "expert_share_pct", "national_staff", "staff_share_pct",
                   "concentration_index"});
    for (const auto& r : report.rows)
        out.row({r.uda_code, r.uda_name, std::to_string(r.academic_experts), format_fixed(100.0 * r.expert_share),
                 std::to_string(r.national_staff), format_fixed(100.0 * r.staff_share),
                 r.concentration_index ? format_fixed(*r.concentration_index) : std::string("undef")});
    out.row({"TOTAL", "Total", std::to_string(report.academic_experts), format_fixed(100.0),
             std::to_string(report.national_staff), format_fixed(100.0), ""});
    return out.str();
}

inline std::string concentration_text(const ConcentrationReport& report) {
    TextTable table({"UDA", "Academic experts", "National academic staff", "Concentration index"});
    for (const auto& r : report.rows)
        table.add_row({r.uda_name, count_with_pct(r.academic_experts, 100.0 * r.expert_share),
                       count_with_pct(r.national_staff, 100.0 * r.staff_share),
                       r.concentration_index ? format_fixed(*r.concentration_index, 2) : std::string("undef")});
    table.add_rule();
    table.add_row({"Total", std::to_string(report.academic_experts), std::to_string(report.national_staff), ""});
    return "Academic experts against national staff by UDA\n"
           "(experts placed by official SDS; index = expert share / staff share)\n\n" +
           table.str();
}

// ---------------------------------------------------------------------------
// Cross-colonization
// ---------------------------------------------------------------------------

inline std::string colonization_csv(const std::vector<ColonizedSds>& rows) {
    CsvWriter out({"sds_code", "declaring_experts", "native_declaring", "top_foreign_source_sds", "top_foreign_count"});
    for (const auto& r : rows)
        out.row({r.sds_code, std::to_string(r.declaring_experts), std::to_string(r.native_declaring),
                 r.top_foreign_source_sds, std::to_string(r.top_foreign_count)});
    return out.str();
}

inline std::string colonization_text(const std::vector<ColonizedSds>& rows) {
    TextTable table({"SDS", "Declaring academics", "Native", "Top foreign source", "Count"});
    for (const auto& r : rows)
        table.add_row({r.sds_code, std::to_string(r.declaring_experts), std::to_string(r.native_declaring),
                       r.top_foreign_source_sds, std::to_string(r.top_foreign_count)});
    return "SDSs covered only by academics officially belonging to other SDSs: " + std::to_string(rows.size()) +
           "\n\n" + table.str();
}

// ---------------------------------------------------------------------------
// Call matching
// ---------------------------------------------------------------------------

inline std::string match_csv(const MatchReport& report) {
    CsvWriter out({"uda_code", "uda_name", "applicant_count", "referee_count", "applicant_sds_count",
                   "referee_covered_sds_count", "uncovered_sds_count", "applicants_in_uncovered_sds",
                   "pct_applicants_in_uncovered_sds"});
    auto emit = [&](const MatchRow& r) {
        out.row({r.uda_code, r.uda_name, std::to_string(r.applicant_count), std::to_string(r.referee_count),
                 std::to_string(r.applicant_sds_count), std::to_string(r.referee_covered_sds_count),
                 std::to_string(r.uncovered_sds_count), std::to_string(r.applicants_in_uncovered_sds),
                 format_fixed(r.pct_applicants_in_uncovered_sds())});
    };
    for (const auto& r : report.rows) emit(r);
    emit(report.totals);
    return out.str();
}

inline std::string match_text(const MatchReport& report) {
    TextTable table({"UDA", "Applic.", "Referee", "Applic. SDS", "Referee SDS", "Differ.",
                     "% of applicants from SDS not covered by referees"});
    auto emit = [&](const MatchRow& r) {
        table.add_row({r.uda_name, std::to_string(r.applicant_count), std::to_string(r.referee_count),
                       std::to_string(r.applicant_sds_count), std::to_string(r.referee_covered_sds_count),
                       std::to_string(r.uncovered_sds_count),
                       std::to_string(round_percent(r.pct_applicants_in_uncovered_sds()))});
    };
    for (const auto& r : report.rows) emit(r);
    table.add_rule();
    emit(report.totals);
    return "Referee coverage of applicant SDSs\n"
           "(match = applicant official SDS equals an academic referee's official SDS or one declared by a\n"
           " non-academic referee; an estimate of competence alignment, not a record of assignments)\n\n" +
           table.str();
}

inline std::string profile_csv(const RefereeProfile& profile) {
    CsvWriter out({"uda_code", "uda_name", "referee_count", "below_median_count", "below_median_pct",
                   "inactive_count", "inactive_pct"});
    auto emit = [&](const ProfileRow& r) {
        out.row({r.uda_code, r.uda_name, std::to_string(r.referee_count), std::to_string(r.below_median_count),
                 format_fixed(r.below_median_pct()), std::to_string(r.inactive_count), format_fixed(r.inactive_pct())});
    };
    for (const auto& r : profile.rows) emit(r);
    emit(profile.totals);
    return out.str();
}

inline std::string profile_text(const RefereeProfile& profile) {
    TextTable table({"UDA", "Referees", "Of which under the national median", "Inactive referees"});
    auto emit = [&](const ProfileRow& r) {
        table.add_row({r.uda_name, std::to_string(r.referee_count),
                       count_with_pct(r.below_median_count, r.below_median_pct()),
                       count_with_pct(r.inactive_count, r.inactive_pct())});
    };
    for (const auto& r : profile.rows) emit(r);
    table.add_rule();
    emit(profile.totals);
    std::string text = "National standing of the call's referees\n(inactive referees are counted under the median)\n\n" +
                       table.str();
    if (!profile.unscored.empty()) text += "\nUnscored referees (no scorecard): " + join(profile.unscored, ", ") + "\n";
    return text;
}

} // namespace refaudit
