#pragma once

// Domain types and validated ingestion: field taxonomy, national staff
// roster, expert register, publication corpus.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "refaudit/csv.hpp"
#include "refaudit/dates.hpp"
#include "refaudit/error.hpp"

namespace refaudit {

// ---------------------------------------------------------------------------
// Field taxonomy (SDS -> UDA)
// ---------------------------------------------------------------------------

struct SdsEntry {
    std::string sds_code;
    std::string sds_name;
    std::string uda_code;
    std::string uda_name;
    bool positional_weighting = false; ///< life-science field: author position matters
};

class FieldTaxonomy {
public:
    FieldTaxonomy() = default;

    explicit FieldTaxonomy(std::vector<SdsEntry> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) throw ValidationError("taxonomy has no SDS entries");
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            const auto& e = entries_[i];
            if (e.sds_code.empty() || e.uda_code.empty())
                throw ValidationError("taxonomy entry " + std::to_string(i + 1) + " lacks an SDS or UDA code");
            if (!by_sds_.emplace(e.sds_code, i).second)
                throw ValidationError("duplicate SDS code '" + e.sds_code + "' in taxonomy");
            auto [it, fresh] = uda_names_.emplace(e.uda_code, e.uda_name);
            if (fresh) {
                udas_.push_back(e.uda_code);
            } else if (it->second != e.uda_name) {
                throw ValidationError("UDA '" + e.uda_code + "' has two names: '" + it->second + "' and '" +
                                      e.uda_name + "'");
            }
            uda_members_[e.uda_code].push_back(e.sds_code);
        }
    }

    const std::vector<SdsEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    bool contains(std::string_view sds) const { return by_sds_.find(sds) != by_sds_.end(); }

    const SdsEntry* find(std::string_view sds) const {
        auto it = by_sds_.find(sds);
        return it == by_sds_.end() ? nullptr : &entries_[it->second];
    }

    const SdsEntry& at(std::string_view sds) const {
        if (const auto* e = find(sds)) return *e;
        throw ValidationError("unknown SDS code '" + std::string(sds) + "'");
    }

    const std::string& uda_of(std::string_view sds) const { return at(sds).uda_code; }

    /// UDA codes in order of first appearance.
    const std::vector<std::string>& uda_codes() const noexcept { return udas_; }

    const std::string& uda_name(std::string_view uda) const {
        auto it = uda_names_.find(uda);
        if (it == uda_names_.end()) throw ValidationError("unknown UDA code '" + std::string(uda) + "'");
        return it->second;
    }

    /// SDS codes of a UDA, in file order.
    const std::vector<std::string>& sds_in_uda(std::string_view uda) const {
        auto it = uda_members_.find(uda);
        if (it == uda_members_.end()) throw ValidationError("unknown UDA code '" + std::string(uda) + "'");
        return it->second;
    }

private:
    std::vector<SdsEntry> entries_;
    std::map<std::string, std::size_t, std::less<>> by_sds_;
    std::vector<std::string> udas_;
    std::map<std::string, std::string, std::less<>> uda_names_;
    std::map<std::string, std::vector<std::string>, std::less<>> uda_members_;
};

inline FieldTaxonomy parse_taxonomy(std::istream& in, const std::string& source) {
    if (in.peek() == std::char_traits<char>::eof()) throw ValidationError(source + ": taxonomy file is empty");
    auto table = CsvTable::parse(in, source, {"sds_code", "sds_name", "uda_code", "uda_name", "positional_weighting"});
    std::vector<SdsEntry> entries;
    entries.reserve(table.rows().size());
    for (const auto& row : table.rows()) {
        SdsEntry e{std::string(row["sds_code"]), std::string(row["sds_name"]), std::string(row["uda_code"]),
                   std::string(row["uda_name"]), false};
        auto flag = row["positional_weighting"];
        if (flag == "1") {
            e.positional_weighting = true;
        } else if (flag != "0") {
            throw InputError(table.location(row.line()) + ": positional_weighting must be 0 or 1");
        }
        if (e.sds_code.empty()) throw InputError(table.location(row.line()) + ": empty sds_code");
        if (e.uda_code.empty()) throw InputError(table.location(row.line()) + ": empty uda_code");
        entries.push_back(std::move(e));
    }
    return FieldTaxonomy(std::move(entries));
}

inline FieldTaxonomy load_taxonomy(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    return parse_taxonomy(in, path);
}

// ---------------------------------------------------------------------------
// National staff roster
// ---------------------------------------------------------------------------

enum class AcademicRank { assistant, associate, full, other };

inline std::string_view to_string(AcademicRank r) {
    switch (r) {
    case AcademicRank::assistant: return "assistant";
    case AcademicRank::associate: return "associate";
    case AcademicRank::full: return "full";
    case AcademicRank::other: return "other";
    }
    return "other";
}

struct Researcher {
    std::string researcher_id;
    std::string official_sds;
    std::string institution_id;
    Date employment_start;
    std::optional<Date> employment_end; ///< empty = still employed

    AcademicRank rank = AcademicRank::other;

    double years_in(YearWindow window) const { return years_worked(employment_start, employment_end, window); }
};

class Roster {
public:
    Roster() = default;

    Roster(std::vector<Researcher> researchers, const FieldTaxonomy& taxonomy) : researchers_(std::move(researchers)) {
        for (std::size_t i = 0; i < researchers_.size(); ++i) {
            const auto& r = researchers_[i];
            if (!taxonomy.contains(r.official_sds))
                throw ValidationError("researcher '" + r.researcher_id + "' has unknown SDS '" + r.official_sds + "'");
            if (r.employment_end && *r.employment_end < r.employment_start)
                throw ValidationError("researcher '" + r.researcher_id + "' employment ends before it starts");
            if (!by_id_.emplace(r.researcher_id, i).second)
                throw ValidationError("duplicate researcher_id '" + r.researcher_id + "'");
        }
    }

    const std::vector<Researcher>& researchers() const noexcept { return researchers_; }
    std::size_t size() const noexcept { return researchers_.size(); }
    bool empty() const noexcept { return researchers_.empty(); }

    const Researcher* find(std::string_view id) const {
        auto it = by_id_.find(id);
        return it == by_id_.end() ? nullptr : &researchers_[it->second];
    }

    /// Staff per UDA, keyed by UDA code.
    std::map<std::string, std::size_t> staff_by_uda(const FieldTaxonomy& taxonomy) const {
        std::map<std::string, std::size_t> out;
        for (const auto& r : researchers_) ++out[taxonomy.uda_of(r.official_sds)];
        return out;
    }

private:
    std::vector<Researcher> researchers_;
    std::map<std::string, std::size_t, std::less<>> by_id_;
};

inline AcademicRank parse_rank(std::string_view s, const std::string& where) {
    if (s == "assistant") return AcademicRank::assistant;
    if (s == "associate") return AcademicRank::associate;
    if (s == "full") return AcademicRank::full;
    if (s == "other" || s.empty()) return AcademicRank::other;
    throw InputError(where + ": unknown rank '" + std::string(s) + "'");
}

inline Roster parse_roster(std::istream& in, const std::string& source, const FieldTaxonomy& taxonomy) {
    auto table = CsvTable::parse(
        in, source, {"researcher_id", "official_sds", "institution_id", "employment_start", "employment_end", "rank"});
    std::vector<Researcher> out;
    out.reserve(table.rows().size());
    for (const auto& row : table.rows()) {
        auto where = table.location(row.line());
        Researcher r;
        r.researcher_id = row["researcher_id"];
        if (r.researcher_id.empty()) throw InputError(where + ": empty researcher_id");
        r.official_sds = row["official_sds"];
        r.institution_id = row["institution_id"];
        auto start = Date::parse(row["employment_start"]);
        if (!start) throw InputError(where + ": bad employment_start '" + std::string(row["employment_start"]) + "'");
        r.employment_start = *start;
        if (auto end_text = row["employment_end"]; !end_text.empty()) {
            auto end = Date::parse(end_text);
            if (!end) throw InputError(where + ": bad employment_end '" + std::string(end_text) + "'");
            r.employment_end = *end;
        }
        r.rank = parse_rank(row["rank"], where);
        out.push_back(std::move(r));
    }
    return Roster(std::move(out), taxonomy);
}

inline Roster load_roster(const std::string& path, const FieldTaxonomy& taxonomy) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    return parse_roster(in, path, taxonomy);
}

// ---------------------------------------------------------------------------
// Expert register
// ---------------------------------------------------------------------------

enum class ExpertCategory { A, B, C, unspecified };

inline std::string_view to_string(ExpertCategory c) {
    switch (c) {
    case ExpertCategory::A: return "A";
    case ExpertCategory::B: return "B";
    case ExpertCategory::C: return "C";
    case ExpertCategory::unspecified: return "";
    }
    return "";
}

struct RegisterEntry {
    std::string expert_id;
    std::optional<std::string> researcher_id; ///< present iff the expert is an academic
    ExpertCategory category = ExpertCategory::unspecified;
    std::vector<std::string> declared_sds;    ///< sorted, unique, non-empty

    bool academic() const noexcept { return researcher_id.has_value(); }
};

class ExpertRegister {
public:
    ExpertRegister() = default;

    ExpertRegister(std::vector<RegisterEntry> entries, const FieldTaxonomy& taxonomy, const Roster& roster)
        : entries_(std::move(entries)) {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            auto& e = entries_[i];
            std::sort(e.declared_sds.begin(), e.declared_sds.end());
            e.declared_sds.erase(std::unique(e.declared_sds.begin(), e.declared_sds.end()), e.declared_sds.end());
            if (e.declared_sds.empty()) throw ValidationError("expert '" + e.expert_id + "' declares no SDS");
            for (const auto& sds : e.declared_sds)
                if (!taxonomy.contains(sds))
                    throw ValidationError("expert '" + e.expert_id + "' declares unknown SDS '" + sds + "'");
            if (e.researcher_id && !roster.find(*e.researcher_id))
                throw ValidationError("expert '" + e.expert_id + "' links to unknown researcher '" + *e.researcher_id +
                                      "'");
            if (!by_id_.emplace(e.expert_id, i).second)
                throw ValidationError("duplicate expert_id '" + e.expert_id + "'");
        }
    }

    const std::vector<RegisterEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    const RegisterEntry* find(std::string_view expert_id) const {
        auto it = by_id_.find(expert_id);
        return it == by_id_.end() ? nullptr : &entries_[it->second];
    }

    std::size_t academic_count() const {
        return static_cast<std::size_t>(
            std::count_if(entries_.begin(), entries_.end(), [](const auto& e) { return e.academic(); }));
    }

private:
    std::vector<RegisterEntry> entries_;
    std::map<std::string, std::size_t, std::less<>> by_id_;
};

inline ExpertCategory parse_category(std::string_view s) {
    if (s == "A" || s == "a") return ExpertCategory::A;
    if (s == "B" || s == "b") return ExpertCategory::B;
    if (s == "C" || s == "c") return ExpertCategory::C;
    return ExpertCategory::unspecified;
}

inline ExpertRegister parse_register(std::istream& in, const std::string& source, const FieldTaxonomy& taxonomy,
                                     const Roster& roster) {
    auto table = CsvTable::parse(in, source, {"expert_id", "category", "researcher_id", "declared_sds"});
    std::vector<RegisterEntry> out;
    out.reserve(table.rows().size());
    for (const auto& row : table.rows()) {
        RegisterEntry e;
        e.expert_id = row["expert_id"];
        if (e.expert_id.empty()) throw InputError(table.location(row.line()) + ": empty expert_id");
        e.category = parse_category(row["category"]);
        if (auto rid = row["researcher_id"]; !rid.empty()) e.researcher_id = std::string(rid);
        e.declared_sds = split_list(row["declared_sds"]);
        out.push_back(std::move(e));
    }
    return ExpertRegister(std::move(out), taxonomy, roster);
}

inline ExpertRegister load_register(const std::string& path, const FieldTaxonomy& taxonomy, const Roster& roster) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    return parse_register(in, path, taxonomy, roster);
}

// ---------------------------------------------------------------------------
// Publications
// ---------------------------------------------------------------------------

enum class DocType { article, review, proceedings };

struct AuthorSlot {
    std::optional<std::string> researcher_id; ///< empty for authors outside the roster
    std::string institution_id;
};

struct Publication {
    std::string pub_id;
    int year = 0;
    DocType doc_type = DocType::article;
    std::vector<std::string> subject_categories;
    std::int64_t citations = 0;
    std::vector<AuthorSlot> authors; ///< slot i holds author position i + 1

    std::size_t author_count() const noexcept { return authors.size(); }

    /// 1-based position of `researcher_id` in the author list, 0 if absent.
    std::size_t position_of(std::string_view researcher_id) const {
        for (std::size_t i = 0; i < authors.size(); ++i)
            if (authors[i].researcher_id && *authors[i].researcher_id == researcher_id) return i + 1;
        return 0;
    }
};

/// Throws ValidationError when a publication breaks a structural invariant.
inline void validate(const Publication& p) {
    if (p.pub_id.empty()) throw ValidationError("publication with empty pub_id");
    if (p.citations < 0) throw ValidationError("publication '" + p.pub_id + "' has negative citations");
    if (p.authors.empty()) throw ValidationError("publication '" + p.pub_id + "' has no authors");
    if (p.subject_categories.empty()) throw ValidationError("publication '" + p.pub_id + "' has no subject category");
    std::set<std::string_view> seen;
    for (const auto& a : p.authors)
        if (a.researcher_id && !seen.insert(*a.researcher_id).second)
            throw ValidationError("publication '" + p.pub_id + "' lists researcher '" + *a.researcher_id + "' twice");
}

inline DocType parse_doc_type(std::string_view s, const std::string& where) {
    if (s == "article") return DocType::article;
    if (s == "review") return DocType::review;
    if (s == "proceedings") return DocType::proceedings;
    throw InputError(where + ": unknown doc_type '" + std::string(s) + "'");
}

inline Publication publication_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object()) throw InputError(where + ": expected a JSON object");
    auto need = [&](const char* key) -> const nlohmann::json& {
        auto it = j.find(key);
        if (it == j.end()) throw InputError(where + ": missing key '" + key + "'");
        return *it;
    };
    Publication p;
    const auto& id = need("pub_id");
    if (!id.is_string()) throw InputError(where + ": pub_id must be a string");
    p.pub_id = id.get<std::string>();

    const auto& year = need("year");
    if (!year.is_number_integer()) throw InputError(where + ": year must be an integer");
    p.year = year.get<int>();

    const auto& dt = need("doc_type");
    if (!dt.is_string()) throw InputError(where + ": doc_type must be a string");
    p.doc_type = parse_doc_type(dt.get<std::string>(), where);

    const auto& cats = need("subject_categories");
    if (!cats.is_array()) throw InputError(where + ": subject_categories must be an array");
    for (const auto& c : cats) {
        if (!c.is_string()) throw InputError(where + ": subject category must be a string");
        p.subject_categories.push_back(c.get<std::string>());
    }

    const auto& cit = need("citations");
    if (!cit.is_number_integer()) throw InputError(where + ": citations must be an integer");
    p.citations = cit.get<std::int64_t>();

    const auto& authors = need("authors");
    if (!authors.is_array()) throw InputError(where + ": authors must be an array");
    for (const auto& a : authors) {
        if (!a.is_object()) throw InputError(where + ": author must be an object");
        AuthorSlot slot;
        if (auto it = a.find("researcher_id"); it != a.end() && !it->is_null()) {
            if (!it->is_string()) throw InputError(where + ": researcher_id must be a string or null");
            slot.researcher_id = it->get<std::string>();
        }
        if (auto it = a.find("institution_id"); it != a.end() && !it->is_null()) {
            if (!it->is_string()) throw InputError(where + ": institution_id must be a string");
            slot.institution_id = it->get<std::string>();
        }
        p.authors.push_back(std::move(slot));
    }
    return p;
}

inline nlohmann::json to_json(const Publication& p) {
    nlohmann::json authors = nlohmann::json::array();
    for (const auto& a : p.authors) {
        nlohmann::json slot;
        slot["researcher_id"] = a.researcher_id ? nlohmann::json(*a.researcher_id) : nlohmann::json(nullptr);
        slot["institution_id"] = a.institution_id;
        authors.push_back(std::move(slot));
    }
    static constexpr const char* doc_names[] = {"article", "review", "proceedings"};
    return {{"pub_id", p.pub_id},
            {"year", p.year},
            {"doc_type", doc_names[static_cast<int>(p.doc_type)]},
            {"subject_categories", p.subject_categories},
            {"citations", p.citations},
            {"authors", std::move(authors)}};
}

/// Reads JSON Lines; publications dated outside `window` are dropped.
inline std::vector<Publication> parse_corpus(std::istream& in, const std::string& source, YearWindow window) {
    if (window.first > window.last) throw ValidationError("empty publication window " + window.str());
    std::vector<Publication> out;
    std::set<std::string, std::less<>> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto where = source + ":" + std::to_string(line_no);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw InputError(where + ": " + e.what());
        }
        auto p = publication_from_json(j, where);
        try {
            validate(p);
        } catch (const ValidationError& e) {
            throw ValidationError(where + ": " + e.what());
        }
        if (!ids.insert(p.pub_id).second) throw ValidationError(where + ": duplicate pub_id '" + p.pub_id + "'");
        if (window.contains(p.year)) out.push_back(std::move(p));
    }
    return out;
}

inline std::vector<Publication> load_corpus(const std::string& path, YearWindow window) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    return parse_corpus(in, path, window);
}

} // namespace refaudit
