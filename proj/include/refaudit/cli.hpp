#pragma once

// `refaudit score|audit|match`: loads inputs, runs the analyses, writes
// reports. Every output is rendered in memory first and only then written,
// through temporary files renamed into place, so a failed run leaves the
// output directory as it was.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "refaudit/baseline.hpp"
#include "refaudit/call_match.hpp"
#include "refaudit/corpus_model.hpp"
#include "refaudit/dates.hpp"
#include "refaudit/error.hpp"
#include "refaudit/fss_engine.hpp"
#include "refaudit/register_audit.hpp"
#include "refaudit/report.hpp"

namespace refaudit::cli {

enum ExitCode : int { ok = 0, input_error = 2, internal_error = 3 };

struct RunConfig {
    YearWindow window{2004, 2008};
    Date census_date{2009, 6, 30};
    BaselineInclusion baseline_inclusion = BaselineInclusion::cited_only;
    RankPopulation rank_population = RankPopulation::active;

    std::string taxonomy;
    std::string roster;
    std::string register_path;
    std::string corpus;
    std::string reference_corpus; ///< national corpus for medians; defaults to `corpus`
    std::string baseline_cache;   ///< read medians from here instead of computing them
    std::string scorecards;       ///< match: precomputed scorecards
    std::string call_applicants;
    std::string call_referees;
    std::string out_dir = ".";
};

using OutputFiles = std::vector<std::pair<std::string, std::string>>; // name, content

/// Writes every file or none of them.
inline void commit_outputs(const std::filesystem::path& dir, const OutputFiles& files) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InputError("cannot create output directory '" + dir.string() + "': " + ec.message());

    std::vector<fs::path> temps;
    auto cleanup = [&] {
        for (const auto& t : temps) fs::remove(t, ec);
    };
    for (const auto& [name, content] : files) {
        auto tmp = dir / (name + ".partial");
        temps.push_back(tmp);
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
        out.close();
        if (!out) {
            cleanup();
            throw InputError("cannot write '" + tmp.string() + "'");
        }
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
        fs::rename(temps[i], dir / files[i].first, ec);
        if (ec) {
            cleanup();
            throw InputError("cannot move '" + temps[i].string() + "' into place: " + ec.message());
        }
    }
}

inline void require(const std::string& value, const char* flag, const char* command) {
    if (value.empty()) throw InputError(std::string(command) + " requires " + flag);
}

inline ScoringResult run_scoring(const RunConfig& cfg, const FieldTaxonomy& taxonomy, const Roster& roster,
                                 CitationBaseline* baseline_out = nullptr) {
    require(cfg.corpus, "--corpus", "scoring");
    auto corpus = load_corpus(cfg.corpus, cfg.window);
    CitationBaseline baseline;
    if (!cfg.baseline_cache.empty()) {
        baseline = load_baseline_csv(cfg.baseline_cache, cfg.census_date);
    } else if (!cfg.reference_corpus.empty() && cfg.reference_corpus != cfg.corpus) {
        auto reference = load_corpus(cfg.reference_corpus, cfg.window);
        baseline = compute_baseline(reference, cfg.census_date, cfg.baseline_inclusion);
    } else {
        baseline = compute_baseline(corpus, cfg.census_date, cfg.baseline_inclusion);
    }
    auto result = score_roster(roster, corpus, baseline, taxonomy, cfg.window, cfg.rank_population);
    if (baseline_out) *baseline_out = std::move(baseline);
    return result;
}

inline OutputFiles cmd_score(const RunConfig& cfg, std::ostream& log) {
    require(cfg.taxonomy, "--taxonomy", "score");
    require(cfg.roster, "--roster", "score");
    auto taxonomy = load_taxonomy(cfg.taxonomy);
    auto roster = load_roster(cfg.roster, taxonomy);
    CitationBaseline baseline;
    auto result = run_scoring(cfg, taxonomy, roster, &baseline);
    log << "scored " << result.cards.size() << " researchers, skipped " << result.skipped.size() << '\n';
    return {{"scorecards.csv", scorecards_csv(result.cards)},
            {"baseline.csv", baseline_csv(baseline)},
            {"skipped.csv", skipped_csv(result.skipped)}};
}

inline OutputFiles cmd_audit(const RunConfig& cfg, std::ostream& log) {
    require(cfg.taxonomy, "--taxonomy", "audit");
    require(cfg.roster, "--roster", "audit");
    require(cfg.register_path, "--register", "audit");
    auto taxonomy = load_taxonomy(cfg.taxonomy);
    auto roster = load_roster(cfg.roster, taxonomy);
    auto reg = load_register(cfg.register_path, taxonomy, roster);

    auto coverage = coverage_table(reg, taxonomy);
    auto concentration = concentration_index(reg, roster, taxonomy);
    auto colonized = cross_colonization(reg, roster, taxonomy);
    log << "audited " << reg.size() << " register entries: " << coverage.totals.uncovered_sds.size()
        << " SDSs uncovered, " << coverage.totals.single_expert_sds.size() << " single-expert, " << colonized.size()
        << " cross-colonized\n";
    return {{"coverage.csv", coverage_csv(coverage)},
            {"coverage.txt", coverage_text(coverage)},
            {"concentration.csv", concentration_csv(concentration)},
            {"concentration.txt", concentration_text(concentration)},
            {"colonization.csv", colonization_csv(colonized)},
            {"colonization.txt", colonization_text(colonized)}};
}

inline OutputFiles cmd_match(const RunConfig& cfg, std::ostream& log) {
    require(cfg.taxonomy, "--taxonomy", "match");
    require(cfg.roster, "--roster", "match");
    require(cfg.register_path, "--register", "match");
    require(cfg.call_applicants, "--call", "match");
    require(cfg.call_referees, "--call-referees", "match");
    auto taxonomy = load_taxonomy(cfg.taxonomy);
    auto roster = load_roster(cfg.roster, taxonomy);
    auto reg = load_register(cfg.register_path, taxonomy, roster);
    auto call = load_call(cfg.call_applicants, cfg.call_referees, taxonomy);

    std::vector<ScoreCard> cards;
    if (!cfg.scorecards.empty()) {
        cards = load_scorecards_csv(cfg.scorecards);
    } else {
        if (cfg.corpus.empty()) throw InputError("match requires --scorecards or --corpus");
        cards = run_scoring(cfg, taxonomy, roster).cards;
    }

    auto match = match_analysis(call, reg, roster, taxonomy);
    auto profile = referee_profile(call, reg, cards, taxonomy);
    log << "matched " << call.applicants.size() << " applicants against " << call.referees.size() << " referees\n";
    return {{"match_report.csv", match_csv(match)},
            {"match_report.txt", match_text(match)},
            {"referee_profile.csv", profile_csv(profile)},
            {"referee_profile.txt", profile_text(profile)}};
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Audit referee registers: field coverage, concentration, FSS scoring, call matching", "refaudit"};
    app.set_config("--config", "", "Optional config file; command-line flags take precedence");
    app.require_subcommand(1, 1);

    RunConfig cfg;
    std::string window_text = cfg.window.str();
    std::string census_text = cfg.census_date.str();
    std::string baseline_text = "cited_only";
    std::string population_text = "active";

    app.add_option("--taxonomy", cfg.taxonomy, "SDS/UDA taxonomy CSV");
    app.add_option("--roster", cfg.roster, "National staff roster CSV");
    app.add_option("--register", cfg.register_path, "Expert register CSV");
    app.add_option("--corpus", cfg.corpus, "Publications JSONL of the scored researchers");
    app.add_option("--reference-corpus", cfg.reference_corpus, "National publications JSONL for medians (default: --corpus)");
    app.add_option("--baseline-cache", cfg.baseline_cache, "Read medians from a year,category,me CSV");
    app.add_option("--scorecards", cfg.scorecards, "Precomputed scorecards.csv for match");
    app.add_option("--call", cfg.call_applicants, "Call applicants CSV (applicant_id,official_sds)");
    app.add_option("--call-referees", cfg.call_referees, "Call referees CSV (expert_id)");
    app.add_option("--window", window_text, "Publication window, first:last year")->capture_default_str();
    app.add_option("--census-date", census_text, "Date citation counts were frozen")->capture_default_str();
    app.add_option("--baseline", baseline_text, "Median population")
        ->check(CLI::IsMember({"cited_only", "all"}))
        ->capture_default_str();
    app.add_option("--rank-population", population_text, "Percentile population")
        ->check(CLI::IsMember({"active", "all"}))
        ->capture_default_str();
    app.add_option("--out", cfg.out_dir, "Output directory")->capture_default_str();

    auto* score = app.add_subcommand("score", "Compute FSS scorecards")->fallthrough();
    auto* audit = app.add_subcommand("audit", "Register coverage, concentration and cross-colonization")->fallthrough();
    auto* match = app.add_subcommand("match", "Referee coverage and standing for one call")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return ok;
        }
        err << "refaudit: " << e.what() << '\n';
        return input_error;
    }

    try {
        cfg.window = YearWindow::parse(window_text);
        auto census = Date::parse(census_text);
        if (!census) throw InputError("bad --census-date '" + census_text + "'");
        cfg.census_date = *census;
        cfg.baseline_inclusion = parse_baseline_inclusion(baseline_text);
        cfg.rank_population = parse_rank_population(population_text);
        if (cfg.census_date <= cfg.window.end())
            err << "refaudit: warning: census date " << cfg.census_date.str()
                << " does not fall after the publication window " << cfg.window.str() << '\n';

        OutputFiles files;
        if (score->parsed()) files = cmd_score(cfg, out);
        else if (audit->parsed()) files = cmd_audit(cfg, out);
        else if (match->parsed()) files = cmd_match(cfg, out);
        commit_outputs(cfg.out_dir, files);
        for (const auto& f : files) out << "wrote " << (std::filesystem::path(cfg.out_dir) / f.first).string() << '\n';
        return ok;
    } catch (const InputError& e) {
        err << "refaudit: input error: " << e.what() << '\n';
        return input_error;
    } catch (const ValidationError& e) {
        err << "refaudit: validation error: " << e.what() << '\n';
        return input_error;
    } catch (const std::exception& e) {
        err << "refaudit: internal error: " << e.what() << '\n';
        return internal_error;
    }
}

} // namespace refaudit::cli
