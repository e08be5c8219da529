#pragma once

// Command implementations behind the qcite tool. Kept out of main() so the
// acceptance suite can drive the exact production code paths. Every command
// is deterministic for fixed inputs and seeds; the only timestamped file is
// the run manifest.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "qcite/errors.hpp"
#include "qcite/fitter.hpp"
#include "qcite/histogram.hpp"
#include "qcite/io.hpp"
#include "qcite/plot.hpp"
#include "qcite/ranking.hpp"
#include "qcite/report.hpp"
#include "qcite/synth.hpp"

#include "json.hpp"

namespace qcite::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_data = 2;
inline constexpr int exit_fit = 3;

namespace fs = std::filesystem;

/// Applies optional config-file fields onto defaults; flags override later.
inline void apply_config_json(FitConfig& cfg, const nlohmann::json& j) {
    try {
        if (j.contains("anchor_c")) cfg.anchor_c = j.at("anchor_c").get<std::int64_t>();
        if (j.contains("q_min")) cfg.q_grid.min = j.at("q_min").get<double>();
        if (j.contains("q_max")) cfg.q_grid.max = j.at("q_max").get<double>();
        if (j.contains("q_step")) cfg.q_grid.step = j.at("q_step").get<double>();
        if (j.contains("q_window_decades"))
            cfg.q_window_decades = j.at("q_window_decades").get<double>();
        if (j.contains("min_fit_points"))
            cfg.min_fit_points = j.at("min_fit_points").get<int>();
        if (j.contains("include_c1_in_r2"))
            cfg.include_c1_in_r2 = j.at("include_c1_in_r2").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config JSON: ") + e.what());
    }
}

inline FitConfig load_config_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    FitConfig cfg;
    apply_config_json(cfg, j);
    return cfg;
}

inline nlohmann::json config_to_json(const FitConfig& cfg) {
    return {{"anchor_c", cfg.anchor_c},
            {"q_min", cfg.q_grid.min},
            {"q_max", cfg.q_grid.max},
            {"q_step", cfg.q_grid.step},
            {"q_window_decades", cfg.q_window_decades},
            {"min_fit_points", cfg.min_fit_points},
            {"include_c1_in_r2", cfg.include_c1_in_r2}};
}

namespace detail {

inline std::string iso8601_utc_now() {
    const std::time_t t =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ",
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                  tm.tm_min, tm.tm_sec);
    return buf;
}

/// The manifest is the one file allowed to differ between identical runs.
inline void write_manifest(const fs::path& out_dir, const std::string& command,
                           nlohmann::json details,
                           const std::vector<std::string>& outputs) {
    details["command"] = command;
    details["outputs"] = outputs;
    details["timestamp"] = iso8601_utc_now();
    qcite::detail::write_file(out_dir / "manifest.json", details.dump(2) + "\n");
}

inline std::vector<fs::path> dataset_files(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace detail

struct FitCommand {
    fs::path dataset_dir;
    fs::path out_dir = "qcite-out";
    FitConfig config;
};

inline int run_fit(const FitCommand& cmd, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    if (!fs::is_directory(cmd.dataset_dir)) {
        err << "qcite fit: not a directory: " << cmd.dataset_dir.string() << "\n";
        return exit_data;
    }
    const auto files = detail::dataset_files(cmd.dataset_dir);
    if (files.empty()) {
        err << "qcite fit: no datasets in " << cmd.dataset_dir.string() << "\n";
        return exit_data;
    }
    std::vector<FitResult> results;
    int failures = 0;
    for (const auto& path : files) {
        try {
            const auto h = load_histogram(path);
            auto r = fit(h, cmd.config);
            out << r.entity << ": q=" << qcite::detail::fmt("%.3f", r.q)
                << " T=" << qcite::detail::fmt("%.2f", r.T)
                << " R2=" << qcite::detail::fmt("%.4f", r.r2) << " ("
                << r.n_points_T << " points)\n";
            results.push_back(std::move(r));
        } catch (const Error& e) {
            err << path.filename().string() << ": " << e.what() << "\n";
            ++failures;
        } catch (const std::domain_error& e) {
            err << path.filename().string() << ": " << e.what() << "\n";
            ++failures;
        }
    }
    if (results.empty()) {
        err << "qcite fit: all " << failures << " entities failed\n";
        return exit_fit;
    }
    std::sort(results.begin(), results.end(),
              [](const FitResult& a, const FitResult& b) {
                  return a.entity < b.entity;
              });
    fs::create_directories(cmd.out_dir);
    qcite::detail::write_file(cmd.out_dir / "results.csv", results_to_csv(results));
    qcite::detail::write_file(cmd.out_dir / "results.json",
                              results_to_json(results).dump(2) + "\n");
    detail::write_manifest(cmd.out_dir, "fit",
                           {{"dataset_dir", cmd.dataset_dir.string()},
                            {"config", config_to_json(cmd.config)},
                            {"failures", failures}},
                           {"results.csv", "results.json"});
    return exit_ok;
}

struct SummaryCommand {
    fs::path dataset_dir;
    fs::path out_dir = "qcite-out";
    fs::path groups_file;  // optional
};

inline int run_summary(const SummaryCommand& cmd, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
    if (!fs::is_directory(cmd.dataset_dir)) {
        err << "qcite summary: not a directory: " << cmd.dataset_dir.string()
            << "\n";
        return exit_data;
    }
    const auto files = detail::dataset_files(cmd.dataset_dir);
    if (files.empty()) {
        err << "qcite summary: no datasets in " << cmd.dataset_dir.string()
            << "\n";
        return exit_data;
    }
    std::vector<CitationHistogram> hists;
    for (const auto& path : files) {
        try {
            hists.push_back(load_histogram(path));
        } catch (const Error& e) {
            err << path.filename().string() << ": " << e.what() << "\n";
        }
    }
    if (hists.empty()) {
        err << "qcite summary: all entities failed\n";
        return exit_data;
    }
    std::vector<SummaryStats> rows;
    for (const auto& h : hists) rows.push_back(summarize(h));
    std::sort(rows.begin(), rows.end(),
              [](const SummaryStats& a, const SummaryStats& b) {
                  if (a.total_papers != b.total_papers)
                      return a.total_papers > b.total_papers;
                  return a.entity < b.entity;
              });

    std::map<std::string, const CitationHistogram*> by_entity;
    for (const auto& h : hists) by_entity[h.entity] = &h;
    if (!cmd.groups_file.empty()) {
        for (const auto& [name, members] : read_groups(cmd.groups_file)) {
            std::vector<CitationHistogram> group;
            bool complete = true;
            for (const auto& m : members) {
                auto it = by_entity.find(m);
                if (it == by_entity.end()) {
                    err << "group '" << name << "': missing entity '" << m
                        << "', skipping group\n";
                    complete = false;
                    break;
                }
                group.push_back(*it->second);
            }
            if (complete) rows.push_back(summarize(aggregate(group, name)));
        }
    }
    rows.push_back(summarize(aggregate(hists, "All")));

    const std::string text = render_summary_text(rows);
    fs::create_directories(cmd.out_dir);
    qcite::detail::write_file(cmd.out_dir / "summary.txt", text);
    qcite::detail::write_file(cmd.out_dir / "summary.csv",
                              render_summary_csv(rows));
    detail::write_manifest(cmd.out_dir, "summary",
                           {{"dataset_dir", cmd.dataset_dir.string()}},
                           {"summary.txt", "summary.csv"});
    out << text;
    return exit_ok;
}

struct RankCommand {
    fs::path results_file;
    fs::path out_dir = "qcite-out";
    fs::path summary_csv;  // optional; enables the quantity-vs-impact report
};

inline int run_rank(const RankCommand& cmd, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
    std::vector<FitResult> results;
    try {
        results = read_results(cmd.results_file);
        if (results.empty()) throw DataError("no result rows");
    } catch (const Error& e) {
        err << "qcite rank: " << e.what() << "\n";
        return exit_data;
    }
    RankingTable table;
    try {
        table = rank_by_temperature(results);
    } catch (const Error& e) {
        err << "qcite rank: " << e.what() << "\n";
        return exit_data;
    }
    fs::create_directories(cmd.out_dir);
    const std::string text = render_ranking_text(table);
    qcite::detail::write_file(cmd.out_dir / "ranking.txt", text);
    qcite::detail::write_file(cmd.out_dir / "ranking.csv",
                              render_ranking_csv(table));
    std::vector<std::string> outputs = {"ranking.txt", "ranking.csv"};
    if (!cmd.summary_csv.empty()) {
        try {
            const auto counts = read_summary_csv(cmd.summary_csv);
            const auto report = quantity_vs_impact(counts, results);
            qcite::detail::write_file(cmd.out_dir / "quantity_impact.txt",
                                      render_quantity_impact_text(report));
            qcite::detail::write_file(cmd.out_dir / "quantity_impact.csv",
                                      render_quantity_impact_csv(report));
            outputs.push_back("quantity_impact.txt");
            outputs.push_back("quantity_impact.csv");
        } catch (const Error& e) {
            err << "qcite rank: " << e.what() << "\n";
            return exit_data;
        }
    }
    detail::write_manifest(cmd.out_dir, "rank",
                           {{"results_file", cmd.results_file.string()}},
                           outputs);
    out << text;
    return exit_ok;
}

struct SynthCommand {
    fs::path spec_file;
    fs::path out_dir = "qcite-out";
};

inline int run_synth(const SynthCommand& cmd, std::ostream& out = std::cout,
                     std::ostream& err = std::cerr) {
    std::vector<SyntheticSpec> specs;
    try {
        std::ifstream in(cmd.spec_file);
        if (!in) throw DataError("cannot open " + cmd.spec_file.string());
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(cmd.spec_file.string() + ": " + e.what());
        }
        if (j.is_array()) {
            for (const auto& item : j) specs.push_back(spec_from_json(item));
        } else {
            specs.push_back(spec_from_json(j));
        }
    } catch (const Error& e) {
        err << "qcite synth: " << e.what() << "\n";
        return exit_data;
    }
    fs::create_directories(cmd.out_dir);
    std::vector<std::string> outputs;
    for (const auto& spec : specs) {
        const auto h = generate(spec);
        const std::string name = spec.entity + ".csv";
        write_histogram_csv(h, cmd.out_dir / name);
        outputs.push_back(name);
        out << spec.entity << ": " << h.counts.size() << " bins, "
            << h.total_papers() << " papers\n";
    }
    detail::write_manifest(cmd.out_dir, "synth",
                           {{"spec_file", cmd.spec_file.string()}}, outputs);
    return exit_ok;
}

struct PlotCommand {
    fs::path dataset_dir;
    fs::path results_file;
    fs::path out_dir = "qcite-out";
    std::string style = "loglog";  // loglog | qlog
    bool normalize = false;
    std::int64_t ref_c = -1;  // qlog reference count; default: the fit anchor
    double x_limit = std::numeric_limits<double>::infinity();
};

inline int run_plot(const PlotCommand& cmd, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
    if (cmd.style != "loglog" && cmd.style != "qlog") {
        err << "qcite plot: unknown style '" << cmd.style << "'\n";
        return exit_usage;
    }
    if (!fs::is_directory(cmd.dataset_dir)) {
        err << "qcite plot: not a directory: " << cmd.dataset_dir.string() << "\n";
        return exit_data;
    }
    std::vector<FitResult> results;
    try {
        results = read_results(cmd.results_file);
    } catch (const Error& e) {
        err << "qcite plot: " << e.what() << "\n";
        return exit_data;
    }
    std::map<std::string, CitationHistogram> hists;
    for (const auto& path : detail::dataset_files(cmd.dataset_dir)) {
        try {
            auto h = load_histogram(path);
            hists.emplace(h.entity, std::move(h));
        } catch (const Error& e) {
            err << path.filename().string() << ": " << e.what() << "\n";
        }
    }
    fs::create_directories(cmd.out_dir);
    std::vector<std::string> outputs;
    try {
        for (const auto& r : results) {
            auto it = hists.find(r.entity);
            if (it == hists.end())
                throw DataError("no histogram for entity '" + r.entity + "'");
            const auto& h = it->second;
            std::string svg, csv;
            if (cmd.style == "loglog") {
                svg = loglog_svg(h, r, cmd.normalize);
                csv = loglog_plot_data_csv(h, r, cmd.normalize);
            } else {
                const std::int64_t ref = cmd.ref_c > 0 ? cmd.ref_c : r.anchor_c;
                svg = qlog_svg(h, r.q, r.T, ref, cmd.x_limit);
                csv = qlog_plot_data_csv(h, r.q, r.T, ref, cmd.x_limit);
            }
            const std::string stem = r.entity + "_" + cmd.style;
            qcite::detail::write_file(cmd.out_dir / (stem + ".svg"), svg);
            qcite::detail::write_file(cmd.out_dir / (stem + "_data.csv"), csv);
            outputs.push_back(stem + ".svg");
            outputs.push_back(stem + "_data.csv");
            out << r.entity << ": " << stem << ".svg\n";
        }
    } catch (const Error& e) {
        err << "qcite plot: " << e.what() << "\n";
        return exit_data;
    }
    detail::write_manifest(cmd.out_dir, "plot",
                           {{"dataset_dir", cmd.dataset_dir.string()},
                            {"results_file", cmd.results_file.string()},
                            {"style", cmd.style}},
                           outputs);
    return exit_ok;
}

}  // namespace qcite::cli
