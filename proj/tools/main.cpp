// qcite command-line tool: fit q-exponential models to citation histograms,
// rank entities by effective temperature, generate synthetic datasets and
// emit static figures.

#include <cstdlib>
#include <iostream>
#include <string>

#include "qcite/cli.hpp"

#include "CLI11.hpp"

namespace {

struct ConfigFlags {
    std::string config_file;
    double q_min = 0, q_max = 0, q_step = 0, decades = 0;
    std::int64_t anchor_c = 0;
    int min_fit_points = 0;
    bool no_c1_r2 = false;
};

void add_config_flags(CLI::App* app, ConfigFlags& flags) {
    app->add_option("--config", flags.config_file,
                    "JSON config file (falls back to $QCITE_CONFIG)");
    app->add_option("--q-min", flags.q_min, "lower edge of the q search grid");
    app->add_option("--q-max", flags.q_max, "upper edge of the q search grid");
    app->add_option("--q-step", flags.q_step, "q grid step");
    app->add_option("--anchor-c", flags.anchor_c,
                    "citation count anchoring the model");
    app->add_option("--decades", flags.decades,
                    "decades of c used for the q search window");
    app->add_option("--min-fit-points", flags.min_fit_points,
                    "minimum usable points per entity");
    app->add_flag("--no-c1-r2", flags.no_c1_r2,
                  "exclude the extrapolated c=1 point from R^2");
}

qcite::FitConfig resolve_config(const CLI::App* app, const ConfigFlags& flags) {
    qcite::FitConfig cfg;
    std::string file = flags.config_file;
    if (file.empty()) {
        if (const char* env = std::getenv("QCITE_CONFIG")) file = env;
    }
    if (!file.empty()) cfg = qcite::cli::load_config_file(file);
    if (app->count("--q-min")) cfg.q_grid.min = flags.q_min;
    if (app->count("--q-max")) cfg.q_grid.max = flags.q_max;
    if (app->count("--q-step")) cfg.q_grid.step = flags.q_step;
    if (app->count("--anchor-c")) cfg.anchor_c = flags.anchor_c;
    if (app->count("--decades")) cfg.q_window_decades = flags.decades;
    if (app->count("--min-fit-points")) cfg.min_fit_points = flags.min_fit_points;
    if (flags.no_c1_r2) cfg.include_c1_in_r2 = false;
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-exponential citation analysis"};
    app.require_subcommand(1);

    qcite::cli::FitCommand fit_cmd;
    ConfigFlags fit_flags;
    auto* fit = app.add_subcommand("fit", "fit every histogram in a directory");
    fit->add_option("dataset_dir", fit_cmd.dataset_dir, "directory of histogram CSVs")
        ->required();
    fit->add_option("-o,--out-dir", fit_cmd.out_dir, "output directory");
    add_config_flags(fit, fit_flags);

    qcite::cli::RankCommand rank_cmd;
    auto* rank = app.add_subcommand("rank", "rank fit results by temperature");
    rank->add_option("results_file", rank_cmd.results_file,
                     "results CSV or JSON from 'fit'")
        ->required();
    rank->add_option("-o,--out-dir", rank_cmd.out_dir, "output directory");
    rank->add_option("--summary", rank_cmd.summary_csv,
                     "summary.csv enabling the quantity-vs-impact report");

    qcite::cli::SummaryCommand sum_cmd;
    auto* summary =
        app.add_subcommand("summary", "per-entity publication statistics");
    summary
        ->add_option("dataset_dir", sum_cmd.dataset_dir,
                     "directory of histogram CSVs")
        ->required();
    summary->add_option("-o,--out-dir", sum_cmd.out_dir, "output directory");
    summary->add_option("--groups", sum_cmd.groups_file,
                        "JSON file mapping group names to entity lists");

    qcite::cli::SynthCommand synth_cmd;
    auto* synth =
        app.add_subcommand("synth", "generate synthetic citation histograms");
    synth->add_option("spec_file", synth_cmd.spec_file,
                      "JSON spec (object or array)")
        ->required();
    synth->add_option("-o,--out-dir", synth_cmd.out_dir, "output directory");

    qcite::cli::PlotCommand plot_cmd;
    auto* plot = app.add_subcommand("plot", "emit SVG figures with plot data");
    plot->add_option("dataset_dir", plot_cmd.dataset_dir,
                     "directory of histogram CSVs")
        ->required();
    plot->add_option("results_file", plot_cmd.results_file,
                     "results CSV or JSON from 'fit'")
        ->required();
    plot->add_option("-o,--out-dir", plot_cmd.out_dir, "output directory");
    plot->add_option("--style", plot_cmd.style, "loglog or qlog");
    plot->add_flag("--normalize", plot_cmd.normalize,
                   "display fractions instead of raw counts");
    plot->add_option("--ref-c", plot_cmd.ref_c,
                     "qlog reference citation count (default: fit anchor)");
    plot->add_option("--x-limit", plot_cmd.x_limit,
                     "qlog zoom: drop points with c - ref_c beyond this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qcite::cli::exit_usage;
    }

    try {
        if (fit->parsed()) {
            fit_cmd.config = resolve_config(fit, fit_flags);
            return qcite::cli::run_fit(fit_cmd);
        }
        if (rank->parsed()) return qcite::cli::run_rank(rank_cmd);
        if (summary->parsed()) return qcite::cli::run_summary(sum_cmd);
        if (synth->parsed()) return qcite::cli::run_synth(synth_cmd);
        if (plot->parsed()) return qcite::cli::run_plot(plot_cmd);
    } catch (const qcite::ParseError& e) {
        std::cerr << "qcite: " << e.what() << "\n";
        return qcite::cli::exit_data;
    } catch (const qcite::Error& e) {
        std::cerr << "qcite: " << e.what() << "\n";
        return qcite::cli::exit_data;
    } catch (const std::exception& e) {
        std::cerr << "qcite: " << e.what() << "\n";
        return qcite::cli::exit_data;
    }
    return qcite::cli::exit_usage;
}
