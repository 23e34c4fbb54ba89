// Command-line front end: runs scenario files through the analysis,
// equivalence, discretization, conditions and reconstruction pipelines and
// emits JSON or CSV reports.
//
// Exit codes: 0 success, 2 parse/validation error, 3 numerical failure,
// 4 internal invariant violation.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dynsamp/scenario.hpp"

namespace {

struct CommonOptions {
    std::string scenario_path;
    std::string format = "json";
    std::string out_path;
    std::optional<std::uint64_t> seed;
    std::vector<int> sweep;
    int trials = 50;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("scenario", opt.scenario_path, "Scenario JSON file")->required();
    cmd->add_option("--format", opt.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opt.out_path, "Write the report to this path instead of stdout");
    cmd->add_option("--seed", opt.seed, "Override the scenario seed");
    cmd->add_option("--sweep", opt.sweep, "Override the scenario sweep dimensions");
}

dynsamp::Scenario load(const CommonOptions& opt) {
    dynsamp::Scenario s = dynsamp::parse_scenario_file(opt.scenario_path);
    if (opt.seed) s.seed = *opt.seed;
    if (!opt.sweep.empty()) s.sweep = opt.sweep;
    return s;
}

void write_out(const CommonOptions& opt, const dynsamp::RunReport& report) {
    const auto format =
        opt.format == "csv" ? dynsamp::ReportFormat::csv : dynsamp::ReportFormat::json;
    const std::string text = dynsamp::emit_report(report, format);
    if (opt.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opt.out_path);
        if (!out) throw dynsamp::validation_error("cannot open output path: " + opt.out_path);
        out << text;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frame analysis for continuous-time dynamical sampling systems"};
    app.require_subcommand(1);

    CommonOptions analyze_opt, equivalence_opt, discretize_opt, conditions_opt, reconstruct_opt;
    CLI::App* analyze = app.add_subcommand("analyze", "Full analysis pipeline");
    CLI::App* equivalence =
        app.add_subcommand("equivalence", "Continuous/discrete quadratic form residuals");
    CLI::App* discretize =
        app.add_subcommand("discretize", "Grid verification and discretization certificates");
    CLI::App* conditions = app.add_subcommand("conditions", "Structural condition checker");
    CLI::App* reconstruct =
        app.add_subcommand("reconstruct", "Least-squares recovery from noisy samples");
    add_common(analyze, analyze_opt);
    add_common(equivalence, equivalence_opt);
    add_common(discretize, discretize_opt);
    add_common(conditions, conditions_opt);
    add_common(reconstruct, reconstruct_opt);
    reconstruct->add_option("--trials", reconstruct_opt.trials, "Number of seeded trials");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            write_out(analyze_opt, dynsamp::run_analyze(load(analyze_opt)));
        } else if (equivalence->parsed()) {
            dynsamp::AnalyzeStages stages{true, true, false, false};
            write_out(equivalence_opt, dynsamp::run_analyze(load(equivalence_opt), stages));
        } else if (discretize->parsed()) {
            dynsamp::AnalyzeStages stages{true, false, false, true};
            write_out(discretize_opt, dynsamp::run_analyze(load(discretize_opt), stages));
        } else if (conditions->parsed()) {
            dynsamp::AnalyzeStages stages{true, false, true, false};
            write_out(conditions_opt, dynsamp::run_analyze(load(conditions_opt), stages));
        } else if (reconstruct->parsed()) {
            dynsamp::ReconstructOptions options;
            options.trials = reconstruct_opt.trials;
            write_out(reconstruct_opt, dynsamp::run_reconstruct(load(reconstruct_opt), options));
        }
    } catch (const dynsamp::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dynsamp::numerical_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
