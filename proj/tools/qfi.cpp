// qfi - batch front end for metric tables, sweeps, sum rules and the inequality suite

#include "qfi/errors.hpp"
#include "qfi/job.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        qfi::write_file_atomically(out_path, content);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monotone quantum Fisher metrics on Gibbs states"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string format_flag;
    std::uint64_t seed = 42;
    int trials = 1000;
    int pmax = 6;
    bool lines = false;

    const auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config_path, "job configuration (JSON)");
        if (needs_config) opt->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "output file (default: stdout)");
        sub->add_option("--format", format_flag, "output format")->check(CLI::IsMember({"csv", "json"}));
    };

    auto* metric = app.add_subcommand("metric", "metric table for one model");
    add_common(metric, true);
    auto* sweep = app.add_subcommand("sweep", "metric table over a parameter grid");
    add_common(sweep, true);
    auto* verify = app.add_subcommand("verify", "inequality suite and sum rules over a random corpus");
    verify->add_option("--seed", seed, "corpus seed");
    verify->add_option("--trials", trials, "number of corpus instances")->check(CLI::PositiveNumber);
    verify->add_option("--out", out_path, "report file (default: stdout)");
    auto* moments = app.add_subcommand("moments", "DSF moments against nested-commutator functionals");
    add_common(moments, true);
    moments->add_option("--pmax", pmax, "largest functional index")->check(CLI::NonNegativeNumber);
    moments->add_flag("--lines", lines, "print the line spectrum instead");
    auto* model = app.add_subcommand("model", "closed-form spin and boson reports");
    add_common(model, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const auto resolve_format = [&](const qfi::JobConfig& cfg) {
            if (format_flag == "csv") return qfi::OutputFormat::CSV;
            if (format_flag == "json") return qfi::OutputFormat::JSON;
            return cfg.format;
        };
        const auto resolve_out = [&](const qfi::JobConfig& cfg) { return out_path.empty() ? cfg.output_path : out_path; };

        if (metric->parsed() || sweep->parsed()) {
            const qfi::JobConfig cfg = qfi::load_job_config(config_path);
            if (metric->parsed() && cfg.sweep) throw qfi::ConfigError("sweep: use the sweep subcommand for grids");
            if (sweep->parsed() && !cfg.sweep) throw qfi::ConfigError("sweep: missing sweep section");
            const qfi::JobOutput out = qfi::run_metric_job(cfg);
            for (const auto& w : out.warnings) std::cerr << "warning: " << w << "\n";
            emit(qfi::render(out, resolve_format(cfg)), resolve_out(cfg));
            return kExitOk;
        }
        if (verify->parsed()) {
            const qfi::VerificationResult r = qfi::run_verification_suite(seed, trials);
            emit(r.report.dump(2) + "\n", out_path);
            if (!r.pass) std::cerr << "verification failed: " << r.report["failures"] << " report(s)\n";
            return r.pass ? kExitOk : kExitFailure;
        }
        if (moments->parsed()) {
            const qfi::JobConfig cfg = qfi::load_job_config(config_path);
            emit(qfi::run_moments_job(cfg, pmax, lines, resolve_format(cfg)), resolve_out(cfg));
            return kExitOk;
        }
        if (model->parsed()) {
            const qfi::JobConfig cfg = qfi::load_job_config(config_path);
            emit(qfi::run_model_job(cfg).dump(2) + "\n", resolve_out(cfg));
            return kExitOk;
        }
    } catch (const qfi::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
