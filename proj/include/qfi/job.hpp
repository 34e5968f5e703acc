// job.hpp - batch jobs behind the qfi command line tool

#pragma once

#include "qfi/metrics.hpp"
#include "qfi/models.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qfi {

enum class ModelKind { Spin, Boson, Matrix };

struct ModelSpec {
    ModelKind kind = ModelKind::Spin;
    SpinModel spin;
    BosonModel boson;
    std::string T_path;
    std::string S_path;
};

struct MethodSpec {
    Method method = Method::Spectral;
    int L = 0;  // series methods only
    std::string label() const;
};

struct SweepSpec {
    std::string parameter;  // beta, omega0, S, omega, k, cutoff
    std::vector<double> grid;
};

enum class OutputFormat { CSV, JSON };

struct JobConfig {
    ModelSpec model;
    double beta = 1.0;
    std::vector<std::string> families;
    std::vector<MethodSpec> methods;
    std::optional<SweepSpec> sweep;
    std::string output_path;
    OutputFormat format = OutputFormat::CSV;
};

// Throws ConfigError naming the offending field.
JobConfig parse_job_config(const nlohmann::json& j);
JobConfig load_job_config(const std::string& path);
MethodSpec parse_method(const std::string& id);

struct MetricRow {
    std::string family;
    std::optional<double> parameter;
    std::string method;
    double value = 0.0;
    std::optional<int> L;
    std::optional<bool> radius_ok;
};

struct JobOutput {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> warnings;
    std::vector<MetricRow> rows;
};

// (T, S) for the configured model with beta multiplied into T. Warnings
// (cutoff tail, matrix asymmetry) are appended to `warnings`.
ModelOperators build_model(const JobConfig& cfg, std::vector<std::string>& warnings);

// One row per (sweep point, family, method), in that nesting order.
JobOutput run_metric_job(const JobConfig& cfg);

std::string format_csv(const JobOutput& out);
nlohmann::json to_json(const JobOutput& out);
std::string render(const JobOutput& out, OutputFormat format);

struct VerificationResult {
    bool pass = false;
    nlohmann::json report;
};

// Inequality suite and sum rules over `trials` corpus instances.
VerificationResult run_verification_suite(std::uint64_t seed, int trials);

// Sum-rule table M_{p-1} against F_p/2 for p = 0..pmax, or the raw line
// spectrum when `lines` is set.
std::string run_moments_job(const JobConfig& cfg, int pmax, bool lines, OutputFormat format);

// Closed-form model reports (spin ratio property, boson correlators and closed forms).
nlohmann::json run_model_job(const JobConfig& cfg);

// Writes via a temporary file and rename so that no partial output is left behind.
void write_file_atomically(const std::string& path, const std::string& content);

std::string format_double(double v);

} // namespace qfi
