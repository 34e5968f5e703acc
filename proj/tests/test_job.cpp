#include "fixtures.hpp"

#include "qfi/errors.hpp"
#include "qfi/job.hpp"
#include "qfi/matrix_io.hpp"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qfi;
using namespace qfi::testing;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json spin_config() {
    return json::parse(R"({
        "model": {"model": "spin", "S": 0.5, "omega0": 1.0},
        "beta": 1.0,
        "families": ["bures", "mc"],
        "methods": ["spectral", "oracle"]
    })");
}

json boson_sweep_config() {
    return json::parse(R"({
        "model": {"model": "boson", "k": 2, "omega": 1.0, "cutoff": 60},
        "families": ["bkm", "mc", "bures"],
        "sweep": {"parameter": "omega", "grid": [2.0, 0.5, 1.0]}
    })");
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("qfi_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(const std::string& name) const { return path_ / name; }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

void write_text(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

std::string read_text(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(QFI_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

template <class F>
void expect_config_error(F&& f, const std::string& field) {
    try {
        f();
        ADD_FAILURE() << "no ConfigError for " << field;
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
    }
}

} // namespace

TEST(ParseConfig, Defaults) {
    const JobConfig cfg = parse_job_config(spin_config());
    EXPECT_EQ(cfg.model.kind, ModelKind::Spin);
    EXPECT_EQ(cfg.families.size(), 2u);
    EXPECT_EQ(cfg.methods.size(), 2u);
    EXPECT_FALSE(cfg.sweep);
    EXPECT_EQ(cfg.format, OutputFormat::CSV);
    json j = spin_config();
    j.erase("methods");
    const JobConfig d = parse_job_config(j);
    ASSERT_EQ(d.methods.size(), 1u);
    EXPECT_EQ(d.methods[0].method, Method::Spectral);
}

TEST(ParseConfig, ErrorsNameTheField) {
    auto with = [](const std::string& key, json v) {
        json j = spin_config();
        j[key] = std::move(v);
        return j;
    };
    expect_config_error([&] { parse_job_config(with("beta", -1.0)); }, "beta");
    expect_config_error([&] { parse_job_config(with("families", json::array())); }, "families");
    expect_config_error([&] { parse_job_config(with("families", {"nope"})); }, "families");
    expect_config_error([&] { parse_job_config(with("methods", {"seriesA:99"})); }, "methods");
    expect_config_error([&] { parse_job_config(with("methods", {"magic"})); }, "methods");
    expect_config_error([&] { parse_job_config(with("output", {{"format", "xml"}})); }, "output.format");
    expect_config_error([&] { parse_job_config(with("model", {{"model", "ising"}})); }, "model");
    expect_config_error([&] { parse_job_config(with("model", {{"model", "spin"}, {"S", 0.5}})); }, "omega0");
    expect_config_error([&] { parse_job_config(with("sweep", {{"parameter", "cutoff"}, {"grid", {1.0}}})); },
                        "sweep.parameter");
    json b = boson_sweep_config();
    b["sweep"] = {{"parameter", "k"}, {"grid", {1.5}}};
    expect_config_error([&] { parse_job_config(b); }, "sweep.grid");
    expect_config_error([&] { load_job_config("/nonexistent/config.json"); }, "config");
}

TEST(ParseMethod, Labels) {
    EXPECT_EQ(parse_method("seriesA:12").label(), "seriesA:12");
    EXPECT_EQ(parse_method("seriesB:3").L, 3);
    EXPECT_EQ(parse_method("dsf").method, Method::DSFSum);
    EXPECT_THROW(parse_method("seriesA"), ConfigError);
    EXPECT_THROW(parse_method("seriesB:0"), ConfigError);
}

TEST(MetricJob, AllMethodsAgreeOnQubit) {
    json j = spin_config();
    j["families"] = {"mc", "bures", "bkm"};
    j["methods"] = {"oracle", "spectral", "dsf", "seriesA:14", "seriesB:14"};
    const JobOutput out = run_metric_job(parse_job_config(j));
    ASSERT_EQ(out.rows.size(), 15u);
    for (std::size_t i = 0; i < out.rows.size(); i += 5) {
        for (std::size_t m = 1; m < 5; ++m) {
            const double tol = out.rows[i + m].L ? 1e-8 : 1e-12;
            EXPECT_LE(rel(out.rows[i + m].value, out.rows[i].value), tol) << out.rows[i + m].method;
        }
    }
    EXPECT_NEAR(out.rows[0].value, 0.0625, 1e-15);  // S = sigma_x / 2
    EXPECT_EQ(out.rows[3].L, 14);
    EXPECT_EQ(out.rows[3].radius_ok, true);
    EXPECT_TRUE(out.warnings.empty());
}

TEST(MetricJob, SweepSortedAndOrdered) {
    const JobOutput out = run_metric_job(parse_job_config(boson_sweep_config()));
    ASSERT_EQ(out.rows.size(), 9u);
    EXPECT_EQ(out.rows[0].parameter, 0.5);
    EXPECT_EQ(out.rows[3].parameter, 1.0);
    EXPECT_EQ(out.rows[8].parameter, 2.0);
    EXPECT_EQ(out.rows[0].family, "bkm");
    EXPECT_EQ(out.rows[1].family, "mc");
    for (const auto& r : out.rows) EXPECT_GT(r.value, 0.0);
}

TEST(MetricJob, CsvAndJson) {
    const JobOutput out = run_metric_job(parse_job_config(boson_sweep_config()));
    const std::string csv = format_csv(out);
    EXPECT_NE(csv.find("family,parameter,method,value,L,radius_ok\n"), std::string::npos);
    EXPECT_EQ(csv.rfind("# model=", 0), 0u);
    const json j = json::parse(render(out, OutputFormat::JSON));
    ASSERT_EQ(j.at("rows").size(), 9u);
    EXPECT_EQ(j.at("rows")[0].at("family"), "bkm");
    EXPECT_TRUE(j.contains("metadata"));
    EXPECT_TRUE(j.at("warnings").is_array());
}

TEST(MetricJob, CutoffBecomesWarning) {
    json j = boson_sweep_config();
    j["model"]["cutoff"] = 10;
    j.erase("sweep");
    j["model"]["omega"] = 0.5;
    const JobOutput out = run_metric_job(parse_job_config(j));
    EXPECT_FALSE(out.warnings.empty());
}

TEST(MetricJob, MatrixModel) {
    TempDir dir;
    const Qubit q;
    write_matrix_file((dir / "T.json").string(), q.T.matrix());
    write_matrix_file((dir / "S.json").string(), q.S.matrix());
    json j = spin_config();
    j["model"] = {{"model", "matrix"}, {"T", (dir / "T.json").string()}, {"S", (dir / "S.json").string()}};
    j["families"] = {"bkm", "bures", "mc"};
    const JobOutput out = run_metric_job(parse_job_config(j));
    EXPECT_NEAR(out.rows[0].value, 0.2310585786300049, 1e-14);
    EXPECT_NEAR(out.rows[2].value, 0.2135522670340726, 1e-14);
    EXPECT_NEAR(out.rows[4].value, 0.25, 1e-14);
    j["model"]["T"] = (dir / "missing.json").string();
    expect_config_error([&] { run_metric_job(parse_job_config(j)); }, "model.T");
}

TEST(VerificationSuite, DeterministicAndStructured) {
    const VerificationResult a = run_verification_suite(7, 20);
    const VerificationResult b = run_verification_suite(7, 20);
    EXPECT_EQ(a.report.dump(), b.report.dump());
    EXPECT_EQ(a.report.at("trials"), 20);
    std::vector<std::string> names;
    for (const auto& c : a.report.at("categories")) names.push_back(c.at("category"));
    EXPECT_EQ(names, (std::vector<std::string>{"cauchy_schwarz", "chain", "commutator", "geometric_mean", "sum_rule"}));
    EXPECT_EQ(a.pass, a.report.at("failures") == 0);
    EXPECT_THROW(run_verification_suite(7, 0), ConfigError);
}

TEST(MomentsJob, Table) {
    const std::string csv = run_moments_job(parse_job_config(spin_config()), 4, false, OutputFormat::CSV);
    EXPECT_EQ(csv.rfind("p,moment_order,moment,half_F,rel_error\n", 0), 0u);
    const json j = json::parse(run_moments_job(parse_job_config(spin_config()), 4, false, OutputFormat::JSON));
    EXPECT_TRUE(j.dump().find("rel_error") != std::string::npos);
}

TEST(ModelJob, RequiresUnitBeta) {
    json j = spin_config();
    EXPECT_NO_THROW(run_model_job(parse_job_config(j)));
    j["beta"] = 2.0;
    expect_config_error([&] { run_model_job(parse_job_config(j)); }, "beta");
}

TEST(AtomicWrite, ReplacesContent) {
    TempDir dir;
    const fs::path p = dir / "out.csv";
    write_file_atomically(p.string(), "a\n");
    write_file_atomically(p.string(), "b\n");
    EXPECT_EQ(read_text(p), "b\n");
    EXPECT_FALSE(fs::exists(p.string() + ".tmp"));
}

TEST(Cli, ExitCodesAndOutputs) {
    TempDir dir;
    const fs::path cfg = dir / "cfg.json";
    write_text(cfg, boson_sweep_config().dump());
    const fs::path out1 = dir / "a.csv";
    const fs::path out2 = dir / "b.csv";
    EXPECT_EQ(run_cli("--help"), 0);
    EXPECT_EQ(run_cli("sweep --config " + cfg.string() + " --out " + out1.string()), 0);
    EXPECT_EQ(run_cli("sweep --config " + cfg.string() + " --out " + out2.string()), 0);
    EXPECT_EQ(read_text(out1), read_text(out2));
    EXPECT_FALSE(read_text(out1).empty());
    EXPECT_EQ(run_cli("metric --config " + cfg.string()), 2);

    const fs::path outj = dir / "a.json";
    EXPECT_EQ(run_cli("sweep --config " + cfg.string() + " --format json --out " + outj.string()), 0);
    EXPECT_EQ(json::parse(read_text(outj)).at("rows").size(), 9u);

    json bad = spin_config();
    bad["model"] = {{"model", "matrix"}, {"T", (dir / "missing_T.json").string()}, {"S", "x.json"}};
    const fs::path badcfg = dir / "bad.json";
    write_text(badcfg, bad.dump());
    const fs::path never = dir / "never.csv";
    EXPECT_EQ(run_cli("metric --config " + badcfg.string() + " --out " + never.string()), 2);
    EXPECT_FALSE(fs::exists(never));

    EXPECT_EQ(run_cli("verify --trials 0"), 2);
    EXPECT_EQ(run_cli("metric"), 2);
    EXPECT_EQ(run_cli("bogus"), 2);
}
