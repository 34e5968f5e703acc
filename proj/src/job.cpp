#include "qfi/job.hpp"

#include "qfi/corpus.hpp"
#include "qfi/dsf.hpp"
#include "qfi/errors.hpp"
#include "qfi/inequality_suite.hpp"
#include "qfi/matrix_io.hpp"
#include "qfi/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

namespace qfi {

namespace {

using nlohmann::json;

double require_number(const json& j, const char* field, const std::string& where) {
    if (!j.contains(field)) throw ConfigError(where + ": missing field '" + field + "'");
    if (!j[field].is_number()) throw ConfigError(where + ": field '" + field + "' must be a number");
    return j[field].get<double>();
}

int require_int(const json& j, const char* field, const std::string& where) {
    if (!j.contains(field)) throw ConfigError(where + ": missing field '" + field + "'");
    if (!j[field].is_number_integer()) throw ConfigError(where + ": field '" + field + "' must be an integer");
    return j[field].get<int>();
}

std::string require_string(const json& j, const char* field, const std::string& where) {
    if (!j.contains(field)) throw ConfigError(where + ": missing field '" + field + "'");
    if (!j[field].is_string()) throw ConfigError(where + ": field '" + field + "' must be a string");
    return j[field].get<std::string>();
}

ModelSpec parse_model(const json& j) {
    if (!j.is_object()) throw ConfigError("model: must be an object");
    const std::string kind = require_string(j, "model", "model");
    ModelSpec m;
    if (kind == "spin") {
        m.kind = ModelKind::Spin;
        m.spin.S = require_number(j, "S", "model");
        m.spin.omega0 = require_number(j, "omega0", "model");
    } else if (kind == "boson") {
        m.kind = ModelKind::Boson;
        m.boson.k = require_int(j, "k", "model");
        m.boson.omega = require_number(j, "omega", "model");
        m.boson.cutoff = require_int(j, "cutoff", "model");
    } else if (kind == "matrix") {
        m.kind = ModelKind::Matrix;
        m.T_path = require_string(j, "T", "model");
        m.S_path = require_string(j, "S", "model");
    } else {
        throw ConfigError("model.model: unknown model '" + kind + "' (expected spin, boson or matrix)");
    }
    return m;
}

// Applies a sweep value to a copy of the config.
JobConfig at_sweep_point(const JobConfig& cfg, double v) {
    JobConfig c = cfg;
    const std::string& p = cfg.sweep->parameter;
    const auto as_int = [&](const char* name) {
        if (v != std::round(v)) throw ConfigError("sweep.grid: parameter '" + std::string(name) + "' needs integers");
        return static_cast<int>(v);
    };
    if (p == "beta") {
        c.beta = v;
    } else if (c.model.kind == ModelKind::Spin && p == "omega0") {
        c.model.spin.omega0 = v;
    } else if (c.model.kind == ModelKind::Spin && p == "S") {
        c.model.spin.S = v;
    } else if (c.model.kind == ModelKind::Boson && p == "omega") {
        c.model.boson.omega = v;
    } else if (c.model.kind == ModelKind::Boson && p == "k") {
        c.model.boson.k = as_int("k");
    } else if (c.model.kind == ModelKind::Boson && p == "cutoff") {
        c.model.boson.cutoff = as_int("cutoff");
    } else {
        throw ConfigError("sweep.parameter: '" + p + "' is not a parameter of this model");
    }
    return c;
}

std::vector<MonotoneFamily> expand_families(const std::vector<std::string>& ids) {
    std::vector<MonotoneFamily> out;
    for (const auto& id : ids) {
        try {
            for (auto& f : parse_families(id)) out.push_back(f);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("families: ") + e.what());
        } catch (const std::domain_error& e) {
            throw ConfigError(std::string("families: ") + e.what());
        }
    }
    return out;
}

MetricResult compute(const GibbsState& state, const HermitianOperator& S, const MonotoneFamily& f,
                     const MethodSpec& m) {
    switch (m.method) {
    case Method::MCOracle:
        return metric_mc_oracle(state, S, f);
    case Method::Spectral:
        return metric_spectral(state, S, f);
    case Method::DSFSum:
        return metric_from_dsf(build_dsf(state, S), f);
    case Method::SeriesA:
        return metric_series_A(state, S, f, m.L);
    case Method::SeriesB:
        return metric_series_B(state, S, f, m.L);
    }
    throw ConfigError("methods: unknown method");
}

std::string model_name(ModelKind k) {
    switch (k) {
    case ModelKind::Spin:
        return "spin";
    case ModelKind::Boson:
        return "boson";
    case ModelKind::Matrix:
        return "matrix";
    }
    return "";
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string MethodSpec::label() const {
    switch (method) {
    case Method::SeriesA:
    case Method::SeriesB:
        return method_name(method) + ":" + std::to_string(L);
    default:
        return method_name(method);
    }
}

MethodSpec parse_method(const std::string& id) {
    if (id == "oracle") return {Method::MCOracle, 0};
    if (id == "spectral") return {Method::Spectral, 0};
    if (id == "dsf") return {Method::DSFSum, 0};
    for (const auto& [prefix, method] : {std::pair{"seriesA:", Method::SeriesA}, std::pair{"seriesB:", Method::SeriesB}}) {
        const std::string pre = prefix;
        if (id.rfind(pre, 0) == 0) {
            const std::string digits = id.substr(pre.size());
            char* end = nullptr;
            const long L = std::strtol(digits.c_str(), &end, 10);
            if (digits.empty() || *end != '\0' || L < 1 || L > 14) {
                throw ConfigError("methods: '" + id + "' needs a truncation order 1..14");
            }
            return {method, static_cast<int>(L)};
        }
    }
    throw ConfigError("methods: unknown method '" + id + "' (expected oracle, spectral, dsf, seriesA:L, seriesB:L)");
}

JobConfig parse_job_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    JobConfig cfg;
    if (!j.contains("model")) throw ConfigError("config: missing field 'model'");
    cfg.model = parse_model(j["model"]);
    if (j.contains("beta")) {
        cfg.beta = require_number(j, "beta", "config");
        if (!(cfg.beta > 0.0)) throw ConfigError("beta: must be positive");
    }
    if (!j.contains("families") || !j["families"].is_array() || j["families"].empty()) {
        throw ConfigError("families: must be a nonempty array of family identifiers");
    }
    for (const auto& f : j["families"]) {
        if (!f.is_string()) throw ConfigError("families: entries must be strings");
        cfg.families.push_back(f.get<std::string>());
    }
    expand_families(cfg.families);  // validates identifiers early
    if (j.contains("methods")) {
        if (!j["methods"].is_array() || j["methods"].empty()) throw ConfigError("methods: must be a nonempty array");
        for (const auto& m : j["methods"]) {
            if (!m.is_string()) throw ConfigError("methods: entries must be strings");
            cfg.methods.push_back(parse_method(m.get<std::string>()));
        }
    } else {
        cfg.methods.push_back({Method::Spectral, 0});
    }
    if (j.contains("sweep") && !j["sweep"].is_null()) {
        const json& s = j["sweep"];
        if (!s.is_object()) throw ConfigError("sweep: must be an object");
        SweepSpec sw;
        sw.parameter = require_string(s, "parameter", "sweep");
        if (!s.contains("grid") || !s["grid"].is_array() || s["grid"].empty()) {
            throw ConfigError("sweep.grid: must be a nonempty array of numbers");
        }
        for (const auto& v : s["grid"]) {
            if (!v.is_number()) throw ConfigError("sweep.grid: entries must be numbers");
            sw.grid.push_back(v.get<double>());
        }
        cfg.sweep = sw;
        for (double v : sw.grid) at_sweep_point(cfg, v);  // validates the parameter name
    }
    if (j.contains("output")) {
        const json& o = j["output"];
        if (!o.is_object()) throw ConfigError("output: must be an object");
        if (o.contains("path")) cfg.output_path = require_string(o, "path", "output");
        if (o.contains("format")) {
            const std::string f = require_string(o, "format", "output");
            if (f == "csv") cfg.format = OutputFormat::CSV;
            else if (f == "json") cfg.format = OutputFormat::JSON;
            else throw ConfigError("output.format: expected csv or json");
        }
    }
    return cfg;
}

JobConfig load_job_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
    return parse_job_config(j);
}

ModelOperators build_model(const JobConfig& cfg, std::vector<std::string>& warnings) {
    ModelOperators ops;
    try {
        switch (cfg.model.kind) {
        case ModelKind::Spin:
            ops = spin_build(cfg.model.spin);
            break;
        case ModelKind::Boson: {
            BosonModel effective = cfg.model.boson;
            effective.omega *= cfg.beta;
            try {
                check_boson_cutoff(effective);
            } catch (const CutoffError& e) {
                warnings.push_back(e.what());
            }
            ops = boson_build(cfg.model.boson, false);
            break;
        }
        case ModelKind::Matrix: {
            const auto read = [](const std::string& path, const char* field) {
                try {
                    return read_matrix_file(path);
                } catch (const std::exception& e) {
                    throw ConfigError(std::string("model.") + field + ": " + e.what());
                }
            };
            ops.T = read(cfg.model.T_path, "T");
            ops.S = read(cfg.model.S_path, "S");
            if (ops.T.dim() != ops.S.dim()) throw ConfigError("model: T and S have different dimensions");
            if (ops.T.asymmetry() > 0.0) warnings.push_back("T symmetrized, asymmetry " + format_double(ops.T.asymmetry()));
            if (ops.S.asymmetry() > 0.0) warnings.push_back("S symmetrized, asymmetry " + format_double(ops.S.asymmetry()));
            break;
        }
        }
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
    ops.T = ops.T.scaled(cfg.beta);
    return ops;
}

JobOutput run_metric_job(const JobConfig& cfg) {
    const std::vector<MonotoneFamily> families = expand_families(cfg.families);
    std::vector<std::optional<double>> points;
    if (cfg.sweep) {
        std::vector<double> grid = cfg.sweep->grid;
        std::sort(grid.begin(), grid.end());
        for (double v : grid) points.emplace_back(v);
    } else {
        points.emplace_back(std::nullopt);
    }

    struct PointResult {
        std::vector<MetricRow> rows;
        std::vector<std::string> warnings;
    };
    std::vector<PointResult> results(points.size());
    parallel_for(points.size(), [&](std::size_t i) {
        const JobConfig c = points[i] ? at_sweep_point(cfg, *points[i]) : cfg;
        PointResult& pr = results[i];
        const ModelOperators ops = build_model(c, pr.warnings);
        const GibbsState state = gibbs_state(ops.T);
        if (state.clamped()) pr.warnings.push_back("Gibbs weights clamped at 1e-300");
        for (const auto& f : families) {
            for (const auto& m : cfg.methods) {
                const MetricResult r = compute(state, ops.S, f, m);
                MetricRow row;
                row.family = f.label();
                row.parameter = points[i];
                row.method = method_name(m.method);
                row.value = r.value;
                if (m.method == Method::SeriesA || m.method == Method::SeriesB) {
                    row.L = m.L;
                    row.radius_ok = r.diagnostics.convergence_radius_ok;
                    if (!r.diagnostics.convergence_radius_ok) {
                        pr.warnings.push_back(m.label() + " outside convergence radius for " + f.label() +
                                              " (max|omega|/2 = " + format_double(r.diagnostics.max_half_omega) +
                                              ", radius = " + format_double(r.diagnostics.radius) + ")");
                    }
                }
                pr.rows.push_back(std::move(row));
            }
        }
    });

    JobOutput out;
    out.metadata.emplace_back("model", model_name(cfg.model.kind));
    out.metadata.emplace_back("beta", format_double(cfg.beta));
    if (cfg.sweep) out.metadata.emplace_back("sweep", cfg.sweep->parameter);
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (auto& w : results[i].warnings) {
            out.warnings.push_back(points[i] ? cfg.sweep->parameter + "=" + format_double(*points[i]) + ": " + w : w);
        }
        for (auto& r : results[i].rows) out.rows.push_back(std::move(r));
    }
    return out;
}

std::string format_csv(const JobOutput& out) {
    std::string s;
    for (const auto& [k, v] : out.metadata) s += "# " + k + "=" + v + "\n";
    for (const auto& w : out.warnings) s += "# warning=" + w + "\n";
    s += "family,parameter,method,value,L,radius_ok\n";
    for (const auto& r : out.rows) {
        s += r.family + ",";
        s += (r.parameter ? format_double(*r.parameter) : "") + ",";
        s += r.method + ",";
        s += format_double(r.value) + ",";
        s += (r.L ? std::to_string(*r.L) : "") + ",";
        s += r.radius_ok ? (*r.radius_ok ? "true" : "false") : "";
        s += "\n";
    }
    return s;
}

json to_json(const JobOutput& out) {
    json meta = json::object();
    for (const auto& [k, v] : out.metadata) meta[k] = v;
    json rows = json::array();
    for (const auto& r : out.rows) {
        json row = {{"family", r.family}, {"method", r.method}, {"value", r.value}};
        row["parameter"] = r.parameter ? json(*r.parameter) : json(nullptr);
        row["L"] = r.L ? json(*r.L) : json(nullptr);
        row["radius_ok"] = r.radius_ok ? json(*r.radius_ok) : json(nullptr);
        rows.push_back(std::move(row));
    }
    return {{"metadata", meta}, {"warnings", out.warnings}, {"rows", rows}};
}

std::string render(const JobOutput& out, OutputFormat format) {
    return format == OutputFormat::CSV ? format_csv(out) : to_json(out).dump(2) + "\n";
}

VerificationResult run_verification_suite(std::uint64_t seed, int trials) {
    if (trials < 1) throw ConfigError("trials: must be >= 1");
    constexpr double kSumRuleTol = 1e-9;

    struct Trial {
        std::vector<std::pair<std::string, InequalityReport>> reports;  // (category, report)
    };
    std::vector<Trial> results(static_cast<std::size_t>(trials));
    parallel_for(results.size(), [&](std::size_t i) {
        const Instance inst = corpus_instance(seed, i);
        const GibbsState state = gibbs_state(inst.T);
        Trial& t = results[i];
        // pair parameter cycles through [0, 3/2]
        const double d = 0.25 * static_cast<double>(i % 7);
        const auto add = [&](const char* cat, const std::vector<InequalityReport>& rs) {
            for (const auto& r : rs) t.reports.emplace_back(cat, r);
        };
        add("chain", chain_check(state, inst.S));
        add("commutator", commutator_bounds(state, inst.S));
        add("geometric_mean", geometric_mean_checks(state, inst.S, d));
        const auto [lo, hi] = MonotoneFamily::half_pair(d);
        add("cauchy_schwarz", cauchy_schwarz_cross(state, inst.A, inst.B, MonotoneFamily::bures(), MonotoneFamily::mc()));
        add("cauchy_schwarz", cauchy_schwarz_cross(state, inst.A, inst.B, MonotoneFamily::bures(), MonotoneFamily::har()));
        add("cauchy_schwarz", cauchy_schwarz_cross(state, inst.A, inst.B, lo, hi));
        const LineSpectrum Q = build_dsf(state, inst.S);
        for (int p = 0; p <= 6; ++p) {
            const SumRuleCheck c = sum_rule_check(state, inst.S, Q, p);
            InequalityReport r;
            r.name = "sum rule: M_" + std::to_string(p - 1) + " = F_" + std::to_string(p) + "/2";
            r.lhs = c.rel_error;
            r.rhs = kSumRuleTol;
            r.slack = kSumRuleTol - c.rel_error;
            r.tolerance = 0.0;
            r.pass = c.rel_error <= kSumRuleTol;
            t.reports.emplace_back("sum_rule", r);
        }
    });

    struct Category {
        long reports = 0;
        long failures = 0;
        double max_oracle_discrepancy = 0.0;
        double min_slack = INFINITY;
    };
    std::map<std::string, Category> cats;
    json failures = json::array();
    long total_failures = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        for (const auto& [cat, r] : results[i].reports) {
            Category& c = cats[cat];
            ++c.reports;
            c.max_oracle_discrepancy = std::max(c.max_oracle_discrepancy, r.oracle_discrepancy);
            c.min_slack = std::min(c.min_slack, r.slack);
            if (!r.verified()) {
                ++c.failures;
                ++total_failures;
                if (failures.size() < 50) {
                    json f = to_json(r);
                    f["trial"] = i;
                    failures.push_back(std::move(f));
                }
            }
        }
    }
    json categories = json::array();
    for (const auto& [name, c] : cats) {
        categories.push_back({{"category", name},
                              {"reports", c.reports},
                              {"failures", c.failures},
                              {"max_oracle_discrepancy", c.max_oracle_discrepancy},
                              {"min_slack", c.min_slack}});
    }
    VerificationResult res;
    res.pass = total_failures == 0;
    res.report = {{"seed", seed},           {"trials", trials},         {"pass", res.pass},
                  {"failures", total_failures}, {"categories", categories}, {"failed_reports", failures}};
    return res;
}

std::string run_moments_job(const JobConfig& cfg, int pmax, bool lines, OutputFormat format) {
    if (pmax < 0) throw ConfigError("pmax: must be >= 0");
    std::vector<std::string> warnings;
    const ModelOperators ops = build_model(cfg, warnings);
    const GibbsState state = gibbs_state(ops.T);
    const LineSpectrum Q = build_dsf(state, ops.S);
    if (lines) {
        if (format == OutputFormat::CSV) return to_csv(Q);
        json arr = json::array();
        for (const auto& l : Q.lines()) arr.push_back({{"omega", l.omega}, {"weight_re", l.weight.real()}, {"weight_im", l.weight.imag()}});
        return json{{"dim", Q.dim()}, {"mean_S", Q.mean()}, {"kind", "diagonalPair"}, {"lines", arr}}.dump(2) + "\n";
    }
    std::vector<SumRuleCheck> rows;
    for (int p = 0; p <= pmax; ++p) rows.push_back(sum_rule_check(state, ops.S, Q, p));
    if (format == OutputFormat::JSON) {
        json arr = json::array();
        for (const auto& c : rows) {
            arr.push_back({{"p", c.p}, {"moment_order", c.p - 1}, {"moment", c.moment}, {"half_F", c.half_F}, {"rel_error", c.rel_error}});
        }
        return json{{"warnings", warnings}, {"sum_rules", arr}}.dump(2) + "\n";
    }
    std::string s;
    for (const auto& w : warnings) s += "# warning=" + w + "\n";
    s += "p,moment_order,moment,half_F,rel_error\n";
    for (const auto& c : rows) {
        s += std::to_string(c.p) + "," + std::to_string(c.p - 1) + "," + format_double(c.moment) + "," +
             format_double(c.half_F) + "," + format_double(c.rel_error) + "\n";
    }
    return s;
}

json run_model_job(const JobConfig& cfg) {
    if (cfg.beta != 1.0) throw ConfigError("beta: the model subcommand works at beta = 1 (scale omega instead)");
    if (cfg.sweep) throw ConfigError("sweep: not supported by the model subcommand");
    const std::vector<MonotoneFamily> families = expand_families(cfg.families);
    json out;
    try {
        if (cfg.model.kind == ModelKind::Spin) {
            const SpinModel& m = cfg.model.spin;
            json rows = json::array();
            bool pass = true;
            for (const auto& f : families) {
                const SpinRatioReport r = spin_ratio_property(m, f);
                pass = pass && r.pass;
                rows.push_back({{"family", f.label()},
                                {"ratio", r.ratio},
                                {"g_half_omega0", r.expected},
                                {"discrepancy", r.discrepancy},
                                {"support_ok", r.support_ok},
                                {"d_f", r.d_f},
                                {"d_bkm", r.d_bkm},
                                {"d_bkm_closed_form", r.bkm_closed_form},
                                {"printed_closed_form_h_eq_omega0", r.printed_at_omega0},
                                {"printed_closed_form_h_eq_0", r.printed_at_zero_field},
                                {"printed_over_brute", r.printed_over_brute},
                                {"pass", r.pass}});
            }
            out = {{"model", "spin"}, {"S", m.S}, {"omega0", m.omega0}, {"pass", pass}, {"families", rows}};
        } else if (cfg.model.kind == ModelKind::Boson) {
            const BosonModel& m = cfg.model.boson;
            const BosonCorrelators c = boson_correlators(m);
            json rows = json::array();
            for (const auto& f : families) {
                const BosonClosedForms r = boson_closed_forms(m, f);
                rows.push_back({{"family", f.label()}, {"via_nu1", r.via_nu1}, {"via_nu2", r.via_nu2}, {"brute", r.brute}});
            }
            json pref = json::array();
            for (const auto& r : boson_prefactor_report(m, 6)) {
                pref.push_back({{"p", r.p}, {"F_numeric", r.numeric}, {"kw_prefactor", r.kw_form}, {"w_prefactor", r.w_form}});
            }
            out = {{"model", "boson"},
                   {"k", m.k},
                   {"omega", m.omega},
                   {"cutoff", m.cutoff},
                   {"correlators", {{"K", c.K}, {"L", c.L}, {"nbar", c.nbar}, {"K_printed", c.K_printed}, {"L_printed", c.L_printed}}},
                   {"families", rows},
                   {"prefactors", pref}};
        } else {
            throw ConfigError("model: the model subcommand needs a spin or boson model");
        }
    } catch (const ValidationError& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
    return out;
}

void write_file_atomically(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw ConfigError("cannot write output file '" + path + "'");
        out << content;
        if (!out) throw ConfigError("failed writing output file '" + path + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw ConfigError("cannot move output into place at '" + path + "'");
    }
}

} // namespace qfi
