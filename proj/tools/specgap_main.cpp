// specgap: spectral-gap lower bounds for leaf spaces.
//
// Subcommands:
//   bounds    closed-form and interval-model lower bounds for one (n, K, d)
//   model     the interval-model eigenvalue lambda(K, n, d, -d/2)
//   verify    run every verification suite, exit 1 on any failure
//   examples  the fixture gallery with reduction checks
//   sweep     CSV sweep of bounds over one or two of {n, K, d, s}
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input,
// 3 solver non-convergence.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specgap/bounds.hpp"
#include "specgap/errors.hpp"
#include "specgap/foliation_zoo.hpp"
#include "specgap/model_ode.hpp"
#include "specgap/report.hpp"
#include "specgap/verify.hpp"

namespace {

using namespace specgap;

constexpr double kPi = std::numbers::pi;

struct CliOptions {
    int n = 3;
    double K = 0.0;
    double d = 0.0;
    double s = 0.0;
    bool use_model = false;
    bool negative_control = false;
    double tolerance = 1e-9;
    int mesh = 1024;
    std::uint64_t seed = 0;
    std::string format = "table";
    std::string out;
    std::vector<std::string> sweeps;

    bool has_d = false;
    bool has_s = false;
};

void validate_common(const CliOptions& opt) {
    if (!(opt.tolerance >= 1e-12 && opt.tolerance <= 1e-4))
        throw std::invalid_argument("tolerance must lie in [1e-12, 1e-4]");
    if (opt.mesh < 64 || (opt.mesh & (opt.mesh - 1)) != 0)
        throw std::invalid_argument("mesh must be a power of two >= 64");
}

void emit(const CliOptions& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(opt.out, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output path: " + opt.out);
    file << text;
}

RunConfigEcho make_config(const CliOptions& opt, const std::string& command) {
    RunConfigEcho config;
    config.command = command;
    config.tolerance = opt.tolerance;
    config.mesh = opt.mesh;
    config.seed = opt.seed;
    config.format = opt.format;
    nlohmann::json params = nlohmann::json::object();
    params["n"] = opt.n;
    params["K"] = round_sig12(opt.K);
    if (opt.has_d) params["d"] = round_sig12(opt.d);
    if (opt.has_s) params["s"] = round_sig12(opt.s);
    if (opt.use_model) params["model"] = true;
    if (opt.negative_control) params["negative_control"] = true;
    if (!opt.sweeps.empty()) params["sweep"] = opt.sweeps;
    config.parameters = params;
    return config;
}

void emit_report(const CliOptions& opt, const RunConfigEcho& config,
                 const std::vector<ReportRecord>& records,
                 const std::vector<SuiteResult>& suites) {
    if (opt.format == "json") {
        nlohmann::json j = report_to_json(config, records, suites);
        const auto problems = validate_against_schema(j, report_schema());
        if (!problems.empty())
            throw NonConvergence("internal: report violates the shipped schema: " +
                                 problems.front());
        emit(opt, j.dump(2) + "\n");
    } else if (opt.format == "csv") {
        if (!suites.empty()) {
            std::string csv = "name,pass,worst_margin,detail\n";
            for (const auto& s : suites) {
                std::string detail = s.detail;
                for (char& c : detail)
                    if (c == ',') c = ';';
                csv += s.name + "," + (s.pass ? std::string("1") : std::string("0")) +
                       "," + format_sig(round_sig12(s.worst_margin), 12) + "," + detail +
                       "\n";
            }
            emit(opt, csv);
        } else {
            emit(opt, render_csv(records));
        }
    } else {
        emit(opt, render_table(records, suites));
    }
}

int cmd_bounds(const CliOptions& opt) {
    validate_common(opt);
    if (!opt.has_d) throw std::invalid_argument("bounds: --d is required");
    BoundInput input{opt.n, opt.K, opt.d};
    input.validate();

    const auto start = std::chrono::steady_clock::now();
    std::vector<BoundResult> bounds = best_bound(input, opt.use_model, opt.tolerance);
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    nlohmann::json input_echo = {
        {"n", input.n}, {"K", round_sig12(input.K)}, {"d", round_sig12(input.d)}};
    std::vector<ReportRecord> records;
    for (const auto& b : bounds) {
        ReportRecord r;
        r.kind = "bound";
        r.input = input_echo;
        r.name = bound_name_str(b.name);
        if (!std::isnan(b.s)) r.name += "(s=" + format_sig(b.s, 6) + ")";
        r.value = b.value;
        r.valid = b.valid;
        r.note = b.note;
        r.wall_time_ms = elapsed_ms / bounds.size();
        records.push_back(std::move(r));
    }
    emit_report(opt, make_config(opt, "bounds"), records, {});
    return 0;
}

int cmd_model(const CliOptions& opt) {
    validate_common(opt);
    if (!opt.has_d) throw std::invalid_argument("model: --d is required");
    ModelProblem problem{opt.K, opt.n, -0.5 * opt.d, opt.d};
    ModelOptions mopt;
    mopt.cross_check_mesh = opt.mesh;

    const auto start = std::chrono::steady_clock::now();
    const double lambda = model_eigenvalue(problem, opt.tolerance, mopt);
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    // Re-solve the reduction once more for eigenfunction diagnostics.
    SpectrumResult spectrum = solve_neumann_shooting(model_reduction(problem), 2,
                                                     opt.tolerance);
    ReportRecord r;
    r.kind = "model";
    r.input = {{"n", opt.n}, {"K", round_sig12(opt.K)}, {"d", round_sig12(opt.d)},
               {"a", round_sig12(-0.5 * opt.d)}};
    r.name = "model";
    r.value = lambda;
    r.valid = true;
    r.note = "first nonzero Neumann eigenvalue lambda(K, n, d, -d/2)";
    r.diagnostics = SolverDiagnostics{"shooting+fd_cross_check", opt.mesh,
                                      spectrum.residual};
    r.wall_time_ms = elapsed_ms;
    emit_report(opt, make_config(opt, "model"), {r}, {});
    return 0;
}

int cmd_verify(const CliOptions& opt) {
    validate_common(opt);
    VerifyOptions vopt;
    vopt.tolerance = opt.tolerance;
    vopt.mesh = opt.mesh;
    vopt.seed = opt.seed;
    vopt.psi_offset = opt.negative_control ? 0.01 : 0.0;
    const std::vector<SuiteResult> suites = run_verification(vopt);
    emit_report(opt, make_config(opt, "verify"), {}, suites);
    for (const auto& s : suites)
        if (!s.pass) return 1;
    return 0;
}

int cmd_examples(const CliOptions& opt) {
    validate_common(opt);
    std::vector<ReportRecord> records;
    for (const FoliationExample& ex : standard_zoo()) {
        ReportRecord r;
        r.kind = "example";
        r.input = fixture_to_json(ex);
        r.name = ex.name;
        r.value = ex.known_lambda1B;
        r.valid = true;
        char note[160];
        std::snprintf(note, sizeof(note), "d = %s", format_sig(ex.known_diameter, 6).c_str());
        r.note = note;
        if (ex.reduction) {
            SpectrumResult spectrum =
                solve_neumann_shooting(*ex.reduction, 2, opt.tolerance);
            const double lambda = spectrum.eigenvalues[1];
            const double rel =
                std::abs(lambda - ex.known_lambda1B) / ex.known_lambda1B;
            r.note += "; reduction lambda_1 = " + format_sig(lambda, 10) +
                      " (rel err " + format_sig(rel, 3) + ")";
            r.diagnostics =
                SolverDiagnostics{"shooting", spectrum.mesh_size, spectrum.residual};
        }
        records.push_back(std::move(r));
    }
    emit_report(opt, make_config(opt, "examples"), records, {});
    return 0;
}

struct SweepAxis {
    std::string var;
    std::vector<double> values;
};

SweepAxis parse_sweep(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("sweep spec must be var=start:stop:count");
    SweepAxis axis;
    axis.var = spec.substr(0, eq);
    if (axis.var != "n" && axis.var != "K" && axis.var != "d" && axis.var != "s")
        throw std::invalid_argument("sweep variable must be one of n, K, d, s");
    const std::string range = spec.substr(eq + 1);
    const auto c1 = range.find(':');
    const auto c2 = range.find(':', c1 == std::string::npos ? 0 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw std::invalid_argument("sweep spec must be var=start:stop:count");
    const double start = std::stod(range.substr(0, c1));
    const double stop = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
    const long count = std::stol(range.substr(c2 + 1));
    if (count <= 0 || stop < start)
        throw std::invalid_argument("sweep range is empty");
    axis.values.resize(count);
    for (long j = 0; j < count; ++j)
        axis.values[j] =
            count == 1 ? start : start + (stop - start) * j / double(count - 1);
    return axis;
}

int cmd_sweep(const CliOptions& opt) {
    validate_common(opt);
    if (opt.sweeps.empty() || opt.sweeps.size() > 2)
        throw std::invalid_argument("sweep: give one or two --sweep specs");
    std::vector<SweepAxis> axes;
    for (const auto& spec : opt.sweeps) axes.push_back(parse_sweep(spec));

    std::vector<std::string> columns;
    for (const auto& axis : axes) columns.push_back(axis.var);
    const bool sweep_s =
        std::any_of(axes.begin(), axes.end(),
                    [](const SweepAxis& a) { return a.var == "s"; });
    const bool with_s = sweep_s || opt.has_s;
    columns.insert(columns.end(),
                   {"zhong_yang", "lichnerowicz", "li_type", "shi_zhang_optimal"});
    if (with_s) columns.push_back("shi_zhang_s");
    if (opt.use_model) columns.push_back("model");

    ModelOptions mopt;
    mopt.cross_check_mesh = opt.mesh;

    std::vector<std::vector<double>> rows;
    const SweepAxis outer = axes[0];
    const SweepAxis inner =
        axes.size() > 1 ? axes[1] : SweepAxis{"", {0.0}};

    for (double outer_value : outer.values) {
        for (double inner_value : inner.values) {
            int n = opt.n;
            double K = opt.K, d = opt.d, s = opt.s;
            bool have_d = opt.has_d, have_s = with_s && opt.has_s;
            auto apply = [&](const std::string& var, double value) {
                if (var == "n") n = static_cast<int>(std::lround(value));
                if (var == "K") K = value;
                if (var == "d") { d = value; have_d = true; }
                if (var == "s") { s = value; have_s = true; }
            };
            apply(outer.var, outer_value);
            if (!inner.var.empty()) apply(inner.var, inner_value);
            if (!have_d) throw std::invalid_argument("sweep: --d required when not swept");

            BoundInput input{n, K, d};
            input.validate();
            std::vector<double> row;
            row.push_back(outer_value);
            if (!inner.var.empty()) row.push_back(inner_value);
            row.push_back(zhong_yang(input).value);
            row.push_back(lichnerowicz(input).value);
            row.push_back(shi_zhang(input, 0.5).value);
            row.push_back(optimal_s(input).bound);
            if (with_s) row.push_back(shi_zhang(input, s).value);
            if (opt.use_model)
                row.push_back(model_eigenvalue(ModelProblem{K, n, -0.5 * d, d},
                                               opt.tolerance, mopt));
            rows.push_back(std::move(row));
        }
    }

    if (opt.format == "json") {
        std::vector<ReportRecord> records;
        for (const auto& row : rows) {
            ReportRecord r;
            r.kind = "sweep_row";
            nlohmann::json input = nlohmann::json::object();
            for (std::size_t c = 0; c < row.size(); ++c)
                input[columns[c]] = round_sig12(row[c]);
            r.input = input;
            r.name = "sweep_row";
            r.value = row.back();
            r.valid = true;
            records.push_back(std::move(r));
        }
        emit_report(opt, make_config(opt, "sweep"), records, {});
    } else {
        emit(opt, render_sweep_csv(columns, rows));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral-gap lower bounds for leaf spaces of singular foliations"};
    app.require_subcommand(1);

    CliOptions opt;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n", opt.n, "ambient dimension (>= 2)");
        sub->add_option("--K", opt.K, "Ricci constant, Ric >= (n-1) K >= 0");
        sub->add_option("--d", opt.d, "leaf-space diameter")
            ->each([&](const std::string&) { opt.has_d = true; });
        sub->add_option("--s", opt.s, "Shi-Zhang parameter in (0,1)")
            ->each([&](const std::string&) { opt.has_s = true; });
        sub->add_flag("--model", opt.use_model, "include the interval-model bound");
        sub->add_option("--tolerance", opt.tolerance, "solver tolerance [1e-12, 1e-4]");
        sub->add_option("--mesh", opt.mesh, "FD mesh (power of two >= 64)");
        sub->add_option("--seed", opt.seed, "seed for randomized suites");
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "csv", "table"}));
        sub->add_option("--out", opt.out, "output path (default stdout)");
        sub->add_flag("--negative-control", opt.negative_control,
                      "inject a psi fault; verify must then fail");
        sub->add_option("--sweep", opt.sweeps,
                        "sweep spec var=start:stop:count (repeatable, <= 2)");
    };

    CLI::App* sub_bounds = app.add_subcommand("bounds", "bound table for one input");
    CLI::App* sub_model = app.add_subcommand("model", "interval-model eigenvalue");
    CLI::App* sub_verify = app.add_subcommand("verify", "run verification suites");
    CLI::App* sub_examples = app.add_subcommand("examples", "fixture gallery");
    CLI::App* sub_sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
    for (CLI::App* sub : {sub_bounds, sub_model, sub_verify, sub_examples, sub_sweep})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sub_bounds->parsed()) return cmd_bounds(opt);
        if (sub_model->parsed()) return cmd_model(opt);
        if (sub_verify->parsed()) return cmd_verify(opt);
        if (sub_examples->parsed()) return cmd_examples(opt);
        if (sub_sweep->parsed()) return cmd_sweep(opt);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Overflow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const BracketFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const StiffIntegration& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const QuadratureFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
