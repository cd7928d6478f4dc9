// Command-line surface for the lattice-depth toolkit: CSV data for pulse-train
// population dynamics, quasimomentum scans, thermal averages, and
// least-squares depth extraction.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lds/csv.hpp"
#include "lds/estimator.hpp"
#include "lds/model.hpp"
#include "lds/propagator.hpp"
#include "lds/thermal.hpp"
#include "lds/two_state.hpp"

namespace {

constexpr double plot_cutoff = 1e-11;

struct OutputTarget {
    std::ofstream file;
    std::ostream* os = &std::cout;

    void open(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        os = &file;
    }
};

double cutoff_filter(double p, bool enabled) {
    return enabled && p < plot_cutoff ? plot_cutoff : p;
}

lds::Method parse_method(const std::string& name) {
    if (name == "eigen") return lds::Method::eigen;
    if (name == "splitstep") return lds::Method::splitstep;
    throw CLI::ValidationError("--method", "unknown method '" + name + "'");
}

struct SimulateArgs {
    double v_eff = 0.0;
    int pulses = 0;
    double beta = 0.0;
    int basis = 2047;
    int substeps = 0;
    int k_report = 6;
    std::string method = "eigen";
    bool cutoff = false;
    std::string output = "-";
};

int run_simulate(const SimulateArgs& a) {
    OutputTarget out;
    out.open(a.output);

    std::vector<std::string> cols{"N"};
    for (int k = -a.k_report; k <= a.k_report; ++k)
        cols.push_back("P_" + std::to_string(k));
    lds::CsvWriter csv(*out.os, cols);

    if (a.method == "analytic") {
        for (int n = 0; n <= a.pulses; ++n) {
            const auto p = lds::two_state_populations(n, a.v_eff);
            std::vector<double> row(cols.size(), cutoff_filter(0.0, a.cutoff));
            row[0] = n;
            row[static_cast<size_t>(a.k_report) + 1] = cutoff_filter(p.p0, a.cutoff);
            if (a.k_report >= 1) {
                row[static_cast<size_t>(a.k_report)] =
                    cutoff_filter(0.5 * p.p_plus, a.cutoff);
                row[static_cast<size_t>(a.k_report) + 2] =
                    cutoff_filter(0.5 * p.p_plus, a.cutoff);
            }
            csv.row(row);
        }
        return 0;
    }

    lds::FloquetSpec spec{a.v_eff, a.beta, a.basis, a.substeps};
    const auto series = lds::evolve(0, spec, a.pulses, parse_method(a.method));
    if (series.edge_warning)
        std::cerr << "warning: edge population " << series.max_edge_population
                  << " exceeds 1e-8; enlarge --basis\n";
    const int k_report = std::min(a.k_report, series.k_max);
    for (int n = 0; n <= a.pulses; ++n) {
        std::vector<double> row;
        row.reserve(cols.size());
        row.push_back(n);
        for (int k = -a.k_report; k <= a.k_report; ++k)
            row.push_back(std::abs(k) <= k_report
                              ? cutoff_filter(series.p(n, k), a.cutoff)
                              : cutoff_filter(0.0, a.cutoff));
        csv.row(row);
    }
    return 0;
}

struct UniversalArgs {
    std::vector<double> v_effs{0.01, 0.03, 0.05, 0.07, 0.09, 0.11};
    double max_nv = 2.0;
    int basis = 2047;
    int substeps = 0;
    std::string method = "eigen";
    std::string output = "-";
};

int run_universal(const UniversalArgs& a) {
    OutputTarget out;
    out.open(a.output);
    const std::vector<std::string> cols{"veff", "N",           "N_veff",
                                        "P0",   "P0_analytic", "P0_quadratic"};
    lds::CsvWriter csv(*out.os, cols);

    std::vector<double> depths = a.v_effs;
    std::sort(depths.begin(), depths.end());
    for (const double v : depths) {
        if (!(v > 0.0)) throw std::domain_error("universal depths must be positive");
        const int n_max = static_cast<int>(std::lround(a.max_nv / v));
        lds::FloquetSpec spec{v, 0.0, a.basis, a.substeps};
        const auto series = lds::evolve(0, spec, n_max, parse_method(a.method));
        for (int n = 0; n <= n_max; ++n) {
            const auto ana = lds::two_state_populations(n, v);
            const auto quad = lds::quadratic_transfer(n, v);
            csv.row(std::vector<double>{v, static_cast<double>(n), n * v,
                                        series.p(n, 0), ana.p0, 1.0 - quad.p_plus});
        }
    }
    return 0;
}

struct ScanBetaArgs {
    double v_eff = 0.0;
    int pulses = 40;
    int n_beta = 4001;
    int basis = 2047;
    std::string method = "eigen";
    std::string output = "-";
};

int run_scan_beta(const ScanBetaArgs& a) {
    OutputTarget out;
    out.open(a.output);
    const std::vector<std::string> cols{"beta", "N", "P0"};
    lds::CsvWriter csv(*out.os, cols);
    const auto scan =
        lds::beta_scan(a.v_eff, a.n_beta, a.pulses, a.basis, parse_method(a.method));
    for (size_t b = 0; b < scan.betas.size(); ++b)
        for (int n = 0; n <= a.pulses; ++n)
            csv.row(std::vector<double>{scan.betas[b], static_cast<double>(n),
                                        scan.p0[b][static_cast<size_t>(n)]});
    return 0;
}

struct ThermalArgs {
    double v_eff = 0.0;
    std::vector<double> widths;
    int pulses = 40;
    int n_beta = 4001;
    int basis = 2047;
    std::string method = "eigen";
    std::string output = "-";
};

int run_thermal(const ThermalArgs& a) {
    OutputTarget out;
    out.open(a.output);
    std::vector<std::string> cols{"N"};
    for (const double w : a.widths) {
        char label[24];
        std::snprintf(label, sizeof label, "P0_w%g", w);
        cols.push_back(label);
    }
    lds::CsvWriter csv(*out.os, cols);

    const auto averages = lds::thermal_average_multi(
        a.v_eff, a.n_beta, a.widths, a.pulses, a.basis, parse_method(a.method));
    for (int n = 0; n <= a.pulses; ++n) {
        std::vector<double> row{static_cast<double>(n)};
        for (const auto& series : averages) row.push_back(series.p(n, 0));
        csv.row(row);
    }
    return 0;
}

struct FitArgs {
    std::string input;
    std::string model = "analytic";
    int basis = 0;  // 0: model-dependent default
    double v_lo = 0.0, v_hi = 2.0;
    double tol = 1e-6;
    int budget = 200;
    bool fit_width = false;
    double w_lo = 0.0, w_hi = 0.125;
    int n_beta = 201;
    std::string residuals;
};

lds::ModelKind parse_model(const std::string& name) {
    if (name == "analytic") return lds::ModelKind::analytic;
    if (name == "quadratic") return lds::ModelKind::quadratic;
    if (name == "truncated") return lds::ModelKind::truncated;
    if (name == "full") return lds::ModelKind::full;
    if (name == "secondary") return lds::ModelKind::secondary;
    throw CLI::ValidationError("--model", "unknown model '" + name + "'");
}

int run_fit(const FitArgs& a) {
    const auto data = lds::read_observed_series_file(a.input);

    lds::ModelSpec model;
    model.kind = parse_model(a.model);
    model.basis_size = a.basis > 0 ? a.basis
                       : model.kind == lds::ModelKind::truncated ? 5
                                                                 : 511;
    if (a.fit_width) model.n_beta = a.n_beta;

    lds::FitOptions opts{a.tol, a.budget};
    const lds::FitResult res =
        a.fit_width ? lds::fit_depth_and_temperature(data, model, a.v_lo, a.v_hi,
                                                     a.w_lo, a.w_hi, opts)
                    : lds::fit_lattice_depth(data, model, a.v_lo, a.v_hi, opts);

    std::cout << "model: " << lds::model_name(res.model) << '\n'
              << "v_eff_hat: " << lds::CsvWriter::format(res.v_eff_hat) << '\n';
    if (res.w_hat)
        std::cout << "w_hat: " << lds::CsvWriter::format(*res.w_hat) << '\n';
    std::cout << "residual_rms: " << lds::CsvWriter::format(res.residual_rms) << '\n'
              << "evaluations: " << res.evaluations << '\n'
              << "converged: " << (res.converged ? "yes" : "no") << '\n';

    if (!a.residuals.empty()) {
        std::ofstream rf(a.residuals);
        if (!rf) throw std::runtime_error("cannot open output file: " + a.residuals);
        const std::vector<std::string> cols{"N", "P0", "P0_model", "residual"};
        lds::CsvWriter csv(rf, cols);
        const auto pred =
            model.predict(data.pulses, res.v_eff_hat, res.w_hat.value_or(0.0));
        for (size_t i = 0; i < data.pulses.size(); ++i)
            csv.row(std::vector<double>{static_cast<double>(data.pulses[i]), data.p0[i],
                                        pred[i], data.p0[i] - pred[i]});
    }
    return res.converged ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-pulse atom-diffraction lattice-depth toolkit"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand(
        "simulate", "per-pulse momentum-state populations for one lattice depth");
    simulate->add_option("--veff", sim.v_eff, "dimensionless lattice depth")->required();
    simulate->add_option("--pulses", sim.pulses, "number of pulses")->required();
    simulate->add_option("--beta", sim.beta, "quasimomentum in [-1/2, 1/2]");
    simulate->add_option("--basis", sim.basis, "odd momentum-basis size");
    simulate->add_option("--substeps", sim.substeps,
                         "split-step substeps per pulse (0 = auto-converged)");
    simulate->add_option("--kreport", sim.k_report, "report |k| <= kreport columns");
    simulate->add_option("--method", sim.method, "analytic | eigen | splitstep");
    simulate->add_flag("--cutoff", sim.cutoff,
                       "clamp reported populations below 1e-11 (log-scale plots)");
    simulate->add_option("-o,--output", sim.output, "output CSV path ('-' = stdout)");

    UniversalArgs uni;
    auto* universal = app.add_subcommand(
        "universal", "P0 against N*veff for several depths, with references");
    universal->add_option("--veffs", uni.v_effs, "depth list")->delimiter(',');
    universal->add_option("--max-nv", uni.max_nv, "largest N*veff per depth");
    universal->add_option("--basis", uni.basis, "odd momentum-basis size");
    universal->add_option("--substeps", uni.substeps, "split-step substeps (0 = auto)");
    universal->add_option("--method", uni.method, "eigen | splitstep");
    universal->add_option("-o,--output", uni.output, "output CSV path");

    ScanBetaArgs scan;
    auto* scan_beta =
        app.add_subcommand("scan-beta", "P0(beta, N) surface over the Brillouin zone");
    scan_beta->add_option("--veff", scan.v_eff, "dimensionless lattice depth")->required();
    scan_beta->add_option("--pulses", scan.pulses, "number of pulses");
    scan_beta->add_option("--nbeta", scan.n_beta, "odd quasimomentum grid size");
    scan_beta->add_option("--basis", scan.basis, "odd momentum-basis size");
    scan_beta->add_option("--method", scan.method, "eigen | splitstep");
    scan_beta->add_option("-o,--output", scan.output, "output CSV path");

    ThermalArgs th;
    auto* thermal = app.add_subcommand(
        "thermal", "Gaussian-weighted finite-temperature response of P0");
    thermal->add_option("--veff", th.v_eff, "dimensionless lattice depth")->required();
    thermal->add_option("--w", th.widths, "quasimomentum width(s)")
        ->required()
        ->delimiter(',');
    thermal->add_option("--pulses", th.pulses, "number of pulses");
    thermal->add_option("--nbeta", th.n_beta, "odd quasimomentum grid size");
    thermal->add_option("--basis", th.basis, "odd momentum-basis size");
    thermal->add_option("--method", th.method, "eigen | splitstep");
    thermal->add_option("-o,--output", th.output, "output CSV path");

    FitArgs fit;
    auto* fit_cmd =
        app.add_subcommand("fit", "least-squares depth extraction from a P0 series");
    fit_cmd->add_option("--input", fit.input, "CSV with columns N,P0[,sigma]")
        ->required();
    fit_cmd->add_option("--model", fit.model,
                        "analytic | quadratic | truncated | full | secondary");
    fit_cmd->add_option("--basis", fit.basis, "basis size for truncated/full models");
    fit_cmd->add_option("--vmin", fit.v_lo, "lower depth bound");
    fit_cmd->add_option("--vmax", fit.v_hi, "upper depth bound");
    fit_cmd->add_option("--tol", fit.tol, "depth tolerance");
    fit_cmd->add_option("--budget", fit.budget, "objective evaluation budget");
    fit_cmd->add_flag("--fit-width", fit.fit_width, "jointly fit the thermal width");
    fit_cmd->add_option("--wmin", fit.w_lo, "lower width bound");
    fit_cmd->add_option("--wmax", fit.w_hi, "upper width bound");
    fit_cmd->add_option("--nbeta", fit.n_beta, "thermal grid for width fits");
    fit_cmd->add_option("-o,--residuals", fit.residuals, "residual CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (simulate->parsed()) return run_simulate(sim);
        if (universal->parsed()) return run_universal(uni);
        if (scan_beta->parsed()) return run_scan_beta(scan);
        if (thermal->parsed()) return run_thermal(th);
        if (fit_cmd->parsed()) return run_fit(fit);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
    return 2;
}
