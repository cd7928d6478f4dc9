#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lds/propagator.hpp"

namespace lds {

/// Measured k = 0 populations versus pulse number, optionally with per-point
/// uncertainties (used as inverse-variance fit weights when present).
struct ObservedSeries {
    std::vector<int> pulses;      // strictly increasing
    std::vector<double> p0;       // in [0, 1]
    std::vector<double> sigma;    // empty, or same length as p0

    void validate() const;
};

/// Root-mean-square difference over paired samples.
double rms_deviation(std::span<const double> a, std::span<const double> b);

/// Pulse index closest to the scale-invariant point N * v_eff = target,
/// never below 1.
int nearest_pulse_selection(double target_nv, double v_eff);

enum class ModelKind { analytic, quadratic, truncated, full, secondary };

std::string model_name(ModelKind kind);

/// P0(N; v_eff[, width]) predictor used as the fit forward model.
/// `truncated` and `full` run the exact propagator and differ only in their
/// default basis; with n_beta > 0 they average over a thermal quasimomentum
/// distribution of the fitted width.
struct ModelSpec {
    ModelKind kind = ModelKind::analytic;
    int basis_size = 511;
    Method method = Method::eigen;
    int n_beta = 0;  // 0: single beta = 0 subspace

    std::vector<double> predict(std::span<const int> pulses, double v_eff,
                                double width = 0.0) const;
};

struct FitResult {
    double v_eff_hat = 0.0;
    std::optional<double> w_hat;
    double residual_rms = 0.0;
    ModelKind model = ModelKind::analytic;
    int evaluations = 0;
    bool converged = false;
};

struct FitOptions {
    double tol = 1e-6;
    int budget = 200;
};

/// One-dimensional least-squares depth fit: a 33-point coarse scan of the
/// bracket (the frequency oscillates in v_eff, so a plain bracket search can
/// trap a local minimum) followed by golden-section refinement to |dv| < tol.
FitResult fit_lattice_depth(const ObservedSeries& data, const ModelSpec& model,
                            double v_lo, double v_hi, const FitOptions& opts = {});

/// Joint (v_eff, width) fit by a deterministic Nelder-Mead simplex started
/// from the bound midpoints offset by 10% of each range. Collapsed width
/// bounds reduce to the one-dimensional fit.
FitResult fit_depth_and_temperature(const ObservedSeries& data, const ModelSpec& model,
                                    double v_lo, double v_hi, double w_lo, double w_hi,
                                    const FitOptions& opts = {});

}  // namespace lds
