#include "lds/estimator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "lds/thermal.hpp"
#include "lds/two_state.hpp"

namespace lds {

namespace {

constexpr double golden = 0.6180339887498949;  // (sqrt(5) - 1) / 2
constexpr int prescan_points = 33;

double weighted_rms(std::span<const double> a, std::span<const double> b,
                    std::span<const double> sigma) {
    if (a.size() != b.size() || a.empty())
        throw std::domain_error("series must be non-empty and equally sized");
    if (sigma.empty()) return rms_deviation(a, b);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double w = 1.0 / (sigma[i] * sigma[i]);
        const double d = a[i] - b[i];
        num += w * d * d;
        den += w;
    }
    return std::sqrt(num / den);
}

}  // namespace

void ObservedSeries::validate() const {
    if (pulses.empty() || pulses.size() != p0.size())
        throw std::domain_error("observed series empty or column sizes differ");
    if (!sigma.empty() && sigma.size() != p0.size())
        throw std::domain_error("sigma column size differs");
    for (size_t i = 0; i < pulses.size(); ++i) {
        if (i > 0 && pulses[i] <= pulses[i - 1])
            throw std::domain_error("pulse indices must be strictly increasing");
        if (!(p0[i] >= 0.0 && p0[i] <= 1.0))
            throw std::domain_error("populations must lie in [0, 1]");
        if (!sigma.empty() && !(sigma[i] > 0.0))
            throw std::domain_error("uncertainties must be positive");
    }
}

double rms_deviation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty())
        throw std::domain_error("series must be non-empty and equally sized");
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

int nearest_pulse_selection(double target_nv, double v_eff) {
    if (!(v_eff > 0.0)) throw std::domain_error("v_eff must be positive");
    const long n = std::lround(target_nv / v_eff);
    return static_cast<int>(std::max(1L, n));
}

std::string model_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::analytic: return "analytic";
        case ModelKind::quadratic: return "quadratic";
        case ModelKind::truncated: return "truncated-n";
        case ModelKind::full: return "full";
        case ModelKind::secondary: return "secondary";
    }
    return "?";
}

std::vector<double> ModelSpec::predict(std::span<const int> pulses, double v_eff,
                                       double width) const {
    std::vector<double> out(pulses.size());
    switch (kind) {
        case ModelKind::analytic:
            for (size_t i = 0; i < pulses.size(); ++i)
                out[i] = two_state_populations(pulses[i], v_eff).p0;
            return out;
        case ModelKind::quadratic:
            for (size_t i = 0; i < pulses.size(); ++i)
                out[i] = 1.0 - quadratic_transfer(pulses[i], v_eff).p_plus;
            return out;
        case ModelKind::secondary:
            for (size_t i = 0; i < pulses.size(); ++i) {
                const double c = std::cos(std::numbers::pi * v_eff * pulses[i]);
                out[i] = c * c;
            }
            return out;
        case ModelKind::truncated:
        case ModelKind::full: {
            const int n_max = *std::max_element(pulses.begin(), pulses.end());
            std::vector<double> p0;
            if (n_beta > 0 && width > 0.0) {
                p0 = thermal_average(v_eff, {width, n_beta}, n_max, basis_size, method)
                         .p_series(0);
            } else {
                FloquetSpec spec{v_eff, 0.0, basis_size, 0};
                p0 = evolve(0, spec, n_max, method).p_series(0);
            }
            for (size_t i = 0; i < pulses.size(); ++i)
                out[i] = p0[static_cast<size_t>(pulses[i])];
            return out;
        }
    }
    throw std::logic_error("unknown model kind");
}

namespace {

struct Objective {
    const ObservedSeries& data;
    const ModelSpec& model;
    int evaluations = 0;

    double operator()(double v, double w = 0.0) {
        ++evaluations;
        const auto pred = model.predict(data.pulses, v, w);
        const double r = weighted_rms(data.p0, pred, data.sigma);
        if (!std::isfinite(r)) throw std::runtime_error("fit objective is not finite");
        return r;
    }
};

}  // namespace

FitResult fit_lattice_depth(const ObservedSeries& data, const ModelSpec& model,
                            double v_lo, double v_hi, const FitOptions& opts) {
    data.validate();
    if (!(v_lo >= 0.0 && v_hi <= 2.0 && v_lo < v_hi))
        throw std::domain_error("depth bounds must satisfy 0 <= lo < hi <= 2");

    Objective obj{data, model};

    // coarse pre-scan to select the bracket
    std::vector<double> grid(prescan_points), vals(prescan_points);
    for (int i = 0; i < prescan_points; ++i) {
        grid[static_cast<size_t>(i)] =
            v_lo + (v_hi - v_lo) * i / static_cast<double>(prescan_points - 1);
        vals[static_cast<size_t>(i)] = obj(grid[static_cast<size_t>(i)]);
    }
    const int best =
        static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    double a = grid[static_cast<size_t>(std::max(0, best - 1))];
    double b = grid[static_cast<size_t>(std::min(prescan_points - 1, best + 1))];

    double c = b - golden * (b - a);
    double d = a + golden * (b - a);
    double fc = obj(c), fd = obj(d);
    while (b - a > opts.tol && obj.evaluations < opts.budget) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - golden * (b - a);
            fc = obj(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + golden * (b - a);
            fd = obj(d);
        }
    }

    FitResult res;
    res.model = model.kind;
    res.converged = (b - a) <= opts.tol;
    res.v_eff_hat = 0.5 * (a + b);
    res.residual_rms = obj(res.v_eff_hat);
    res.evaluations = obj.evaluations;
    return res;
}

FitResult fit_depth_and_temperature(const ObservedSeries& data, const ModelSpec& model,
                                    double v_lo, double v_hi, double w_lo, double w_hi,
                                    const FitOptions& opts) {
    data.validate();
    if (!(v_lo >= 0.0 && v_hi <= 2.0 && v_lo < v_hi))
        throw std::domain_error("depth bounds must satisfy 0 <= lo < hi <= 2");
    if (!(w_lo >= 0.0 && w_lo <= w_hi))
        throw std::domain_error("width bounds must satisfy 0 <= lo <= hi");

    if (w_lo == w_hi) {
        // collapsed width bounds: plain 1-D fit at that width
        FitResult res = fit_lattice_depth(data, model, v_lo, v_hi, opts);
        res.w_hat = w_lo;
        return res;
    }

    Objective obj{data, model};
    using Vertex = std::pair<std::array<double, 2>, double>;

    auto clamp = [&](std::array<double, 2> x) {
        x[0] = std::clamp(x[0], v_lo, v_hi);
        x[1] = std::clamp(x[1], w_lo, w_hi);
        return x;
    };
    auto eval = [&](std::array<double, 2> x) { return obj(x[0], x[1]); };

    const double vm = 0.5 * (v_lo + v_hi), wm = 0.5 * (w_lo + w_hi);
    std::array<Vertex, 3> simplex;
    simplex[0].first = {vm, wm};
    simplex[1].first = clamp({vm + 0.1 * (v_hi - v_lo), wm});
    simplex[2].first = clamp({vm, wm + 0.1 * (w_hi - w_lo)});
    for (auto& v : simplex) v.second = eval(v.first);

    auto diameter = [&] {
        double d = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                d = std::max({d, std::abs(simplex[i].first[0] - simplex[j].first[0]),
                              std::abs(simplex[i].first[1] - simplex[j].first[1])});
        return d;
    };

    while (diameter() > opts.tol && obj.evaluations < opts.budget) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& a, const Vertex& b) { return a.second < b.second; });
        const auto& best = simplex[0];
        auto& worst = simplex[2];
        const std::array<double, 2> centroid = {
            0.5 * (simplex[0].first[0] + simplex[1].first[0]),
            0.5 * (simplex[0].first[1] + simplex[1].first[1])};

        auto reflect = clamp({2.0 * centroid[0] - worst.first[0],
                              2.0 * centroid[1] - worst.first[1]});
        const double fr = eval(reflect);
        if (fr < best.second) {
            auto expand = clamp({centroid[0] + 2.0 * (reflect[0] - centroid[0]),
                                 centroid[1] + 2.0 * (reflect[1] - centroid[1])});
            const double fe = eval(expand);
            worst = fe < fr ? Vertex{expand, fe} : Vertex{reflect, fr};
        } else if (fr < simplex[1].second) {
            worst = {reflect, fr};
        } else {
            auto contract = clamp({centroid[0] + 0.5 * (worst.first[0] - centroid[0]),
                                   centroid[1] + 0.5 * (worst.first[1] - centroid[1])});
            const double fk = eval(contract);
            if (fk < worst.second) {
                worst = {contract, fk};
            } else {
                // shrink toward the best vertex
                for (int i = 1; i < 3; ++i) {
                    simplex[i].first = clamp(
                        {best.first[0] + 0.5 * (simplex[i].first[0] - best.first[0]),
                         best.first[1] + 0.5 * (simplex[i].first[1] - best.first[1])});
                    simplex[i].second = eval(simplex[i].first);
                }
            }
        }
    }

    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.second < b.second; });
    FitResult res;
    res.model = model.kind;
    res.converged = diameter() <= opts.tol;
    res.v_eff_hat = simplex[0].first[0];
    res.w_hat = simplex[0].first[1];
    res.residual_rms = simplex[0].second;
    res.evaluations = obj.evaluations;
    return res;
}

}  // namespace lds
