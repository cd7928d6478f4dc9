#include "lds/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace lds {

namespace {

constexpr double weight_floor = 1e-16;  // relative to the peak weight

std::vector<double> gaussian_density(double width, std::span<const double> betas) {
    std::vector<double> d(betas.size(), 0.0);
    if (width <= 0.0) {
        for (size_t i = 0; i < betas.size(); ++i) d[i] = betas[i] == 0.0 ? 1.0 : 0.0;
        return d;
    }
    for (size_t i = 0; i < betas.size(); ++i) {
        const double z = betas[i] / width;
        d[i] = std::exp(-0.5 * z * z);  // normalization drops out below
    }
    return d;
}

}  // namespace

void ThermalSpec::validate() const {
    if (!(width >= 0.0)) throw std::domain_error("width must be non-negative");
    if (n_beta < 3 || n_beta % 2 == 0)
        throw std::domain_error("n_beta must be odd and at least 3");
}

std::vector<double> beta_grid(int n_beta) {
    if (n_beta < 3 || n_beta % 2 == 0)
        throw std::domain_error("n_beta must be odd and at least 3");
    std::vector<double> g(static_cast<size_t>(n_beta));
    const double step = 1.0 / (n_beta - 1);
    for (int i = 0; i < n_beta; ++i) g[static_cast<size_t>(i)] = -0.5 + i * step;
    g[static_cast<size_t>((n_beta - 1) / 2)] = 0.0;  // exact midpoint
    return g;
}

std::vector<WeightedBeta> gaussian_weights(const ThermalSpec& spec) {
    spec.validate();
    const auto betas = beta_grid(spec.n_beta);
    const auto density = gaussian_density(spec.width, betas);
    const double total = std::accumulate(density.begin(), density.end(), 0.0);
    std::vector<WeightedBeta> out(betas.size());
    for (size_t i = 0; i < betas.size(); ++i) out[i] = {betas[i], density[i] / total};
    return out;
}

BetaScan beta_scan(double v_eff, int n_beta, int n_max, int basis_size, Method method) {
    BetaScan scan;
    scan.betas = beta_grid(n_beta);
    scan.p0.reserve(scan.betas.size());
    for (const double beta : scan.betas) {
        FloquetSpec spec{v_eff, beta, basis_size, 0};
        scan.p0.push_back(evolve(0, spec, n_max, method).p_series(0));
    }
    return scan;
}

namespace {

/// Weighted accumulation of full population series over the half grid
/// beta >= 0, with mirror weights folded in. Evolutions are cached so several
/// widths share one scan.
class HalfZoneAverager {
public:
    HalfZoneAverager(double v_eff, int n_beta, int n_max, int basis_size, Method method)
        : v_eff_(v_eff), n_max_(n_max), basis_size_(basis_size), method_(method) {
        const auto grid = beta_grid(n_beta);
        for (const double b : grid)
            if (b >= 0.0) half_.push_back(b);
    }

    std::span<const double> half_grid() const { return half_; }

    const std::vector<std::vector<double>>& series_for(double beta) {
        auto it = cache_.find(beta);
        if (it == cache_.end()) {
            FloquetSpec spec{v_eff_, beta, basis_size_, 0};
            it = cache_.emplace(beta, evolve(0, spec, n_max_, method_).populations).first;
        }
        return it->second;
    }

    int k_max() const { return (basis_size_ - 1) / 2; }

private:
    double v_eff_;
    int n_max_;
    int basis_size_;
    Method method_;
    std::vector<double> half_;
    std::map<double, std::vector<std::vector<double>>> cache_;
};

PopulationSeries average_one_width(HalfZoneAverager& avg, double width, int n_beta,
                                   int n_max, int basis_size) {
    // Fold the full-grid Gaussian weights onto the half grid: the k = 0
    // initial state gives P(beta) = P(-beta), so each beta > 0 carries its
    // mirror's weight as well.
    std::vector<double> folded(avg.half_grid().size(), 0.0);
    {
        const auto grid = beta_grid(n_beta);
        const auto density = gaussian_density(width, grid);
        const int mid = (n_beta - 1) / 2;
        double total = 0.0;
        for (const double d : density) total += d;
        for (int i = mid; i < n_beta; ++i) {
            const size_t h = static_cast<size_t>(i - mid);
            folded[h] = density[static_cast<size_t>(i)] / total;
            if (i > mid) folded[h] += density[static_cast<size_t>(2 * mid - i)] / total;
        }
    }
    const double peak = *std::max_element(folded.begin(), folded.end());

    PopulationSeries out;
    out.k_max = avg.k_max();
    out.populations.assign(static_cast<size_t>(n_max) + 1,
                           std::vector<double>(static_cast<size_t>(basis_size), 0.0));
    double kept = 0.0;
    for (size_t h = 0; h < folded.size(); ++h) {
        if (folded[h] < weight_floor * peak) continue;
        kept += folded[h];
        const auto& series = avg.series_for(avg.half_grid()[h]);
        for (size_t n = 0; n < series.size(); ++n)
            for (size_t j = 0; j < series[n].size(); ++j)
                out.populations[n][j] += folded[h] * series[n][j];
    }
    // renormalize over the retained support so weights sum to exactly 1
    for (auto& row : out.populations)
        for (auto& p : row) p /= kept;
    return out;
}

}  // namespace

PopulationSeries thermal_average(double v_eff, const ThermalSpec& spec, int n_max,
                                 int basis_size, Method method) {
    spec.validate();
    HalfZoneAverager avg(v_eff, spec.n_beta, n_max, basis_size, method);
    return average_one_width(avg, spec.width, spec.n_beta, n_max, basis_size);
}

std::vector<PopulationSeries> thermal_average_multi(double v_eff, int n_beta,
                                                    std::span<const double> widths,
                                                    int n_max, int basis_size,
                                                    Method method) {
    for (const double w : widths)
        ThermalSpec{w, n_beta}.validate();
    HalfZoneAverager avg(v_eff, n_beta, n_max, basis_size, method);
    std::vector<PopulationSeries> out;
    out.reserve(widths.size());
    for (const double w : widths)
        out.push_back(average_one_width(avg, w, n_beta, n_max, basis_size));
    return out;
}

}  // namespace lds
