#pragma once

#include <span>
#include <vector>

#include "lds/model.hpp"
#include "lds/propagator.hpp"

namespace lds {

/// Gaussian quasimomentum distribution of width w sampled on a uniform grid
/// of n_beta points spanning [-1/2, 1/2] inclusive. n_beta is odd so beta = 0
/// is a grid point.
struct ThermalSpec {
    double width = 0.0;
    int n_beta = 0;

    void validate() const;
};

std::vector<double> beta_grid(int n_beta);

struct WeightedBeta {
    double beta = 0.0;
    double weight = 0.0;
};

/// Discrete ensemble weights: the Gaussian density evaluated on the grid and
/// renormalized to sum to exactly 1. Tails beyond the zone edge are truncated,
/// not wrapped; the renormalization absorbs the lost mass. Width 0 degenerates
/// to all weight on beta = 0.
std::vector<WeightedBeta> gaussian_weights(const ThermalSpec& spec);

/// P0(beta, N) over the full quasimomentum grid, initial state |k=0>.
struct BetaScan {
    std::vector<double> betas;
    std::vector<std::vector<double>> p0;  // [beta][pulse]
};

BetaScan beta_scan(double v_eff, int n_beta, int n_max, int basis_size, Method method);

/// Gaussian-weighted ensemble average of the population series over the
/// quasimomentum grid. Exploits the beta -> -beta symmetry of the k = 0
/// initial state (each half-zone evolution is computed once) and skips grid
/// points whose relative weight is below 1e-16; both shortcuts are exact at
/// the 1e-12 level the scan is specified to.
PopulationSeries thermal_average(double v_eff, const ThermalSpec& spec, int n_max,
                                 int basis_size, Method method);

/// Same average for several widths, reusing one quasimomentum scan.
std::vector<PopulationSeries> thermal_average_multi(double v_eff, int n_beta,
                                                    std::span<const double> widths,
                                                    int n_max, int basis_size,
                                                    Method method);

}  // namespace lds
