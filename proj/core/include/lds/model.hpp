#pragma once

#include <complex>
#include <span>
#include <vector>

namespace lds {

/// Dimensionful lattice and atom parameters.
///
/// The lattice depth is stored as a magnitude. All dynamics implemented here
/// depend on the depth through its square or through a cosine coupling where
/// the sign only shifts the lattice phase, so the sign convention of the
/// potential never enters.
struct PhysicalConfig {
    double lattice_depth = 0.0;       // V >= 0, joules
    double lattice_wavenumber = 0.0;  // K (= twice the laser wavenumber), 1/m
    double atomic_mass = 0.0;         // M, kg

    void validate() const;  // throws std::domain_error on bad parameters
};

/// Scales derived from a PhysicalConfig. The identity v_eff = V/(8 E_R)
/// holds by construction.
struct DerivedScales {
    double recoil_energy = 0.0;     // E_R = hbar^2 K^2 / (8 M), joules
    double half_talbot_time = 0.0;  // 2 pi M / (hbar K^2), seconds
    double v_eff = 0.0;             // V M / (hbar K)^2, dimensionless
};

DerivedScales derive_scales(const PhysicalConfig& cfg);

struct WidthTemperature {
    double kelvin = 0.0;
    // Set when the momentum width exceeds a quarter of the Brillouin zone;
    // the k = 0 single-band treatment becomes questionable there.
    bool beyond_quarter_zone = false;
};

/// Temperature equivalent of a dimensionless quasimomentum width w:
/// T_w = hbar^2 K^2 w^2 / (M kB).
WidthTemperature temperature_from_width(double width, const PhysicalConfig& cfg);

/// Momentum-space amplitudes c_k over the symmetric window
/// k = -(n-1)/2 .. (n-1)/2 of one quasimomentum subspace. The basis size n is
/// odd so the window is symmetric about k = 0.
///
/// Instances are plain values; propagation returns new states rather than
/// mutating shared ones.
class QuantumState {
public:
    QuantumState(int basis_size, double beta);

    static QuantumState plane_wave(int k, int basis_size, double beta);

    int basis_size() const { return static_cast<int>(amps_.size()); }
    int k_max() const { return (basis_size() - 1) / 2; }
    double beta() const { return beta_; }

    std::complex<double>& at_k(int k) { return amps_[static_cast<size_t>(k + k_max())]; }
    const std::complex<double>& at_k(int k) const {
        return amps_[static_cast<size_t>(k + k_max())];
    }

    std::span<std::complex<double>> amplitudes() { return amps_; }
    std::span<const std::complex<double>> amplitudes() const { return amps_; }

    double norm_sq() const;
    std::vector<double> populations() const;  // |c_k|^2, ascending k

private:
    std::vector<std::complex<double>> amps_;
    double beta_ = 0.0;
};

/// Populations P_k(N) for N = 0..n_max over the full momentum window.
struct PopulationSeries {
    int k_max = 0;
    std::vector<std::vector<double>> populations;  // [pulse][k + k_max]

    // Largest total population seen in the two outermost shells on either
    // side; above 1e-8 the basis is considered too small for the run.
    double max_edge_population = 0.0;
    bool edge_warning = false;

    int pulse_count() const { return static_cast<int>(populations.size()); }

    double p(int pulse, int k) const {
        return populations[static_cast<size_t>(pulse)][static_cast<size_t>(k + k_max)];
    }

    /// P_k as a function of pulse number.
    std::vector<double> p_series(int k) const;
};

}  // namespace lds
