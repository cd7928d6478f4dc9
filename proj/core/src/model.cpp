#include "lds/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lds/constants.hpp"

namespace lds {

void PhysicalConfig::validate() const {
    if (!(lattice_wavenumber > 0.0))
        throw std::domain_error("lattice wavenumber must be positive");
    if (!(atomic_mass > 0.0)) throw std::domain_error("atomic mass must be positive");
    if (!(lattice_depth >= 0.0))
        throw std::domain_error("lattice depth must be non-negative (magnitude convention)");
}

DerivedScales derive_scales(const PhysicalConfig& cfg) {
    cfg.validate();
    const double k2 = cfg.lattice_wavenumber * cfg.lattice_wavenumber;
    DerivedScales s;
    s.recoil_energy = hbar * hbar * k2 / (8.0 * cfg.atomic_mass);
    s.half_talbot_time = 2.0 * std::numbers::pi * cfg.atomic_mass / (hbar * k2);
    s.v_eff = cfg.lattice_depth * cfg.atomic_mass / (hbar * hbar * k2);
    return s;
}

WidthTemperature temperature_from_width(double width, const PhysicalConfig& cfg) {
    cfg.validate();
    if (!(width >= 0.0)) throw std::domain_error("momentum width must be non-negative");
    const double k2 = cfg.lattice_wavenumber * cfg.lattice_wavenumber;
    WidthTemperature t;
    t.kelvin = hbar * hbar * k2 * width * width / (cfg.atomic_mass * boltzmann_k);
    t.beyond_quarter_zone = width > 0.125;
    return t;
}

QuantumState::QuantumState(int basis_size, double beta) : beta_(beta) {
    if (basis_size < 3 || basis_size % 2 == 0)
        throw std::domain_error("basis size must be odd and at least 3");
    if (!(beta >= -0.5 && beta <= 0.5))
        throw std::domain_error("quasimomentum must lie in [-1/2, 1/2]");
    amps_.assign(static_cast<size_t>(basis_size), {0.0, 0.0});
}

QuantumState QuantumState::plane_wave(int k, int basis_size, double beta) {
    QuantumState s(basis_size, beta);
    if (std::abs(k) > s.k_max())
        throw std::domain_error("initial momentum index outside basis window");
    s.at_k(k) = {1.0, 0.0};
    return s;
}

double QuantumState::norm_sq() const {
    double n = 0.0;
    for (const auto& a : amps_) n += std::norm(a);
    return n;
}

std::vector<double> QuantumState::populations() const {
    std::vector<double> p(amps_.size());
    for (size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
    return p;
}

std::vector<double> PopulationSeries::p_series(int k) const {
    std::vector<double> out(populations.size());
    for (size_t n = 0; n < populations.size(); ++n)
        out[n] = populations[n][static_cast<size_t>(k + k_max)];
    return out;
}

}  // namespace lds
