#pragma once

namespace lds {

/// Closed-form two-state (weakly diffracting) quantities for one lattice
/// depth: a pulse-to-pulse oscillation of the k = 0 population with a single
/// amplitude and frequency, derived from the Rabi reduction of the lattice
/// Hamiltonian onto {|0>, (|1>+|-1>)/sqrt(2)}.
struct TwoStateAnalytics {
    double v_eff = 0.0;
    double amplitude = 0.0;      // in [0, 1]
    double frequency = 0.0;      // radians, in [0, 2 pi)
    double e_plus = 0.0;         // Rabi eigenvalues; e_plus + e_minus = 1/2
    double e_minus = 0.0;
    double mixing_angle = 0.0;   // arctan(2 sqrt(2) v_eff), in [0, pi/2)
};

struct RabiEigensystem {
    double e_plus = 0.0;
    double e_minus = 0.0;
    double mixing_angle = 0.0;
};

/// E_pm = (1 pm sqrt(1 + 8 v^2))/4 and the eigenvector mixing angle.
RabiEigensystem rabi_eigensystem(double v_eff);

/// Oscillation amplitude of P0(N). Returns the analytic limit 1 below
/// v_eff = 1e-12 where the closed form degenerates to 0/0.
double oscillation_amplitude(double v_eff);

/// Oscillation frequency of P0(N), evaluated with the two-argument
/// arctangent so the branch is continuous through zero crossings of the
/// denominator; mapped into [0, 2 pi). Returns the analytic limit 0 below
/// v_eff = 1e-12.
double oscillation_frequency(double v_eff);

TwoStateAnalytics analyze_two_state(double v_eff);

struct TwoStatePopulations {
    double p0 = 1.0;
    double p_plus = 0.0;  // p0 + p_plus == 1 exactly
};

TwoStatePopulations two_state_populations(int pulses, double v_eff);

/// Leading-order (quadratic) transfer estimate 8 N^2 v^2, clamped to [0, 1].
struct QuadraticTransfer {
    double p_plus = 0.0;
    bool clamped = false;
    // False once N * frequency/2 >= 0.1, where the quadratic expansion is no
    // longer trustworthy.
    bool within_weak_limit = true;
};

QuadraticTransfer quadratic_transfer(int pulses, double v_eff);

/// Strong-coupling envelope of the oscillation amplitude,
/// sin^2(sqrt(2) pi v_eff).
double strong_coupling_amplitude(double v_eff);

/// m-th depth at which the amplitude vanishes and the frequency equals pi:
/// sqrt(4 m^2 - 1) / (2 sqrt(2)), m >= 1.
double node_location(int m);

}  // namespace lds
