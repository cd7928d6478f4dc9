#include "lds/two_state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lds {

namespace {

constexpr double pi = std::numbers::pi;
const double sqrt2 = std::sqrt(2.0);

// Below this depth the closed forms degenerate to 0/0; the analytic limits
// (amplitude 1, frequency 0) take over.
constexpr double v_eff_floor = 1e-12;

struct Trig {
    double s;  // sin(pi sqrt(1 + 8 v^2) / 2)
    double c;  // cos(pi sqrt(1 + 8 v^2) / 2)
};

Trig half_period_trig(double v) {
    const double arg = 0.5 * pi * std::sqrt(1.0 + 8.0 * v * v);
    return {std::sin(arg), std::cos(arg)};
}

void require_nonnegative(double v) {
    if (!(v >= 0.0)) throw std::domain_error("v_eff must be non-negative");
}

}  // namespace

RabiEigensystem rabi_eigensystem(double v_eff) {
    require_nonnegative(v_eff);
    const double root = std::sqrt(1.0 + 8.0 * v_eff * v_eff);
    return {(1.0 + root) / 4.0, (1.0 - root) / 4.0, std::atan(2.0 * sqrt2 * v_eff)};
}

double oscillation_amplitude(double v_eff) {
    require_nonnegative(v_eff);
    if (v_eff < v_eff_floor) return 1.0;
    const auto [s, c] = half_period_trig(v_eff);
    const double v2 = 8.0 * v_eff * v_eff;
    return v2 * s * s / (v2 + c * c);
}

double oscillation_frequency(double v_eff) {
    require_nonnegative(v_eff);
    if (v_eff < v_eff_floor) return 0.0;
    const auto [s, c] = half_period_trig(v_eff);
    const double y = std::sqrt(8.0 * v_eff * v_eff + c * c);
    double phi = 2.0 * std::atan2(y, s);
    if (phi >= 2.0 * pi) phi -= 2.0 * pi;
    return phi;
}

TwoStateAnalytics analyze_two_state(double v_eff) {
    const auto eig = rabi_eigensystem(v_eff);
    return {v_eff,
            oscillation_amplitude(v_eff),
            oscillation_frequency(v_eff),
            eig.e_plus,
            eig.e_minus,
            eig.mixing_angle};
}

TwoStatePopulations two_state_populations(int pulses, double v_eff) {
    if (pulses < 0) throw std::domain_error("pulse count must be non-negative");
    const double a = oscillation_amplitude(v_eff);
    const double phi = oscillation_frequency(v_eff);
    const double s = std::sin(0.5 * pulses * phi);
    const double p_plus = a * s * s;
    return {1.0 - p_plus, p_plus};
}

QuadraticTransfer quadratic_transfer(int pulses, double v_eff) {
    if (pulses < 0) throw std::domain_error("pulse count must be non-negative");
    require_nonnegative(v_eff);
    QuadraticTransfer q;
    const double raw = 8.0 * pulses * pulses * v_eff * v_eff;
    q.clamped = raw > 1.0;
    q.p_plus = q.clamped ? 1.0 : raw;
    q.within_weak_limit = 0.5 * pulses * oscillation_frequency(v_eff) < 0.1;
    return q;
}

double strong_coupling_amplitude(double v_eff) {
    if (!(v_eff > 0.0)) throw std::domain_error("v_eff must be positive");
    const double s = std::sin(sqrt2 * pi * v_eff);
    return s * s;
}

double node_location(int m) {
    if (m < 1) throw std::domain_error("node index must be a positive integer");
    const double m2 = static_cast<double>(m) * m;
    return std::sqrt(4.0 * m2 - 1.0) / (2.0 * sqrt2);
}

}  // namespace lds
