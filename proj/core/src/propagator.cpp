#include "lds/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "fourier.hpp"
#include "tridiag_eigen.hpp"

namespace lds {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eigenvector_drop = 1e-16;
constexpr double substep_change_tol = 1e-10;
constexpr int substep_start = 16;
constexpr int substep_cap = 32768;
constexpr double edge_population_tol = 1e-8;

int sign_for_parity(int k) { return (k & 1) ? -1 : 1; }

}  // namespace

void FloquetSpec::validate() const {
    if (!(v_eff >= 0.0)) throw std::domain_error("v_eff must be non-negative");
    if (!(beta >= -0.5 && beta <= 0.5))
        throw std::domain_error("quasimomentum must lie in [-1/2, 1/2]");
    if (basis_size < 3 || basis_size % 2 == 0)
        throw std::domain_error("basis size must be odd and at least 3");
    if (substeps_per_pulse < 0) throw std::domain_error("substep count must be >= 0");
}

LatticeHamiltonian build_lattice_hamiltonian(const FloquetSpec& spec) {
    spec.validate();
    LatticeHamiltonian h;
    const int kmax = (spec.basis_size - 1) / 2;
    h.diagonal.resize(static_cast<size_t>(spec.basis_size));
    for (int k = -kmax; k <= kmax; ++k)
        h.diagonal[static_cast<size_t>(k + kmax)] =
            0.5 * (static_cast<double>(k) * k + 2.0 * k * spec.beta);
    h.off_diagonal = -0.5 * spec.v_eff;
    return h;
}

QuantumState free_evolution(QuantumState state) {
    const int kmax = state.k_max();
    const double beta = state.beta();
    for (int k = -kmax; k <= kmax; ++k) {
        auto& c = state.at_k(k);
        c *= sign_for_parity(k);
        if (beta != 0.0 && k != 0) c *= std::polar(1.0, -2.0 * pi * k * beta);
    }
    return state;
}

struct FloquetPropagator::Impl {
    FloquetSpec spec;
    Method method = Method::eigen;
    int kmax = 0;

    // eigen method, generic quasimomentum
    std::vector<std::complex<double>> pulse_phases;  // exp(-i 2 pi lambda_i)
    detail::SparseMatrix p;                          // eigenvector matrix, rows
    detail::SparseMatrix pt;                         // its transpose
    mutable std::vector<std::complex<double>> work;

    // eigen method, beta = 0: the Hamiltonian commutes with k -> -k, so the
    // pulse is applied sector-wise in the parity-adapted basis
    // {|0>, (|k>+|-k>)/sqrt(2)} + {(|k>-|-k>)/sqrt(2)}. Populations then
    // mirror exactly by construction, and the degenerate +-k eigenvalue
    // pairs of the unstructured solve (whose independent rounding at
    // |lambda| ~ k^2/2 injects ~1e-10 phase asymmetry at n ~ 2000) never
    // arise.
    bool parity_sectors = false;
    std::vector<std::complex<double>> phases_even, phases_odd;
    detail::SparseMatrix p_even, pt_even, p_odd, pt_odd;
    mutable std::vector<std::complex<double>> sector_even, sector_odd, sector_tmp;

    // split-step
    int substeps = 0;
    std::vector<std::complex<double>> kinetic_half;  // per substep, bin layout
    std::vector<std::complex<double>> potential;     // includes the 1/n round-trip factor
    std::unique_ptr<detail::FourierTransformer> fft;

    // free flight
    std::vector<std::complex<double>> free_phases;  // ascending k

    void prepare_eigen();
    void prepare_splitstep(int substep_count);
    void pulse_eigen(QuantumState& state) const;
    void pulse_splitstep(QuantumState& state) const;
};

namespace {

std::vector<std::complex<double>> eigenphases(const std::vector<double>& values) {
    std::vector<std::complex<double>> out(values.size());
    for (size_t i = 0; i < values.size(); ++i)
        out[i] = std::polar(1.0, -2.0 * pi * values[i]);
    return out;
}

}  // namespace

void FloquetPropagator::Impl::prepare_eigen() {
    if (spec.beta == 0.0) {
        parity_sectors = true;
        const int m = kmax;
        std::vector<double> d_even(static_cast<size_t>(m) + 1);
        std::vector<double> off_even(static_cast<size_t>(m));
        for (int k = 0; k <= m; ++k)
            d_even[static_cast<size_t>(k)] = 0.5 * static_cast<double>(k) * k;
        if (m >= 1) {
            off_even[0] = -0.5 * spec.v_eff * std::sqrt(2.0);
            for (int k = 1; k < m; ++k) off_even[static_cast<size_t>(k)] = -0.5 * spec.v_eff;
        }
        auto even = detail::eigh_tridiagonal(std::move(d_even), std::move(off_even));
        phases_even = eigenphases(even.values);
        p_even = detail::sparse_from_dense(even.vectors, even.n, eigenvector_drop, false);
        pt_even = detail::sparse_from_dense(even.vectors, even.n, eigenvector_drop, true);

        std::vector<double> d_odd(static_cast<size_t>(m));
        std::vector<double> off_odd(m > 0 ? static_cast<size_t>(m) - 1 : 0,
                                    -0.5 * spec.v_eff);
        for (int k = 1; k <= m; ++k)
            d_odd[static_cast<size_t>(k - 1)] = 0.5 * static_cast<double>(k) * k;
        auto odd = detail::eigh_tridiagonal(std::move(d_odd), std::move(off_odd));
        phases_odd = eigenphases(odd.values);
        p_odd = detail::sparse_from_dense(odd.vectors, odd.n, eigenvector_drop, false);
        pt_odd = detail::sparse_from_dense(odd.vectors, odd.n, eigenvector_drop, true);

        sector_even.resize(static_cast<size_t>(m) + 1);
        sector_odd.resize(static_cast<size_t>(std::max(m, 1)));
        sector_tmp.resize(static_cast<size_t>(m) + 1);
        return;
    }

    const auto h = build_lattice_hamiltonian(spec);
    std::vector<double> off(static_cast<size_t>(spec.basis_size) - 1, h.off_diagonal);
    const auto eig = detail::eigh_tridiagonal(h.diagonal, std::move(off));
    pulse_phases = eigenphases(eig.values);
    p = detail::sparse_from_dense(eig.vectors, eig.n, eigenvector_drop, false);
    pt = detail::sparse_from_dense(eig.vectors, eig.n, eigenvector_drop, true);
    work.resize(static_cast<size_t>(spec.basis_size));
}

void FloquetPropagator::Impl::prepare_splitstep(int substep_count) {
    substeps = substep_count;
    const int n = spec.basis_size;
    const double dt = 2.0 * pi / substeps;
    kinetic_half.resize(static_cast<size_t>(n));
    potential.resize(static_cast<size_t>(n));
    for (int bin = 0; bin < n; ++bin) {
        const int k = bin <= kmax ? bin : bin - n;
        const double d = 0.5 * (static_cast<double>(k) * k + 2.0 * k * spec.beta);
        kinetic_half[static_cast<size_t>(bin)] = std::polar(1.0, -0.5 * d * dt);
        const double theta = 2.0 * pi * bin / n;
        potential[static_cast<size_t>(bin)] =
            std::polar(1.0 / n, spec.v_eff * std::cos(theta) * dt);
    }
    fft = std::make_unique<detail::FourierTransformer>(n);
}

void FloquetPropagator::Impl::pulse_eigen(QuantumState& state) const {
    if (!parity_sectors) {
        auto amps = state.amplitudes();
        auto* w = work.data();
        pt.multiply(reinterpret_cast<const double*>(amps.data()),
                    reinterpret_cast<double*>(w));
        for (int i = 0; i < spec.basis_size; ++i)
            w[i] *= pulse_phases[static_cast<size_t>(i)];
        p.multiply(reinterpret_cast<const double*>(w),
                   reinterpret_cast<double*>(amps.data()));
        return;
    }

    const int m = kmax;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    auto run_sector = [&](std::complex<double>* amps,
                          const detail::SparseMatrix& basis_to_eigen,
                          const detail::SparseMatrix& eigen_to_basis,
                          const std::vector<std::complex<double>>& phases, int size) {
        auto* tmp = sector_tmp.data();
        basis_to_eigen.multiply(reinterpret_cast<const double*>(amps),
                                reinterpret_cast<double*>(tmp));
        for (int i = 0; i < size; ++i) tmp[i] *= phases[static_cast<size_t>(i)];
        eigen_to_basis.multiply(reinterpret_cast<const double*>(tmp),
                                reinterpret_cast<double*>(amps));
    };

    // even sector {|0>, (|k>+|-k>)/sqrt(2)}, odd sector {(|k>-|-k>)/sqrt(2)}
    sector_even[0] = state.at_k(0);
    for (int k = 1; k <= m; ++k) {
        sector_even[static_cast<size_t>(k)] = (state.at_k(k) + state.at_k(-k)) * inv_sqrt2;
        sector_odd[static_cast<size_t>(k - 1)] = (state.at_k(k) - state.at_k(-k)) * inv_sqrt2;
    }
    run_sector(sector_even.data(), pt_even, p_even, phases_even, m + 1);
    run_sector(sector_odd.data(), pt_odd, p_odd, phases_odd, m);

    state.at_k(0) = sector_even[0];
    for (int k = 1; k <= m; ++k) {
        const auto e = sector_even[static_cast<size_t>(k)] * inv_sqrt2;
        const auto o = sector_odd[static_cast<size_t>(k - 1)] * inv_sqrt2;
        state.at_k(k) = e + o;
        state.at_k(-k) = e - o;
    }
}

void FloquetPropagator::Impl::pulse_splitstep(QuantumState& state) const {
    const int n = spec.basis_size;
    auto* buf = fft->buffer();
    // stage in bin layout: bin = k for k >= 0, k + n for k < 0
    for (int k = -kmax; k <= kmax; ++k)
        buf[k >= 0 ? k : k + n] = state.at_k(k);
    for (int s = 0; s < substeps; ++s) {
        for (int j = 0; j < n; ++j) buf[j] *= kinetic_half[static_cast<size_t>(j)];
        fft->backward();  // momentum -> position
        for (int j = 0; j < n; ++j) buf[j] *= potential[static_cast<size_t>(j)];
        fft->forward();   // position -> momentum
        for (int j = 0; j < n; ++j) buf[j] *= kinetic_half[static_cast<size_t>(j)];
    }
    for (int k = -kmax; k <= kmax; ++k)
        state.at_k(k) = buf[k >= 0 ? k : k + n];
}

FloquetPropagator::FloquetPropagator(const FloquetSpec& spec, Method method)
    : impl_(std::make_unique<Impl>()) {
    spec.validate();
    impl_->spec = spec;
    impl_->method = method;
    impl_->kmax = (spec.basis_size - 1) / 2;

    impl_->free_phases.resize(static_cast<size_t>(spec.basis_size));
    for (int k = -impl_->kmax; k <= impl_->kmax; ++k) {
        std::complex<double> ph(sign_for_parity(k), 0.0);
        if (spec.beta != 0.0 && k != 0) ph *= std::polar(1.0, -2.0 * pi * k * spec.beta);
        impl_->free_phases[static_cast<size_t>(k + impl_->kmax)] = ph;
    }

    if (method == Method::eigen) {
        impl_->prepare_eigen();
    } else {
        const int s = spec.substeps_per_pulse > 0 ? spec.substeps_per_pulse
                                                  : converged_substeps(spec);
        impl_->prepare_splitstep(s);
    }
}

FloquetPropagator::~FloquetPropagator() = default;
FloquetPropagator::FloquetPropagator(FloquetPropagator&&) noexcept = default;
FloquetPropagator& FloquetPropagator::operator=(FloquetPropagator&&) noexcept = default;

const FloquetSpec& FloquetPropagator::spec() const { return impl_->spec; }
Method FloquetPropagator::method() const { return impl_->method; }
int FloquetPropagator::substeps() const { return impl_->substeps; }

void FloquetPropagator::apply_pulse(QuantumState& state) const {
    if (state.basis_size() != impl_->spec.basis_size)
        throw std::invalid_argument("state basis does not match propagator spec");
    if (impl_->method == Method::eigen)
        impl_->pulse_eigen(state);
    else
        impl_->pulse_splitstep(state);
}

void FloquetPropagator::apply(QuantumState& state) const {
    apply_pulse(state);
    auto amps = state.amplitudes();
    for (int i = 0; i < impl_->spec.basis_size; ++i)
        amps[static_cast<size_t>(i)] *= impl_->free_phases[static_cast<size_t>(i)];
}

QuantumState lattice_pulse_eigen(QuantumState state, const FloquetSpec& spec) {
    FloquetPropagator prop(spec, Method::eigen);
    prop.apply_pulse(state);
    return state;
}

QuantumState lattice_pulse_splitstep(QuantumState state, const FloquetSpec& spec) {
    FloquetPropagator prop(spec, Method::splitstep);
    prop.apply_pulse(state);
    return state;
}

QuantumState apply_floquet(QuantumState state, const FloquetSpec& spec, Method method) {
    FloquetPropagator prop(spec, method);
    prop.apply(state);
    return state;
}

int converged_substeps(const FloquetSpec& spec) {
    FloquetSpec probe = spec;
    const auto initial = QuantumState::plane_wave(0, spec.basis_size, spec.beta);

    auto one_pulse = [&](int substeps) {
        probe.substeps_per_pulse = substeps;
        FloquetPropagator prop(probe, Method::splitstep);
        QuantumState s = initial;
        prop.apply_pulse(s);
        return s;
    };

    QuantumState prev = one_pulse(substep_start);
    for (int s = 2 * substep_start; s <= substep_cap; s *= 2) {
        QuantumState next = one_pulse(s);
        double change = 0.0;
        for (int i = 0; i < spec.basis_size; ++i)
            change = std::max(change, std::abs(next.amplitudes()[static_cast<size_t>(i)] -
                                               prev.amplitudes()[static_cast<size_t>(i)]));
        if (change < substep_change_tol) return s;
        prev = std::move(next);
    }
    return substep_cap;
}

PopulationSeries evolve(int initial_k, const FloquetSpec& spec, int n_max, Method method) {
    if (n_max < 0) throw std::domain_error("pulse count must be non-negative");
    FloquetPropagator prop(spec, method);
    QuantumState state = QuantumState::plane_wave(initial_k, spec.basis_size, spec.beta);

    PopulationSeries series;
    const int kmax = state.k_max();
    series.k_max = kmax;
    series.populations.reserve(static_cast<size_t>(n_max) + 1);
    series.populations.push_back(state.populations());
    for (int n = 1; n <= n_max; ++n) {
        prop.apply(state);
        series.populations.push_back(state.populations());
    }
    for (const auto& pops : series.populations) {
        double edge = pops.front() + pops.back();
        if (kmax >= 1)
            edge += pops[1] + pops[pops.size() - 2];
        series.max_edge_population = std::max(series.max_edge_population, edge);
    }
    series.edge_warning = series.max_edge_population > edge_population_tol;
    return series;
}

}  // namespace lds
