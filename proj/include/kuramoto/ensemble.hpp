/*
 * Copyright (c) 2026 kuramoto-hebb contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef KURAMOTO_ENSEMBLE_HPP
#define KURAMOTO_ENSEMBLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "kuramoto/integrate.hpp"

namespace kuramoto::ensemble {

// ---------------------------------------------------------------------------
// N inertial oscillators on a complete graph with Hebbian coupling:
//
//   dphi_i/dt = v_i
//   m dv_i/dt = -v_i + w_i + (1/N) sum_{j != i} K_ij sin(phi_j - phi_i)
//   dK_ij/dt  = beta (alpha cos(phi_j - phi_i) - K_ij),   i < j, K symmetric
//
// Flattened state layout (dimension 2N + N(N-1)/2):
//   [0, N)        lifted phases
//   [N, 2N)       velocities
//   [2N, ...)     coupling upper triangle, row-major: (0,1), (0,2), ...,
//                 (0,N-1), (1,2), ..., (N-2,N-1)
// Only the i < j entries are integrated, so K_ij = K_ji holds exactly at all
// times by construction.
// ---------------------------------------------------------------------------

struct EnsembleParams {
    int n = 2;
    double mass = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    double sigma2 = 0.0; ///< variance of the Gaussian frequency distribution
    std::uint64_t seed = 0;
    void validate() const;
};

/// Index of pair (i, j), i < j, into the flattened upper triangle.
std::size_t pair_index(int n, int i, int j);

struct EnsembleState {
    int n = 0;
    std::vector<double> phases;     ///< lifted
    std::vector<double> velocities;
    std::vector<double> coupling;   ///< upper triangle, size n(n-1)/2

    double k(int i, int j) const;   ///< symmetric accessor
    std::vector<double> flatten() const;
    static EnsembleState unflatten(int n, std::span<const double> y);
};

std::size_t flat_dimension(int n);

/// Order parameter r_q = |(1/N) sum_j exp(i q phi_j)|. q = 2 merges two
/// anti-phase clusters into full coherence. Throws on an empty span.
double order_parameter(std::span<const double> phases, int q = 2);

class Ensemble {
public:
    /// Frequencies drawn once from Normal(0, sigma2) with the given seed
    /// (Box-Muller over a fixed 64-bit stream, so draws are reproducible).
    static Ensemble init(const EnsembleParams& params);
    /// Explicit frequencies (testing, reductions to the two-oscillator system).
    static Ensemble with_frequencies(const EnsembleParams& params, std::vector<double> freqs);

    const EnsembleParams& params() const { return params_; }
    const std::vector<double>& frequencies() const { return freqs_; }

    /// Phases evenly spaced in [0, 2 pi), velocities zero, couplings one.
    EnsembleState initial_state() const;

    /// Optimized derivative: per-oscillator sin/cos precomputed, pairwise
    /// terms from angle-difference identities, rows parallelized with OpenMP
    /// for large n. Deterministic for any thread count.
    void derivative(double t, std::span<const double> y, std::span<double> dy) const;

    /// Naive serial evaluation straight from the definition; reference the
    /// optimized kernel is tested against.
    void derivative_reference(double t, std::span<const double> y, std::span<double> dy) const;

    ode::VectorField as_vector_field(bool use_reference = false) const;

private:
    EnsembleParams params_;
    std::vector<double> freqs_;
};

struct OrderParameterSeries {
    std::vector<double> times;
    std::vector<double> r2;
};

struct SimulateOptions {
    double horizon = 100.0;
    double sample_interval = 0.1;
    ode::Method method = ode::Method::Rk45Adaptive;
    double step = 0.01; ///< fixed step (reproducibility mode) or initial step
    double abs_tol = 1e-8;
    double rel_tol = 1e-8;
    /// Record phases and velocities at every sample (needed for cluster
    /// diagnostics and state snapshots).
    bool record_states = false;
    /// Also keep the coupling triangle per sample (memory heavy).
    bool record_coupling = false;
    int order_q = 2;
};

struct SimulationOutput {
    OrderParameterSeries series;
    EnsembleState final_state;
    std::vector<double> sample_times;              ///< when record_states
    std::vector<std::vector<double>> phase_samples;
    std::vector<std::vector<double>> velocity_samples;
    std::vector<std::vector<double>> coupling_samples;
};

SimulationOutput simulate(const Ensemble& ens, const SimulateOptions& opts);

struct Cluster {
    std::vector<int> members;
    double mean_velocity = 0.0;
};

/// Single-linkage grouping of oscillators by velocity: sorted velocities are
/// split wherever a gap exceeds `velocity_tol`. Clusters come back largest
/// first. Pass time-averaged velocities for drift diagnostics.
std::vector<Cluster> detect_clusters(std::span<const double> velocities, double velocity_tol);

/// Per-oscillator mean velocity over the trailing `window` of a recorded run.
std::vector<double> windowed_mean_velocities(const SimulationOutput& out, double window);

} // namespace kuramoto::ensemble

#endif
