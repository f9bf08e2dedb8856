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

#ifndef KURAMOTO_ORBIT_APPROX_HPP
#define KURAMOTO_ORBIT_APPROX_HPP

#include <cstdint>
#include <ostream>

#include "kuramoto/pair_system.hpp"

namespace kuramoto::orbit {

// ---------------------------------------------------------------------------
// Harmonic-balance approximation of the rotating solution for m = 1 in the
// no-equilibrium regime (alpha < 2 omega): phases rotate at a constant rate,
//
//   phi(t)   = zeta t + phi0
//   gamma(t) = zeta + c cos(2 phi) + d sin(2 phi)
//   k(t)     = a cos(phi) + b sin(phi)
//
// where zeta is the unique real root of 2 x^3 - 2 omega x^2 + (alpha+2) x
// - 2 omega and the coefficients follow from matching cos/sin terms:
//   a = alpha/(zeta^2+1),                  b = alpha zeta/(zeta^2+1),
//   c = 3 zeta alpha/(2(zeta^2+1)(4 zeta^2+1)),
//   d = (2 zeta^2 - 1) alpha/(2(zeta^2+1)(4 zeta^2+1)).
// ---------------------------------------------------------------------------

struct PeriodicApproximation {
    double zeta = 0.0;
    double a = 0.0, b = 0.0; ///< k coefficients
    double c = 0.0, d = 0.0; ///< gamma coefficients
    double phi0 = 0.0;
};

/// Unique real root of the rotation-rate cubic. Requires mass == 1 (the
/// coefficient formulas are specific to it). Throws std::runtime_error if the
/// cubic unexpectedly has more than one real root.
double solve_zeta(const pairsys::PairParams& p);

PeriodicApproximation make_approximation(const pairsys::PairParams& p, double phi0 = 0.0);

pairsys::PairState approx_state(const PeriodicApproximation& approx, double t);

/// Distance between the approximation and a simulated post-transient
/// trajectory, measured in the (gamma, k) plane at matching phases.
struct ApproximationError {
    double rms = 0.0;
    double sup = 0.0;
    /// Half peak-to-peak excursion of the simulated k over the post-transient
    /// window; the natural scale for relative error.
    double k_amplitude = 0.0;
};

struct ApproxErrorConfig {
    double horizon = 300.0;
    double transient = 100.0; ///< discarded before measuring
    int bins = 256;           ///< phase bins over [-pi, pi)
    std::uint64_t seed = 12345;
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
};

/// The bare metric: bins the given samples by principal phase and measures
/// rms / sup distance in (gamma, k) to the approximation at the same phases.
/// Feeding states generated by approx_state returns exact zeros.
ApproximationError phase_binned_distance(std::span<const pairsys::PairState> samples,
                                         const PeriodicApproximation& appx, int bins = 256);

/// Simulates one trajectory from a random start, discards the transient, bins
/// samples by principal phase and measures rms / sup distance to the
/// approximation. Requires alpha < 2 omega and mass == 1; throws
/// std::runtime_error if the trajectory settles to a fixed point.
ApproximationError approximation_error(const pairsys::PairParams& p,
                                       const ApproxErrorConfig& cfg = {});

/// Header: phi,gamma_sim,k_sim,gamma_approx,k_approx. One row per
/// post-transient sample, for overlay plots.
void write_overlay_csv(const pairsys::PairParams& p, const ApproxErrorConfig& cfg,
                       std::ostream& os);

} // namespace kuramoto::orbit

#endif
