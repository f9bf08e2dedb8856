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

#ifndef KURAMOTO_PAIR_SYSTEM_HPP
#define KURAMOTO_PAIR_SYSTEM_HPP

#include <array>
#include <complex>
#include <vector>

#include "kuramoto/integrate.hpp"

namespace kuramoto::pairsys {

// ---------------------------------------------------------------------------
// The reduced system for two inertial oscillators with Hebbian coupling,
// after rescaling time by the learning rate:
//
//   dphi/dt   = gamma
//   dgamma/dt = (-gamma + omega - k sin(phi)) / m
//   dk/dt     = alpha cos(phi) - k
//
// phi is the phase difference, gamma its velocity, k the coupling strength.
// State vectors handed to the integrator are laid out as (phi_lift, gamma, k),
// where phi_lift is the unwrapped phase (the field is 2*pi-periodic in phi,
// so integrating the lift is exact and keeps revolution counts available).
// ---------------------------------------------------------------------------

/// Parameters before rescaling by the learning rate beta.
struct RawPairParams {
    double mass = 1.0;
    double omega1 = 0.0;
    double omega2 = 0.0;
    double alpha = 1.0;
    double beta = 1.0;
    void validate() const;
};

/// Rescaled parameters: mass m, intrinsic-frequency difference omega >= 0,
/// learning enhancement factor alpha.
struct PairParams {
    double mass = 1.0;
    double omega = 0.0;
    double alpha = 1.0;
    void validate() const;
};

/// (beta*m, |omega1 - omega2|/beta, alpha/beta)
PairParams rescale(const RawPairParams& raw);

/// Reduce an unwrapped phase to its principal value in [-pi, pi).
double principal_phase(double phi_lift);

struct PairState {
    double phi = 0.0;      ///< principal value in [-pi, pi)
    double phi_lift = 0.0; ///< unwrapped phase
    double gamma = 0.0;
    double k = 0.0;
};

/// Build a state from an unwrapped phase.
PairState make_state(double phi_lift, double gamma, double k);

/// (dphi, dgamma, dk) at a state.
std::array<double, 3> vector_field(const PairState& s, const PairParams& p);

/// The same field in integrator form on (phi_lift, gamma, k).
ode::VectorField as_vector_field(const PairParams& p);

/// Analytic Jacobian of the field at a state, rows in (phi, gamma, k) order.
std::array<std::array<double, 3>, 3> jacobian(const PairState& s, const PairParams& p);

/// Divergence of the flow, -1/m - 1 (state independent).
double divergence(const PairParams& p);

enum class EquilibriumLabel { P1, P2, P3, P4 };
enum class EquilibriumPair { P1P3, P2P4 };

EquilibriumPair pair_of(EquilibriumLabel label);
const char* to_string(EquilibriumLabel label);

struct Equilibrium {
    EquilibriumLabel label;
    PairState state;       ///< gamma = 0, k = alpha cos(phi)
    bool degenerate;       ///< true at alpha = 2 omega (P1=P2 and P3=P4 merge)
};

/// The fixed points of the reduced system. Empty iff alpha < 2 omega;
/// otherwise all four labels are returned (pairwise equal and flagged
/// degenerate when alpha = 2 omega).
std::vector<Equilibrium> equilibria(const PairParams& p);

/// u = alpha + sqrt(alpha^2 - 4 omega^2), v = alpha - sqrt(...).
/// Satisfies u + v = 2 alpha and u v = 4 omega^2.
struct UVPoint {
    double u = 0.0;
    double v = 0.0;
};

/// Throws std::domain_error when alpha < 2 omega (no equilibria).
UVPoint uv(const PairParams& p);

/// Parameters whose uv() image is the given point: alpha = (u+v)/2,
/// omega = sqrt(u v)/2. Requires u >= v >= 0.
PairParams params_from_uv(const UVPoint& pt, double mass);

/// Coefficients {c3, c2, c1, c0} of the characteristic cubic at an
/// equilibrium, normalized to a positive leading coefficient:
///   P1/P3: 2m x^3 + 2(m+1) x^2 + (u+2) x + (u-v)
///   P2/P4: 2m x^3 + 2(m+1) x^2 + (v+2) x + (v-u)
std::array<double, 4> characteristic_cubic(EquilibriumLabel label, const PairParams& p);
std::array<double, 4> characteristic_cubic(EquilibriumPair pair, const UVPoint& pt, double mass);

enum class StabilityClass {
    AllRealNegative,      ///< three negative real eigenvalues (P1/P3 inside Gamma1)
    ComplexPairSink,      ///< one negative real + conjugate pair, all stable
    SaddleAllReal,        ///< one positive and two negative real eigenvalues
    SaddleComplex,        ///< one positive real + stable conjugate pair
    SaddleNodeDegenerate, ///< zero eigenvalue at alpha = 2 omega
};

const char* to_string(StabilityClass cls);

struct StabilityReport {
    std::array<std::complex<double>, 3> eigenvalues;
    StabilityClass cls;
    bool in_gamma_region; ///< characteristic cubic has three real roots
};

/// Eigenvalues from the closed-form characteristic cubic and the class they
/// imply. At alpha = 2 omega the zero eigenvalue and the quadratic-factor
/// pair (-(m+1) +- sqrt((m-1)^2 - 2 m alpha)) / (2m) are returned.
/// Throws std::domain_error when alpha < 2 omega.
StabilityReport classify(EquilibriumLabel label, const PairParams& p);

/// Upper end 2(m^2 - m + 1)/(3m) of the free variable for which the
/// double-root boundary curves exist.
double gamma_region_bound(double mass);

/// The two boundary-curve values of the dependent variable at `free_var`:
/// dep = free_var - (m+1 +- sqrt(s)) (sqrt(s) -+ 2(m+1))^2 / (54 m^2) with
/// s = 4(m+1)^2 - 6m(free_var + 2). For the P1/P3 region the free variable
/// is u and the values are v; for P2/P4 the roles swap. Throws
/// std::domain_error when s < 0.
struct BoundaryBranches {
    double lo = 0.0;
    double hi = 0.0;
};
BoundaryBranches gamma_boundary(double mass, double free_var);

/// Discriminant of the characteristic cubic for the given pair at (u, v).
double gamma_discriminant(EquilibriumPair pair, const UVPoint& pt, double mass);

/// True iff the characteristic cubic for the pair has three real roots
/// (discriminant >= 0; exact zeros count as inside).
bool in_gamma_region(EquilibriumPair pair, const UVPoint& pt, double mass);

/// Energy E = alpha m gamma^2 / 2 - alpha omega phi - alpha k cos(phi) + k^2/2
/// evaluated with the principal phase, and its analytic rate along the flow,
/// -(alpha gamma^2 + (k - alpha cos(phi))^2) <= 0.
struct EnergyAudit {
    double energy = 0.0;
    double dissipation_rate = 0.0;
};
EnergyAudit energy(const PairState& s, const PairParams& p);

/// Earliest sample time after which |k| <= alpha + epsilon and
/// |gamma| <= omega + alpha + epsilon hold through the end of the trajectory.
struct BoundednessAudit {
    double epsilon = 0.0;
    double t_epsilon = 0.0; ///< meaningful only when satisfied
    double k_bound = 0.0;
    double gamma_bound = 0.0;
    bool satisfied = false;
};
BoundednessAudit boundedness_audit(const ode::Trajectory& traj, const PairParams& p,
                                   double epsilon);

} // namespace kuramoto::pairsys

#endif
