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

#include "kuramoto/pair_system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kuramoto/cubic.hpp"

namespace kuramoto::pairsys {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;
} // namespace

void RawPairParams::validate() const {
    if (!(mass > 0.0)) throw std::invalid_argument("RawPairParams: mass must be > 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("RawPairParams: alpha must be > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("RawPairParams: beta must be > 0");
    if (!std::isfinite(omega1) || !std::isfinite(omega2))
        throw std::invalid_argument("RawPairParams: frequencies must be finite");
}

void PairParams::validate() const {
    if (!(mass > 0.0)) throw std::invalid_argument("PairParams: mass must be > 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("PairParams: alpha must be > 0");
    if (!(omega >= 0.0)) throw std::invalid_argument("PairParams: omega must be >= 0");
}

PairParams rescale(const RawPairParams& raw) {
    raw.validate();
    PairParams p;
    p.mass = raw.beta * raw.mass;
    p.omega = std::abs(raw.omega1 - raw.omega2) / raw.beta; // omega >= 0 by sign symmetry
    p.alpha = raw.alpha / raw.beta;
    return p;
}

double principal_phase(double phi_lift) {
    double r = std::remainder(phi_lift, kTwoPi); // (-pi, pi]
    if (r == kPi) r = -kPi;
    return r;
}

PairState make_state(double phi_lift, double gamma, double k) {
    return {principal_phase(phi_lift), phi_lift, gamma, k};
}

std::array<double, 3> vector_field(const PairState& s, const PairParams& p) {
    return {s.gamma, (-s.gamma + p.omega - s.k * std::sin(s.phi)) / p.mass,
            p.alpha * std::cos(s.phi) - s.k};
}

ode::VectorField as_vector_field(const PairParams& p) {
    p.validate();
    ode::VectorField f;
    f.dimension = 3;
    f.evaluate = [p](double, std::span<const double> y, std::span<double> dy) {
        const double sphi = std::sin(y[0]); // sin/cos are 2*pi-periodic: lift is fine
        const double cphi = std::cos(y[0]);
        dy[0] = y[1];
        dy[1] = (-y[1] + p.omega - y[2] * sphi) / p.mass;
        dy[2] = p.alpha * cphi - y[2];
    };
    return f;
}

std::array<std::array<double, 3>, 3> jacobian(const PairState& s, const PairParams& p) {
    const double sphi = std::sin(s.phi);
    const double cphi = std::cos(s.phi);
    return {{{0.0, 1.0, 0.0},
             {-s.k * cphi / p.mass, -1.0 / p.mass, -sphi / p.mass},
             {-p.alpha * sphi, 0.0, -1.0}}};
}

double divergence(const PairParams& p) {
    p.validate();
    return -1.0 / p.mass - 1.0;
}

EquilibriumPair pair_of(EquilibriumLabel label) {
    return (label == EquilibriumLabel::P1 || label == EquilibriumLabel::P3)
               ? EquilibriumPair::P1P3
               : EquilibriumPair::P2P4;
}

const char* to_string(EquilibriumLabel label) {
    switch (label) {
    case EquilibriumLabel::P1: return "P1";
    case EquilibriumLabel::P2: return "P2";
    case EquilibriumLabel::P3: return "P3";
    case EquilibriumLabel::P4: return "P4";
    }
    return "?";
}

std::vector<Equilibrium> equilibria(const PairParams& p) {
    p.validate();
    std::vector<Equilibrium> out;
    if (p.alpha < 2.0 * p.omega) return out; // sin(2 phi*) = 2 omega / alpha unsolvable

    const bool degenerate = (p.alpha == 2.0 * p.omega);
    const double ratio = std::min(2.0 * p.omega / p.alpha, 1.0);
    const double theta = 0.5 * std::asin(ratio);
    const double c = p.alpha * std::cos(theta);
    const double s = p.alpha * std::sin(theta);

    auto mk = [&](EquilibriumLabel label, double phi, double k) {
        Equilibrium e;
        e.label = label;
        e.state = make_state(phi, 0.0, k);
        e.degenerate = degenerate;
        return e;
    };
    out.push_back(mk(EquilibriumLabel::P1, theta, c));
    out.push_back(mk(EquilibriumLabel::P2, kPi / 2.0 - theta, s));
    out.push_back(mk(EquilibriumLabel::P3, -kPi + theta, -c));
    out.push_back(mk(EquilibriumLabel::P4, -kPi / 2.0 - theta, -s));
    return out;
}

UVPoint uv(const PairParams& p) {
    p.validate();
    if (p.alpha < 2.0 * p.omega)
        throw std::domain_error("uv: requires alpha >= 2 omega (equilibria do not exist)");
    const double disc = std::max(p.alpha * p.alpha - 4.0 * p.omega * p.omega, 0.0);
    const double root = std::sqrt(disc);
    return {p.alpha + root, p.alpha - root};
}

PairParams params_from_uv(const UVPoint& pt, double mass) {
    if (!(pt.u >= pt.v) || !(pt.v >= 0.0))
        throw std::invalid_argument("params_from_uv: requires u >= v >= 0");
    PairParams p;
    p.mass = mass;
    p.alpha = 0.5 * (pt.u + pt.v);
    p.omega = 0.5 * std::sqrt(pt.u * pt.v);
    return p;
}

std::array<double, 4> characteristic_cubic(EquilibriumPair pair, const UVPoint& pt, double mass) {
    const double a = pt.u, b = pt.v;
    if (pair == EquilibriumPair::P1P3)
        return {2.0 * mass, 2.0 * (mass + 1.0), a + 2.0, a - b};
    return {2.0 * mass, 2.0 * (mass + 1.0), b + 2.0, b - a};
}

std::array<double, 4> characteristic_cubic(EquilibriumLabel label, const PairParams& p) {
    return characteristic_cubic(pair_of(label), uv(p), p.mass);
}

const char* to_string(StabilityClass cls) {
    switch (cls) {
    case StabilityClass::AllRealNegative: return "all-real-negative";
    case StabilityClass::ComplexPairSink: return "complex-pair-sink";
    case StabilityClass::SaddleAllReal: return "saddle-all-real";
    case StabilityClass::SaddleComplex: return "saddle-complex";
    case StabilityClass::SaddleNodeDegenerate: return "saddle-node-degenerate";
    }
    return "?";
}

StabilityReport classify(EquilibriumLabel label, const PairParams& p) {
    p.validate();
    if (p.alpha < 2.0 * p.omega)
        throw std::domain_error("classify: requires alpha >= 2 omega");

    StabilityReport rep;
    const auto coeff = characteristic_cubic(label, p);
    const double disc = cubic_discriminant(coeff[0], coeff[1], coeff[2], coeff[3]);
    rep.in_gamma_region = disc >= 0.0;

    if (p.alpha == 2.0 * p.omega) {
        // Saddle-node merger: lambda = 0 plus the roots of
        // m x^2 + (m+1) x + 1 + alpha/2.
        const double m = p.mass;
        const double rad = (m - 1.0) * (m - 1.0) - 2.0 * m * p.alpha;
        rep.eigenvalues[0] = 0.0;
        if (rad >= 0.0) {
            const double r = std::sqrt(rad);
            rep.eigenvalues[1] = (-(m + 1.0) + r) / (2.0 * m);
            rep.eigenvalues[2] = (-(m + 1.0) - r) / (2.0 * m);
        } else {
            const double r = std::sqrt(-rad);
            rep.eigenvalues[1] = {-(m + 1.0) / (2.0 * m), r / (2.0 * m)};
            rep.eigenvalues[2] = {-(m + 1.0) / (2.0 * m), -r / (2.0 * m)};
        }
        rep.cls = StabilityClass::SaddleNodeDegenerate;
        return rep;
    }

    const CubicRoots roots = solve_cubic(coeff[0], coeff[1], coeff[2], coeff[3]);
    rep.eigenvalues = roots.roots;
    if (pair_of(label) == EquilibriumPair::P1P3)
        rep.cls = roots.n_real == 3 ? StabilityClass::AllRealNegative
                                    : StabilityClass::ComplexPairSink;
    else
        rep.cls = roots.n_real == 3 ? StabilityClass::SaddleAllReal
                                    : StabilityClass::SaddleComplex;
    return rep;
}

double gamma_region_bound(double mass) {
    if (!(mass > 0.0)) throw std::invalid_argument("gamma_region_bound: mass must be > 0");
    return 2.0 * (mass * mass - mass + 1.0) / (3.0 * mass);
}

BoundaryBranches gamma_boundary(double mass, double free_var) {
    if (!(mass > 0.0)) throw std::invalid_argument("gamma_boundary: mass must be > 0");
    const double m = mass;
    const double s = 4.0 * (m + 1.0) * (m + 1.0) - 6.0 * m * (free_var + 2.0);
    if (s < 0.0)
        throw std::domain_error("gamma_boundary: no real double root beyond 2(m^2-m+1)/(3m)");
    const double rs = std::sqrt(s);
    const double denom = 54.0 * m * m;
    const double d_plus = (rs + m + 1.0) * (rs - 2.0 * (m + 1.0)) * (rs - 2.0 * (m + 1.0)) / denom;
    const double d_minus = (-rs + m + 1.0) * (rs + 2.0 * (m + 1.0)) * (rs + 2.0 * (m + 1.0)) / denom;
    const double a = free_var - d_plus;
    const double b = free_var - d_minus;
    return {std::min(a, b), std::max(a, b)};
}

double gamma_discriminant(EquilibriumPair pair, const UVPoint& pt, double mass) {
    const auto c = characteristic_cubic(pair, pt, mass);
    return cubic_discriminant(c[0], c[1], c[2], c[3]);
}

bool in_gamma_region(EquilibriumPair pair, const UVPoint& pt, double mass) {
    return gamma_discriminant(pair, pt, mass) >= 0.0;
}

EnergyAudit energy(const PairState& s, const PairParams& p) {
    const double cphi = std::cos(s.phi);
    EnergyAudit audit;
    audit.energy = 0.5 * p.alpha * p.mass * s.gamma * s.gamma - p.alpha * p.omega * s.phi -
                   p.alpha * s.k * cphi + 0.5 * s.k * s.k;
    const double mismatch = s.k - p.alpha * cphi;
    audit.dissipation_rate = -(p.alpha * s.gamma * s.gamma + mismatch * mismatch);
    return audit;
}

BoundednessAudit boundedness_audit(const ode::Trajectory& traj, const PairParams& p,
                                   double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("boundedness_audit: epsilon must be > 0");
    BoundednessAudit audit;
    audit.epsilon = epsilon;
    audit.k_bound = p.alpha + epsilon;
    audit.gamma_bound = p.omega + p.alpha + epsilon;

    const std::size_t n = traj.size();
    // Scan backwards for the first index from which both bounds hold to the end.
    std::size_t first_ok = n;
    for (std::size_t i = n; i-- > 0;) {
        const auto s = traj.state(i);
        if (std::abs(s[2]) <= audit.k_bound && std::abs(s[1]) <= audit.gamma_bound)
            first_ok = i;
        else
            break;
    }
    if (first_ok < n) {
        audit.satisfied = true;
        audit.t_epsilon = traj.times[first_ok];
    }
    return audit;
}

} // namespace kuramoto::pairsys
