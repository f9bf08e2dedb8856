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

#include "kuramoto/orbit_approx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "kuramoto/csv.hpp"
#include "kuramoto/cubic.hpp"
#include "kuramoto/rng.hpp"

namespace kuramoto::orbit {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

void require_unit_mass(const pairsys::PairParams& p) {
    if (p.mass != 1.0)
        throw std::invalid_argument("orbit approximation is derived for mass = 1 only");
}
} // namespace

double solve_zeta(const pairsys::PairParams& p) {
    p.validate();
    require_unit_mass(p);
    const CubicRoots roots = solve_cubic(2.0, -2.0 * p.omega, p.alpha + 2.0, -2.0 * p.omega);
    if (roots.n_real != 1)
        throw std::runtime_error(
            "solve_zeta: rotation-rate cubic has multiple real roots; refusing to pick one");
    return roots.roots[0].real();
}

PeriodicApproximation make_approximation(const pairsys::PairParams& p, double phi0) {
    PeriodicApproximation appx;
    appx.zeta = solve_zeta(p);
    const double z = appx.zeta;
    const double z2p1 = z * z + 1.0;
    const double denom2 = 2.0 * z2p1 * (4.0 * z * z + 1.0);
    appx.a = p.alpha / z2p1;
    appx.b = p.alpha * z / z2p1;
    appx.c = 3.0 * z * p.alpha / denom2;
    appx.d = (2.0 * z * z - 1.0) * p.alpha / denom2;
    appx.phi0 = phi0;
    return appx;
}

pairsys::PairState approx_state(const PeriodicApproximation& appx, double t) {
    const double lift = appx.zeta * t + appx.phi0;
    // trig on the principal value: identical formulas, no large-argument loss
    const double phi = pairsys::principal_phase(lift);
    const double gamma = appx.zeta + appx.c * std::cos(2.0 * phi) + appx.d * std::sin(2.0 * phi);
    const double k = appx.a * std::cos(phi) + appx.b * std::sin(phi);
    pairsys::PairState s = pairsys::make_state(lift, gamma, k);
    return s;
}

namespace {

struct SampledRun {
    PeriodicApproximation appx;
    ode::Trajectory traj;
    std::size_t first_post_transient = 0;
};

SampledRun simulate_for_comparison(const pairsys::PairParams& p, const ApproxErrorConfig& cfg) {
    p.validate();
    require_unit_mass(p);
    if (!(p.alpha < 2.0 * p.omega))
        throw std::domain_error("approximation_error: requires alpha < 2 omega (rotating regime)");
    if (!(cfg.transient >= 0.0) || !(cfg.horizon > cfg.transient))
        throw std::invalid_argument("approximation_error: need horizon > transient >= 0");

    SampledRun run;
    run.appx = make_approximation(p);

    Rng rng(cfg.seed);
    const std::array<double, 3> y0 = {rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
                                      rng.uniform(-kPi, kPi)};
    ode::IntegratorConfig icfg;
    icfg.horizon = cfg.horizon;
    icfg.abs_tol = cfg.abs_tol;
    icfg.rel_tol = cfg.rel_tol;
    icfg.max_step = 0.05; // dense sampling so every phase bin is visited
    run.traj = integrate(pairsys::as_vector_field(p), y0, icfg);

    // A rotating trajectory never settles; a vanishing field means we are
    // outside the regime this comparison is meant for.
    const auto last = run.traj.back();
    const auto f = pairsys::vector_field(pairsys::make_state(last[0], last[1], last[2]), p);
    const double fmax = std::max({std::abs(f[0]), std::abs(f[1]), std::abs(f[2])});
    if (fmax < 1e-8)
        throw std::runtime_error("approximation_error: trajectory converged to an equilibrium");

    std::size_t i = 0;
    while (i < run.traj.size() && run.traj.times[i] < cfg.transient) ++i;
    run.first_post_transient = i;
    return run;
}

} // namespace

ApproximationError phase_binned_distance(std::span<const pairsys::PairState> samples,
                                         const PeriodicApproximation& appx, int bins) {
    if (bins < 1) throw std::invalid_argument("phase_binned_distance: bins must be >= 1");
    if (samples.empty()) throw std::invalid_argument("phase_binned_distance: no samples");

    std::vector<double> bin_sum(static_cast<std::size_t>(bins), 0.0);
    std::vector<long> bin_count(static_cast<std::size_t>(bins), 0);
    double sup = 0.0;
    double kmin = std::numeric_limits<double>::infinity();
    double kmax = -kmin;

    for (const auto& s : samples) {
        const double gamma_a =
            appx.zeta + appx.c * std::cos(2.0 * s.phi) + appx.d * std::sin(2.0 * s.phi);
        const double k_a = appx.a * std::cos(s.phi) + appx.b * std::sin(s.phi);
        const double dist = std::hypot(s.gamma - gamma_a, s.k - k_a);

        int bin = static_cast<int>((s.phi + kPi) / (2.0 * kPi) * bins);
        bin = std::clamp(bin, 0, bins - 1);
        bin_sum[static_cast<std::size_t>(bin)] += dist * dist;
        bin_count[static_cast<std::size_t>(bin)] += 1;

        sup = std::max(sup, dist);
        kmin = std::min(kmin, s.k);
        kmax = std::max(kmax, s.k);
    }

    // Mean square distance per phase bin, then rms over occupied bins, so the
    // metric weights phases evenly rather than by time spent.
    double acc = 0.0;
    int occupied = 0;
    for (int b = 0; b < bins; ++b) {
        if (bin_count[static_cast<std::size_t>(b)] == 0) continue;
        acc += bin_sum[static_cast<std::size_t>(b)] /
               static_cast<double>(bin_count[static_cast<std::size_t>(b)]);
        ++occupied;
    }

    ApproximationError err;
    err.rms = std::sqrt(acc / occupied);
    err.sup = sup;
    err.k_amplitude = 0.5 * (kmax - kmin);
    return err;
}

ApproximationError approximation_error(const pairsys::PairParams& p,
                                       const ApproxErrorConfig& cfg) {
    const SampledRun run = simulate_for_comparison(p, cfg);
    std::vector<pairsys::PairState> samples;
    samples.reserve(run.traj.size() - run.first_post_transient);
    for (std::size_t i = run.first_post_transient; i < run.traj.size(); ++i) {
        const auto s = run.traj.state(i);
        samples.push_back(pairsys::make_state(s[0], s[1], s[2]));
    }
    return phase_binned_distance(samples, run.appx, cfg.bins);
}

void write_overlay_csv(const pairsys::PairParams& p, const ApproxErrorConfig& cfg,
                       std::ostream& os) {
    const SampledRun run = simulate_for_comparison(p, cfg);
    os << "phi,gamma_sim,k_sim,gamma_approx,k_approx\n";
    for (std::size_t i = run.first_post_transient; i < run.traj.size(); ++i) {
        const auto s = run.traj.state(i);
        const double phi = pairsys::principal_phase(s[0]);
        const double gamma_a =
            run.appx.zeta + run.appx.c * std::cos(2.0 * phi) + run.appx.d * std::sin(2.0 * phi);
        const double k_a = run.appx.a * std::cos(phi) + run.appx.b * std::sin(phi);
        io::put_double(os, phi);
        os.put(',');
        io::put_double(os, s[1]);
        os.put(',');
        io::put_double(os, s[2]);
        os.put(',');
        io::put_double(os, gamma_a);
        os.put(',');
        io::put_double(os, k_a);
        os.put('\n');
    }
}

} // namespace kuramoto::orbit
