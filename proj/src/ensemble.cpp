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

#include "kuramoto/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "kuramoto/rng.hpp"

namespace kuramoto::ensemble {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
} // namespace

void EnsembleParams::validate() const {
    if (n < 2) throw std::invalid_argument("EnsembleParams: need at least two oscillators");
    if (!(mass > 0.0)) throw std::invalid_argument("EnsembleParams: mass must be > 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("EnsembleParams: alpha must be > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("EnsembleParams: beta must be > 0");
    if (!(sigma2 >= 0.0)) throw std::invalid_argument("EnsembleParams: sigma2 must be >= 0");
}

std::size_t pair_index(int n, int i, int j) {
    // i < j; pairs of row i start at i*n - i(i+1)/2 - i.
    return static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i + 1) / 2 +
           static_cast<std::size_t>(j - i - 1);
}

std::size_t flat_dimension(int n) {
    return 2ul * n + static_cast<std::size_t>(n) * (n - 1) / 2;
}

double EnsembleState::k(int i, int j) const {
    if (i == j) return 0.0; // diagonal is irrelevant
    if (i > j) std::swap(i, j);
    return coupling[pair_index(n, i, j)];
}

std::vector<double> EnsembleState::flatten() const {
    std::vector<double> y;
    y.reserve(flat_dimension(n));
    y.insert(y.end(), phases.begin(), phases.end());
    y.insert(y.end(), velocities.begin(), velocities.end());
    y.insert(y.end(), coupling.begin(), coupling.end());
    return y;
}

EnsembleState EnsembleState::unflatten(int n, std::span<const double> y) {
    if (y.size() != flat_dimension(n))
        throw std::invalid_argument("EnsembleState: flat vector has wrong dimension");
    EnsembleState s;
    s.n = n;
    s.phases.assign(y.begin(), y.begin() + n);
    s.velocities.assign(y.begin() + n, y.begin() + 2 * n);
    s.coupling.assign(y.begin() + 2 * n, y.end());
    return s;
}

double order_parameter(std::span<const double> phases, int q) {
    if (phases.empty()) throw std::invalid_argument("order_parameter: empty phase sequence");
    double re = 0.0, im = 0.0;
    for (double phi : phases) {
        re += std::cos(q * phi);
        im += std::sin(q * phi);
    }
    const double n = static_cast<double>(phases.size());
    return std::hypot(re / n, im / n);
}

Ensemble Ensemble::init(const EnsembleParams& params) {
    params.validate();
    Ensemble ens;
    ens.params_ = params;
    ens.freqs_.resize(static_cast<std::size_t>(params.n));
    Rng rng(params.seed);
    const double sigma = std::sqrt(params.sigma2);
    for (auto& w : ens.freqs_) w = sigma * rng.normal();
    return ens;
}

Ensemble Ensemble::with_frequencies(const EnsembleParams& params, std::vector<double> freqs) {
    params.validate();
    if (freqs.size() != static_cast<std::size_t>(params.n))
        throw std::invalid_argument("Ensemble: frequency count does not match n");
    Ensemble ens;
    ens.params_ = params;
    ens.freqs_ = std::move(freqs);
    return ens;
}

EnsembleState Ensemble::initial_state() const {
    EnsembleState s;
    s.n = params_.n;
    s.phases.resize(static_cast<std::size_t>(params_.n));
    for (int i = 0; i < params_.n; ++i) s.phases[static_cast<std::size_t>(i)] = kTwoPi * i / params_.n;
    s.velocities.assign(static_cast<std::size_t>(params_.n), 0.0);
    s.coupling.assign(static_cast<std::size_t>(params_.n) * (params_.n - 1) / 2, 1.0);
    return s;
}

void Ensemble::derivative(double, std::span<const double> y, std::span<double> dy) const {
    const int n = params_.n;
    const double inv_n = 1.0 / n;
    const double inv_m = 1.0 / params_.mass;
    const double* phi = y.data();
    const double* vel = y.data() + n;
    const double* kk = y.data() + 2 * n;
    double* dphi = dy.data();
    double* dvel = dy.data() + n;
    double* dk = dy.data() + 2 * n;

    // sin/cos per oscillator once; pairwise terms via angle differences.
    // Plain locals: the parallel loops below read them as shared state.
    std::vector<double> sn(static_cast<std::size_t>(n)), cs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        sn[static_cast<std::size_t>(i)] = std::sin(phi[i]);
        cs[static_cast<std::size_t>(i)] = std::cos(phi[i]);
    }

    // Row sums: each i owns its accumulator, iteration order over j is fixed,
    // so results do not depend on the thread count.
#pragma omp parallel for schedule(static) if (n >= 128)
    for (int i = 0; i < n; ++i) {
        const double si = sn[static_cast<std::size_t>(i)];
        const double ci = cs[static_cast<std::size_t>(i)];
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const std::size_t idx = i < j ? pair_index(n, i, j) : pair_index(n, j, i);
            // sin(phi_j - phi_i)
            acc += kk[idx] * (sn[static_cast<std::size_t>(j)] * ci - cs[static_cast<std::size_t>(j)] * si);
        }
        dphi[i] = vel[i];
        dvel[i] = (-vel[i] + freqs_[static_cast<std::size_t>(i)] + inv_n * acc) * inv_m;
    }

#pragma omp parallel for schedule(static) if (n >= 128)
    for (int i = 0; i < n - 1; ++i) {
        const double si = sn[static_cast<std::size_t>(i)];
        const double ci = cs[static_cast<std::size_t>(i)];
        std::size_t idx = pair_index(n, i, i + 1);
        for (int j = i + 1; j < n; ++j, ++idx) {
            // cos(phi_j - phi_i)
            const double c = cs[static_cast<std::size_t>(j)] * ci + sn[static_cast<std::size_t>(j)] * si;
            dk[idx] = params_.beta * (params_.alpha * c - kk[idx]);
        }
    }
}

void Ensemble::derivative_reference(double, std::span<const double> y,
                                    std::span<double> dy) const {
    const int n = params_.n;
    const double* phi = y.data();
    const double* vel = y.data() + n;
    const double* kk = y.data() + 2 * n;
    double* dphi = dy.data();
    double* dvel = dy.data() + n;
    double* dk = dy.data() + 2 * n;

    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const std::size_t idx = i < j ? pair_index(n, i, j) : pair_index(n, j, i);
            acc += kk[idx] * std::sin(phi[j] - phi[i]);
        }
        dphi[i] = vel[i];
        dvel[i] = (-vel[i] + freqs_[static_cast<std::size_t>(i)] + acc / n) / params_.mass;
    }
    for (int i = 0; i < n - 1; ++i)
        for (int j = i + 1; j < n; ++j) {
            const std::size_t idx = pair_index(n, i, j);
            dk[idx] = params_.beta * (params_.alpha * std::cos(phi[j] - phi[i]) - kk[idx]);
        }
}

ode::VectorField Ensemble::as_vector_field(bool use_reference) const {
    ode::VectorField f;
    f.dimension = static_cast<int>(flat_dimension(params_.n));
    if (use_reference)
        f.evaluate = [this](double t, std::span<const double> y, std::span<double> dy) {
            derivative_reference(t, y, dy);
        };
    else
        f.evaluate = [this](double t, std::span<const double> y, std::span<double> dy) {
            derivative(t, y, dy);
        };
    return f;
}

SimulationOutput simulate(const Ensemble& ens, const SimulateOptions& opts) {
    if (!(opts.horizon > 0.0)) throw std::invalid_argument("simulate: horizon must be > 0");
    if (!(opts.sample_interval > 0.0))
        throw std::invalid_argument("simulate: sample_interval must be > 0");

    ode::IntegratorConfig icfg;
    icfg.method = opts.method;
    icfg.horizon = opts.horizon;
    icfg.step = opts.step;
    icfg.abs_tol = opts.abs_tol;
    icfg.rel_tol = opts.rel_tol;
    icfg.sample_interval = opts.sample_interval;

    const auto y0 = ens.initial_state().flatten();
    const auto traj = integrate(ens.as_vector_field(), y0, icfg);

    const int n = ens.params().n;
    SimulationOutput out;
    out.series.times.reserve(traj.size());
    out.series.r2.reserve(traj.size());
    for (std::size_t s = 0; s < traj.size(); ++s) {
        const auto y = traj.state(s);
        out.series.times.push_back(traj.times[s]);
        out.series.r2.push_back(order_parameter(y.subspan(0, static_cast<std::size_t>(n)), opts.order_q));
        if (opts.record_states || opts.record_coupling) {
            out.sample_times.push_back(traj.times[s]);
            if (opts.record_states) {
                out.phase_samples.emplace_back(y.begin(), y.begin() + n);
                out.velocity_samples.emplace_back(y.begin() + n, y.begin() + 2 * n);
            }
            if (opts.record_coupling)
                out.coupling_samples.emplace_back(y.begin() + 2 * n, y.end());
        }
    }
    out.final_state = EnsembleState::unflatten(n, traj.back());
    return out;
}

std::vector<Cluster> detect_clusters(std::span<const double> velocities, double velocity_tol) {
    if (!(velocity_tol >= 0.0))
        throw std::invalid_argument("detect_clusters: velocity_tol must be >= 0");
    std::vector<Cluster> clusters;
    if (velocities.empty()) return clusters;

    std::vector<int> order(velocities.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return velocities[static_cast<std::size_t>(a)] < velocities[static_cast<std::size_t>(b)];
    });

    Cluster current;
    current.members.push_back(order[0]);
    for (std::size_t r = 1; r < order.size(); ++r) {
        const double prev = velocities[static_cast<std::size_t>(order[r - 1])];
        const double cur = velocities[static_cast<std::size_t>(order[r])];
        if (cur - prev > velocity_tol) {
            clusters.push_back(std::move(current));
            current = Cluster{};
        }
        current.members.push_back(order[r]);
    }
    clusters.push_back(std::move(current));

    for (auto& cl : clusters) {
        double sum = 0.0;
        for (int idx : cl.members) sum += velocities[static_cast<std::size_t>(idx)];
        cl.mean_velocity = sum / cl.members.size();
        std::sort(cl.members.begin(), cl.members.end());
    }
    std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
        return a.members.size() > b.members.size();
    });
    return clusters;
}

std::vector<double> windowed_mean_velocities(const SimulationOutput& out, double window) {
    if (out.velocity_samples.empty())
        throw std::invalid_argument("windowed_mean_velocities: run was not recorded with states");
    const double t_end = out.sample_times.back();
    std::size_t first = 0;
    while (first < out.sample_times.size() && out.sample_times[first] < t_end - window) ++first;
    if (first >= out.sample_times.size()) first = out.sample_times.size() - 1;

    const std::size_t n = out.velocity_samples.front().size();
    std::vector<double> mean(n, 0.0);
    std::size_t count = 0;
    for (std::size_t s = first; s < out.velocity_samples.size(); ++s, ++count)
        for (std::size_t i = 0; i < n; ++i) mean[i] += out.velocity_samples[s][i];
    for (auto& m : mean) m /= static_cast<double>(count);
    return mean;
}

} // namespace kuramoto::ensemble
