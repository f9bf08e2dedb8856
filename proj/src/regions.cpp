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

#include "kuramoto/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "kuramoto/csv.hpp"
#include "kuramoto/rng.hpp"

namespace kuramoto::regions {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
} // namespace

const char* to_string(RegionLabel label) {
    switch (label) {
    case RegionLabel::Omega1: return "Omega1";
    case RegionLabel::Omega2: return "Omega2";
    case RegionLabel::Omega3: return "Omega3";
    case RegionLabel::Unclassified: return "unclassified";
    }
    return "?";
}

void SweepConfig::validate() const {
    if (!(alpha_max > alpha_min) || !(omega_max > omega_min))
        throw std::invalid_argument("SweepConfig: empty parameter ranges");
    if (!(omega_min >= 0.0)) throw std::invalid_argument("SweepConfig: omega must be >= 0");
    if (n_alpha < 2 || n_omega < 2) throw std::invalid_argument("SweepConfig: grid dims must be >= 2");
    if (n_initial_conditions < 1)
        throw std::invalid_argument("SweepConfig: need at least one initial condition");
    if (!(horizon > 0.0)) throw std::invalid_argument("SweepConfig: horizon must be > 0");
    if (crossing_threshold < 1)
        throw std::invalid_argument("SweepConfig: crossing_threshold must be >= 1");
    if (!(mass > 0.0)) throw std::invalid_argument("SweepConfig: mass must be > 0");
    if (quiescent_intervals < 1)
        throw std::invalid_argument("SweepConfig: quiescent_intervals must be >= 1");
}

double SweepConfig::alpha_at(int i) const {
    return alpha_min + (alpha_max - alpha_min) * i / (n_alpha - 1);
}

double SweepConfig::omega_at(int j) const {
    return omega_min + (omega_max - omega_min) * j / n_omega;
}

namespace {

int count_section_crossings(const ode::Trajectory& traj, double refine_tol) {
    // sin(phi/2) vanishes exactly at the 2*pi multiples of the lifted phase
    // and changes sign across each, so ordinary sign-change detection counts
    // section passages. The integrator's max_step cap keeps |delta phi| < pi
    // per sample, so no passage can hide inside one interval.
    const auto events = ode::detect_crossings(
        traj, [](std::span<const double> s) { return std::sin(0.5 * s[0]); }, refine_tol);
    return static_cast<int>(events.size());
}

} // namespace

PointClassification classify_point(double alpha, double omega, const SweepConfig& cfg,
                                   std::uint64_t cell_id) {
    cfg.validate();
    PointClassification out;

    if (alpha < 2.0 * omega) {
        // No equilibria exist; nothing to simulate.
        out.label = RegionLabel::Omega1;
        out.mean_crossings = kNan;
        return out;
    }

    pairsys::PairParams params{cfg.mass, omega, alpha};
    const auto field = pairsys::as_vector_field(params);

    ode::IntegratorConfig icfg;
    icfg.horizon = cfg.horizon;
    icfg.abs_tol = cfg.abs_tol;
    icfg.rel_tol = cfg.rel_tol;
    icfg.max_step = cfg.max_step;

    out.counts.reserve(static_cast<std::size_t>(cfg.n_initial_conditions));
    for (int ic = 0; ic < cfg.n_initial_conditions; ++ic) {
        Rng rng = Rng::substream(cfg.seed, cell_id * 0x10000ULL + static_cast<std::uint64_t>(ic));
        const std::array<double, 3> y0 = {0.0, rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi)};

        int quiet = 0;
        auto stop = [&](double, std::span<const double> y) {
            const double sphi = std::sin(y[0]);
            const double f0 = y[1];
            const double f1 = (-y[1] + params.omega - y[2] * sphi) / params.mass;
            const double f2 = params.alpha * std::cos(y[0]) - y[2];
            const double fmax = std::max({std::abs(f0), std::abs(f1), std::abs(f2)});
            quiet = fmax < cfg.quiescent_tol ? quiet + 1 : 0;
            return quiet >= cfg.quiescent_intervals;
        };

        const auto traj = integrate(field, y0, icfg, stop);
        out.counts.push_back(count_section_crossings(traj, cfg.refine_tol));
    }

    out.max_crossings = *std::max_element(out.counts.begin(), out.counts.end());
    out.mean_crossings =
        std::accumulate(out.counts.begin(), out.counts.end(), 0.0) / out.counts.size();
    // Settled trajectories intersect the section only a couple of times;
    // shadowing a heteroclinic connection keeps the phase revolving and the
    // count large, which pulls the mean up.
    out.label = out.mean_crossings <= static_cast<double>(cfg.crossing_threshold)
                    ? RegionLabel::Omega3
                    : RegionLabel::Omega2;
    return out;
}

namespace {

CellResult compute_cell(const SweepConfig& cfg, int i, int j) {
    CellResult cell;
    cell.alpha = cfg.alpha_at(i);
    cell.omega = cfg.omega_at(j);
    const std::uint64_t cell_id =
        static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(cfg.n_alpha) +
        static_cast<std::uint64_t>(i);
    try {
        auto pc = classify_point(cell.alpha, cell.omega, cfg, cell_id);
        cell.label = pc.label;
        cell.mean_crossings = pc.mean_crossings;
        cell.max_crossings = pc.max_crossings;
        cell.counts = std::move(pc.counts);
    } catch (const std::exception&) {
        // integration failure, or a degenerate corner such as alpha = 0 with
        // omega = 0 where the reduced parameters are invalid
        cell.label = RegionLabel::Unclassified;
        cell.mean_crossings = kNan;
        cell.ok = false;
    }
    return cell;
}

} // namespace

SweepResult sweep(const SweepConfig& cfg) {
    cfg.validate();
    SweepResult result;
    result.config = cfg;
    result.cells.resize(static_cast<std::size_t>(cfg.n_alpha) * cfg.n_omega);

    const int total = cfg.n_alpha * cfg.n_omega;
#pragma omp parallel for schedule(dynamic)
    for (int idx = 0; idx < total; ++idx) {
        const int j = idx / cfg.n_alpha;
        const int i = idx % cfg.n_alpha;
        result.cells[static_cast<std::size_t>(idx)] = compute_cell(cfg, i, j);
    }
    return result;
}

SweepResult sweep_serial(const SweepConfig& cfg) {
    cfg.validate();
    SweepResult result;
    result.config = cfg;
    result.cells.reserve(static_cast<std::size_t>(cfg.n_alpha) * cfg.n_omega);
    for (int j = 0; j < cfg.n_omega; ++j)
        for (int i = 0; i < cfg.n_alpha; ++i) result.cells.push_back(compute_cell(cfg, i, j));
    return result;
}

void write_csv(const SweepResult& result, std::ostream& os) {
    os << "alpha,omega,label,mean_crossings,max_crossings\n";
    for (const auto& c : result.cells) {
        io::put_double(os, c.alpha);
        os.put(',');
        io::put_double(os, c.omega);
        os.put(',');
        os << to_string(c.label) << ',';
        io::put_double(os, c.mean_crossings);
        os.put(',');
        os << c.max_crossings << '\n';
    }
}

std::vector<RowTransitions> scan_transitions(const SweepResult& result) {
    std::vector<RowTransitions> rows;
    const auto& cfg = result.config;
    rows.reserve(static_cast<std::size_t>(cfg.n_omega));
    for (int j = 0; j < cfg.n_omega; ++j) {
        RowTransitions row;
        row.omega = cfg.omega_at(j);
        row.first_omega3_alpha = kNan;
        RegionLabel prev = RegionLabel::Unclassified;
        for (int i = 0; i < cfg.n_alpha; ++i) {
            const auto& cell = result.cells[static_cast<std::size_t>(j) * cfg.n_alpha + i];
            if (cell.label == RegionLabel::Omega3 && std::isnan(row.first_omega3_alpha))
                row.first_omega3_alpha = cell.alpha;
            const bool flip = (prev == RegionLabel::Omega2 && cell.label == RegionLabel::Omega3) ||
                              (prev == RegionLabel::Omega3 && cell.label == RegionLabel::Omega2);
            if (flip) ++row.omega2_omega3_flips;
            if (cell.label == RegionLabel::Omega2 || cell.label == RegionLabel::Omega3)
                prev = cell.label;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace kuramoto::regions
