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

#ifndef KURAMOTO_REGIONS_HPP
#define KURAMOTO_REGIONS_HPP

#include <cstdint>
#include <ostream>
#include <vector>

#include "kuramoto/pair_system.hpp"

namespace kuramoto::regions {

// ---------------------------------------------------------------------------
// Demarcation of the (alpha, omega) plane into
//   Omega1: no equilibria (alpha < 2 omega), rotating solutions;
//   Omega2: equilibria plus trajectories that keep revolving (heteroclinic
//           shadowing) -- large section-crossing counts;
//   Omega3: equilibria only -- every trajectory settles after at most a
//           couple of crossings.
// Crossings are passages of the unwrapped phase difference through integer
// multiples of 2*pi, i.e. intersections with the section {phi = 0}, counted
// in both directions.
// ---------------------------------------------------------------------------

enum class RegionLabel { Omega1, Omega2, Omega3, Unclassified };

const char* to_string(RegionLabel label);

struct SweepConfig {
    double alpha_min = 0.0;
    double alpha_max = 36.0;
    double omega_min = 0.0;
    double omega_max = 6.283185307179586; ///< half-open: grid excludes this end
    int n_alpha = 150;
    int n_omega = 150;
    int n_initial_conditions = 20;
    double horizon = 1000.0;
    std::uint64_t seed = 0;
    /// A cell is Omega3 when the mean crossing count over its trajectories is
    /// at most this value.
    int crossing_threshold = 2;
    double mass = 1.0;

    // Integrator knobs.
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    /// Cap keeps consecutive samples within half a revolution so crossing
    /// counts are exact.
    double max_step = 0.05;

    // Settled-trajectory early exit: stop once the field max-norm stays below
    // `quiescent_tol` for `quiescent_intervals` consecutive recorded samples.
    double quiescent_tol = 1e-8;
    int quiescent_intervals = 10;

    double refine_tol = 1e-10;

    void validate() const;
    double alpha_at(int i) const;  ///< closed interval, i in [0, n_alpha)
    double omega_at(int j) const;  ///< half-open interval, j in [0, n_omega)
};

struct PointClassification {
    RegionLabel label = RegionLabel::Unclassified;
    double mean_crossings = 0.0; ///< NaN for Omega1 (no simulation run)
    int max_crossings = 0;
    std::vector<int> counts;     ///< per initial condition; empty for Omega1
};

/// Classify one parameter point. alpha < 2 omega short-circuits to Omega1;
/// otherwise `n_initial_conditions` trajectories start from uniform random
/// (gamma, k) in [-pi, pi)^2 on the section {phi = 0} and their crossing
/// counts decide between Omega2 and Omega3. `cell_id` selects the
/// deterministic RNG substream (sweeps pass the cell index).
PointClassification classify_point(double alpha, double omega, const SweepConfig& cfg,
                                   std::uint64_t cell_id = 0);

struct CellResult {
    double alpha = 0.0;
    double omega = 0.0;
    RegionLabel label = RegionLabel::Unclassified;
    double mean_crossings = 0.0;
    int max_crossings = 0;
    std::vector<int> counts; ///< per initial condition; empty for Omega1
    bool ok = true;          ///< false if integration failed; sweep continues
};

struct SweepResult {
    SweepConfig config;
    /// Row-major over (j_omega, i_alpha): cells[j * n_alpha + i].
    std::vector<CellResult> cells;
};

/// Classify the whole grid. Cells are independent tasks with per-cell RNG
/// substreams derived from (seed, cell index), so the result is identical for
/// any worker count. OpenMP-parallel.
SweepResult sweep(const SweepConfig& cfg);

/// Same classification in a plain serial loop; reference for the parallel
/// kernel.
SweepResult sweep_serial(const SweepConfig& cfg);

/// Header: alpha,omega,label,mean_crossings,max_crossings
void write_csv(const SweepResult& result, std::ostream& os);

/// Per-omega-row structure of the swept labels: where the first Omega3 cell
/// sits and how often labels flip between Omega2 and Omega3 along increasing
/// alpha. A single flip everywhere supports a monotone boundary; violations
/// are reported, not enforced.
struct RowTransitions {
    double omega = 0.0;
    double first_omega3_alpha = 0.0; ///< NaN if the row has no Omega3 cell
    int omega2_omega3_flips = 0;
};
std::vector<RowTransitions> scan_transitions(const SweepResult& result);

} // namespace kuramoto::regions

#endif
