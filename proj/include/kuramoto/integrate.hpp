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

#ifndef KURAMOTO_INTEGRATE_HPP
#define KURAMOTO_INTEGRATE_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace kuramoto::ode {

/// Right-hand side of an autonomous or time-dependent ODE system.
/// Must be deterministic and side-effect-free; writes the derivative of
/// `state` into `deriv` (same length).
using Rhs = std::function<void(double t, std::span<const double> state, std::span<double> deriv)>;

struct VectorField {
    int dimension = 0;
    Rhs evaluate;
};

enum class Method {
    Rk4Fixed,     ///< classical RK4 with a constant step
    Rk45Adaptive, ///< embedded Dormand-Prince 5(4) pair with step control
};

struct IntegratorConfig {
    Method method = Method::Rk45Adaptive;
    double horizon = 10.0;      ///< integrate over [0, horizon]
    double step = 1e-2;         ///< fixed step, or initial trial step (adaptive)
    double abs_tol = 1e-9;      ///< adaptive only
    double rel_tol = 1e-9;      ///< adaptive only
    double max_step = std::numeric_limits<double>::infinity();
    long max_steps = 50'000'000;
    /// 0: record every accepted step. > 0: record only at multiples of this
    /// interval (steps are clipped to land on them exactly); the endpoint is
    /// always recorded.
    double sample_interval = 0.0;

    void validate() const;
};

/// Sampled solution. States are stored row-major; `state(i)` views row i.
struct Trajectory {
    int dimension = 0;
    std::vector<double> times;
    std::vector<double> data;
    bool stopped_early = false; ///< a stop condition fired before the horizon

    std::size_t size() const { return times.size(); }
    std::span<const double> state(std::size_t i) const {
        return {data.data() + i * static_cast<std::size_t>(dimension),
                static_cast<std::size_t>(dimension)};
    }
    std::span<const double> back() const { return state(size() - 1); }
};

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double last_valid_time)
        : std::runtime_error(what), last_valid_time(last_valid_time) {}
    double last_valid_time;
};

/// Optional early-termination predicate, checked at every recorded sample.
using StopCondition = std::function<bool(double t, std::span<const double> state)>;

Trajectory integrate(const VectorField& field, std::span<const double> y0,
                     const IntegratorConfig& cfg, const StopCondition& stop = nullptr);

enum class CrossingDirection { Up, Down };

struct CrossingEvent {
    double time = 0.0;
    std::vector<double> state;
    CrossingDirection direction = CrossingDirection::Up;
};

/// Scalar function of the state whose zeros define section crossings.
using EventFn = std::function<double(std::span<const double> state)>;

/// One event per sign change of `event` between consecutive samples, with the
/// event time refined by bisection on the linearly interpolated segment to
/// within `refine_tol`. Samples that sit exactly on zero count only when the
/// neighboring nonzero values have opposite signs; tangential touches are
/// dropped.
std::vector<CrossingEvent> detect_crossings(const Trajectory& traj, const EventFn& event,
                                            double refine_tol = 1e-10);

} // namespace kuramoto::ode

#endif
