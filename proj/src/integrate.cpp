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

#include "kuramoto/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kuramoto::ode {

void IntegratorConfig::validate() const {
    if (!(horizon > 0.0)) throw std::invalid_argument("IntegratorConfig: horizon must be > 0");
    if (!(step > 0.0)) throw std::invalid_argument("IntegratorConfig: step must be > 0");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::invalid_argument("IntegratorConfig: tolerances must be > 0");
    if (max_steps < 1) throw std::invalid_argument("IntegratorConfig: max_steps must be >= 1");
    if (!(max_step > 0.0)) throw std::invalid_argument("IntegratorConfig: max_step must be > 0");
    if (sample_interval < 0.0)
        throw std::invalid_argument("IntegratorConfig: sample_interval must be >= 0");
}

namespace {

bool all_finite(std::span<const double> v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// Difference between 5th- and 4th-order weights (error estimator).
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

class Recorder {
public:
    Recorder(Trajectory& traj, const StopCondition& stop) : traj_(traj), stop_(stop) {}

    // Returns true if the stop condition fired.
    bool record(double t, std::span<const double> y) {
        traj_.times.push_back(t);
        traj_.data.insert(traj_.data.end(), y.begin(), y.end());
        if (stop_ && stop_(t, y)) {
            traj_.stopped_early = true;
            return true;
        }
        return false;
    }

private:
    Trajectory& traj_;
    const StopCondition& stop_;
};

} // namespace

Trajectory integrate(const VectorField& field, std::span<const double> y0,
                     const IntegratorConfig& cfg, const StopCondition& stop) {
    cfg.validate();
    const std::size_t n = static_cast<std::size_t>(field.dimension);
    if (y0.size() != n) throw std::invalid_argument("integrate: initial state dimension mismatch");
    if (!all_finite(y0)) throw std::invalid_argument("integrate: initial state not finite");

    Trajectory traj;
    traj.dimension = field.dimension;
    Recorder rec(traj, stop);

    std::vector<double> y(y0.begin(), y0.end());
    std::vector<double> ynew(n), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n);

    double t = 0.0;
    if (rec.record(t, y)) return traj;

    const double T = cfg.horizon;
    long sample_idx = 1; // sample times are k * interval, no accumulation drift
    double next_sample = cfg.sample_interval > 0.0 ? cfg.sample_interval : 0.0;
    long steps = 0;

    auto eval = [&](double tt, const std::vector<double>& yy, std::vector<double>& out) {
        field.evaluate(tt, yy, out);
    };

    if (cfg.method == Method::Rk4Fixed) {
        while (t < T) {
            if (++steps > cfg.max_steps)
                throw IntegrationError("integrate: step count exceeded", t);
            double h = std::min({cfg.step, cfg.max_step, T - t});
            if (cfg.sample_interval > 0.0 && next_sample > t)
                h = std::min(h, next_sample - t);

            eval(t, y, k1);
            for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + 0.5 * h * k1[i];
            eval(t + 0.5 * h, ytmp, k2);
            for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + 0.5 * h * k2[i];
            eval(t + 0.5 * h, ytmp, k3);
            for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * k3[i];
            eval(t + h, ytmp, k4);
            for (std::size_t i = 0; i < n; ++i)
                y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            t += h;
            if (!all_finite(y))
                throw IntegrationError("integrate: non-finite state at t = " + std::to_string(t),
                                       traj.times.back());

            bool at_sample = cfg.sample_interval <= 0.0;
            if (!at_sample && (t >= next_sample - 1e-12 * std::max(1.0, std::abs(t)))) {
                at_sample = true;
                t = std::min(next_sample, T); // land exactly on the sample time
                next_sample = cfg.sample_interval * static_cast<double>(++sample_idx);
            }
            if (t >= T) at_sample = true;
            if (at_sample && rec.record(t, y)) return traj;
        }
        return traj;
    }

    // Adaptive Dormand-Prince 5(4), FSAL.
    double h = std::min({cfg.step, cfg.max_step, T});
    eval(t, y, k1);
    bool k1_fresh = true;

    while (t < T) {
        if (++steps > cfg.max_steps) throw IntegrationError("integrate: step count exceeded", t);

        h = std::min({h, cfg.max_step, T - t});
        if (cfg.sample_interval > 0.0 && next_sample > t) h = std::min(h, next_sample - t);
        if (!(h > std::abs(t) * 1e-14 + 1e-300))
            throw IntegrationError("integrate: step size underflow", t);

        if (!k1_fresh) {
            eval(t, y, k1);
            k1_fresh = true;
        }
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        eval(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        eval(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        eval(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        eval(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        eval(t + h, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        eval(t + h, ynew, k7);

        // Scaled RMS error estimate.
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                  e7 * k7[i]);
            const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            const double q = e / scale;
            err += q * q;
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0 || !std::isfinite(err)) {
            if (!std::isfinite(err) || !all_finite(ynew))
                throw IntegrationError("integrate: non-finite state at t = " + std::to_string(t + h),
                                       t);
            t += h;
            y.swap(ynew);
            k1.swap(k7); // FSAL
            k1_fresh = true;

            bool at_sample = cfg.sample_interval <= 0.0;
            if (!at_sample && (t >= next_sample - 1e-12 * std::max(1.0, std::abs(t)))) {
                at_sample = true;
                t = std::min(next_sample, T); // land exactly on the sample time
                next_sample = cfg.sample_interval * static_cast<double>(++sample_idx);
            }
            if (t >= T) at_sample = true;
            if (at_sample && rec.record(t, y)) return traj;

            const double factor = (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h *= factor;
        } else {
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
        }
    }
    return traj;
}

std::vector<CrossingEvent> detect_crossings(const Trajectory& traj, const EventFn& event,
                                            double refine_tol) {
    if (!(refine_tol > 0.0)) throw std::invalid_argument("detect_crossings: refine_tol must be > 0");
    std::vector<CrossingEvent> events;
    const std::size_t n = traj.size();
    if (n < 2) return events;

    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = event(traj.state(i));

    const int dim = traj.dimension;
    auto interp_state = [&](std::size_t i, double tt) {
        std::vector<double> s(dim);
        const double t0 = traj.times[i], t1 = traj.times[i + 1];
        const double w = (tt - t0) / (t1 - t0);
        auto a = traj.state(i);
        auto b = traj.state(i + 1);
        for (int d = 0; d < dim; ++d) s[d] = a[d] + w * (b[d] - a[d]);
        return s;
    };

    // Sign of the last nonzero sample seen, for resolving exact zeros.
    int last_sign = 0;
    std::size_t pending_zero = n; // index of a sample that sits exactly on zero

    for (std::size_t i = 0; i < n; ++i) {
        if (g[i] == 0.0) {
            if (last_sign != 0 && pending_zero == n) pending_zero = i;
            continue;
        }
        const int s = g[i] > 0.0 ? 1 : -1;
        if (pending_zero != n) {
            // A sample on the section: count it once if the flanking signs differ.
            if (last_sign != 0 && s != last_sign) {
                CrossingEvent ev;
                ev.time = traj.times[pending_zero];
                auto st = traj.state(pending_zero);
                ev.state.assign(st.begin(), st.end());
                ev.direction = s > 0 ? CrossingDirection::Up : CrossingDirection::Down;
                events.push_back(std::move(ev));
            }
            pending_zero = n;
            last_sign = s;
            continue;
        }
        if (last_sign != 0 && s != last_sign) {
            // Strict sign change over [i-1, i]: bisect on the interpolated segment.
            std::size_t seg = i - 1;
            double lo = traj.times[seg], hi = traj.times[seg + 1];
            double glo = g[seg];
            while (hi - lo > refine_tol) {
                const double mid = 0.5 * (lo + hi);
                const double gm = event(interp_state(seg, mid));
                if (gm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((gm > 0.0) == (glo > 0.0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            CrossingEvent ev;
            ev.time = 0.5 * (lo + hi);
            ev.state = interp_state(seg, ev.time);
            ev.direction = s > 0 ? CrossingDirection::Up : CrossingDirection::Down;
            events.push_back(std::move(ev));
        }
        last_sign = s;
    }
    return events;
}

} // namespace kuramoto::ode
