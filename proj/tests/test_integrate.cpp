#include "doctest.h"

#include <cmath>

#include "kuramoto/integrate.hpp"
#include "kuramoto/pair_system.hpp"

using namespace kuramoto;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

ode::VectorField decay_field() {
    return {1, [](double, std::span<const double> y, std::span<double> dy) { dy[0] = -y[0]; }};
}

ode::VectorField harmonic_field() {
    return {2, [](double, std::span<const double> y, std::span<double> dy) {
                dy[0] = y[1];
                dy[1] = -y[0];
            }};
}
} // namespace

TEST_CASE("exponential decay reaches exp(-1) within tolerance") {
    ode::IntegratorConfig cfg;
    cfg.horizon = 1.0;
    const double x0[] = {1.0};
    const auto traj = ode::integrate(decay_field(), x0, cfg);
    CHECK(traj.back()[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-8));
}

TEST_CASE("harmonic oscillator returns to the start and conserves energy") {
    ode::IntegratorConfig cfg;
    cfg.horizon = 2.0 * kPi;
    const double x0[] = {1.0, 0.0};
    const auto traj = ode::integrate(harmonic_field(), x0, cfg);
    CHECK(traj.back()[0] == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(std::abs(traj.back()[1]) < 1e-7);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto s = traj.state(i);
        worst = std::max(worst, std::abs(s[0] * s[0] + s[1] * s[1] - 1.0));
    }
    CHECK(worst <= cfg.abs_tol * cfg.horizon);
}

TEST_CASE("zero field keeps the state constant") {
    ode::VectorField zero{3, [](double, std::span<const double>, std::span<double> dy) {
                              for (auto& d : dy) d = 0.0;
                          }};
    ode::IntegratorConfig cfg;
    cfg.horizon = 5.0;
    const double x0[] = {0.25, -3.0, 7.5};
    const auto traj = ode::integrate(zero, x0, cfg);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        CHECK(traj.state(i)[0] == 0.25);
        CHECK(traj.state(i)[1] == -3.0);
        CHECK(traj.state(i)[2] == 7.5);
    }
}

TEST_CASE("fixed-step RK4 shows fifth-order local error (16x per halving)") {
    auto endpoint_error = [](double h) {
        ode::IntegratorConfig cfg;
        cfg.method = ode::Method::Rk4Fixed;
        cfg.step = h;
        cfg.horizon = 1.0;
        const double x0[] = {1.0};
        const auto traj = ode::integrate(decay_field(), x0, cfg);
        return std::abs(traj.back()[0] - std::exp(-1.0));
    };
    const double ratio = endpoint_error(0.02) / endpoint_error(0.01);
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
}

TEST_CASE("adaptive and fixed-step integration agree on the reduced system") {
    const pairsys::PairParams p{1.0, 3.0, 5.0};
    const auto field = pairsys::as_vector_field(p);
    const double x0[] = {0.3, -1.2, 2.0};

    ode::IntegratorConfig adaptive;
    adaptive.horizon = 10.0;
    const auto a = ode::integrate(field, x0, adaptive);

    ode::IntegratorConfig fixed;
    fixed.method = ode::Method::Rk4Fixed;
    fixed.step = 1e-4;
    fixed.horizon = 10.0;
    const auto f = ode::integrate(field, x0, fixed);

    for (int c = 0; c < 3; ++c)
        CHECK(std::abs(a.back()[c] - f.back()[c]) < 1e-6);
}

TEST_CASE("sample_interval records exactly the requested times") {
    ode::IntegratorConfig cfg;
    cfg.horizon = 1.0;
    cfg.sample_interval = 0.125;
    const double x0[] = {1.0};
    const auto traj = ode::integrate(decay_field(), x0, cfg);
    REQUIRE(traj.size() == 9);
    for (std::size_t i = 0; i < traj.size(); ++i)
        CHECK(traj.times[i] == doctest::Approx(0.125 * i).epsilon(1e-12));
}

TEST_CASE("non-finite states are reported with the last valid time") {
    // dx/dt = x^2 from x0 = 1 blows up at t = 1.
    ode::VectorField blowup{1, [](double, std::span<const double> y, std::span<double> dy) {
                                dy[0] = y[0] * y[0];
                            }};
    ode::IntegratorConfig cfg;
    cfg.horizon = 2.0;
    cfg.max_steps = 100000;
    const double x0[] = {1.0};
    CHECK_THROWS_AS((void)ode::integrate(blowup, x0, cfg), ode::IntegrationError);
}

TEST_CASE("step budget violations raise IntegrationError") {
    ode::IntegratorConfig cfg;
    cfg.method = ode::Method::Rk4Fixed;
    cfg.step = 1e-4;
    cfg.horizon = 10.0;
    cfg.max_steps = 10;
    const double x0[] = {1.0};
    CHECK_THROWS_AS((void)ode::integrate(decay_field(), x0, cfg), ode::IntegrationError);
}

TEST_CASE("crossing detection finds the zeros of sin t") {
    // x(t) = sin t as the solution of the harmonic oscillator started at (0, 1).
    // Event times come from bisection on linearly interpolated segments, so
    // they are accurate to O(max_step^2) around each zero.
    ode::IntegratorConfig cfg;
    cfg.horizon = 10.0;
    cfg.max_step = 0.01;
    const double x0[] = {0.0, 1.0};
    const auto traj = ode::integrate(harmonic_field(), x0, cfg);

    const auto events =
        ode::detect_crossings(traj, [](std::span<const double> s) { return s[0]; }, 1e-10);
    REQUIRE(events.size() == 3);
    CHECK(std::abs(events[0].time - kPi) < 1e-5);
    CHECK(std::abs(events[1].time - 2 * kPi) < 1e-5);
    CHECK(std::abs(events[2].time - 3 * kPi) < 1e-5);
    CHECK(events[0].direction == ode::CrossingDirection::Down);
    CHECK(events[1].direction == ode::CrossingDirection::Up);

    // Count is invariant under refinement tolerance; only times move.
    const auto coarse =
        ode::detect_crossings(traj, [](std::span<const double> s) { return s[0]; }, 1e-3);
    CHECK(coarse.size() == events.size());
    for (std::size_t i = 0; i < events.size(); ++i)
        CHECK(std::abs(coarse[i].time - events[i].time) < 1e-3);
}

TEST_CASE("constant-sign events produce no crossings") {
    ode::IntegratorConfig cfg;
    cfg.horizon = 3.0;
    const double x0[] = {1.0};
    const auto traj = ode::integrate(decay_field(), x0, cfg);
    const auto events =
        ode::detect_crossings(traj, [](std::span<const double> s) { return s[0] + 5.0; }, 1e-10);
    CHECK(events.empty());
}

TEST_CASE("tangential touches are not counted") {
    ode::Trajectory traj;
    traj.dimension = 1;
    traj.times = {0.0, 1.0, 2.0, 3.0, 4.0};
    traj.data = {1.0, 0.0, 1.0, -1.0, 1.0}; // touch at t=1, real crossings later
    const auto events =
        ode::detect_crossings(traj, [](std::span<const double> s) { return s[0]; }, 1e-10);
    CHECK(events.size() == 2);
}

TEST_CASE("rotating reduced system: crossing count grows linearly with horizon") {
    const pairsys::PairParams p{1.0, 3.0, 5.0}; // no equilibria: phase keeps revolving
    const auto field = pairsys::as_vector_field(p);
    const double x0[] = {0.0, 0.5, 0.5};
    auto count = [&](double horizon) {
        ode::IntegratorConfig cfg;
        cfg.horizon = horizon;
        cfg.max_step = 0.05;
        const auto traj = ode::integrate(field, x0, cfg);
        const auto ev = ode::detect_crossings(
            traj, [](std::span<const double> s) { return std::sin(0.5 * s[0]); }, 1e-10);
        return static_cast<double>(ev.size());
    };
    const double c100 = count(100.0);
    const double c200 = count(200.0);
    CHECK(c100 > 10);
    CHECK(c200 / c100 == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("stop condition truncates the trajectory") {
    ode::IntegratorConfig cfg;
    cfg.horizon = 10.0;
    const double x0[] = {1.0};
    const auto traj = ode::integrate(decay_field(), x0, cfg,
                                     [](double, std::span<const double> y) { return y[0] < 0.5; });
    CHECK(traj.stopped_early);
    CHECK(traj.times.back() < 1.0);
}

TEST_CASE("config validation rejects bad values") {
    ode::IntegratorConfig cfg;
    cfg.horizon = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.abs_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.max_steps = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
