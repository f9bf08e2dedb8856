#include "doctest.h"

#include <cmath>
#include <numeric>

#include "kuramoto/ensemble.hpp"
#include "kuramoto/pair_system.hpp"
#include "kuramoto/rng.hpp"

using namespace kuramoto;
using namespace kuramoto::ensemble;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("pair index walks the upper triangle row-major") {
    const int n = 5;
    std::size_t expected = 0;
    for (int i = 0; i < n - 1; ++i)
        for (int j = i + 1; j < n; ++j) CHECK(pair_index(n, i, j) == expected++);
    CHECK(expected == flat_dimension(n) - 2 * n);
}

TEST_CASE("initial state: even spacing, zero velocities, unit couplings") {
    EnsembleParams params;
    params.n = 4;
    params.seed = 1;
    const auto ens = Ensemble::init(params);
    const auto s = ens.initial_state();
    CHECK(s.phases[0] == doctest::Approx(0.0));
    CHECK(s.phases[1] == doctest::Approx(kPi / 2));
    CHECK(s.phases[2] == doctest::Approx(kPi));
    CHECK(s.phases[3] == doctest::Approx(3 * kPi / 2));
    for (double v : s.velocities) CHECK(v == 0.0);
    for (double k : s.coupling) CHECK(k == 1.0);
    CHECK(s.flatten().size() == flat_dimension(4));
}

TEST_CASE("zero variance degenerates to zero frequencies") {
    EnsembleParams params;
    params.n = 8;
    params.sigma2 = 0.0;
    params.seed = 99;
    const auto ens = Ensemble::init(params);
    for (double w : ens.frequencies()) CHECK(w == 0.0);
}

TEST_CASE("frequency draws are reproducible and scale with sigma") {
    EnsembleParams params;
    params.n = 16;
    params.sigma2 = 0.25;
    params.seed = 2024;
    const auto a = Ensemble::init(params);
    const auto b = Ensemble::init(params);
    CHECK(a.frequencies() == b.frequencies());

    params.seed = 2025;
    const auto c = Ensemble::init(params);
    CHECK(a.frequencies() != c.frequencies());

    EnsembleParams wide = params;
    wide.sigma2 = 1.0;
    const auto d = Ensemble::init(wide);
    for (int i = 0; i < params.n; ++i)
        CHECK(d.frequencies()[static_cast<std::size_t>(i)] ==
              doctest::Approx(2.0 * c.frequencies()[static_cast<std::size_t>(i)]).epsilon(1e-15));
}

TEST_CASE("order parameter identities") {
    std::vector<double> same(50, 1.234);
    CHECK(order_parameter(same) == doctest::Approx(1.0).epsilon(1e-14));

    std::vector<double> anti(50, 0.0);
    for (int i = 25; i < 50; ++i) anti[static_cast<std::size_t>(i)] = kPi;
    CHECK(order_parameter(anti) == doctest::Approx(1.0).epsilon(1e-13));
    // the ordinary order parameter sees the two anti-phase clusters cancel
    CHECK(order_parameter(anti, 1) == doctest::Approx(0.0).epsilon(1e-13));

    std::vector<double> spread(50);
    for (int i = 0; i < 50; ++i) spread[static_cast<std::size_t>(i)] = 2 * kPi * i / 50.0;
    CHECK(order_parameter(spread) < 1e-12);

    CHECK_THROWS_AS((void)order_parameter({}), std::invalid_argument);
}

TEST_CASE("synchronized fixed point has zero derivative") {
    EnsembleParams params;
    params.n = 6;
    params.alpha = 2.5;
    params.sigma2 = 0.0;
    const auto ens = Ensemble::init(params);
    EnsembleState s = ens.initial_state();
    for (auto& phi : s.phases) phi = 0.77;
    for (auto& k : s.coupling) k = params.alpha;
    const auto y = s.flatten();
    std::vector<double> dy(y.size());
    ens.derivative(0.0, y, dy);
    for (double d : dy) CHECK(std::abs(d) < 1e-14);
}

TEST_CASE("single-oscillator coupling contribution") {
    EnsembleParams params;
    params.n = 3;
    params.sigma2 = 0.0;
    const auto ens = Ensemble::init(params);
    EnsembleState s = ens.initial_state();
    s.phases = {0.0, kPi / 2, kPi};
    const auto y = s.flatten();
    std::vector<double> dy(y.size());
    ens.derivative(0.0, y, dy);
    // dv_0 = (1/3)(sin(pi/2) + sin(pi)) with zero velocity and frequency
    CHECK(dy[3] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("optimized derivative matches the naive reference") {
    EnsembleParams params;
    params.n = 40;
    params.mass = 2.0;
    params.alpha = 3.0;
    params.beta = 1.5;
    params.sigma2 = 0.5;
    params.seed = 5;
    const auto ens = Ensemble::init(params);

    Rng rng(77);
    std::vector<double> y(flat_dimension(params.n));
    for (auto& x : y) x = rng.uniform(-3.0, 3.0);

    std::vector<double> fast(y.size()), ref(y.size());
    ens.derivative(0.0, y, fast);
    ens.derivative_reference(0.0, y, ref);
    for (std::size_t i = 0; i < y.size(); ++i)
        CHECK(fast[i] == doctest::Approx(ref[i]).epsilon(1e-12));
}

TEST_CASE("two oscillators reduce to the pair system") {
    const double omega = 1.7, alpha = 4.0, mass = 1.3;
    EnsembleParams params;
    params.n = 2;
    params.mass = mass;
    params.alpha = alpha;
    const auto ens = Ensemble::with_frequencies(params, {omega, 0.0});

    const double phi0 = 0.9, gamma0 = -0.4, k0 = 0.6;
    EnsembleState s = ens.initial_state();
    s.phases = {phi0, 0.0};
    s.velocities = {gamma0, 0.0};
    s.coupling = {k0};

    ode::IntegratorConfig cfg;
    cfg.method = ode::Method::Rk4Fixed;
    cfg.step = 1e-3;
    cfg.horizon = 10.0;
    const auto traj_full = ode::integrate(ens.as_vector_field(), s.flatten(), cfg);

    const pairsys::PairParams p{mass, omega, alpha};
    const std::array<double, 3> y0 = {phi0, gamma0, k0};
    const auto traj_red = ode::integrate(pairsys::as_vector_field(p), y0, cfg);

    REQUIRE(traj_full.size() == traj_red.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < traj_full.size(); ++i) {
        const auto yf = traj_full.state(i);
        const auto yr = traj_red.state(i);
        worst = std::max(worst, std::abs((yf[0] - yf[1]) - yr[0]));
        worst = std::max(worst, std::abs((yf[2] - yf[3]) - yr[1]));
        worst = std::max(worst, std::abs(yf[4] - yr[2]));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("simulation preserves coupling symmetry and the coupling bound") {
    EnsembleParams params;
    params.n = 12;
    params.alpha = 1.0;
    params.sigma2 = 0.3;
    params.seed = 31;
    const auto ens = Ensemble::init(params);

    SimulateOptions opts;
    opts.horizon = 40.0;
    opts.sample_interval = 0.5;
    const auto out = simulate(ens, opts);

    // symmetry is structural: only i < j entries exist
    CHECK(out.final_state.coupling.size() == static_cast<std::size_t>(12 * 11 / 2));
    CHECK(out.final_state.k(3, 7) == out.final_state.k(7, 3));

    // |K| <= alpha + eps after burn-in (integrating-factor envelope)
    for (double k : out.final_state.coupling) CHECK(std::abs(k) <= params.alpha + 0.01);

    // r2 stays in [0, 1]
    for (double r : out.series.r2) {
        CHECK(r >= 0.0);
        CHECK(r <= 1.0);
    }
    CHECK(out.series.times.front() == 0.0);
    CHECK(out.series.times.back() == doctest::Approx(40.0));
}

TEST_CASE("fixed-step simulation is bit-reproducible") {
    EnsembleParams params;
    params.n = 10;
    params.alpha = 1.0;
    params.sigma2 = 0.2;
    params.seed = 8;
    const auto ens = Ensemble::init(params);

    SimulateOptions opts;
    opts.method = ode::Method::Rk4Fixed;
    opts.step = 0.01;
    opts.horizon = 5.0;
    opts.sample_interval = 0.1;
    const auto a = simulate(ens, opts);
    const auto b = simulate(Ensemble::init(params), opts);
    REQUIRE(a.series.r2.size() == b.series.r2.size());
    for (std::size_t i = 0; i < a.series.r2.size(); ++i) CHECK(a.series.r2[i] == b.series.r2[i]);
    CHECK(a.final_state.phases == b.final_state.phases);
    CHECK(a.final_state.coupling == b.final_state.coupling);
}

TEST_CASE("cluster detection groups by velocity gaps") {
    const std::vector<double> same(6, 0.5);
    auto clusters = detect_clusters(same, 0.1);
    REQUIRE(clusters.size() == 1);
    CHECK(clusters[0].members.size() == 6);
    CHECK(clusters[0].mean_velocity == doctest::Approx(0.5));

    const std::vector<double> split = {0.0, 0.0, 5.0, 5.0};
    clusters = detect_clusters(split, 0.1);
    REQUIRE(clusters.size() == 2);
    CHECK(clusters[0].members == std::vector<int>{0, 1});
    CHECK(clusters[1].members == std::vector<int>{2, 3});

    // single-linkage: a chain within tolerance stays one cluster
    const std::vector<double> chain = {0.0, 0.05, 0.1, 1.0};
    clusters = detect_clusters(chain, 0.06);
    REQUIRE(clusters.size() == 2);
    CHECK(clusters[0].members.size() == 3);
}

TEST_CASE("heavy masses develop multiple drifting clusters") {
    EnsembleParams params;
    params.n = 50;
    params.mass = 100.0;
    params.alpha = 1.0;
    params.sigma2 = 0.1;
    params.seed = 1;
    const auto ens = Ensemble::init(params);

    SimulateOptions opts;
    opts.horizon = 300.0;
    opts.sample_interval = 0.25;
    opts.record_states = true;
    const auto out = simulate(ens, opts);

    const auto means = windowed_mean_velocities(out, 50.0);
    const auto clusters = detect_clusters(means, 0.01);
    CHECK(clusters.size() >= 3);
    CHECK(clusters[0].members.size() >= 4);
    std::size_t covered = 0;
    for (const auto& c : clusters) covered += c.members.size();
    CHECK(covered == 50);
}

TEST_CASE("windowed mean velocities need recorded states") {
    EnsembleParams params;
    params.n = 4;
    params.sigma2 = 0.0;
    const auto ens = Ensemble::init(params);
    SimulateOptions opts;
    opts.horizon = 2.0;
    opts.sample_interval = 0.5;
    const auto bare = simulate(ens, opts);
    CHECK_THROWS_AS((void)windowed_mean_velocities(bare, 1.0), std::invalid_argument);

    opts.record_states = true;
    const auto recorded = simulate(ens, opts);
    const auto means = windowed_mean_velocities(recorded, 1.0);
    CHECK(means.size() == 4);
}

TEST_CASE("parameter validation") {
    EnsembleParams params;
    params.n = 1;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    params = {};
    params.mass = 0.0;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    params = {};
    params.sigma2 = -1.0;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
}
