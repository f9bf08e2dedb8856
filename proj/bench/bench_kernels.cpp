// Timing comparison of the OpenMP kernels against their serial references.
// Run: bench_kernels [repeats]

#include <chrono>
#include <cstdio>
#include <vector>

#include "kuramoto/ensemble.hpp"
#include "kuramoto/gamma_raster.hpp"
#include "kuramoto/regions.hpp"
#include "kuramoto/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_best_ms(int repeats, F&& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = clock_type::now();
        fn();
        const auto t1 = clock_type::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

volatile double sink = 0.0;

} // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run serially\n");
#endif
    // Baseline = the serial reference implementation kept for testing;
    // kernel = the OpenMP version (for the ensemble derivative the kernel also
    // precomputes per-oscillator trig, so its gain is algorithmic as well).
    std::printf("%-34s %13s %12s %9s\n", "kernel", "baseline (ms)", "kernel (ms)", "speedup");

    {
        const double t_ser = time_best_ms(repeats, [] {
            const auto r = kuramoto::pairsys::raster_gamma_serial(1.0, 1000);
            sink = sink + r.cells.back().disc_p1p3;
        });
        const double t_par = time_best_ms(repeats, [] {
            const auto r = kuramoto::pairsys::raster_gamma(1.0, 1000);
            sink = sink + r.cells.back().disc_p1p3;
        });
        std::printf("%-34s %13.1f %12.1f %8.2fx\n", "gamma raster 1000x1000", t_ser, t_par,
                    t_ser / t_par);
    }

    {
        kuramoto::regions::SweepConfig cfg;
        cfg.n_alpha = 12;
        cfg.n_omega = 10;
        cfg.n_initial_conditions = 3;
        cfg.horizon = 120.0;
        cfg.seed = 1;
        const double t_ser = time_best_ms(repeats, [&] {
            const auto r = kuramoto::regions::sweep_serial(cfg);
            sink = sink + r.cells.back().mean_crossings;
        });
        const double t_par = time_best_ms(repeats, [&] {
            const auto r = kuramoto::regions::sweep(cfg);
            sink = sink + r.cells.back().mean_crossings;
        });
        std::printf("%-34s %13.1f %12.1f %8.2fx\n", "region sweep 12x10 (3 ICs)", t_ser, t_par,
                    t_ser / t_par);
    }

    for (int n : {50, 256}) {
        kuramoto::ensemble::EnsembleParams params;
        params.n = n;
        params.alpha = 1.0;
        params.sigma2 = 0.5;
        params.seed = 3;
        const auto ens = kuramoto::ensemble::Ensemble::init(params);
        kuramoto::Rng rng(9);
        std::vector<double> y(kuramoto::ensemble::flat_dimension(n));
        for (auto& x : y) x = rng.uniform(-3.0, 3.0);
        std::vector<double> dy(y.size());

        const int evals = n >= 256 ? 200 : 2000;
        const double t_ref = time_best_ms(repeats, [&] {
            for (int e = 0; e < evals; ++e) ens.derivative_reference(0.0, y, dy);
            sink = sink + dy.back();
        });
        const double t_fast = time_best_ms(repeats, [&] {
            for (int e = 0; e < evals; ++e) ens.derivative(0.0, y, dy);
            sink = sink + dy.back();
        });
        char label[64];
        std::snprintf(label, sizeof(label), "ensemble derivative N=%d (x%d)", n, evals);
        std::printf("%-34s %13.1f %12.1f %8.2fx\n", label, t_ref, t_fast, t_ref / t_fast);
    }

    return 0;
}
