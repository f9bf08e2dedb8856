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

// Command-line frontend. Every subcommand resolves its configuration
// (flags > config file > defaults), writes its outputs as CSV/JSON into an
// output directory and drops a manifest.json that records the resolved
// configuration; `rerun` replays a manifest. Exit code 0 iff all requested
// outputs were written.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kuramoto/csv.hpp"
#include "kuramoto/ensemble.hpp"
#include "kuramoto/gamma_raster.hpp"
#include "kuramoto/integrate.hpp"
#include "kuramoto/orbit_approx.hpp"
#include "kuramoto/pair_system.hpp"
#include "kuramoto/regions.hpp"
#include "kuramoto/rng.hpp"
#include "kuramoto/version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace kuramoto;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct ManifestWriter {
    std::string command;
    json config;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    void write(const fs::path& dir) const {
        json m;
        m["command"] = command;
        m["version"] = KURAMOTO_HEBB_VERSION;
        m["config"] = config;
        m["outputs"] = outputs;
        m["wall_time_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        std::ofstream os(dir / "manifest.json");
        os << m.dump(2) << '\n';
        if (!os) throw std::runtime_error("failed to write manifest.json");
    }
};

fs::path resolve_out_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("KURAMOTO_HEBB_OUT")) return env;
    return ".";
}

std::ofstream open_output(const fs::path& dir, const std::string& name, ManifestWriter& manifest) {
    fs::create_directories(dir);
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + (dir / name).string());
    manifest.outputs.push_back(name);
    return os;
}

void set_jobs(int jobs) {
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#else
    (void)jobs;
#endif
}

json eigenvalues_json(const std::array<std::complex<double>, 3>& evs) {
    json arr = json::array();
    for (const auto& ev : evs) arr.push_back({{"re", ev.real()}, {"im", ev.imag()}});
    return arr;
}

// ---------------------------------------------------------------------- pair

struct PairSimulateArgs {
    double mass = 1.0, omega = 3.0, alpha = 5.0;
    int n_trajectories = 50;
    double horizon = 100.0;
    std::uint64_t seed = 0;
    bool fixed_step = false;
    double step = 1e-3;
    std::string out;
};

int run_pair_simulate(const PairSimulateArgs& a) {
    const pairsys::PairParams p{a.mass, a.omega, a.alpha};
    p.validate();
    const fs::path dir = resolve_out_dir(a.out);

    ManifestWriter manifest;
    manifest.command = "pair-simulate";
    manifest.config = {{"m", a.mass},     {"omega", a.omega}, {"alpha", a.alpha},
                       {"n", a.n_trajectories}, {"horizon", a.horizon}, {"seed", a.seed},
                       {"fixed_step", a.fixed_step}, {"step", a.step}};

    ode::IntegratorConfig cfg;
    cfg.horizon = a.horizon;
    if (a.fixed_step) {
        cfg.method = ode::Method::Rk4Fixed;
        cfg.step = a.step;
        cfg.sample_interval = std::max(a.step, 1e-2);
    } else {
        cfg.max_step = 0.05;
    }

    auto projection = open_output(dir, "projection.csv", manifest);
    projection << "traj,gamma,k\n";

    const auto field = pairsys::as_vector_field(p);
    for (int t = 0; t < a.n_trajectories; ++t) {
        Rng rng = Rng::substream(a.seed, static_cast<std::uint64_t>(t));
        const std::array<double, 3> y0 = {rng.uniform(-kPi, kPi), rng.uniform(-kPi, kPi),
                                          rng.uniform(-kPi, kPi)};
        const auto traj = integrate(field, y0, cfg);

        char name[32];
        std::snprintf(name, sizeof(name), "traj_%03d.csv", t);
        auto os = open_output(dir, name, manifest);
        os << "t,phi,gamma,k\n";
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const auto s = traj.state(i);
            io::put_double(os, traj.times[i]);
            os.put(',');
            io::put_double(os, pairsys::principal_phase(s[0]));
            os.put(',');
            io::put_double(os, s[1]);
            os.put(',');
            io::put_double(os, s[2]);
            os.put('\n');

            projection << t << ',';
            io::put_double(projection, s[1]);
            projection.put(',');
            io::put_double(projection, s[2]);
            projection.put('\n');
        }
    }
    manifest.write(dir);
    return 0;
}

struct PairAnalyzeArgs {
    double mass = 1.0, omega = 3.0, alpha = 10.0;
    std::string out;
};

int run_pair_analyze(const PairAnalyzeArgs& a) {
    const pairsys::PairParams p{a.mass, a.omega, a.alpha};
    p.validate();
    const fs::path dir = resolve_out_dir(a.out);

    ManifestWriter manifest;
    manifest.command = "pair-analyze";
    manifest.config = {{"m", a.mass}, {"omega", a.omega}, {"alpha", a.alpha}};

    json report;
    report["params"] = manifest.config;
    report["divergence"] = pairsys::divergence(p);

    const auto eqs = pairsys::equilibria(p);
    if (eqs.empty()) {
        report["equilibria"] = "none";
        report["region"] = "Omega1";
    } else {
        const auto pt = pairsys::uv(p);
        report["uv"] = {{"u", pt.u}, {"v", pt.v}};
        json list = json::array();
        for (const auto& e : eqs) {
            const auto rep = pairsys::classify(e.label, p);
            json entry;
            entry["label"] = pairsys::to_string(e.label);
            entry["phi"] = e.state.phi;
            entry["k"] = e.state.k;
            entry["degenerate"] = e.degenerate;
            entry["eigenvalues"] = eigenvalues_json(rep.eigenvalues);
            entry["class"] = pairsys::to_string(rep.cls);
            entry["in_gamma_region"] = rep.in_gamma_region;
            list.push_back(entry);
        }
        report["equilibria"] = list;
    }

    auto os = open_output(dir, "analysis.json", manifest);
    os << report.dump(2) << '\n';
    std::cout << report.dump(2) << '\n';
    manifest.write(dir);
    return 0;
}

// -------------------------------------------------------------------- raster

struct GammaRasterArgs {
    double mass = 1.0;
    int grid_n = 1000;
    std::string out;
};

int run_gamma_raster(const GammaRasterArgs& a) {
    const fs::path dir = resolve_out_dir(a.out);
    ManifestWriter manifest;
    manifest.command = "gamma-raster";
    manifest.config = {{"m", a.mass}, {"grid_n", a.grid_n}};

    const auto raster = pairsys::raster_gamma(a.mass, a.grid_n);
    auto os = open_output(dir, "raster.csv", manifest);
    pairsys::write_csv(raster, os);
    manifest.write(dir);
    return 0;
}

// -------------------------------------------------------------------- orbit

struct OrbitApproxArgs {
    double omega = 3.0, alpha = 5.0;
    double horizon = 300.0, transient = 100.0;
    std::uint64_t seed = 12345;
    std::string out;
};

int run_orbit_approx(const OrbitApproxArgs& a) {
    const pairsys::PairParams p{1.0, a.omega, a.alpha};
    p.validate();
    if (!(p.alpha < 2.0 * p.omega))
        throw std::domain_error("orbit-approx: requires alpha < 2 omega (rotating regime)");
    const fs::path dir = resolve_out_dir(a.out);

    ManifestWriter manifest;
    manifest.command = "orbit-approx";
    manifest.config = {{"omega", a.omega},   {"alpha", a.alpha}, {"horizon", a.horizon},
                       {"transient", a.transient}, {"seed", a.seed}};

    const auto appx = orbit::make_approximation(p);
    orbit::ApproxErrorConfig ecfg;
    ecfg.horizon = a.horizon;
    ecfg.transient = a.transient;
    ecfg.seed = a.seed;
    const auto err = orbit::approximation_error(p, ecfg);

    json report;
    report["params"] = {{"omega", a.omega}, {"alpha", a.alpha}, {"m", 1.0}};
    report["zeta"] = appx.zeta;
    report["coefficients"] = {{"a", appx.a}, {"b", appx.b}, {"c", appx.c}, {"d", appx.d}};
    report["error"] = {{"rms_gamma_k", err.rms},
                       {"sup_gamma_k", err.sup},
                       {"k_amplitude", err.k_amplitude}};

    auto os = open_output(dir, "approximation.json", manifest);
    os << report.dump(2) << '\n';
    std::cout << report.dump(2) << '\n';

    auto overlay = open_output(dir, "overlay.csv", manifest);
    orbit::write_overlay_csv(p, ecfg, overlay);

    manifest.write(dir);
    return 0;
}

// -------------------------------------------------------------------- sweep

void sweep_config_from_json(const json& j, regions::SweepConfig& cfg) {
    if (j.contains("alpha_min")) cfg.alpha_min = j["alpha_min"];
    if (j.contains("alpha_max")) cfg.alpha_max = j["alpha_max"];
    if (j.contains("omega_min")) cfg.omega_min = j["omega_min"];
    if (j.contains("omega_max")) cfg.omega_max = j["omega_max"];
    if (j.contains("n_alpha")) cfg.n_alpha = j["n_alpha"];
    if (j.contains("n_omega")) cfg.n_omega = j["n_omega"];
    if (j.contains("n_initial_conditions")) cfg.n_initial_conditions = j["n_initial_conditions"];
    if (j.contains("horizon")) cfg.horizon = j["horizon"];
    if (j.contains("seed")) cfg.seed = j["seed"];
    if (j.contains("crossing_threshold")) cfg.crossing_threshold = j["crossing_threshold"];
    if (j.contains("mass")) cfg.mass = j["mass"];
}

json sweep_config_to_json(const regions::SweepConfig& cfg) {
    return {{"alpha_min", cfg.alpha_min},
            {"alpha_max", cfg.alpha_max},
            {"omega_min", cfg.omega_min},
            {"omega_max", cfg.omega_max},
            {"n_alpha", cfg.n_alpha},
            {"n_omega", cfg.n_omega},
            {"n_initial_conditions", cfg.n_initial_conditions},
            {"horizon", cfg.horizon},
            {"seed", cfg.seed},
            {"crossing_threshold", cfg.crossing_threshold},
            {"mass", cfg.mass}};
}

struct RegionSweepArgs {
    regions::SweepConfig cfg;
    std::string config_file;
    bool anchors = true;
    std::string out;
    // which flags were set on the command line (override the config file)
    CLI::App* sub = nullptr;
};

int run_region_sweep(RegionSweepArgs& a) {
    // precedence: defaults < config file < explicit flags
    if (!a.config_file.empty()) {
        std::ifstream is(a.config_file);
        if (!is) throw std::runtime_error("cannot read config file: " + a.config_file);
        json j = json::parse(is);

        regions::SweepConfig defaults;
        regions::SweepConfig merged = defaults;
        sweep_config_from_json(j, merged);
        // re-apply explicitly passed flags on top
        auto flag_set = [&](const std::string& name) {
            return a.sub != nullptr && a.sub->count(name) > 0;
        };
        if (flag_set("--alpha-max")) merged.alpha_max = a.cfg.alpha_max;
        if (flag_set("--omega-max")) merged.omega_max = a.cfg.omega_max;
        if (flag_set("--n-alpha")) merged.n_alpha = a.cfg.n_alpha;
        if (flag_set("--n-omega")) merged.n_omega = a.cfg.n_omega;
        if (flag_set("--ics")) merged.n_initial_conditions = a.cfg.n_initial_conditions;
        if (flag_set("--horizon")) merged.horizon = a.cfg.horizon;
        if (flag_set("--seed")) merged.seed = a.cfg.seed;
        if (flag_set("--threshold")) merged.crossing_threshold = a.cfg.crossing_threshold;
        if (flag_set("--mass")) merged.mass = a.cfg.mass;
        a.cfg = merged;
    }
    a.cfg.validate();
    const fs::path dir = resolve_out_dir(a.out);

    ManifestWriter manifest;
    manifest.command = "region-sweep";
    manifest.config = sweep_config_to_json(a.cfg);

    const auto result = regions::sweep(a.cfg);
    auto os = open_output(dir, "sweep.csv", manifest);
    regions::write_csv(result, os);

    json summary;
    summary["config"] = manifest.config;
    long n1 = 0, n2 = 0, n3 = 0, bad = 0;
    for (const auto& c : result.cells) {
        switch (c.label) {
        case regions::RegionLabel::Omega1: ++n1; break;
        case regions::RegionLabel::Omega2: ++n2; break;
        case regions::RegionLabel::Omega3: ++n3; break;
        default: ++bad; break;
        }
    }
    summary["cells"] = {{"Omega1", n1}, {"Omega2", n2}, {"Omega3", n3}, {"unclassified", bad}};

    if (a.anchors) {
        json anchors = json::array();
        for (const auto& [alpha, omega] : std::vector<std::pair<double, double>>{
                 {5.0, 3.0}, {10.0, 3.0}, {15.0, 3.0}}) {
            const auto pc = regions::classify_point(alpha, omega, a.cfg);
            anchors.push_back({{"alpha", alpha},
                               {"omega", omega},
                               {"label", regions::to_string(pc.label)},
                               {"mean_crossings",
                                std::isnan(pc.mean_crossings) ? json(nullptr)
                                                              : json(pc.mean_crossings)}});
        }
        summary["anchors"] = anchors;
    }

    json rows = json::array();
    for (const auto& row : regions::scan_transitions(result)) {
        rows.push_back({{"omega", row.omega},
                        {"first_omega3_alpha", std::isnan(row.first_omega3_alpha)
                                                   ? json(nullptr)
                                                   : json(row.first_omega3_alpha)},
                        {"omega2_omega3_flips", row.omega2_omega3_flips}});
    }
    summary["row_transitions"] = rows;

    auto sj = open_output(dir, "summary.json", manifest);
    sj << summary.dump(2) << '\n';
    manifest.write(dir);
    return 0;
}

// ------------------------------------------------------------------ ensemble

struct EnsembleRunArgs {
    ensemble::EnsembleParams params;
    double horizon = 100.0;
    double sample_interval = 0.1;
    bool fixed_step = false;
    double step = 0.01;
    int extra_q = 0; ///< also emit r_q for this q (0 = off)
    bool snapshots = false;
    std::string out;
};

int run_ensemble(const EnsembleRunArgs& a) {
    a.params.validate();
    const fs::path dir = resolve_out_dir(a.out);

    ManifestWriter manifest;
    manifest.command = "ensemble-run";
    manifest.config = {{"N", a.params.n},       {"m", a.params.mass},
                       {"alpha", a.params.alpha}, {"beta", a.params.beta},
                       {"sigma2", a.params.sigma2}, {"seed", a.params.seed},
                       {"horizon", a.horizon},   {"sample_interval", a.sample_interval},
                       {"fixed_step", a.fixed_step}, {"step", a.step},
                       {"snapshots", a.snapshots}};

    const auto ens = ensemble::Ensemble::init(a.params);
    ensemble::SimulateOptions opts;
    opts.horizon = a.horizon;
    opts.sample_interval = a.sample_interval;
    opts.record_states = a.snapshots || a.extra_q > 0;
    if (a.fixed_step) {
        opts.method = ode::Method::Rk4Fixed;
        opts.step = a.step;
    }
    const auto out = ensemble::simulate(ens, opts);

    {
        auto os = open_output(dir, "r2.csv", manifest);
        os << "t,r2\n";
        for (std::size_t i = 0; i < out.series.times.size(); ++i) {
            io::put_double(os, out.series.times[i]);
            os.put(',');
            io::put_double(os, out.series.r2[i]);
            os.put('\n');
        }
    }

    if (a.extra_q > 0) {
        char name[16];
        std::snprintf(name, sizeof(name), "r%d.csv", a.extra_q);
        auto os = open_output(dir, name, manifest);
        os << "t,r" << a.extra_q << "\n";
        for (std::size_t i = 0; i < out.sample_times.size(); ++i) {
            io::put_double(os, out.sample_times[i]);
            os.put(',');
            io::put_double(os, ensemble::order_parameter(out.phase_samples[i], a.extra_q));
            os.put('\n');
        }
    }

    if (a.snapshots) {
        auto os = open_output(dir, "states.csv", manifest);
        os << 't';
        for (int i = 0; i < a.params.n; ++i) os << ",phi_" << i;
        for (int i = 0; i < a.params.n; ++i) os << ",v_" << i;
        os.put('\n');
        for (std::size_t s = 0; s < out.sample_times.size(); ++s) {
            io::put_double(os, out.sample_times[s]);
            for (double phi : out.phase_samples[s]) {
                os.put(',');
                io::put_double(os, phi);
            }
            for (double v : out.velocity_samples[s]) {
                os.put(',');
                io::put_double(os, v);
            }
            os.put('\n');
        }

        auto ks = open_output(dir, "coupling.csv", manifest);
        ks << 'i';
        for (int j = 0; j < a.params.n; ++j) ks << ",k_" << j;
        ks.put('\n');
        for (int i = 0; i < a.params.n; ++i) {
            ks << i;
            for (int j = 0; j < a.params.n; ++j) {
                ks.put(',');
                io::put_double(ks, out.final_state.k(i, j));
            }
            ks.put('\n');
        }
    }

    manifest.write(dir);
    return 0;
}

// -------------------------------------------------------------------- rerun

int rerun_from_manifest(const fs::path& manifest_path, const std::string& out) {
    std::ifstream is(manifest_path);
    if (!is) throw std::runtime_error("cannot read manifest: " + manifest_path.string());
    const json m = json::parse(is);
    const std::string command = m.at("command");
    const json& cfg = m.at("config");

    if (command == "pair-simulate") {
        PairSimulateArgs a;
        a.mass = cfg.at("m");
        a.omega = cfg.at("omega");
        a.alpha = cfg.at("alpha");
        a.n_trajectories = cfg.at("n");
        a.horizon = cfg.at("horizon");
        a.seed = cfg.at("seed");
        a.fixed_step = cfg.at("fixed_step");
        a.step = cfg.at("step");
        a.out = out;
        return run_pair_simulate(a);
    }
    if (command == "pair-analyze") {
        PairAnalyzeArgs a;
        a.mass = cfg.at("m");
        a.omega = cfg.at("omega");
        a.alpha = cfg.at("alpha");
        a.out = out;
        return run_pair_analyze(a);
    }
    if (command == "gamma-raster") {
        GammaRasterArgs a;
        a.mass = cfg.at("m");
        a.grid_n = cfg.at("grid_n");
        a.out = out;
        return run_gamma_raster(a);
    }
    if (command == "orbit-approx") {
        OrbitApproxArgs a;
        a.omega = cfg.at("omega");
        a.alpha = cfg.at("alpha");
        a.horizon = cfg.at("horizon");
        a.transient = cfg.at("transient");
        a.seed = cfg.at("seed");
        a.out = out;
        return run_orbit_approx(a);
    }
    if (command == "region-sweep") {
        RegionSweepArgs a;
        sweep_config_from_json(cfg, a.cfg);
        a.out = out;
        return run_region_sweep(a);
    }
    if (command == "ensemble-run") {
        EnsembleRunArgs a;
        a.params.n = cfg.at("N");
        a.params.mass = cfg.at("m");
        a.params.alpha = cfg.at("alpha");
        a.params.beta = cfg.at("beta");
        a.params.sigma2 = cfg.at("sigma2");
        a.params.seed = cfg.at("seed");
        a.horizon = cfg.at("horizon");
        a.sample_interval = cfg.at("sample_interval");
        a.fixed_step = cfg.at("fixed_step");
        a.step = cfg.at("step");
        a.snapshots = cfg.at("snapshots");
        a.out = out;
        return run_ensemble(a);
    }
    throw std::runtime_error("rerun: unknown command in manifest: " + command);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inertial Kuramoto oscillators with Hebbian coupling adaptation"};
    app.set_version_flag("--version", KURAMOTO_HEBB_VERSION);
    app.require_subcommand(1);

    int jobs = 0;
    app.add_option("--jobs", jobs, "worker threads for data-parallel kernels (0 = all cores)");

    // pair-simulate
    PairSimulateArgs ps;
    auto* sim = app.add_subcommand("pair-simulate", "simulate reduced two-oscillator trajectories");
    sim->add_option("-m,--mass", ps.mass, "oscillator mass")->capture_default_str();
    sim->add_option("-w,--omega", ps.omega, "intrinsic-frequency difference")->capture_default_str();
    sim->add_option("-a,--alpha", ps.alpha, "learning enhancement factor")->capture_default_str();
    sim->add_option("-n,--trajectories", ps.n_trajectories, "number of random starts")
        ->capture_default_str();
    sim->add_option("--horizon", ps.horizon)->capture_default_str();
    sim->add_option("--seed", ps.seed)->capture_default_str();
    sim->add_flag("--fixed-step", ps.fixed_step, "use fixed-step RK4 (bit-reproducible)");
    sim->add_option("--step", ps.step, "fixed step size")->capture_default_str();
    sim->add_option("-o,--out", ps.out, "output directory");

    // pair-analyze
    PairAnalyzeArgs pa;
    auto* ana = app.add_subcommand("pair-analyze", "equilibria, eigenvalues and stability classes");
    ana->add_option("-m,--mass", pa.mass)->capture_default_str();
    ana->add_option("-w,--omega", pa.omega)->capture_default_str();
    ana->add_option("-a,--alpha", pa.alpha)->capture_default_str();
    ana->add_option("-o,--out", pa.out, "output directory");

    // gamma-raster
    GammaRasterArgs gr;
    auto* ras = app.add_subcommand("gamma-raster",
                                   "raster the all-real-eigenvalue regions in the (u,v) plane");
    ras->add_option("-m,--mass", gr.mass)->capture_default_str();
    ras->add_option("--grid-n", gr.grid_n, "grid points per axis")->capture_default_str();
    ras->add_option("-o,--out", gr.out, "output directory");

    // orbit-approx
    OrbitApproxArgs oa;
    auto* orb = app.add_subcommand("orbit-approx",
                                   "rotating-solution approximation and its error (m = 1)");
    orb->add_option("-w,--omega", oa.omega)->capture_default_str();
    orb->add_option("-a,--alpha", oa.alpha)->capture_default_str();
    orb->add_option("--horizon", oa.horizon)->capture_default_str();
    orb->add_option("--transient", oa.transient)->capture_default_str();
    orb->add_option("--seed", oa.seed)->capture_default_str();
    orb->add_option("-o,--out", oa.out, "output directory");

    // region-sweep
    RegionSweepArgs rs;
    auto* swp = app.add_subcommand("region-sweep",
                                   "classify the (alpha, omega) plane by section crossings");
    swp->add_option("--config", rs.config_file, "JSON config file (flags override it)");
    swp->add_option("--alpha-max", rs.cfg.alpha_max)->capture_default_str();
    swp->add_option("--omega-max", rs.cfg.omega_max)->capture_default_str();
    swp->add_option("--n-alpha", rs.cfg.n_alpha)->capture_default_str();
    swp->add_option("--n-omega", rs.cfg.n_omega)->capture_default_str();
    swp->add_option("--ics", rs.cfg.n_initial_conditions, "initial conditions per cell")
        ->capture_default_str();
    swp->add_option("--horizon", rs.cfg.horizon)->capture_default_str();
    swp->add_option("--seed", rs.cfg.seed)->capture_default_str();
    swp->add_option("--threshold", rs.cfg.crossing_threshold, "mean-crossing cutoff")
        ->capture_default_str();
    swp->add_option("--mass", rs.cfg.mass)->capture_default_str();
    swp->add_flag("!--no-anchors", rs.anchors, "skip the anchor-point classification");
    swp->add_option("-o,--out", rs.out, "output directory");
    rs.sub = swp;

    // ensemble-run
    EnsembleRunArgs er;
    auto* ens = app.add_subcommand("ensemble-run", "N-oscillator simulation with r2 series");
    ens->add_option("-N,--oscillators", er.params.n, "ensemble size")->capture_default_str();
    ens->add_option("-m,--mass", er.params.mass)->capture_default_str();
    ens->add_option("-a,--alpha", er.params.alpha)->capture_default_str();
    ens->add_option("--beta", er.params.beta, "learning rate")->capture_default_str();
    ens->add_option("--sigma2", er.params.sigma2, "frequency variance")->capture_default_str();
    ens->add_option("--seed", er.params.seed)->capture_default_str();
    ens->add_option("--horizon", er.horizon)->capture_default_str();
    ens->add_option("--sample-interval", er.sample_interval)->capture_default_str();
    ens->add_flag("--fixed-step", er.fixed_step, "use fixed-step RK4 (bit-reproducible)");
    ens->add_option("--step", er.step)->capture_default_str();
    ens->add_option("--q", er.extra_q, "also emit the order parameter r_q for this q");
    ens->add_flag("--snapshots", er.snapshots, "write state and coupling snapshots");
    ens->add_option("-o,--out", er.out, "output directory");

    // rerun
    std::string rerun_manifest, rerun_out;
    auto* rer = app.add_subcommand("rerun", "replay a recorded run from its manifest");
    rer->add_option("manifest", rerun_manifest, "path to manifest.json")->required();
    rer->add_option("-o,--out", rerun_out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);
    set_jobs(jobs);

    try {
        if (sim->parsed()) return run_pair_simulate(ps);
        if (ana->parsed()) return run_pair_analyze(pa);
        if (ras->parsed()) return run_gamma_raster(gr);
        if (orb->parsed()) return run_orbit_approx(oa);
        if (swp->parsed()) return run_region_sweep(rs);
        if (ens->parsed()) return run_ensemble(er);
        if (rer->parsed()) return rerun_from_manifest(rerun_manifest, rerun_out);
    } catch (const std::exception& ex) {
        json err;
        err["error"] = ex.what();
        err["command"] = app.get_subcommands().empty() ? "" : app.get_subcommands()[0]->get_name();
        std::cerr << err.dump() << '\n';
        return 1;
    }
    return 2;
}
