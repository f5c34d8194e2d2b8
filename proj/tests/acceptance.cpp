// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ringdelay/commands.hpp"
#include "ringdelay/modal.hpp"

using namespace ringdelay;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void report(const char* id, const char* name, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!r.pass) ++failures;
    std::printf("[%s] %s %s: %s (%.1f s)\n", r.pass ? "PASS" : "FAIL", id, name, r.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string fmt(const char* format, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

HistoryFunction<double> constant_history(const StateVector& x0, const RingParams& p) {
    return HistoryFunction<double>::constant(x0, p.max_delay());
}

}  // namespace

int main() {
    const RingParams defaults{};

    report("C1", "consensus-mode root", [] {
        std::mt19937_64 gen(2024);
        std::uniform_real_distribution<double> d(0.01, 5.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const RingParams p{20, d(gen), d(gen), d(gen), d(gen)};
            worst = std::max(worst, std::abs(char_eval(0.0, 0.0, p)));
        }
        return Outcome{worst < 1e-14, fmt("max |char_eval(0)| = %.3g over 100 draws (tol 1e-14)", worst)};
    });

    report("C2", "delay-free closed form", [&] {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const double th = mode_angle(k, 20);
            const Complex expected = -(defaults.k_p - defaults.k_n) + defaults.k_p * std::polar(1.0, th) -
                                     defaults.k_n * std::polar(1.0, -th);
            worst = std::max(worst, std::abs(rightmost_roots(k, defaults, {}, 1).front().lambda - expected));
        }
        return Outcome{worst < 1e-10, fmt("max root error %.3g over k = 0..19 (tol 1e-10)", worst)};
    });

    // Shared by C3 and C4.
    const RingParams p3 = defaults.with_delays(0.6, 0.4);
    const StateVector x0 = seeded_state(20, 1);
    const double dt3 = default_dt(p3);
    const auto full = integrate_full(p3, constant_history(x0, p3), 50.0, dt3);

    report("C3", "modal/full equivalence", [&] {
        const ModeSpectrum z0 = to_modes(x0);
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const auto mode = integrate_mode(mode_angle(k, 20), p3, z0(k), 50.0, dt3);
            if (mode.size() != full.size()) return Outcome{false, "sample grids differ"};
            for (std::size_t m = 0; m < full.size(); ++m) {
                worst = std::max(worst, std::abs(to_modes(full.samples[m])(k) - mode.samples[m](0)));
            }
        }
        return Outcome{worst <= 1e-6, fmt("max |to_modes(x)_k - z_k| = %.3g over t in [0,50] (tol 1e-6)", worst)};
    });

    report("C4", "Parseval", [&] {
        double worst_abs = 0.0, worst_rel = 0.0;
        for (const auto& x : full.samples) {
            const double v = consensus_error(x);
            const double e = transverse_energy(to_modes(x));
            worst_abs = std::max(worst_abs, std::abs(v - e));
            worst_rel = std::max(worst_rel, std::abs(v - e) / std::max(v, 1e-300));
        }
        return Outcome{worst_rel <= 1e-12,
                       fmt("max relative |V - sum|z_k|^2| = %.3g (abs %.3g; tol 1e-12 relative)", worst_rel, worst_abs)};
    });

    report("C5", "rate consistency", [&] {
        const std::pair<double, double> points[] = {{0.3, 0.3}, {0.9, 0.9}, {1.5, 1.5}, {3.0, 3.0}, {1.5, 0.5}};
        const ClassifierConfig cls;
        std::string detail;
        bool ok = true;
        for (const auto& [t1, t2] : points) {
            const RingParams p = defaults.with_delays(t1, t2);
            const double alpha = spectral_abscissa(p).value;
            const ErrorSeries s = error_series(integrate_full(p, constant_history(x0, p), cls.horizon, default_dt(p)));
            const double t_last = s.times.back();
            const auto rate = fit_rate(s, t_last - cls.rate_window * t_last, t_last);
            const double rel = rate ? std::abs(*rate - 2.0 * alpha) / std::abs(2.0 * alpha) : 1.0;
            ok = ok && std::abs(alpha) > 0.05 && rel <= 0.1;
            detail += fmt("(%.1f,%.1f) 2a=%.4f fit=%.4f rel=%.3f; ", t1, t2, 2.0 * alpha, rate ? *rate : 0.0, rel);
        }
        return Outcome{ok, detail + "tol 10%"};
    });

    report("C6", "crossing-point certification", [&] {
        const DelayWindow window;
        std::size_t count = 0;
        double worst = 0.0, max_omega = 0.0;
        for (int k = 1; k < 20; ++k) {
            for (const CrossingCurve& c : trace_curves(k, defaults, window, 400)) {
                for (const CrossingPoint& cp : c.points) {
                    ++count;
                    const RingParams p = defaults.with_delays(cp.tau1, cp.tau2);
                    worst = std::max(worst, std::abs(char_eval({0.0, cp.omega}, mode_angle(k, 20), p)));
                    max_omega = std::max(max_omega, cp.omega);
                }
            }
        }
        const bool ok = count > 0 && worst < 1e-10 && max_omega * max_omega <= 4.0 * defaults.k_p * defaults.k_n;
        return Outcome{ok, fmt("%zu points, max residual %.3g (tol 1e-10), max omega^2 %.6g <= %.6g", count, worst,
                               max_omega * max_omega, 4.0 * defaults.k_p * defaults.k_n)};
    });

    // Shared by C7 and C8: the default 61x61 sweep over [0,3]^2 with both labels.
    SweepConfig sweep_cfg;
    sweep_cfg.method = SweepMethod::Both;
    std::optional<PhaseDiagram> diagram;

    report("C7", "boundary agreement", [&] {
        diagram = phase_sweep(sweep_cfg, 8);
        const double cell = (sweep_cfg.tau1_range.hi - sweep_cfg.tau1_range.lo) / (sweep_cfg.resolution - 1);
        const auto lines = detect_boundary(*diagram, Regime::Consensus, std::nullopt);
        const auto envelope = stability_envelope(defaults, DelayWindow{}, 400);
        const double agreement = boundary_agreement(lines, envelope, 2.0 * cell);
        return Outcome{agreement >= 0.8, fmt("%zu boundary polylines, %zu envelope points, %.1f%% of length within "
                                             "%.2f (need 80%%)",
                                             lines.size(), envelope.size(), 100.0 * agreement, 2.0 * cell)};
    });

    report("C8", "three regimes", [&] {
        if (!diagram) return Outcome{false, "sweep unavailable"};
        int counts[3] = {0, 0, 0};
        int failed = 0;
        for (const Cell& c : diagram->cells) {
            if (c.label) ++counts[static_cast<int>(*c.label)];
            else ++failed;
        }
        int first = -1;
        for (int s = 0; s < sweep_cfg.resolution && first < 0; ++s) {
            if (diagram->at(s, s).label != Regime::Consensus) first = s;
        }
        const bool ok = counts[0] > 0 && counts[1] > 0 && counts[2] > 0 && first > 0;
        return Outcome{ok, fmt("consensus=%d bounded=%d unstable=%d failed=%d; first non-consensus diagonal cell at "
                               "tau=%.2f",
                               counts[0], counts[1], counts[2], failed, first >= 0 ? sweep_cfg.tau1_at(first) : -1.0)};
    });

    report("C9", "determinism", [] {
        const fs::path root = fs::temp_directory_path() / "ringdelay_acceptance";
        fs::remove_all(root);
        RunConfig cfg;
        std::ostringstream log;
        cfg.workers = 1;
        run_sweep(cfg, root / "w1", log);
        cfg.workers = 8;
        run_sweep(cfg, root / "w8", log);
        cfg.workers = 8;
        run_sweep(cfg, root / "w8_again", log);
        bool ok = true;
        for (const char* f : {"phase_labels.csv", "phase_diagram.ppm"}) {
            const std::string a = slurp(root / "w1" / f);
            ok = ok && !a.empty() && a == slurp(root / "w8" / f) && a == slurp(root / "w8_again" / f);
        }
        return Outcome{ok, "phase_labels.csv and phase_diagram.ppm byte-identical across workers 1, 8, 8"};
    });

    report("C10", "integrator order", [&] {
        const RingParams p = defaults.with_delays(0.3, 0.3);
        const double dt = 0.3 / 8.0;
        // 9.6 is a whole number of steps for every dt used, so all runs end at the same time.
        auto endpoint = [&](double h) { return integrate_full(p, constant_history(x0, p), 9.6, h).samples.back(); };
        const StateVector a = endpoint(dt), b = endpoint(dt / 2), c = endpoint(dt / 4);
        const double factor = (a - b).norm() / (b - c).norm();
        return Outcome{factor >= 12.0 && factor <= 20.0, fmt("self-convergence factor %.2f (need [12, 20])", factor)};
    });

    std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
