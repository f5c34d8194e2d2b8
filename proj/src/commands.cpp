#include "ringdelay/commands.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>

#include "ringdelay/charroots.hpp"
#include "ringdelay/csv.hpp"
#include "ringdelay/modal.hpp"
#include "ringdelay/plot.hpp"

namespace ringdelay {
namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(const std::exception& e) noexcept {
    if (dynamic_cast<const IoError*>(&e)) return kExitIo;
    if (dynamic_cast<const NumericalFailure*>(&e)) return kExitNumerical;
    return kExitUsage;
}

void prepare_output_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
    const fs::path probe = dir / ".write_probe";
    {
        std::ofstream os(probe);
        if (!os) throw IoError("output directory '" + dir.string() + "' is not writable");
    }
    fs::remove(probe, ec);
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    os << text;
    if (!os) throw IoError("write failed for '" + path.string() + "'");
}

void write_metadata(const fs::path& dir, const json& meta) { write_text(dir / "metadata.json", meta.dump(2) + "\n"); }

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json history_description(const RunConfig& cfg) {
    return {{"kind", "constant"}, {"distribution", "uniform[-1,1)"}, {"generator", "mt19937_64"}, {"seed", cfg.seed}};
}

}  // namespace

void run_simulate(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    cfg.validate();
    prepare_output_dir(out);
    const RingParams& p = cfg.model;
    const double dt = cfg.dt ? *cfg.dt : default_dt(p);
    const StateVector x0 = seeded_state(p.n, cfg.seed);
    const auto traj =
        integrate_full(p, HistoryFunction<double>::constant(x0, p.max_delay()), cfg.classifier.horizon, dt);
    const ErrorSeries series = error_series(traj);
    const Regime regime = classify(series, cfg.classifier);

    std::optional<double> rate;
    if (!series.truncated && series.values.front() > 0.0) {
        const double t_last = series.times.back();
        try {
            rate = fit_rate(series, t_last - cfg.classifier.rate_window * t_last, t_last);
        } catch (const NumericalFailure&) {
        }
    }
    std::optional<double> abscissa;
    try {
        abscissa = spectral_abscissa(p, cfg.roots).value;
    } catch (const NumericalFailure& e) {
        log << "spectral abscissa unavailable: " << e.what() << "\n";
    }

    CsvTable trajectory;
    trajectory.header.push_back("t");
    for (int i = 1; i <= p.n; ++i) trajectory.header.push_back("x_" + std::to_string(i));
    CsvTable error;
    error.header = {"t", "V"};
    for (std::size_t m = 0; m < traj.size(); ++m) {
        std::vector<std::string> row{format_double(traj.time(m))};
        for (int i = 0; i < p.n; ++i) row.push_back(format_double(traj.samples[m](i)));
        trajectory.rows.push_back(std::move(row));
        error.rows.push_back({format_double(series.times[m]), format_double(series.values[m])});
    }
    write_csv(out / "trajectory.csv", trajectory);
    write_csv(out / "consensus_error.csv", error);

    char title[160];
    std::snprintf(title, sizeof title, "Consensus error V(t), tau1=%g, tau2=%g (%s)", p.tau1, p.tau2,
                  std::string(regime_name(regime)).c_str());
    write_text(out / "consensus_error.svg", svg_log_plot(series.times, series.values, title));

    json meta = {
        {"command", "simulate"},
        {"config", to_json(cfg)},
        {"dt", dt},
        {"history", history_description(cfg)},
        {"samples", traj.size()},
        {"classification", std::string(regime_name(regime))},
        {"truncated", traj.truncated},
        {"truncation_time", traj.truncated ? json(traj.truncation_time) : json(nullptr)},
        {"rate", optional_number(rate)},
        {"spectral_abscissa", optional_number(abscissa)},
    };
    write_metadata(out, meta);
    log << "simulate: tau1=" << p.tau1 << " tau2=" << p.tau2 << " -> " << regime_name(regime)
        << (traj.truncated ? " (overflow at t=" + format_double(traj.truncation_time) + ")" : "") << "\n";
}

void run_sweep(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    cfg.validate();
    prepare_output_dir(out);
    const PhaseDiagram diagram = phase_sweep(cfg.sweep_config(), cfg.workers);
    const int res = diagram.resolution();

    CsvTable labels;
    labels.header = {"tau1", "tau2", "label", "abscissa"};
    std::map<std::string, int> counts;
    for (int j = 0; j < res; ++j) {
        for (int i = 0; i < res; ++i) {
            const Cell& c = diagram.at(i, j);
            const std::string name = c.label ? std::string(regime_name(*c.label)) : "failed";
            ++counts[name];
            labels.rows.push_back({format_double(diagram.config.tau1_at(i)), format_double(diagram.config.tau2_at(j)),
                                   name, c.abscissa ? format_double(*c.abscissa) : ""});
        }
    }
    write_csv(out / "phase_labels.csv", labels);
    write_ppm(out / "phase_diagram.ppm", render_phase_diagram(diagram, cfg.ppm_scale));

    CsvTable boundary;
    boundary.header = {"kind", "polyline", "vertex", "tau1", "tau2"};
    auto add = [&](const std::string& kind, const std::vector<Polyline>& lines) {
        for (std::size_t l = 0; l < lines.size(); ++l) {
            for (std::size_t v = 0; v < lines[l].size(); ++v) {
                boundary.rows.push_back({kind, std::to_string(l), std::to_string(v), format_double(lines[l][v].x()),
                                         format_double(lines[l][v].y())});
            }
        }
    };
    add("consensus-bounded", diagram.boundary);
    add("consensus-other", detect_boundary(diagram, Regime::Consensus, std::nullopt));
    write_csv(out / "boundary.csv", boundary);

    json meta = {{"command", "sweep"},
                 {"config", to_json(cfg)},
                 {"history", history_description(cfg)},
                 {"label_counts", counts},
                 {"boundary_polylines", diagram.boundary.size()}};
    write_metadata(out, meta);
    log << "sweep: " << res << "x" << res << " cells";
    for (const auto& [name, n] : counts) log << ", " << name << "=" << n;
    log << "\n";
}

int run_roots(const RunConfig& cfg, const std::vector<int>& modes, const fs::path& out, std::ostream& log) {
    cfg.validate();
    prepare_output_dir(out);
    std::vector<int> ks = modes;
    if (ks.empty()) {
        for (int k = 0; k < cfg.model.n; ++k) ks.push_back(k);
    }
    for (int k : ks) {
        if (k < 0 || k >= cfg.model.n) throw ConfigError("mode index " + std::to_string(k) + " out of range");
    }

    std::vector<ComplexRoot> all;
    json failures = json::array();
    for (int k : ks) {
        try {
            const auto roots = rightmost_roots(k, cfg.model, cfg.roots, cfg.root_count);
            all.insert(all.end(), roots.begin(), roots.end());
        } catch (const NumericalFailure& e) {
            failures.push_back({{"k", k}, {"error", e.what()}});
            log << "roots: mode " << k << " failed: " << e.what() << "\n";
        }
    }
    std::stable_sort(all.begin(), all.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
        return a.lambda.real() > b.lambda.real();
    });

    CsvTable table;
    table.header = {"k", "re", "im", "residual"};
    for (const ComplexRoot& r : all) {
        table.rows.push_back({std::to_string(r.k), format_double(r.lambda.real()), format_double(r.lambda.imag()),
                              format_double(r.residual)});
    }
    write_csv(out / "roots.csv", table);
    write_metadata(out, {{"command", "roots"}, {"config", to_json(cfg)}, {"modes", ks}, {"failures", failures}});
    log << "roots: " << all.size() << " roots over " << ks.size() << " modes\n";
    return failures.size() == ks.size() ? kExitNumerical : kExitOk;
}

void run_boundary(const RunConfig& cfg, bool with_envelope, const fs::path& out, std::ostream& log) {
    cfg.validate();
    prepare_output_dir(out);
    const DelayWindow window = cfg.window();

    CsvTable table;
    table.header = {"curve", "k", "omega", "tau1", "tau2", "m1", "m2", "sign", "residual"};
    auto row = [](const std::string& curve, const CrossingPoint& cp) {
        return std::vector<std::string>{curve,
                                        std::to_string(cp.k),
                                        format_double(cp.omega),
                                        format_double(cp.tau1),
                                        format_double(cp.tau2),
                                        std::to_string(cp.m1),
                                        std::to_string(cp.m2),
                                        std::to_string(cp.sign),
                                        format_double(cp.residual)};
    };
    std::size_t curve_id = 0;
    for (int k = 1; k < cfg.model.n; ++k) {
        for (const CrossingCurve& curve : trace_curves(k, cfg.model, window, cfg.omega_samples)) {
            for (const CrossingPoint& cp : curve.points) table.rows.push_back(row(std::to_string(curve_id), cp));
            ++curve_id;
        }
    }
    write_csv(out / "crossing_curves.csv", table);

    json meta = {{"command", "boundary"}, {"config", to_json(cfg)}, {"curves", curve_id}, {"points", table.rows.size()}};
    if (with_envelope) {
        CsvTable env;
        env.header = table.header;
        for (const CrossingPoint& cp : stability_envelope(cfg.model, window, cfg.omega_samples, cfg.roots)) {
            env.rows.push_back(row("envelope", cp));
        }
        write_csv(out / "envelope.csv", env);
        meta["envelope_points"] = env.rows.size();
    }
    write_metadata(out, meta);
    log << "boundary: " << curve_id << " crossing curves, " << table.rows.size() << " points\n";
}

void run_modes(const RunConfig& cfg, const std::optional<fs::path>& input, const fs::path& out, std::ostream& log) {
    cfg.validate();
    std::vector<std::pair<double, StateVector>> states;
    if (input) {
        const CsvTable traj = read_csv(*input);
        const std::size_t tcol = traj.column("t");
        const auto n = static_cast<Eigen::Index>(traj.header.size() - 1);
        if (n < 2) throw ConfigError("modes: input needs at least two state columns");
        for (std::size_t r = 0; r < traj.rows.size(); ++r) {
            StateVector x(n);
            for (Eigen::Index i = 0; i < n; ++i) x(i) = traj.number(r, traj.column("x_" + std::to_string(i + 1)));
            states.emplace_back(traj.number(r, tcol), std::move(x));
        }
    } else {
        states.emplace_back(0.0, seeded_state(cfg.model.n, cfg.seed));
    }
    prepare_output_dir(out);

    CsvTable table;
    table.header = {"t", "k", "re", "im", "abs"};
    for (const auto& [t, x] : states) {
        const ModeSpectrum z = to_modes(x);
        for (Eigen::Index k = 0; k < z.size(); ++k) {
            table.rows.push_back({format_double(t), std::to_string(k), format_double(z(k).real()),
                                  format_double(z(k).imag()), format_double(std::abs(z(k)))});
        }
    }
    write_csv(out / "modes.csv", table);
    write_metadata(out, {{"command", "modes"},
                         {"config", to_json(cfg)},
                         {"input", input ? json(input->string()) : json(nullptr)},
                         {"rows", states.size()}});
    log << "modes: transformed " << states.size() << " state(s)\n";
}

}  // namespace ringdelay
