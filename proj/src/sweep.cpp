#include "ringdelay/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

namespace ringdelay {

std::string_view method_name(SweepMethod m) noexcept {
    switch (m) {
        case SweepMethod::Simulate: return "simulate";
        case SweepMethod::Spectral: return "spectral";
        case SweepMethod::Both: return "both";
    }
    return "unknown";
}

SweepMethod parse_method(std::string_view text) {
    if (text == "simulate") return SweepMethod::Simulate;
    if (text == "spectral") return SweepMethod::Spectral;
    if (text == "both") return SweepMethod::Both;
    throw ConfigError("unknown sweep method '" + std::string(text) + "'");
}

void SweepConfig::validate() const {
    if (resolution < 2) throw ConfigError("sweep resolution must be >= 2");
    for (const Interval& r : {tau1_range, tau2_range}) {
        if (!(r.lo >= 0.0) || !(r.hi >= r.lo) || !std::isfinite(r.hi)) {
            throw ConfigError("sweep ranges must be nonnegative intervals");
        }
    }
    base.validate();
    classifier.validate();
    roots.validate();
    if (dt && !(*dt > 0.0)) throw ConfigError("sweep dt must be positive");
}

double SweepConfig::tau1_at(int i) const noexcept {
    return tau1_range.lo + (tau1_range.hi - tau1_range.lo) * i / (resolution - 1);
}

double SweepConfig::tau2_at(int j) const noexcept {
    return tau2_range.lo + (tau2_range.hi - tau2_range.lo) * j / (resolution - 1);
}

Regime spectral_regime(double abscissa, const ClassifierConfig& cfg) noexcept {
    const double rate = 2.0 * abscissa;
    if (rate >= cfg.rate_threshold) return Regime::Unstable;
    if (rate <= -cfg.rate_threshold) return Regime::Consensus;
    return Regime::Bounded;
}

Cell evaluate_cell(const SweepConfig& cfg, double tau1, double tau2, const StateVector& x0) {
    Cell cell;
    const RingParams p = cfg.base.with_delays(tau1, tau2);

    if (cfg.method != SweepMethod::Spectral) {
        try {
            const double dt = cfg.dt ? *cfg.dt : default_dt(p);
            const auto traj = integrate_full(p, HistoryFunction<double>::constant(x0, p.max_delay()),
                                             cfg.classifier.horizon, dt);
            const ErrorSeries series = error_series(traj);
            cell.simulated = classify(series, cfg.classifier);
            if (!series.truncated && series.values.front() > 0.0) {
                const double t_last = series.times.back();
                try {
                    cell.rate = fit_rate(series, t_last - cfg.classifier.rate_window * t_last, t_last);
                } catch (const NumericalFailure&) {
                }
            }
        } catch (const Error& e) {
            cell.failure = e.what();
        }
    }
    if (cfg.method != SweepMethod::Simulate) {
        try {
            cell.abscissa = spectral_abscissa(p, cfg.roots).value;
            cell.spectral = spectral_regime(*cell.abscissa, cfg.classifier);
        } catch (const NumericalFailure& e) {
            if (cell.failure.empty()) cell.failure = e.what();
        }
    }
    cell.label = cfg.method == SweepMethod::Spectral ? cell.spectral : cell.simulated;
    return cell;
}

PhaseDiagram phase_sweep(const SweepConfig& cfg, int workers) {
    cfg.validate();
    if (workers < 1) throw ConfigError("workers must be >= 1");
    const int res = cfg.resolution;
    const std::size_t total = static_cast<std::size_t>(res) * static_cast<std::size_t>(res);

    PhaseDiagram diagram;
    diagram.config = cfg;
    diagram.cells.resize(total);
    const StateVector x0 = seeded_state(cfg.base.n, cfg.seed);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            const int i = static_cast<int>(idx % static_cast<std::size_t>(res));
            const int j = static_cast<int>(idx / static_cast<std::size_t>(res));
            diagram.cells[idx] = evaluate_cell(cfg, cfg.tau1_at(i), cfg.tau2_at(j), x0);
        }
    };
    const auto count = static_cast<std::size_t>(std::min<std::size_t>(static_cast<std::size_t>(workers), total));
    if (count <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(count);
        for (std::size_t w = 0; w < count; ++w) pool.emplace_back(work);
    }

    diagram.boundary = detect_boundary(diagram, Regime::Consensus, Regime::Bounded);
    return diagram;
}

namespace {

// Edge ids: horizontal edge (i,j)-(i+1,j) and vertical edge (i,j)-(i,j+1).
struct EdgeId {
    bool vertical;
    int i;
    int j;
    auto operator<=>(const EdgeId&) const = default;
};

}  // namespace

std::vector<Polyline> detect_boundary(const PhaseDiagram& diagram, Regime from, std::optional<Regime> to) {
    const int res = diagram.resolution();
    const SweepConfig& cfg = diagram.config;
    auto is_from = [&](int i, int j) { return diagram.at(i, j).label == from; };
    auto is_to = [&](int i, int j) {
        const auto& l = diagram.at(i, j).label;
        return to ? l == *to : l != from;
    };
    auto endpoints = [&](const EdgeId& e) {
        return std::pair{std::pair{e.i, e.j}, e.vertical ? std::pair{e.i, e.j + 1} : std::pair{e.i + 1, e.j}};
    };
    auto differs = [&](const EdgeId& e) {
        const auto [a, b] = endpoints(e);
        return is_from(a.first, a.second) != is_from(b.first, b.second);
    };
    auto qualifies = [&](const EdgeId& e) {
        const auto [a, b] = endpoints(e);
        return (is_from(a.first, a.second) && is_to(b.first, b.second)) ||
               (is_from(b.first, b.second) && is_to(a.first, a.second));
    };
    auto midpoint = [&](const EdgeId& e) {
        if (e.vertical) return Point2(cfg.tau1_at(e.i), 0.5 * (cfg.tau2_at(e.j) + cfg.tau2_at(e.j + 1)));
        return Point2(0.5 * (cfg.tau1_at(e.i) + cfg.tau1_at(e.i + 1)), cfg.tau2_at(e.j));
    };

    std::vector<std::pair<EdgeId, EdgeId>> segments;
    for (int j = 0; j + 1 < res; ++j) {
        for (int i = 0; i + 1 < res; ++i) {
            const EdgeId bottom{false, i, j}, top{false, i, j + 1};
            const EdgeId left{true, i, j}, right{true, i + 1, j};
            std::vector<EdgeId> crossing;
            for (const EdgeId& e : {bottom, right, top, left}) {
                if (differs(e)) crossing.push_back(e);
            }
            std::vector<std::pair<EdgeId, EdgeId>> local;
            if (crossing.size() == 2) {
                local.emplace_back(crossing[0], crossing[1]);
            } else if (crossing.size() == 4) {
                // Saddle: always separate the bottom-left and top-right corners.
                local.emplace_back(left, bottom);
                local.emplace_back(top, right);
            }
            for (const auto& s : local) {
                if (qualifies(s.first) && qualifies(s.second)) segments.push_back(s);
            }
        }
    }

    std::map<EdgeId, std::vector<std::size_t>> incident;
    for (std::size_t s = 0; s < segments.size(); ++s) {
        incident[segments[s].first].push_back(s);
        incident[segments[s].second].push_back(s);
    }
    std::vector<bool> used(segments.size(), false);
    std::vector<Polyline> polylines;

    auto walk = [&](std::size_t start, const EdgeId& start_edge) {
        Polyline line{midpoint(start_edge)};
        EdgeId at = start_edge;
        std::size_t seg = start;
        while (true) {
            used[seg] = true;
            const EdgeId other = segments[seg].first == at ? segments[seg].second : segments[seg].first;
            line.push_back(midpoint(other));
            at = other;
            const auto& next = incident[at];
            const auto it = std::find_if(next.begin(), next.end(), [&](std::size_t s) { return !used[s]; });
            if (it == next.end()) break;
            seg = *it;
        }
        polylines.push_back(std::move(line));
    };

    // Open chains start at edges touched by a single segment; closed loops afterwards.
    for (std::size_t s = 0; s < segments.size(); ++s) {
        if (used[s]) continue;
        for (const EdgeId& e : {segments[s].first, segments[s].second}) {
            if (!used[s] && incident[e].size() == 1) walk(s, e);
        }
    }
    for (std::size_t s = 0; s < segments.size(); ++s) {
        if (!used[s]) walk(s, segments[s].first);
    }
    return polylines;
}

double boundary_agreement(const std::vector<Polyline>& polylines, const std::vector<CrossingPoint>& reference,
                          double tolerance) {
    double total = 0.0, within = 0.0;
    for (const Polyline& line : polylines) {
        for (std::size_t s = 0; s + 1 < line.size(); ++s) {
            const double len = (line[s + 1] - line[s]).norm();
            const Point2 mid = 0.5 * (line[s] + line[s + 1]);
            double best = std::numeric_limits<double>::infinity();
            for (const CrossingPoint& cp : reference) {
                best = std::min(best, (Point2(cp.tau1, cp.tau2) - mid).norm());
            }
            total += len;
            if (best <= tolerance) within += len;
        }
    }
    return total > 0.0 ? within / total : 0.0;
}

}  // namespace ringdelay
