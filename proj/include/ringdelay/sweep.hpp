#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ringdelay/charroots.hpp"
#include "ringdelay/classifier.hpp"
#include "ringdelay/crossing.hpp"

namespace ringdelay {

enum class SweepMethod { Simulate, Spectral, Both };

[[nodiscard]] std::string_view method_name(SweepMethod m) noexcept;
[[nodiscard]] SweepMethod parse_method(std::string_view text);

struct Interval {
    double lo = 0.0;
    double hi = 3.0;
};

struct SweepConfig {
    Interval tau1_range;
    Interval tau2_range;
    int resolution = 61;  ///< grid nodes per axis
    RingParams base;      ///< delays ignored
    std::uint64_t seed = 1;
    ClassifierConfig classifier;
    RootScanOptions roots;
    SweepMethod method = SweepMethod::Simulate;
    std::optional<double> dt;  ///< per-cell default_dt when empty

    void validate() const;
    [[nodiscard]] double tau1_at(int i) const noexcept;
    [[nodiscard]] double tau2_at(int j) const noexcept;
};

/// Outcome of one grid node. `label` is empty when the cell failed numerically.
struct Cell {
    std::optional<Regime> label;
    std::optional<Regime> simulated;
    std::optional<Regime> spectral;
    std::optional<double> abscissa;
    std::optional<double> rate;
    std::string failure;
};

using Point2 = Eigen::Vector2d;
using Polyline = std::vector<Point2>;

struct PhaseDiagram {
    SweepConfig config;
    std::vector<Cell> cells;        ///< index j * resolution + i (i along tau1, j along tau2)
    std::vector<Polyline> boundary; ///< Consensus -> Bounded transition

    [[nodiscard]] int resolution() const noexcept { return config.resolution; }
    [[nodiscard]] const Cell& at(int i, int j) const { return cells.at(static_cast<std::size_t>(j * config.resolution + i)); }
    [[nodiscard]] Cell& at(int i, int j) { return cells.at(static_cast<std::size_t>(j * config.resolution + i)); }
};

/// Maps a spectral abscissa to a regime; V grows at twice the abscissa, so the
/// dead band is |2 * abscissa| < rate_threshold.
[[nodiscard]] Regime spectral_regime(double abscissa, const ClassifierConfig& cfg) noexcept;

/// Evaluates one (tau1, tau2) node from the constant history x0.
[[nodiscard]] Cell evaluate_cell(const SweepConfig& cfg, double tau1, double tau2, const StateVector& x0);

/// Evaluates every node on `workers` threads; the result does not depend on `workers`.
[[nodiscard]] PhaseDiagram phase_sweep(const SweepConfig& cfg, int workers = 1);

/// Marching-squares edge extraction between nodes labelled `from` and nodes
/// labelled `to` (any other label, failures included, when `to` is empty).
/// Vertices sit at edge midpoints.
[[nodiscard]] std::vector<Polyline> detect_boundary(const PhaseDiagram& diagram, Regime from,
                                                    std::optional<Regime> to);

/// Fraction of the total polyline length whose segment midpoints lie within
/// `tolerance` of some reference point.
[[nodiscard]] double boundary_agreement(const std::vector<Polyline>& polylines,
                                        const std::vector<CrossingPoint>& reference, double tolerance);

}  // namespace ringdelay
