#pragma once

#include <optional>
#include <vector>

#include "ringdelay/charroots.hpp"

namespace ringdelay {

/// Rectangle in the (tau1, tau2) plane.
struct DelayWindow {
    double tau1_min = 0.0;
    double tau1_max = 3.0;
    double tau2_min = 0.0;
    double tau2_max = 3.0;

    [[nodiscard]] bool contains(double t1, double t2) const noexcept {
        return t1 >= tau1_min && t1 <= tau1_max && t2 >= tau2_min && t2 <= tau2_max;
    }
};

/// Delay pair at which mode k has the purely imaginary root i*omega.
struct CrossingPoint {
    double omega = 0.0;
    double tau1 = 0.0;
    double tau2 = 0.0;
    int k = 0;
    int m1 = 0;
    int m2 = 0;
    int sign = 1;  ///< which of the two circle intersections
    double residual = 0.0;
};

struct CrossingCurve {
    int k = 0;
    int sign = 1;
    std::vector<CrossingPoint> points;  ///< increasing omega
    DelayWindow window;
};

inline constexpr double kCrossingResidualTol = 1e-10;

/// omega^2 <= 4 k_p k_n, i.e. (k_p - k_n) + i omega is reachable as k_p u - k_n v with |u| = |v| = 1.
[[nodiscard]] bool crossing_feasible(double omega, const RingParams& p) noexcept;

/// Largest feasible crossing frequency 2 sqrt(k_p k_n), rounded down if needed.
[[nodiscard]] double max_crossing_frequency(const RingParams& p) noexcept;

/// Solves k_p e^{i(theta_k - omega tau1)} - k_n e^{-i(theta_k + omega tau2)} = (k_p - k_n) + i omega
/// by intersecting two circles. Absent when a delay of the branch would be negative.
/// Throws ContractViolation for infeasible or zero omega.
[[nodiscard]] std::optional<CrossingPoint> crossing_points(double omega, int k, const RingParams& p,
                                                           int m1, int m2, int sign);

/// All crossing curves of mode k inside `window`, sampling omega uniformly on (0, 2 sqrt(k_p k_n)].
[[nodiscard]] std::vector<CrossingCurve> trace_curves(int k, const RingParams& p, const DelayWindow& window,
                                                      int omega_samples);

/// Crossing points of every transverse mode at which no other root lies in the
/// right half-plane, i.e. the points that actually bound the stable region.
[[nodiscard]] std::vector<CrossingPoint> stability_envelope(const RingParams& p, const DelayWindow& window,
                                                            int omega_samples,
                                                            const RootScanOptions& opts = {});

}  // namespace ringdelay
