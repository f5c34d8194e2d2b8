#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ringdelay/integrator.hpp"

namespace ringdelay {

enum class Regime { Consensus, Bounded, Unstable };

[[nodiscard]] std::string_view regime_name(Regime r) noexcept;
/// Inverse of regime_name; throws ConfigError on unknown text.
[[nodiscard]] Regime parse_regime(std::string_view text);

struct ClassifierConfig {
    double horizon = 100.0;          ///< T
    double consensus_tol = 1e-8;     ///< epsilon, relative to V(0)
    double blowup_factor = 1e6;      ///< M, relative to V(0)
    double rate_window = 0.4;        ///< trailing fraction of the horizon used for the rate fit
    double rate_threshold = 0.02;    ///< rho, per time unit

    void validate() const;
};

/// Consensus error V(t) sampled along a trajectory.
struct ErrorSeries {
    std::vector<double> times;
    std::vector<double> values;
    bool truncated = false;
};

/// (1/n) sum (x_i - mean)^2
[[nodiscard]] double consensus_error(const Eigen::Ref<const StateVector>& x);

[[nodiscard]] ErrorSeries error_series(const Trajectory<double>& traj);

/// Least-squares slope of ln V over [t_begin, t_end]. Returns nullopt when V is
/// exactly zero somewhere in the window (perfect consensus). Throws
/// NumericalFailure when fewer than 10 positive samples fall in the window.
[[nodiscard]] std::optional<double> fit_rate(const ErrorSeries& series, double t_begin, double t_end);

/// Unstable first, then Consensus, Bounded otherwise.
[[nodiscard]] Regime classify(const ErrorSeries& series, const ClassifierConfig& cfg);

}  // namespace ringdelay
