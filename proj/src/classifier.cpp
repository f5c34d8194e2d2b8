#include "ringdelay/classifier.hpp"

#include <algorithm>
#include <cmath>

namespace ringdelay {

std::string_view regime_name(Regime r) noexcept {
    switch (r) {
        case Regime::Consensus: return "consensus";
        case Regime::Bounded: return "bounded";
        case Regime::Unstable: return "unstable";
    }
    return "unknown";
}

Regime parse_regime(std::string_view text) {
    if (text == "consensus") return Regime::Consensus;
    if (text == "bounded") return Regime::Bounded;
    if (text == "unstable") return Regime::Unstable;
    throw ConfigError("unknown regime label '" + std::string(text) + "'");
}

void ClassifierConfig::validate() const {
    if (!(horizon > 0.0)) throw ConfigError("classifier horizon must be positive");
    if (!(consensus_tol > 0.0 && consensus_tol < 1.0)) throw ConfigError("consensus_tol must lie in (0, 1)");
    if (!(blowup_factor > 1.0)) throw ConfigError("blowup_factor must exceed 1");
    if (!(rate_window > 0.0 && rate_window < 1.0)) throw ConfigError("rate_window must lie in (0, 1)");
    if (!(rate_threshold > 0.0)) throw ConfigError("rate_threshold must be positive");
}

double consensus_error(const Eigen::Ref<const StateVector>& x) {
    const double mean = x.mean();
    return (x.array() - mean).square().mean();
}

ErrorSeries error_series(const Trajectory<double>& traj) {
    ErrorSeries s;
    s.times.reserve(traj.size());
    s.values.reserve(traj.size());
    for (std::size_t m = 0; m < traj.size(); ++m) {
        s.times.push_back(traj.time(m));
        s.values.push_back(consensus_error(traj.samples[m]));
    }
    s.truncated = traj.truncated;
    return s;
}

std::optional<double> fit_rate(const ErrorSeries& series, double t_begin, double t_end) {
    double sum_t = 0.0, sum_y = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const double t = series.times[i];
        if (t < t_begin || t > t_end) continue;
        const double v = series.values[i];
        if (v == 0.0) return std::nullopt;
        if (!(v > 0.0) || !std::isfinite(v)) continue;
        sum_t += t;
        sum_y += std::log(v);
        ++count;
    }
    if (count < 10) throw NumericalFailure("fit_rate: fewer than 10 positive samples in the window");
    const double mean_t = sum_t / static_cast<double>(count);
    const double mean_y = sum_y / static_cast<double>(count);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        const double t = series.times[i];
        const double v = series.values[i];
        if (t < t_begin || t > t_end || !(v > 0.0) || !std::isfinite(v)) continue;
        sxx += (t - mean_t) * (t - mean_t);
        sxy += (t - mean_t) * (std::log(v) - mean_y);
    }
    if (!(sxx > 0.0)) throw NumericalFailure("fit_rate: degenerate time window");
    return sxy / sxx;
}

Regime classify(const ErrorSeries& series, const ClassifierConfig& cfg) {
    if (series.values.empty()) throw ContractViolation("classify: empty error series");
    if (series.truncated) return Regime::Unstable;
    const double v0 = series.values.front();
    if (v0 == 0.0) return Regime::Consensus;

    const double vmax = *std::max_element(series.values.begin(), series.values.end());
    if (!std::isfinite(vmax) || vmax > cfg.blowup_factor * v0) return Regime::Unstable;

    const double t_last = series.times.back();
    const double span = std::min(cfg.horizon, t_last - series.times.front());
    std::optional<double> rate;
    try {
        rate = fit_rate(series, t_last - cfg.rate_window * span, t_last);
    } catch (const NumericalFailure&) {
        rate.reset();  // too few samples: decide on the endpoint test alone
    }
    if (rate && *rate >= cfg.rate_threshold) return Regime::Unstable;

    const double v_final = series.values.back();
    if (v_final <= cfg.consensus_tol * v0) return Regime::Consensus;
    if (rate && *rate <= -cfg.rate_threshold) return Regime::Consensus;
    return Regime::Bounded;
}

}  // namespace ringdelay
