#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "ringdelay/model.hpp"

namespace ringdelay {

/// Uniformly sampled solution of a delay system together with the right-hand
/// side at every sample, which is what cubic Hermite dense output needs.
template <typename Scalar>
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<Vector<Scalar>> samples;
    std::vector<Vector<Scalar>> derivative_samples;
    bool truncated = false;
    double truncation_time = std::numeric_limits<double>::quiet_NaN();

    [[nodiscard]] std::size_t size() const noexcept { return samples.size(); }
    [[nodiscard]] double time(std::size_t m) const noexcept { return t0 + static_cast<double>(m) * dt; }
    [[nodiscard]] double t_last() const noexcept { return time(samples.size() - 1); }

    /// Cubic Hermite interpolation on [t0, t_last]; node values are returned bit for bit.
    [[nodiscard]] Vector<Scalar> interpolate(double t) const {
        const std::size_t count = samples.size();
        if (count == 0) throw ContractViolation("Trajectory::interpolate: empty trajectory");
        if (!(t >= t0) || t > t_last()) {
            throw ContractViolation("Trajectory::interpolate: time outside the computed range");
        }
        const double u = (t - t0) / dt;
        const auto nearest = static_cast<std::size_t>(std::llround(u));
        if (nearest < count && time(nearest) == t) return samples[nearest];

        std::size_t m = static_cast<std::size_t>(std::floor(u));
        if (m + 1 >= count) m = count - 2;
        if (m + 1 >= derivative_samples.size()) {
            throw ContractViolation("Trajectory::interpolate: derivative samples missing");
        }
        const double s = (t - time(m)) / dt;
        const double one_minus = 1.0 - s;
        const double h00 = (1.0 + 2.0 * s) * one_minus * one_minus;
        const double h10 = s * one_minus * one_minus;
        const double h01 = s * s * (3.0 - 2.0 * s);
        const double h11 = s * s * (s - 1.0);
        return Scalar(h00) * samples[m] + Scalar(h10 * dt) * derivative_samples[m] +
               Scalar(h01) * samples[m + 1] + Scalar(h11 * dt) * derivative_samples[m + 1];
    }
};

/// Initial function of the delay system on [-span, 0].
template <typename Scalar>
class HistoryFunction {
public:
    enum class Kind { Constant, Sampled };

    static HistoryFunction constant(Vector<Scalar> value, double span) {
        if (!value.allFinite()) throw ContractViolation("HistoryFunction: non-finite history value");
        HistoryFunction h;
        h.kind_ = Kind::Constant;
        h.value_ = std::move(value);
        h.span_ = span;
        return h;
    }

    /// `source` must cover [-span, 0] and is evaluated by Hermite interpolation.
    static HistoryFunction sampled(std::shared_ptr<const Trajectory<Scalar>> source, double span) {
        if (!source || source->size() < 2) throw ContractViolation("HistoryFunction: empty source");
        if (source->t0 > -span + 1e-12 * (1.0 + span) || source->t_last() < 0.0) {
            throw ContractViolation("HistoryFunction: source does not cover [-span, 0]");
        }
        for (const auto& v : source->samples) {
            if (!v.allFinite()) throw ContractViolation("HistoryFunction: non-finite history value");
        }
        HistoryFunction h;
        h.kind_ = Kind::Sampled;
        h.source_ = std::move(source);
        h.span_ = span;
        h.value_ = h.source_->interpolate(0.0);
        return h;
    }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double span() const noexcept { return span_; }
    [[nodiscard]] Eigen::Index dimension() const noexcept { return value_.size(); }

    /// Value at t in [-span, 0].
    [[nodiscard]] Vector<Scalar> operator()(double t) const {
        if (t > 0.0 || t < -span_ * (1.0 + 1e-12) - 1e-15) {
            throw ContractViolation("HistoryFunction: time outside [-span, 0]");
        }
        if (kind_ == Kind::Constant) return value_;
        return source_->interpolate(t);
    }

    /// The initial state x(0).
    [[nodiscard]] const Vector<Scalar>& initial_value() const noexcept { return value_; }

private:
    Kind kind_ = Kind::Constant;
    Vector<Scalar> value_;
    std::shared_ptr<const Trajectory<Scalar>> source_;
    double span_ = 0.0;
};

inline constexpr double kOverflowCap = 1e12;

/// min(0.01, tau_min / 8), or 0.01 when both delays vanish.
[[nodiscard]] double default_dt(const RingParams& p) noexcept;

/// Throws ConfigError unless dt > 0, t_end > 0 and dt <= tau_min / 4.
void check_step(double tau1, double tau2, double t_end, double dt);

/// Solution value at any t in [-span, t_last]: the history for t < 0, the
/// Hermite interpolant of the trajectory otherwise.
template <typename Scalar>
[[nodiscard]] Vector<Scalar> history_eval(const Trajectory<Scalar>& traj,
                                          const HistoryFunction<Scalar>& history, double t) {
    if (t < 0.0) return history(t);
    return traj.interpolate(t);
}

/// Method of steps with classical RK4. `rhs(now, delayed1, delayed2)` returns the
/// derivative; delayed states are read from the history/trajectory Hermite
/// interpolant, or from the current stage value when the delay is zero.
template <typename Scalar, typename Rhs>
[[nodiscard]] Trajectory<Scalar> integrate_dde(Rhs&& rhs, double tau1, double tau2,
                                               const HistoryFunction<Scalar>& history, double t_end,
                                               double dt, double overflow_cap = kOverflowCap) {
    check_step(tau1, tau2, t_end, dt);
    const double span = tau1 > tau2 ? tau1 : tau2;
    if (history.span() < span * (1.0 - 1e-12)) {
        throw ContractViolation("integrate_dde: history does not cover the largest delay");
    }

    Trajectory<Scalar> traj;
    traj.t0 = 0.0;
    traj.dt = dt;
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    traj.samples.reserve(steps + 1);
    traj.derivative_samples.reserve(steps + 1);
    traj.samples.push_back(history.initial_value());

    auto delayed = [&](double t, double tau, const Vector<Scalar>& stage) -> Vector<Scalar> {
        if (tau == 0.0) return stage;
        return history_eval(traj, history, t - tau);
    };
    auto field = [&](double t, const Vector<Scalar>& x) -> Vector<Scalar> {
        return rhs(x, delayed(t, tau1, x), delayed(t, tau2, x));
    };

    for (std::size_t m = 0; m < steps; ++m) {
        const double t = traj.time(m);
        const Vector<Scalar> x = traj.samples[m];
        const Vector<Scalar> k1 = field(t, x);
        traj.derivative_samples.push_back(k1);
        const Vector<Scalar> k2 = field(t + 0.5 * dt, x + Scalar(0.5 * dt) * k1);
        const Vector<Scalar> k3 = field(t + 0.5 * dt, x + Scalar(0.5 * dt) * k2);
        const Vector<Scalar> k4 = field(t + dt, x + Scalar(dt) * k3);
        Vector<Scalar> next = x + Scalar(dt / 6.0) * (k1 + Scalar(2.0) * k2 + Scalar(2.0) * k3 + k4);
        const bool blown = !next.allFinite() || next.cwiseAbs().maxCoeff() > overflow_cap;
        traj.samples.push_back(std::move(next));
        if (blown) {
            traj.truncated = true;
            traj.truncation_time = traj.time(m + 1);
            break;
        }
    }
    traj.derivative_samples.push_back(field(traj.t_last(), traj.samples.back()));
    return traj;
}

[[nodiscard]] Trajectory<double> integrate_full(const RingParams& p, const HistoryFunction<double>& history,
                                                double t_end, double dt);

/// Integrates the scalar mode equation for phase theta from a constant complex history.
[[nodiscard]] Trajectory<Complex> integrate_mode(double theta, const RingParams& p, Complex history,
                                                 double t_end, double dt);

/// Deterministic initial state with entries uniform in [-1, 1).
[[nodiscard]] StateVector seeded_state(int n, std::uint64_t seed);

}  // namespace ringdelay
