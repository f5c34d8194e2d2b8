#include "ringdelay/integrator.hpp"

#include <algorithm>
#include <random>

namespace ringdelay {

double default_dt(const RingParams& p) noexcept {
    const double tau_min = p.min_positive_delay();
    if (tau_min == 0.0) return 0.01;
    return std::min(0.01, tau_min / 8.0);
}

void check_step(double tau1, double tau2, double t_end, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("step size dt must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be positive");
    const RingParams probe{2, 1.0, 1.0, tau1, tau2};
    const double tau_min = probe.min_positive_delay();
    if (tau_min > 0.0 && dt > tau_min / 4.0 * (1.0 + 1e-12)) {
        throw ConfigError("step size dt must not exceed a quarter of the smallest positive delay");
    }
}

Trajectory<double> integrate_full(const RingParams& p, const HistoryFunction<double>& history,
                                  double t_end, double dt) {
    p.validate();
    if (history.dimension() != p.n) throw ContractViolation("integrate_full: history length != n");
    auto rhs = [&p](const StateVector& now, const StateVector& d1, const StateVector& d2) {
        return full_rhs(now, d1, d2, p);
    };
    return integrate_dde<double>(rhs, p.tau1, p.tau2, history, t_end, dt);
}

Trajectory<Complex> integrate_mode(double theta, const RingParams& p, Complex history, double t_end,
                                   double dt) {
    p.validate();
    auto rhs = [&p, theta](const ModeSpectrum& now, const ModeSpectrum& d1, const ModeSpectrum& d2) {
        ModeSpectrum out(1);
        out(0) = mode_rhs(now(0), d1(0), d2(0), theta, p);
        return out;
    };
    ModeSpectrum init(1);
    init(0) = history;
    return integrate_dde<Complex>(rhs, p.tau1, p.tau2,
                                  HistoryFunction<Complex>::constant(init, p.max_delay()), t_end, dt);
}

StateVector seeded_state(int n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    StateVector x(n);
    for (int i = 0; i < n; ++i) {
        const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        x(i) = 2.0 * unit - 1.0;
    }
    return x;
}

}  // namespace ringdelay
