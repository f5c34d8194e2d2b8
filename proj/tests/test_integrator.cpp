#include <doctest.h>

#include <random>
#include <type_traits>

#include "ringdelay/charroots.hpp"
#include "ringdelay/integrator.hpp"
#include "ringdelay/modal.hpp"

using namespace ringdelay;

static_assert(std::is_same_v<decltype(integrate_full(RingParams{}, HistoryFunction<double>::constant(StateVector{}, 0.0),
                                                     1.0, 0.1)),
                             Trajectory<double>>,
              "full integration stays real");

namespace {

HistoryFunction<double> constant_history(const StateVector& x, const RingParams& p) {
    return HistoryFunction<double>::constant(x, p.max_delay());
}

/// Log-slope of |z(t)| over the trailing half of a mode trajectory.
double mode_growth_rate(const Trajectory<Complex>& traj) {
    std::vector<double> t, y;
    for (std::size_t m = traj.size() / 2; m < traj.size(); ++m) {
        t.push_back(traj.time(m));
        y.push_back(std::log(std::abs(traj.samples[m](0))));
    }
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    const double n = double(t.size());
    return (n * sty - st * sy) / (n * stt - st * st);
}

}  // namespace

TEST_CASE("uniform history is an equilibrium") {
    const RingParams p = RingParams{}.with_delays(0.7, 0.3);
    const auto traj = integrate_full(p, constant_history(StateVector::Constant(p.n, 1.75), p), 100.0, default_dt(p));
    CHECK_FALSE(traj.truncated);
    double dev = 0.0;
    for (const auto& x : traj.samples) dev = std::max(dev, (x.array() - 1.75).abs().maxCoeff());
    CHECK(dev < 1e-12);
}

TEST_CASE("undelayed cooperative ring converges to the mean and conserves the sum") {
    // k_n = 0 lies outside RingParams' invariants, so drive integrate_dde directly.
    const RingParams p{20, 1.0, 0.0, 0.0, 0.0};
    const StateVector x0 = seeded_state(p.n, 99);
    auto rhs = [&p](const StateVector& a, const StateVector& b, const StateVector& c) { return full_rhs(a, b, c, p); };
    const auto traj = integrate_dde<double>(rhs, 0.0, 0.0, HistoryFunction<double>::constant(x0, 0.0), 400.0, 0.01);
    const double sum0 = x0.sum();
    double drift = 0.0;
    for (const auto& x : traj.samples) drift = std::max(drift, std::abs(x.sum() - sum0));
    CHECK(drift < 1e-9);
    CHECK((traj.samples.back().array() - x0.mean()).abs().maxCoeff() < 1e-6);
}

TEST_CASE("self-convergence is fourth order") {
    const RingParams p = RingParams{}.with_delays(0.3, 0.3);
    const StateVector x0 = seeded_state(p.n, 1);
    const double dt = 0.3 / 8.0;
    // 9.6 is a whole number of steps for every dt used, so all runs end at the same time.
    auto endpoint = [&](double h) { return integrate_full(p, constant_history(x0, p), 9.6, h).samples.back(); };
    const StateVector coarse = endpoint(dt), half = endpoint(dt / 2), reference = endpoint(dt / 4);
    const double e1 = (coarse - reference).norm(), e2 = (half - reference).norm();
    MESSAGE("errors " << e1 << " " << e2 << " factor " << e1 / e2);
    CHECK(e1 / e2 >= 12.0);
    CHECK(e1 / e2 <= 20.0);
}

TEST_CASE("consensus mode stays constant") {
    const RingParams p = RingParams{}.with_delays(0.4, 0.9);
    const auto traj = integrate_mode(0.0, p, Complex(0.6, -0.2), 50.0, default_dt(p));
    double dev = 0.0;
    for (const auto& z : traj.samples) dev = std::max(dev, std::abs(z(0) - Complex(0.6, -0.2)));
    CHECK(dev < 1e-12);
}

TEST_CASE("delay-free alternating mode decays like exp(-t)") {
    const RingParams p{20, 1.0, 0.5, 0.0, 0.0};
    const Complex z0(1.0, 0.5);
    const auto traj = integrate_mode(std::numbers::pi, p, z0, 10.0, 0.01);
    double err = 0.0;
    for (std::size_t m = 0; m < traj.size(); ++m) {
        err = std::max(err, std::abs(traj.samples[m](0) - z0 * std::exp(-traj.time(m))));
    }
    CHECK(err < 1e-9);
}

TEST_CASE("mode growth rate agrees with the rightmost root") {
    const RingParams p = RingParams{}.with_delays(0.8, 0.8);
    const double theta = mode_angle(1, p.n);
    const double re = rightmost_roots(theta, p, {}, 1).front().lambda.real();
    const auto traj = integrate_mode(theta, p, Complex(1.0, 0.0), 100.0, default_dt(p));
    const double fitted = mode_growth_rate(traj);
    MESSAGE("root " << re << " fitted " << fitted);
    CHECK(std::abs(fitted - re) <= 0.05 * std::abs(re));
}

TEST_CASE("history_eval") {
    const RingParams p = RingParams{}.with_delays(0.5, 0.25);
    const StateVector x0 = seeded_state(p.n, 4);
    const auto hist = constant_history(x0, p);
    const auto traj = integrate_full(p, hist, 5.0, default_dt(p));

    SUBCASE("nodes are returned bit for bit") {
        for (std::size_t m : {std::size_t{0}, std::size_t{1}, std::size_t{17}, traj.size() - 1}) {
            const StateVector v = history_eval(traj, hist, traj.time(m));
            CHECK((v.array() == traj.samples[m].array()).all());
        }
    }
    SUBCASE("negative times return the history") {
        CHECK((history_eval(traj, hist, -0.5).array() == x0.array()).all());
        CHECK((history_eval(traj, hist, -1e-9).array() == x0.array()).all());
    }
    SUBCASE("outside the defined range") {
        CHECK_THROWS_AS((void)history_eval(traj, hist, -0.6), ContractViolation);
        CHECK_THROWS_AS((void)history_eval(traj, hist, traj.t_last() + 0.01), ContractViolation);
    }
}

TEST_CASE("Hermite interpolation is exact on cubics") {
    auto poly = [](double t) { return 0.3 - 1.2 * t + 0.7 * t * t - 0.25 * t * t * t; };
    auto dpoly = [](double t) { return -1.2 + 1.4 * t - 0.75 * t * t; };
    Trajectory<double> traj;
    traj.t0 = -1.0;
    traj.dt = 0.37;
    for (int m = 0; m < 12; ++m) {
        const double t = traj.time(static_cast<std::size_t>(m));
        traj.samples.push_back(StateVector::Constant(1, poly(t)));
        traj.derivative_samples.push_back(StateVector::Constant(1, dpoly(t)));
    }
    for (int m = 0; m + 1 < 12; ++m) {
        const double mid = traj.time(static_cast<std::size_t>(m)) + 0.5 * traj.dt;
        CHECK(std::abs(traj.interpolate(mid)(0) - poly(mid)) < 1e-12);
    }
}

TEST_CASE("sampled history reproduces the constant-history run") {
    const RingParams p = RingParams{}.with_delays(0.4, 0.2);
    const StateVector x0 = seeded_state(p.n, 8);
    auto source = std::make_shared<Trajectory<double>>();
    source->t0 = -0.4;
    source->dt = 0.1;
    for (int m = 0; m < 5; ++m) {
        source->samples.push_back(x0);
        source->derivative_samples.push_back(StateVector::Zero(p.n));
    }
    const auto sampled = HistoryFunction<double>::sampled(source, 0.4);
    CHECK(sampled.kind() == HistoryFunction<double>::Kind::Sampled);
    const auto a = integrate_full(p, sampled, 10.0, default_dt(p));
    const auto b = integrate_full(p, constant_history(x0, p), 10.0, default_dt(p));
    CHECK((a.samples.back() - b.samples.back()).cwiseAbs().maxCoeff() < 1e-13);

    auto short_source = std::make_shared<Trajectory<double>>(*source);
    short_source->t0 = -0.2;
    CHECK_THROWS_AS((void)HistoryFunction<double>::sampled(short_source, 0.4), ContractViolation);
}

TEST_CASE("step-size and history contracts") {
    const RingParams p = RingParams{}.with_delays(0.4, 0.2);
    const auto hist = constant_history(StateVector::Zero(p.n), p);
    CHECK_THROWS_AS((void)integrate_full(p, hist, 1.0, 0.06), ConfigError);
    CHECK_NOTHROW((void)integrate_full(p, hist, 1.0, 0.05));
    CHECK_THROWS_AS((void)integrate_full(p, hist, 1.0, 0.0), ConfigError);
    CHECK_THROWS_AS((void)integrate_full(p, hist, -1.0, 0.01), ConfigError);
    StateVector bad = StateVector::Zero(p.n);
    bad(3) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS((void)HistoryFunction<double>::constant(bad, 0.4), ContractViolation);
    CHECK(default_dt(p) == doctest::Approx(0.01));
    CHECK(default_dt(p.with_delays(0.05, 0.0)) == doctest::Approx(0.00625));
    CHECK(default_dt(p.with_delays(0.0, 0.0)) == 0.01);
}

TEST_CASE("overflow truncates the run") {
    const RingParams p = RingParams{}.with_delays(1.5, 1.5);
    const auto traj = integrate_full(p, constant_history(seeded_state(p.n, 1), p), 1000.0, default_dt(p));
    REQUIRE(traj.truncated);
    CHECK(traj.truncation_time < 1000.0);
    CHECK(traj.truncation_time == traj.t_last());
    CHECK(traj.samples.back().cwiseAbs().maxCoeff() > kOverflowCap);
    for (const auto& x : traj.samples) CHECK(x.allFinite());
    CHECK(traj.derivative_samples.size() == traj.samples.size());
}
