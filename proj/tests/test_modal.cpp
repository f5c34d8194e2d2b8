#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ringdelay/classifier.hpp"
#include "ringdelay/modal.hpp"

using namespace ringdelay;

namespace {

StateVector random_state(int n, std::mt19937_64& gen) {
    const auto v = oracle::random_vector(static_cast<std::size_t>(n), gen);
    return Eigen::Map<const StateVector>(v.data(), n);
}

}  // namespace

TEST_CASE("constant vector has only the consensus mode") {
    const ModeSpectrum z = to_modes(StateVector::Constant(20, 2.5));
    CHECK(std::abs(z(0) - 2.5) < 1e-14);
    CHECK(z.tail(19).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("two-agent spectrum") {
    StateVector x(2);
    x << 1.0, -1.0;
    const ModeSpectrum z = to_modes(x);
    CHECK(std::abs(z(0)) < 1e-15);
    CHECK(std::abs(z(1) - 1.0) < 1e-15);
}

TEST_CASE("forward transform matches the naive DFT") {
    std::mt19937_64 gen(3);
    for (int n : {2, 3, 7, 20, 31}) {
        const StateVector x = random_state(n, gen);
        const auto expected = oracle::dft(std::vector<oracle::cd>(x.data(), x.data() + n));
        const ModeSpectrum z = to_modes(x);
        for (int k = 0; k < n; ++k) CHECK(std::abs(z(k) - expected[static_cast<std::size_t>(k)]) < 1e-12);
    }
}

TEST_CASE("round trip and inverse of a conjugate-symmetric spectrum") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector x = random_state(20, gen);
        CHECK((from_modes(to_modes(x)) - x).cwiseAbs().maxCoeff() < 1e-12);
    }

    const int n = 20;
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    ModeSpectrum z(n);
    z(0) = d(gen);
    z(n / 2) = d(gen);
    for (int k = 1; k < n / 2; ++k) {
        z(k) = Complex(d(gen), d(gen));
        z(n - k) = std::conj(z(k));
    }
    const StateVector x = from_modes(z);
    const auto expected = oracle::idft(std::vector<oracle::cd>(z.data(), z.data() + n));
    for (int j = 0; j < n; ++j) {
        CHECK(std::abs(x(j) - expected[static_cast<std::size_t>(j)].real()) < 1e-12);
        CHECK(std::abs(expected[static_cast<std::size_t>(j)].imag()) < 1e-12);
    }

    ModeSpectrum only_mean = ModeSpectrum::Zero(n);
    only_mean(0) = -0.75;
    CHECK((from_modes(only_mean).array() + 0.75).abs().maxCoeff() < 1e-15);
}

TEST_CASE("inverse transform rejects a non-real spectrum") {
    ModeSpectrum z = ModeSpectrum::Zero(8);
    z(1) = Complex(1.0, 0.0);  // no conjugate partner in mode 7
    CHECK_THROWS_AS((void)from_modes(z), NumericalFailure);
    CHECK_NOTHROW((void)from_modes_complex(z));
}

TEST_CASE("mode_stability_relevant excludes only the consensus mode") {
    CHECK_FALSE(mode_stability_relevant(0));
    CHECK(mode_stability_relevant(1));
    CHECK(mode_stability_relevant(19));
}

TEST_CASE("circulant diagonalization of the vector field") {
    std::mt19937_64 gen(17);
    for (int n : {2, 5, 20}) {
        const RingParams p{n, 1.0, 0.5, 0.0, 0.0};
        for (int trial = 0; trial < 10; ++trial) {
            const StateVector x = random_state(n, gen), y = random_state(n, gen), w = random_state(n, gen);
            const ModeSpectrum lhs = to_modes(StateVector(full_rhs(x, y, w, p)));
            const ModeSpectrum zx = to_modes(x), zy = to_modes(y), zw = to_modes(w);
            for (int k = 0; k < n; ++k) {
                const Complex rhs = mode_rhs(zx(k), zy(k), zw(k), mode_angle(k, n), p);
                CHECK(std::abs(lhs(k) - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
            }
        }
    }
}

TEST_CASE("Parseval links the consensus error to transverse energy") {
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 50; ++trial) {
        const StateVector x = 3.0 * random_state(20, gen);
        CHECK(std::abs(consensus_error(x) - transverse_energy(to_modes(x))) < 1e-12);
    }
}
