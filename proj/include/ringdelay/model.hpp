#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "ringdelay/errors.hpp"

namespace ringdelay {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using StateVector = Vector<double>;
using ModeSpectrum = Vector<Complex>;

/// Parameters of the signed directed ring: agent i listens to i+1 (cooperative,
/// delay tau1) and to i-1 (antagonistic, delay tau2).
struct RingParams {
    int n = 20;
    double k_p = 1.0;
    double k_n = 0.5;
    double tau1 = 0.0;
    double tau2 = 0.0;

    /// Throws ConfigError when an invariant is violated.
    void validate() const;

    [[nodiscard]] double max_delay() const noexcept { return tau1 > tau2 ? tau1 : tau2; }

    /// Smallest strictly positive delay, or 0 when both delays vanish.
    [[nodiscard]] double min_positive_delay() const noexcept;

    [[nodiscard]] RingParams with_delays(double t1, double t2) const noexcept {
        RingParams p = *this;
        p.tau1 = t1;
        p.tau2 = t2;
        return p;
    }
};

/// Phase angle 2*pi*k/n of Fourier mode k.
[[nodiscard]] inline double mode_angle(int k, int n) noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
}

struct ModeCoordinate {
    int k = 0;
    double theta = 0.0;
    Complex amplitude{0.0, 0.0};
};

/// Right-hand side of the full ring system
///   dx_i/dt = -(k_p - k_n) x_i(t) + k_p x_{i+1}(t - tau1) - k_n x_{i-1}(t - tau2)
/// with 0-based periodic indices. Works for real and complex scalars.
template <typename D0, typename D1, typename D2>
[[nodiscard]] Vector<typename D0::Scalar> full_rhs(const Eigen::MatrixBase<D0>& now,
                                                   const Eigen::MatrixBase<D1>& delayed_tau1,
                                                   const Eigen::MatrixBase<D2>& delayed_tau2,
                                                   const RingParams& p) {
    using Scalar = typename D0::Scalar;
    const Eigen::Index n = now.size();
    if (n != p.n || delayed_tau1.size() != n || delayed_tau2.size() != n) {
        throw ContractViolation("full_rhs: state length does not match ring size");
    }
    Vector<Scalar> out = Scalar(-(p.k_p - p.k_n)) * now;
    out.head(n - 1) += Scalar(p.k_p) * delayed_tau1.tail(n - 1);
    out(n - 1) += Scalar(p.k_p) * delayed_tau1(0);
    out.tail(n - 1) -= Scalar(p.k_n) * delayed_tau2.head(n - 1);
    out(0) -= Scalar(p.k_n) * delayed_tau2(n - 1);
    return out;
}

/// Right-hand side of the scalar equation obeyed by Fourier mode theta.
[[nodiscard]] Complex mode_rhs(Complex now, Complex delayed_tau1, Complex delayed_tau2, double theta,
                               const RingParams& p) noexcept;

}  // namespace ringdelay
