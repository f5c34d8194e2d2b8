#include "ringdelay/modal.hpp"

#include <cmath>

namespace ringdelay {
namespace {

// exp(sign * i * 2 pi m / n) with m reduced mod n first, which keeps the
// argument small and the twiddles exact at the quarter turns.
Complex twiddle(long m, long n, double sign) {
    const long r = ((m % n) + n) % n;
    return std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(r) /
                               static_cast<double>(n));
}

template <typename Derived>
ModeSpectrum forward(const Eigen::MatrixBase<Derived>& x) {
    const Eigen::Index n = x.size();
    if (n < 2) throw ContractViolation("to_modes: need at least two agents");
    ModeSpectrum z(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        Complex acc{0.0, 0.0};
        for (Eigen::Index j = 0; j < n; ++j) acc += Complex(x(j)) * twiddle(k * j, n, -1.0);
        z(k) = acc / static_cast<double>(n);
    }
    return z;
}

}  // namespace

ModeSpectrum to_modes(const Eigen::Ref<const StateVector>& x) { return forward(x); }

ModeSpectrum to_modes(const Eigen::Ref<const ModeSpectrum>& x) { return forward(x); }

ModeSpectrum from_modes_complex(const Eigen::Ref<const ModeSpectrum>& z) {
    const Eigen::Index n = z.size();
    if (n < 2) throw ContractViolation("from_modes: need at least two modes");
    ModeSpectrum x(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        Complex acc{0.0, 0.0};
        for (Eigen::Index k = 0; k < n; ++k) acc += z(k) * twiddle(k * j, n, 1.0);
        x(j) = acc;
    }
    return x;
}

StateVector from_modes(const Eigen::Ref<const ModeSpectrum>& z) {
    const ModeSpectrum x = from_modes_complex(z);
    const double residue = x.imag().cwiseAbs().maxCoeff();
    if (residue > 1e-10) {
        throw NumericalFailure("from_modes: spectrum is not conjugate-symmetric (imaginary residue " +
                               std::to_string(residue) + ")");
    }
    return x.real();
}

double transverse_energy(const Eigen::Ref<const ModeSpectrum>& z) {
    return z.tail(z.size() - 1).squaredNorm();
}

}  // namespace ringdelay
