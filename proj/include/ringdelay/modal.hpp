#pragma once

#include "ringdelay/model.hpp"

namespace ringdelay {

/// Circulant Fourier transform with the 1/n factor on the forward side:
///   z_k = (1/n) sum_j x_j exp(-i theta_k j)
/// so that z_0 is the network mean. Direct O(n^2) summation.
[[nodiscard]] ModeSpectrum to_modes(const Eigen::Ref<const StateVector>& x);
[[nodiscard]] ModeSpectrum to_modes(const Eigen::Ref<const ModeSpectrum>& x);

/// Inverse transform x_j = sum_k z_k exp(+i theta_k j).
[[nodiscard]] ModeSpectrum from_modes_complex(const Eigen::Ref<const ModeSpectrum>& z);

/// Inverse transform of a spectrum expected to come from a real vector.
/// Throws NumericalFailure when the imaginary residue exceeds 1e-10.
[[nodiscard]] StateVector from_modes(const Eigen::Ref<const ModeSpectrum>& z);

/// Mode k = 0 moves along the consensus manifold and never counts toward stability.
[[nodiscard]] constexpr bool mode_stability_relevant(int k) noexcept { return k != 0; }

/// Sum of |z_k|^2 over k != 0.
[[nodiscard]] double transverse_energy(const Eigen::Ref<const ModeSpectrum>& z);

}  // namespace ringdelay
