#pragma once

#include <optional>
#include <vector>

#include "ringdelay/model.hpp"

namespace ringdelay {

enum class Multiplicity { Simple, SuspectedMultiple };

struct ComplexRoot {
    Complex lambda{0.0, 0.0};
    int k = -1;  ///< mode index, -1 when the root was computed for a bare phase angle
    double residual = 0.0;
    Multiplicity multiplicity = Multiplicity::Simple;
    bool accepted = false;
    int iterations = 0;
};

struct SearchBox {
    double re_min = 0.0;
    double re_max = 0.0;
    double im_min = 0.0;
    double im_max = 0.0;

    [[nodiscard]] bool contains(Complex z) const noexcept {
        return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min && z.imag() <= im_max;
    }
};

inline constexpr double kRootAcceptTol = 1e-10;
inline constexpr double kDedupRadius = 1e-8;

struct RootScanOptions {
    int discretization_order = 24;
    std::optional<SearchBox> search_box;  ///< defaults to default_box(params) when empty
    int newton_max_iter = 50;
    double newton_tol = 1e-12;

    void validate() const;
    [[nodiscard]] SearchBox box_for(const RingParams& p) const;
};

/// Re in [-10 (k_p + k_n), 2 (k_p + k_n)], |Im| <= 4 (k_p + k_n) + 2 pi / max(tau1, tau2, 0.1).
[[nodiscard]] SearchBox default_box(const RingParams& p) noexcept;

/// Characteristic function of mode theta:
///   lambda + (k_p - k_n) - k_p e^{-lambda tau1} e^{i theta} + k_n e^{-lambda tau2} e^{-i theta}
[[nodiscard]] Complex char_eval(Complex lambda, double theta, const RingParams& p) noexcept;

/// d/dlambda of char_eval.
[[nodiscard]] Complex char_deriv(Complex lambda, double theta, const RingParams& p) noexcept;

/// Closed-form root of the delay-free mode equation.
[[nodiscard]] Complex delay_free_root(double theta, const RingParams& p) noexcept;

/// Newton iteration on the exact characteristic function. Never throws on
/// non-convergence; the result carries `accepted = false` instead.
[[nodiscard]] ComplexRoot newton_refine(Complex seed, double theta, const RingParams& p,
                                        const RootScanOptions& opts, int k = -1);

/// Eigenvalues of the Chebyshev collocation of the scalar mode DDE on
/// [-max(tau1, tau2), 0]; used as seeds. Requires a positive delay.
[[nodiscard]] std::vector<Complex> collocation_seeds(double theta, const RingParams& p, int order);

/// Certified roots sorted by decreasing real part (at most `count`).
/// Throws NumericalFailure when no seed refines to an accepted root.
[[nodiscard]] std::vector<ComplexRoot> rightmost_roots(double theta, const RingParams& p,
                                                       const RootScanOptions& opts, int count,
                                                       int k = -1);

[[nodiscard]] std::vector<ComplexRoot> rightmost_roots(int k, const RingParams& p,
                                                       const RootScanOptions& opts, int count);

struct SpectralAbscissa {
    double value = 0.0;
    ComplexRoot argmax;
};

/// Largest real part of the rightmost root over the transverse modes k = 1..n-1.
[[nodiscard]] SpectralAbscissa spectral_abscissa(const RingParams& p, const RootScanOptions& opts = {});

}  // namespace ringdelay
