#include "ringdelay/model.hpp"

#include <cmath>
#include <string>

namespace ringdelay {

void RingParams::validate() const {
    if (n < 2) throw ConfigError("ring size n must be >= 2, got " + std::to_string(n));
    if (!(k_p > 0.0) || !std::isfinite(k_p)) throw ConfigError("k_p must be finite and > 0");
    if (!(k_n > 0.0) || !std::isfinite(k_n)) throw ConfigError("k_n must be finite and > 0");
    if (!(tau1 >= 0.0) || !std::isfinite(tau1)) throw ConfigError("tau1 must be finite and >= 0");
    if (!(tau2 >= 0.0) || !std::isfinite(tau2)) throw ConfigError("tau2 must be finite and >= 0");
}

double RingParams::min_positive_delay() const noexcept {
    if (tau1 > 0.0 && tau2 > 0.0) return tau1 < tau2 ? tau1 : tau2;
    if (tau1 > 0.0) return tau1;
    if (tau2 > 0.0) return tau2;
    return 0.0;
}

Complex mode_rhs(Complex now, Complex delayed_tau1, Complex delayed_tau2, double theta,
                 const RingParams& p) noexcept {
    const Complex forward = std::polar(1.0, theta);
    return -(p.k_p - p.k_n) * now + p.k_p * forward * delayed_tau1 -
           p.k_n * std::conj(forward) * delayed_tau2;
}

}  // namespace ringdelay
