#include "ringdelay/crossing.hpp"

#include <algorithm>
#include <cmath>

#include "ringdelay/modal.hpp"

namespace ringdelay {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Angles {
    double phi1;  // arg of the k_p vector
    double phi2;  // arg of the k_n vector
};

Angles circle_intersection(double omega, const RingParams& p, int sign) {
    const Complex a(p.k_p - p.k_n, omega);
    const double r = std::abs(a);
    const double cos_gamma =
        std::clamp((r * r + p.k_p * p.k_p - p.k_n * p.k_n) / (2.0 * r * p.k_p), -1.0, 1.0);
    const double phi1 = std::arg(a) + (sign > 0 ? 1.0 : -1.0) * std::acos(cos_gamma);
    const Complex v = (p.k_p * std::polar(1.0, phi1) - a) / p.k_n;
    return {phi1, std::arg(v)};
}

double residual_at(double omega, double theta, const RingParams& p, double t1, double t2) {
    return std::abs(char_eval(Complex(0.0, omega), theta, p.with_delays(t1, t2)));
}

}  // namespace

bool crossing_feasible(double omega, const RingParams& p) noexcept {
    return omega * omega <= 4.0 * p.k_p * p.k_n;
}

double max_crossing_frequency(const RingParams& p) noexcept {
    // Largest double that still passes crossing_feasible.
    double w = 2.0 * std::sqrt(p.k_p * p.k_n);
    while (!crossing_feasible(w, p)) w = std::nextafter(w, 0.0);
    return w;
}

std::optional<CrossingPoint> crossing_points(double omega, int k, const RingParams& p, int m1, int m2,
                                             int sign) {
    if (omega == 0.0) throw ContractViolation("crossing_points: omega = 0 is handled by the delay-free analysis");
    if (!crossing_feasible(omega, p)) throw ContractViolation("crossing_points: infeasible omega");
    const double theta = mode_angle(k, p.n);
    const Angles ang = circle_intersection(omega, p, sign);
    // phi1 = theta - omega tau1 (mod 2 pi), phi2 = -theta - omega tau2 (mod 2 pi)
    const double t1 = (theta - ang.phi1 + kTwoPi * m1) / omega;
    const double t2 = (-theta - ang.phi2 + kTwoPi * m2) / omega;
    if (t1 < 0.0 || t2 < 0.0) return std::nullopt;
    CrossingPoint cp{omega, t1, t2, k, m1, m2, sign > 0 ? 1 : -1, 0.0};
    cp.residual = residual_at(omega, theta, p, t1, t2);
    return cp;
}

std::vector<CrossingCurve> trace_curves(int k, const RingParams& p, const DelayWindow& window,
                                        int omega_samples) {
    if (omega_samples < 16) throw ContractViolation("trace_curves: need at least 16 omega samples");
    const double theta = mode_angle(k, p.n);
    const double omega_max = max_crossing_frequency(p);
    std::vector<CrossingCurve> curves;

    for (int sign : {1, -1}) {
        // Unwrap the intersection angles along omega so that a fixed branch pair
        // (m1, m2) describes one continuous curve.
        std::vector<double> omegas, phi1, phi2;
        for (int j = 1; j <= omega_samples; ++j) {
            const double w = omega_max * static_cast<double>(j) / omega_samples;
            const Angles a = circle_intersection(w, p, sign);
            double u1 = a.phi1, u2 = a.phi2;
            if (!phi1.empty()) {
                u1 += kTwoPi * std::round((phi1.back() - u1) / kTwoPi);
                u2 += kTwoPi * std::round((phi2.back() - u2) / kTwoPi);
            }
            omegas.push_back(w);
            phi1.push_back(u1);
            phi2.push_back(u2);
        }

        // Branch integers (relative to the unwrapped angles) that reach the window.
        int lo1 = 1 << 30, hi1 = -(1 << 30), lo2 = 1 << 30, hi2 = -(1 << 30);
        for (std::size_t j = 0; j < omegas.size(); ++j) {
            const double w = omegas[j];
            lo1 = std::min(lo1, static_cast<int>(std::ceil((w * window.tau1_min - theta + phi1[j]) / kTwoPi)));
            hi1 = std::max(hi1, static_cast<int>(std::floor((w * window.tau1_max - theta + phi1[j]) / kTwoPi)));
            lo2 = std::min(lo2, static_cast<int>(std::ceil((w * window.tau2_min + theta + phi2[j]) / kTwoPi)));
            hi2 = std::max(hi2, static_cast<int>(std::floor((w * window.tau2_max + theta + phi2[j]) / kTwoPi)));
        }

        for (int b1 = lo1; b1 <= hi1; ++b1) {
            for (int b2 = lo2; b2 <= hi2; ++b2) {
                CrossingCurve current{k, sign, {}, window};
                auto flush = [&] {
                    if (!current.points.empty()) curves.push_back(current);
                    current.points.clear();
                };
                for (std::size_t j = 0; j < omegas.size(); ++j) {
                    const double w = omegas[j];
                    const double t1 = (theta - phi1[j] + kTwoPi * b1) / w;
                    const double t2 = (-theta - phi2[j] + kTwoPi * b2) / w;
                    if (!window.contains(t1, t2)) {
                        flush();
                        continue;
                    }
                    // Report branch integers relative to the principal angles so the
                    // point is reproducible through crossing_points.
                    const Angles principal = circle_intersection(w, p, sign);
                    CrossingPoint cp;
                    cp.omega = w;
                    cp.tau1 = t1;
                    cp.tau2 = t2;
                    cp.k = k;
                    cp.m1 = static_cast<int>(std::lround((w * t1 - theta + principal.phi1) / kTwoPi));
                    cp.m2 = static_cast<int>(std::lround((w * t2 + theta + principal.phi2) / kTwoPi));
                    cp.sign = sign;
                    cp.residual = residual_at(w, theta, p, t1, t2);
                    current.points.push_back(cp);
                }
                flush();
            }
        }
    }
    return curves;
}

std::vector<CrossingPoint> stability_envelope(const RingParams& p, const DelayWindow& window,
                                              int omega_samples, const RootScanOptions& opts) {
    std::vector<CrossingPoint> envelope;
    for (int k = 1; k < p.n; ++k) {
        for (const CrossingCurve& curve : trace_curves(k, p, window, omega_samples)) {
            for (const CrossingPoint& cp : curve.points) {
                const SpectralAbscissa sa = spectral_abscissa(p.with_delays(cp.tau1, cp.tau2), opts);
                if (sa.value < 1e-6) envelope.push_back(cp);
            }
        }
    }
    return envelope;
}

}  // namespace ringdelay
