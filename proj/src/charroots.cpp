#include "ringdelay/charroots.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "ringdelay/modal.hpp"

namespace ringdelay {

void RootScanOptions::validate() const {
    if (discretization_order < 8) throw ConfigError("discretization_order must be >= 8");
    if (newton_max_iter < 1) throw ConfigError("newton_max_iter must be >= 1");
    if (!(newton_tol > 0.0)) throw ConfigError("newton_tol must be positive");
    if (search_box && (!(search_box->re_min < search_box->re_max) ||
                       !(search_box->im_min < search_box->im_max))) {
        throw ConfigError("search box must be nonempty");
    }
}

SearchBox default_box(const RingParams& p) noexcept {
    const double sum = p.k_p + p.k_n;
    const double width = 4.0 * sum + 2.0 * std::numbers::pi / std::max({p.tau1, p.tau2, 0.1});
    return {-10.0 * sum, 2.0 * sum, -width, width};
}

SearchBox RootScanOptions::box_for(const RingParams& p) const {
    return search_box ? *search_box : default_box(p);
}

Complex char_eval(Complex lambda, double theta, const RingParams& p) noexcept {
    const Complex forward = std::polar(1.0, theta);
    return lambda + (p.k_p - p.k_n) - p.k_p * std::exp(-lambda * p.tau1) * forward +
           p.k_n * std::exp(-lambda * p.tau2) * std::conj(forward);
}

Complex char_deriv(Complex lambda, double theta, const RingParams& p) noexcept {
    const Complex forward = std::polar(1.0, theta);
    return 1.0 + p.k_p * p.tau1 * std::exp(-lambda * p.tau1) * forward -
           p.k_n * p.tau2 * std::exp(-lambda * p.tau2) * std::conj(forward);
}

Complex delay_free_root(double theta, const RingParams& p) noexcept {
    const Complex forward = std::polar(1.0, theta);
    return -(p.k_p - p.k_n) + p.k_p * forward - p.k_n * std::conj(forward);
}

ComplexRoot newton_refine(Complex seed, double theta, const RingParams& p, const RootScanOptions& opts,
                          int k) {
    ComplexRoot root;
    root.k = k;
    Complex lambda = seed;
    Complex deriv = char_deriv(lambda, theta, p);
    bool converged = false;
    for (int it = 0; it < opts.newton_max_iter; ++it) {
        root.iterations = it + 1;
        const Complex value = char_eval(lambda, theta, p);
        deriv = char_deriv(lambda, theta, p);
        if (std::abs(deriv) < 1e-300) break;
        const Complex step = value / deriv;
        lambda -= step;
        if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) break;
        if (std::abs(step) < opts.newton_tol) {
            converged = true;
            break;
        }
    }
    root.lambda = lambda;
    root.residual = std::abs(char_eval(lambda, theta, p));
    deriv = char_deriv(lambda, theta, p);
    // Newton stalls at roughly sqrt(eps) on a double root, so the step test can
    // fail while the residual is already at rounding level.
    root.accepted = std::isfinite(root.residual) && root.residual < kRootAcceptTol &&
                    (converged || std::abs(deriv) < 1e-6);
    root.multiplicity = std::abs(deriv) < 1e-6 ? Multiplicity::SuspectedMultiple : Multiplicity::Simple;
    return root;
}

std::vector<Complex> collocation_seeds(double theta, const RingParams& p, int order) {
    const double span = p.max_delay();
    if (!(span > 0.0)) throw ContractViolation("collocation_seeds: needs a positive delay");
    const int N = order;
    const double pi = std::numbers::pi;

    // Chebyshev extreme points mapped to [-span, 0]; node 0 sits at s = 0.
    Eigen::VectorXd x(N + 1);
    for (int j = 0; j <= N; ++j) x(j) = std::cos(pi * j / N);
    Eigen::VectorXd c = Eigen::VectorXd::Ones(N + 1);
    c(0) = 2.0;
    c(N) = 2.0;
    for (int j = 1; j <= N; j += 2) c(j) = -c(j);

    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N + 1, N + 1);
    for (int i = 0; i <= N; ++i) {
        for (int j = 0; j <= N; ++j) {
            if (i != j) D(i, j) = c(i) / c(j) / (x(i) - x(j));
        }
        D(i, i) = -D.row(i).sum();
    }
    D *= 2.0 / span;

    // Barycentric Lagrange basis evaluated at s in [-span, 0].
    auto basis = [&](double s) {
        Eigen::VectorXd l = Eigen::VectorXd::Zero(N + 1);
        const double xs = 2.0 * s / span + 1.0;
        double denom = 0.0;
        for (int j = 0; j <= N; ++j) {
            const double diff = xs - x(j);
            if (diff == 0.0) {
                l.setZero();
                l(j) = 1.0;
                return l;
            }
            const double w = (j % 2 == 0 ? 1.0 : -1.0) * ((j == 0 || j == N) ? 0.5 : 1.0);
            l(j) = w / diff;
            denom += l(j);
        }
        return Eigen::VectorXd(l / denom);
    };

    const Complex forward = std::polar(1.0, theta);
    Eigen::MatrixXcd A = D.cast<Complex>();
    A.row(0).setZero();
    A(0, 0) += -(p.k_p - p.k_n);
    A.row(0) += (p.k_p * forward) * basis(-p.tau1).cast<Complex>().transpose();
    A.row(0) -= (p.k_n * std::conj(forward)) * basis(-p.tau2).cast<Complex>().transpose();

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(A, false);
    if (solver.info() != Eigen::Success) throw NumericalFailure("collocation eigenproblem failed");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

std::vector<ComplexRoot> rightmost_roots(double theta, const RingParams& p, const RootScanOptions& opts,
                                         int count, int k) {
    if (count < 1) throw ContractViolation("rightmost_roots: count must be >= 1");
    opts.validate();

    std::vector<ComplexRoot> roots;
    if (p.max_delay() == 0.0) {
        ComplexRoot r;
        r.k = k;
        r.lambda = delay_free_root(theta, p);
        r.residual = std::abs(char_eval(r.lambda, theta, p));
        r.accepted = true;
        roots.push_back(r);
        return roots;
    }

    const SearchBox box = opts.box_for(p);
    int rejected = 0;
    for (const Complex& seed : collocation_seeds(theta, p, opts.discretization_order)) {
        if (!box.contains(seed)) continue;
        ComplexRoot r = newton_refine(seed, theta, p, opts, k);
        if (!r.accepted) {
            ++rejected;
            continue;
        }
        const bool duplicate = std::any_of(roots.begin(), roots.end(), [&](const ComplexRoot& q) {
            return std::abs(q.lambda - r.lambda) < kDedupRadius;
        });
        if (!duplicate) roots.push_back(r);
    }
    if (roots.empty()) {
        throw NumericalFailure("rightmost_roots: no seed refined to an accepted root (theta=" +
                               std::to_string(theta) + ", tau1=" + std::to_string(p.tau1) +
                               ", tau2=" + std::to_string(p.tau2) + ", rejected seeds=" +
                               std::to_string(rejected) + ")");
    }
    std::sort(roots.begin(), roots.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() > b.lambda.real();
        return a.lambda.imag() > b.lambda.imag();
    });
    if (static_cast<int>(roots.size()) > count) roots.resize(static_cast<std::size_t>(count));
    return roots;
}

std::vector<ComplexRoot> rightmost_roots(int k, const RingParams& p, const RootScanOptions& opts,
                                         int count) {
    if (k < 0 || k >= p.n) throw ContractViolation("rightmost_roots: mode index out of range");
    return rightmost_roots(mode_angle(k, p.n), p, opts, count, k);
}

SpectralAbscissa spectral_abscissa(const RingParams& p, const RootScanOptions& opts) {
    p.validate();
    SpectralAbscissa best;
    bool first = true;
    // Roots of mode n-k are the conjugates of those of mode k, so half the modes suffice.
    for (int k = 1; k <= p.n / 2; ++k) {
        if (!mode_stability_relevant(k)) continue;
        const ComplexRoot r = rightmost_roots(k, p, opts, 1).front();
        if (first || r.lambda.real() > best.value) {
            best.value = r.lambda.real();
            best.argmax = r;
            first = false;
        }
    }
    return best;
}

}  // namespace ringdelay
