#pragma once

#include <functional>

namespace hml {

struct QuadConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 60;
    double tail_cutoff_tol = 1e-16;
};

struct QuadResult {
    double value = 0.0;
    double abs_error_est = 0.0;
    long evaluations = 0;
    bool converged = false;
};

/// Which endpoint of a finite interval carries an integrable algebraic
/// singularity; triggers a clustering substitution before the adaptive rule.
enum class SingularEnd { None, Left, Right };

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7,15) bisection on [a, b]. The worst segment by
/// embedded-rule error is split until the summed estimate meets
/// max(abs_tol, rel_tol*|value|) or max_subdivisions splits are spent
/// (converged = false in that case, value still the best estimate).
QuadResult integrate_finite(const Integrand& f, double a, double b,
                            const QuadConfig& cfg = {},
                            SingularEnd singular = SingularEnd::None);

/// Integral over [a, inf) via the exp-sinh double-exponential transform
/// x = a + exp((pi/2) sinh t); the t-range is truncated where the
/// transformed integrand stays below tail_cutoff_tol, then handed to the
/// finite adaptive rule. f must be absolutely integrable on [a, inf).
QuadResult integrate_semi_infinite(const Integrand& f, double a,
                                   const QuadConfig& cfg = {});

/// The Hadamard-kernel integral  int_a^x (log(x/t))^{alpha-1} g(t) dt/t
/// for alpha in (0,1], x > a >= 0, WITHOUT the 1/Gamma(alpha) prefactor.
/// Substituting s = log(x/t) gives int_0^L s^{alpha-1} g(x e^{-s}) ds with
/// L = log(x/a) (infinite for a = 0); the unit cell is desingularized by
/// s = v^{1/alpha} and the remainder handled by the rules above.
QuadResult integrate_log_singular(const Integrand& g, double alpha, double a,
                                  double x, const QuadConfig& cfg = {});

namespace detail {
// Log-kernel integral for any alpha > 0 (no singularity removal needed for
// alpha >= 1). Shared by integrate_log_singular and the fractional operators.
QuadResult log_kernel_integral(const Integrand& g, double alpha, double a,
                               double x, const QuadConfig& cfg);
}  // namespace detail

}  // namespace hml
