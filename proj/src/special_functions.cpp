#include "hml/special_functions.hpp"

#include <cmath>
#include <string>

#include "hml/errors.hpp"
#include "hml/gammaln.hpp"

namespace hml {

void MLParams::validate() const {
    if (!(alpha > -1.0))
        throw DomainError("MLParams: alpha must be > -1, got " +
                          std::to_string(alpha));
    if (!(nu > 0.0))
        throw DomainError("MLParams: nu must be > 0, got " + std::to_string(nu));
    if (!std::isfinite(gamma))
        throw DomainError("MLParams: gamma must be finite");
}

void WrightParams::validate() const {
    for (const auto& [a, A] : upper)
        if (!(A > 0.0))
            throw DomainError("WrightParams: upper weight A_j must be > 0");
    for (const auto& [b, B] : lower)
        if (!(B > 0.0))
            throw DomainError("WrightParams: lower weight B_j must be > 0");
}

namespace {

// Shared term engine for E_{alpha;nu,gamma}. For nu == 1 the Gamma ratio
// between consecutive terms collapses to (k+gamma)^{alpha+1}, so a ratio
// recurrence keeps every term accurate to a few ulp; otherwise terms come
// straight from log space. Real = long double on the cancellation-prone
// negative-x path.
template <typename Real>
EvalResult ml_series(double alpha, double nu, double gamma, double x,
                     const SeriesConfig& cfg) {
    const Real a1 = Real(alpha) + Real(1);
    const Real g = gamma;
    const Real first = std::exp(-a1 * log_abs_gamma_l(static_cast<long double>(gamma)));

    if (x == 0.0)
        return {static_cast<double>(first), 0.0, 1, SeriesStatus::Converged};

    if (nu == 1.0) {
        const Real xx = x;
        if (alpha == 0.0) {
            return detail::sum_ratio_impl<Real>(
                first, [=](int k) { return xx / (Real(k) + g); }, cfg);
        }
        return detail::sum_ratio_impl<Real>(
            first, [=](int k) { return xx / std::pow(Real(k) + g, a1); }, cfg);
    }

    const Real L = std::log(std::abs(Real(x)));
    const Real n = nu;
    const bool neg = x < 0.0;
    auto term = [=](int k) -> Real {
        if (k == 0) return first;
        const long double lg = log_abs_gamma_l(static_cast<long double>(n) * k +
                                               static_cast<long double>(g));
        const Real t = std::exp(Real(k) * L - a1 * Real(lg));
        return (neg && (k & 1)) ? -t : t;
    };
    return detail::sum_series_impl<Real>(term, cfg);
}

}  // namespace

EvalResult alpha_mittag_leffler(const MLParams& p, double x,
                                const SeriesConfig& cfg) {
    p.validate();
    if (!std::isfinite(x)) throw DomainError("alpha_mittag_leffler: x must be finite");
    // With nu > 0 the smallest Gamma argument is gamma itself; gamma <= 0
    // would hit a pole or a negative base under a real power.
    if (!(p.gamma > 0.0))
        throw DomainError(
            "alpha_mittag_leffler: nu k + gamma must stay positive over the "
            "truncation range (requires gamma > 0, got gamma = " +
            std::to_string(p.gamma) + ")");
    if (x < 0.0) return ml_series<long double>(p.alpha, p.nu, p.gamma, x, cfg);
    return ml_series<double>(p.alpha, p.nu, p.gamma, x, cfg);
}

EvalResult alpha_l_exponential(double alpha, double x, const SeriesConfig& cfg) {
    if (!(alpha > -1.0))
        throw DomainError("alpha_l_exponential: alpha must be > -1, got " +
                          std::to_string(alpha));
    if (!std::isfinite(x)) throw DomainError("alpha_l_exponential: x must be finite");
    if (x == 0.0) return {1.0, 0.0, 1, SeriesStatus::Converged};
    if (x < 0.0) {
        // Alternating series; extended-precision accumulation keeps the
        // relative error near machine level despite the cancellation.
        const long double a1 = static_cast<long double>(alpha) + 1.0L;
        const long double xx = x;
        if (alpha == 0.0)
            return detail::sum_ratio_impl<long double>(
                1.0L, [=](int k) { return xx / (k + 1.0L); }, cfg);
        return detail::sum_ratio_impl<long double>(
            1.0L, [=](int k) { return xx / std::pow(k + 1.0L, a1); }, cfg);
    }
    const double a1 = alpha + 1.0;
    if (alpha == 0.0)
        return sum_series_ratio(1.0, [=](int k) { return x / (k + 1.0); }, cfg);
    return sum_series_ratio(
        1.0, [=](int k) { return x / std::pow(k + 1.0, a1); }, cfg);
}

EvalResult generalized_wright(const WrightParams& w, double z,
                              const SeriesConfig& cfg) {
    w.validate();
    if (!std::isfinite(z)) throw DomainError("generalized_wright: z must be finite");
    const double L = z == 0.0 ? 0.0 : std::log(std::abs(z));
    const bool neg = z < 0.0;
    auto term = [&, L, neg](int k) -> double {
        long double lg = 0.0L;
        int sgn = 1;
        for (const auto& [a, A] : w.upper) {
            const double arg = a + A * k;
            if (is_gamma_pole(arg))
                throw DomainError(
                    "generalized_wright: Gamma pole in the numerator at k = " +
                    std::to_string(k) + " (argument " + std::to_string(arg) + ")");
            lg += log_abs_gamma_l(arg);
            sgn *= gamma_sign(arg);
        }
        bool lower_pole = false;
        for (const auto& [b, B] : w.lower) {
            const double arg = b + B * k;
            if (is_gamma_pole(arg)) {
                lower_pole = true;  // 1/Gamma vanishes, term drops out
                break;
            }
            lg -= log_abs_gamma_l(arg);
            sgn *= gamma_sign(arg);
        }
        if (lower_pole) return 0.0;
        if (k > 0) lg += static_cast<long double>(k) * L - log_abs_gamma_l(k + 1.0);
        double t = static_cast<double>(std::exp(lg));
        if (neg && (k & 1)) t = -t;
        return sgn > 0 ? t : -t;
    };
    if (z == 0.0) {
        const double t0 = term(0);
        return {t0, 0.0, 1, SeriesStatus::Converged};
    }
    return detail::sum_series_impl<double>(term, cfg);
}

double ml_laplace_transform(const MLParams& p, double lambda, double s,
                            const SeriesConfig& cfg) {
    p.validate();
    if (!(s > 0.0))
        throw DomainError("ml_laplace_transform: s must be > 0, got " +
                          std::to_string(s));
    if (!(p.alpha >= 0.0))
        throw DomainError("ml_laplace_transform: alpha must be >= 0, got " +
                          std::to_string(p.alpha));
    const double snu = std::pow(s, p.nu);
    const double w = lambda / snu;
    if (p.alpha == 0.0) {
        // Image series is geometric here; closed form with its own
        // convergence guard.
        if (!(std::abs(w) < 1.0))
            throw DomainError(
                "ml_laplace_transform: image series diverges at alpha = 0 "
                "(requires |lambda| < s^nu)");
        return std::pow(s, p.nu - p.gamma) / (snu - lambda);
    }
    const MLParams image{p.alpha - 1.0, p.nu, p.gamma};
    const EvalResult r = alpha_mittag_leffler(image, w, cfg);
    if (r.status == SeriesStatus::Overflow)
        throw DomainError("ml_laplace_transform: image series overflowed");
    return std::pow(s, -p.gamma) * r.value;
}

double alphaexp_laplace_transform(double alpha, double s,
                                  const SeriesConfig& cfg) {
    if (!(s > 0.0))
        throw DomainError("alphaexp_laplace_transform: s must be > 0, got " +
                          std::to_string(s));
    if (!(alpha >= 0.0))
        throw DomainError("alphaexp_laplace_transform: alpha must be >= 0, got " +
                          std::to_string(alpha));
    if (alpha == 0.0) {
        if (!(s > 1.0))
            throw DomainError(
                "alphaexp_laplace_transform: image series diverges at alpha = 0 "
                "(requires s > 1)");
        return 1.0 / (s - 1.0);
    }
    const EvalResult r = alpha_l_exponential(alpha - 1.0, 1.0 / s, cfg);
    if (r.status == SeriesStatus::Overflow)
        throw DomainError("alphaexp_laplace_transform: image series overflowed");
    return r.value / s;
}

}  // namespace hml
