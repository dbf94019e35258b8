#pragma once

#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>

namespace hml {

struct SeriesConfig {
    int max_terms = 500;
    double rel_tol = 1e-14;
    double abs_tol = 1e-300;
};

enum class SeriesStatus { Converged, MaxTermsReached, Overflow };

struct EvalResult {
    double value = 0.0;
    double abs_error_est = 0.0;
    int terms_used = 0;
    SeriesStatus status = SeriesStatus::MaxTermsReached;
};

namespace detail {

// Neumaier variant of compensated summation: the running error of every
// addition is captured and folded back in at the end.
template <typename Real>
struct CompensatedSum {
    Real sum = 0;
    Real comp = 0;
    void add(Real a) {
        const Real t = sum + a;
        if (std::abs(sum) >= std::abs(a))
            comp += (sum - t) + a;
        else
            comp += (a - t) + sum;
        sum = t;
    }
    Real value() const { return sum + comp; }
};

// Tail bound from the last included and first neglected term. For series
// whose term-magnitude ratio is non-increasing the geometric extrapolation
// |a_next|/(1-rho) dominates the true tail; alternating series get the
// first-neglected-term bound.
template <typename Real>
Real tail_estimate(Real a_last, Real a_next, bool alternating) {
    const Real an = std::abs(a_next);
    if (alternating) return an;
    const Real al = std::abs(a_last);
    if (al <= 0 || an >= al) return an > 0 ? an * Real(20) : Real(0);
    Real rho = an / al;
    if (rho > Real(0.95)) rho = Real(0.95);
    return an / (Real(1) - rho);
}

// Core accumulator. `term(k)` must be a pure function of k, total on
// [0, max_terms]. Stops once two consecutive terms fall below
// max(abs_tol, rel_tol*|S|) and the extrapolated tail fits the same bound,
// so a Converged result always satisfies
//   abs_error_est <= max(abs_tol, rel_tol*|value|).
template <typename Real, typename TermFn>
EvalResult sum_series_impl(TermFn&& term, const SeriesConfig& cfg) {
    EvalResult res;
    CompensatedSum<Real> acc;
    bool prev_small = false;
    bool alternating = true;
    Real prev_sign = 0;
    Real a_prev = 0;

    for (int k = 0; k < cfg.max_terms; ++k) {
        const Real a = term(k);
        if (!std::isfinite(static_cast<double>(a))) {
            res.value = static_cast<double>(a);
            res.abs_error_est = std::numeric_limits<double>::infinity();
            res.terms_used = k + 1;
            res.status = SeriesStatus::Overflow;
            return res;
        }
        acc.add(a);
        const Real s = acc.value();
        if (!std::isfinite(static_cast<double>(s))) {
            res.value = static_cast<double>(s);
            res.abs_error_est = std::numeric_limits<double>::infinity();
            res.terms_used = k + 1;
            res.status = SeriesStatus::Overflow;
            return res;
        }
        if (a != 0) {
            const Real sgn = a > 0 ? Real(1) : Real(-1);
            if (prev_sign != 0 && sgn == prev_sign) alternating = false;
            prev_sign = sgn;
        }
        const Real thresh = std::max(Real(cfg.abs_tol),
                                     Real(cfg.rel_tol) * std::abs(s));
        const bool small = std::abs(a) <= thresh;
        if (small && prev_small && k >= 1 && k + 1 <= cfg.max_terms) {
            const Real a_next = term(k + 1);
            if (std::isfinite(static_cast<double>(a_next))) {
                const Real est = tail_estimate(a, a_next, alternating && k >= 2);
                if (est <= thresh) {
                    res.value = static_cast<double>(s);
                    res.abs_error_est = static_cast<double>(est);
                    res.terms_used = k + 1;
                    res.status = SeriesStatus::Converged;
                    return res;
                }
            }
        }
        prev_small = small;
        a_prev = a;
    }
    res.value = static_cast<double>(acc.value());
    res.abs_error_est = static_cast<double>(std::abs(a_prev));
    res.terms_used = cfg.max_terms;
    res.status = SeriesStatus::MaxTermsReached;
    return res;
}

// Ratio-recurrence variant: a_0 = first, a_{k+1} = a_k * ratio(k), with a
// one-slot memo so the accumulator's term(k)/term(k+1) lookahead never
// advances the recurrence twice.
template <typename Real, typename RatioFn>
EvalResult sum_ratio_impl(Real first, RatioFn&& ratio, const SeriesConfig& cfg) {
    Real cur = first;
    int cur_k = 0;
    auto term = [&](int k) -> Real {
        if (k == 0) {
            cur = first;
            cur_k = 0;
            return first;
        }
        while (cur_k < k) {
            cur *= ratio(cur_k);
            ++cur_k;
        }
        return cur;
    };
    return sum_series_impl<Real>(term, cfg);
}

}  // namespace detail

/// Sum a_0 + a_1 + ... with terms supplied directly as a function of k.
inline EvalResult sum_series(const std::function<double(int)>& term,
                             const SeriesConfig& cfg = {}) {
    return detail::sum_series_impl<double>([&](int k) { return term(k); }, cfg);
}

/// Sum with a_0 = first_term and the recurrence a_{k+1} = a_k * ratio(k).
/// The recurrence variant avoids re-deriving large log-space terms and is
/// the workhorse for the Gamma-damped series in this library.
inline EvalResult sum_series_ratio(double first_term,
                                   const std::function<double(int)>& ratio,
                                   const SeriesConfig& cfg = {}) {
    return detail::sum_ratio_impl<double>(
        first_term, [&](int k) { return ratio(k); }, cfg);
}

}  // namespace hml
