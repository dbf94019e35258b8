#include <cmath>

#include "doctest.h"
#include "hml/series.hpp"

using namespace hml;

TEST_SUITE("series") {

TEST_CASE("direct term sum reproduces exp(1)") {
    const EvalResult r = sum_series([](int k) {
        double t = 1.0;
        for (int i = 1; i <= k; ++i) t /= i;
        return t;
    });
    CHECK(r.status == SeriesStatus::Converged);
    CHECK(r.value == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(r.abs_error_est <= 1e-13);
    CHECK(r.terms_used > 5);
}

TEST_CASE("ratio recurrence reproduces exp at both signs") {
    for (double x : {3.0, -3.0, 0.25, -0.25}) {
        const EvalResult r =
            sum_series_ratio(1.0, [x](int k) { return x / (k + 1); });
        CHECK(r.status == SeriesStatus::Converged);
        CHECK(r.value == doctest::Approx(std::exp(x)).epsilon(5e-15));
    }
}

TEST_CASE("geometric series hits the closed form") {
    const EvalResult r = sum_series_ratio(1.0, [](int) { return 0.5; });
    CHECK(r.status == SeriesStatus::Converged);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("converged error estimate honours its contract") {
    SeriesConfig cfg;
    cfg.rel_tol = 1e-10;
    const EvalResult r =
        sum_series_ratio(1.0, [](int k) { return 2.0 / (k + 1); }, cfg);
    CHECK(r.status == SeriesStatus::Converged);
    CHECK(r.abs_error_est <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value)));
    // true tail of exp(2) truncated after terms_used terms is below the bound
    const double truth = std::exp(2.0);
    CHECK(std::abs(r.value - truth) <= 2 * r.abs_error_est + 1e-15 * truth);
}

TEST_CASE("non-decaying terms exhaust the budget") {
    SeriesConfig cfg;
    cfg.max_terms = 40;
    const EvalResult r = sum_series_ratio(1.0, [](int) { return 1.0; }, cfg);
    CHECK(r.status == SeriesStatus::MaxTermsReached);
    CHECK(r.terms_used == 40);
    CHECK(r.value == doctest::Approx(40.0).epsilon(1e-14));
}

TEST_CASE("runaway growth reports overflow") {
    const EvalResult r = sum_series_ratio(1.0, [](int) { return 10.0; });
    CHECK(r.status == SeriesStatus::Overflow);
    CHECK(!std::isfinite(r.value));
}

TEST_CASE("alternating series tail bound is the first neglected term") {
    // sum (-1)^k / (k+1)^2 converges to pi^2/12; the terms only decay as
    // 1/k^2, so meeting a 1e-6 relative stopping rule takes ~1100 terms.
    SeriesConfig cfg;
    cfg.max_terms = 2000;
    cfg.rel_tol = 1e-6;
    const EvalResult r = sum_series(
        [](int k) {
            const double v = 1.0 / ((k + 1.0) * (k + 1.0));
            return (k % 2 == 0) ? v : -v;
        },
        cfg);
    CHECK(r.status == SeriesStatus::Converged);
    const double truth = 0.8224670334241132;  // pi^2/12
    CHECK(std::abs(r.value - truth) <= 2 * r.abs_error_est);
}

TEST_CASE("cancellation at moderate negative arguments stays bounded") {
    // exp(-5) by direct series: the terms reach 26 while the sum is 6.7e-3,
    // so naive accumulation would lose ~4 digits; the compensated core keeps
    // the relative error near machine precision.
    const double x = -5.0;
    const EvalResult r =
        sum_series_ratio(1.0, [x](int k) { return x / (k + 1); });
    const double truth = std::exp(x);
    CHECK(std::abs(r.value - truth) / truth < 1e-11);
}

}  // TEST_SUITE
