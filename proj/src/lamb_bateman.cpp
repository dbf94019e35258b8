#include "hml/lamb_bateman.hpp"

#include <cmath>

#include "hml/errors.hpp"
#include "hml/gammaln.hpp"

namespace hml {

QuadResult lamb_lhs(const RealFn& u, double x, double mu,
                    const QuadConfig& qcfg) {
    if (!(x > 0.0)) throw DomainError("lamb_lhs: requires x > 0");
    if (!(mu > 0.0)) throw DomainError("lamb_lhs: requires mu > 0");
    const double inv_mu = 1.0 / mu;
    auto integrand = [&u, x, inv_mu](double y) {
        const double contraction = std::exp(-std::pow(y, inv_mu));
        return u(contraction * x);
    };
    return integrate_semi_infinite(integrand, 0.0, qcfg);
}

QuadResult lamb_lhs(const FunctionSpec& u, double x, double mu,
                    const QuadConfig& qcfg, const SeriesConfig& scfg) {
    return lamb_lhs(u.as_function(scfg), x, mu, qcfg);
}

double exact_beta(double mu) {
    if (!(mu > 0.0)) throw DomainError("exact_beta: requires mu > 0");
    return std::pow(std::tgamma(mu + 1.0), 1.0 / mu);
}

LambVerifyReport verify_power_solution(double mu,
                                       const std::vector<double>& x_points,
                                       double tol, double diff_tol,
                                       const QuadConfig& qcfg,
                                       const DiffConfig& dcfg) {
    if (!(tol > 0.0) || !(diff_tol > 0.0))
        throw DomainError("verify_power_solution: tolerances must be > 0");
    LambVerifyReport report;
    report.beta = exact_beta(mu);
    report.x_points = x_points;
    report.diff_checked = mu > 0.0 && mu < 1.0;

    const FunctionSpec u = FunctionSpec::power(report.beta);
    const RealFn ufn = u.as_function();
    const double gmu1 = std::tgamma(mu + 1.0);
    for (double x : x_points) {
        const double expect = std::pow(x, report.beta);
        const double lhs = lamb_lhs(ufn, x, mu, qcfg).value;
        report.integral_rel_err.push_back(std::abs(lhs - expect) /
                                          std::abs(expect));
        if (report.diff_checked) {
            // frak-D^mu u = Gamma(mu+1) u' for the exact-beta power.
            const double dlhs = frak_d(ufn, mu, x, qcfg, dcfg);
            const double drhs =
                gmu1 * report.beta * std::pow(x, report.beta - 1.0);
            report.diff_rel_err.push_back(std::abs(dlhs - drhs) /
                                          std::abs(drhs));
        }
    }
    for (double e : report.integral_rel_err)
        report.max_integral_err = std::max(report.max_integral_err, e);
    for (double e : report.diff_rel_err)
        report.max_diff_err = std::max(report.max_diff_err, e);
    report.pass = report.max_integral_err <= tol &&
                  (!report.diff_checked || report.max_diff_err <= diff_tol);
    return report;
}

double solve_given_f(const FunctionSpec& f, double mu, double x,
                     const QuadConfig& qcfg, const DiffConfig& dcfg) {
    if (!(mu > 0.0)) throw DomainError("solve_given_f: requires mu > 0");
    if (!(x > 0.0)) throw DomainError("solve_given_f: requires x > 0");
    const double inv_gmu1 = 1.0 / std::tgamma(mu + 1.0);
    switch (f.kind) {
        case FunctionKind::Power:
            // D^mu x^beta = beta^mu x^beta at base 0.
            return inv_gmu1 * power_rule(f.beta, mu) * std::pow(x, f.beta);
        case FunctionKind::LogPower: {
            // D^mu (log(x/a))^c = Gamma(c+1)/Gamma(c+1-mu) (log(x/a))^{c-mu}
            // at base a; a reciprocal-Gamma pole makes the factor vanish.
            if (!(x > f.base))
                throw DomainError("solve_given_f: logpow requires x > a");
            const double z = f.c + 1.0 - mu;
            if (is_gamma_pole(z)) return 0.0;
            const double factor =
                gamma_sign(z) * std::exp(static_cast<double>(
                                    std::lgamma(static_cast<long double>(f.c) + 1.0L) -
                                    log_abs_gamma_l(z)));
            return inv_gmu1 * factor *
                   std::pow(std::log(x / f.base), f.c - mu);
        }
        default:
            break;
    }
    (void)qcfg;
    (void)dcfg;
    throw DomainError(
        "solve_given_f: f must belong to the closed class power/logpow "
        "(known D^mu action)");
}

}  // namespace hml
