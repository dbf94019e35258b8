#pragma once

#include <vector>

#include "hml/fractional_ops.hpp"
#include "hml/function_spec.hpp"
#include "hml/quadrature.hpp"

namespace hml {

/// Left-hand side of the modified Lamb-Bateman equation
///   int_0^infty u(e^{-y^{1/mu}} x) dy
/// by semi-infinite quadrature; mu = 1/2 is the Gaussian-kernel case.
/// Requires x > 0, mu > 0, and u integrable along the contraction path
/// (e.g. u = x^beta with beta > 0).
QuadResult lamb_lhs(const RealFn& u, double x, double mu,
                    const QuadConfig& qcfg = {});
QuadResult lamb_lhs(const FunctionSpec& u, double x, double mu,
                    const QuadConfig& qcfg = {}, const SeriesConfig& scfg = {});

/// The exponent making u = x^beta an exact self-consistent solution:
/// beta = Gamma(mu+1)^{1/mu}. mu = 1/2 gives pi/4.
double exact_beta(double mu);

struct LambVerifyReport {
    double beta = 0.0;
    std::vector<double> x_points;
    std::vector<double> integral_rel_err;  // |LHS - x^beta| / x^beta
    std::vector<double> diff_rel_err;      // frak-D form; empty if skipped
    double max_integral_err = 0.0;
    double max_diff_err = 0.0;
    bool diff_checked = false;
    bool pass = false;
};

/// Verifies the exact power solution u = x^{exact_beta(mu)} against
/// (i) the integral identity lamb_lhs(u, x, mu) = u(x), tolerance tol, and
/// (ii) for mu in (0,1), the differential form frak-D^mu u = Gamma(mu+1) u',
///      tolerance diff_tol (looser: two nested numerical layers).
LambVerifyReport verify_power_solution(double mu,
                                       const std::vector<double>& x_points,
                                       double tol, double diff_tol = 1e-4,
                                       const QuadConfig& qcfg = {},
                                       const DiffConfig& dcfg = {});

/// Solution u = (1/Gamma(mu+1)) D^mu f for f in the closed class
/// {Power, LogPower}, via the exact power / log-power rules (base 0 for
/// powers, the log-power's own base otherwise). Other kinds throw
/// DomainError.
double solve_given_f(const FunctionSpec& f, double mu, double x,
                     const QuadConfig& qcfg = {}, const DiffConfig& dcfg = {});

}  // namespace hml
