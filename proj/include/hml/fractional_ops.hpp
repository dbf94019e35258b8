#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hml/function_spec.hpp"
#include "hml/quadrature.hpp"
#include "hml/series.hpp"

namespace hml {

using RealFn = std::function<double(double)>;

/// Settings for the log-space finite differencing that realizes
/// delta = x d/dx and its powers.
struct DiffConfig {
    double log_step = 0.05;   // base step in theta = log x
    int richardson_levels = 2;  // extrapolation passes (0 = plain stencil)
};

/// Hadamard fractional integral
///   J^alpha f(x) = (1/Gamma(alpha)) int_a^x (log(x/t))^{alpha-1} f(t) dt/t.
/// For alpha in (0,1) the kernel singularity is removed by substitution;
/// for alpha >= 1 the kernel is bounded and a plain adaptive rule is used.
/// At base a = 0 the s-integral extends to infinity and converges only if
/// f decays at 0 (documented precondition, not checked).
QuadResult hadamard_integral(const RealFn& f, double alpha, double a, double x,
                             const QuadConfig& qcfg = {});

/// delta f(x) = x f'(x), computed as a central difference of
/// theta |-> f(e^theta) at theta = log x, with Richardson extrapolation.
double delta_op(const RealFn& f, double x, const DiffConfig& dcfg = {});

/// delta^n f(x) on a (2n+1)-point log-space stencil built once per level.
double delta_pow(const RealFn& f, int n, double x, const DiffConfig& dcfg = {});

/// Ordinary derivative f'(x) by central differencing in x itself
/// (step proportional to max(|x|,1)), with Richardson extrapolation.
double deriv_x(const RealFn& f, double x, const DiffConfig& dcfg = {});

/// Hadamard fractional derivative D^alpha f = delta^n J^{n-alpha} f with
/// n = [alpha]+1. Integer alpha short-circuits to delta^alpha (alpha = 0 is
/// the identity). At base a = 0 the operator acts in the operational sense
/// in which constants are annihilated: f(0) is subtracted before the kernel
/// integral, matching the power rule D^alpha x^beta = beta^alpha x^beta as
/// beta -> 0. Throws StepTooSmall if the differencing stencil would cross
/// the base point a.
double hadamard_derivative(const RealFn& f, double alpha, double a, double x,
                           const QuadConfig& qcfg = {},
                           const DiffConfig& dcfg = {});

/// The composite operator (d/dx) D^alpha at base 0, realized literally as
/// an ordinary central difference in x of y |-> hadamard_derivative(f,
/// alpha, 0, y). alpha = 0 reduces to the plain derivative.
double frak_d(const RealFn& f, double alpha, double x,
              const QuadConfig& qcfg = {}, const DiffConfig& dcfg = {});

/// Dilation operator e^{lambda x d/dx}: returns x |-> f(e^lambda x).
RealFn dilate(const RealFn& f, double lambda);

/// Exact power-rule factor: D^alpha x^beta = beta^alpha x^beta at base 0
/// (and J^alpha x^beta = beta^{-alpha} x^beta). Returns beta^alpha;
/// requires beta > 0.
double power_rule(double beta, double alpha);

/// Truncated power series  sum_k coeffs[k] * x^{step*k + offset},
/// valid for x >= 0. The exact-arithmetic carrier for the Caputo and
/// hyper-Bessel operators.
struct PowerSeriesRep {
    double step = 1.0;    // nu > 0
    double offset = 0.0;  // sigma
    std::vector<double> coeffs;

    double evaluate(double x) const;
};

/// Truncated series of E_{alpha;nu,gamma}(lambda x^nu):
/// coeffs[k] = lambda^k / Gamma^{alpha+1}(nu k + gamma), step nu, offset 0.
/// Coefficients are built in extended-precision log space.
PowerSeriesRep ml_power_series(double alpha, double nu, double gamma,
                               double lambda, int n_terms);

/// Termwise Caputo fractional derivative of order nu on a series with
/// offset 0 and step nu:  x^{nu k} |-> [Gamma(nu k+1)/Gamma(nu k+1-nu)]
/// x^{nu(k-1)} for k >= 1, constant term |-> 0. Gamma ratios are evaluated
/// in extended-precision log space.
PowerSeriesRep caputo_on_series(const PowerSeriesRep& rep, double nu);

/// The fractional hyper-Bessel-type operator string
///   d^nu x^nu d^nu x^nu ... d^nu   (n+1 Caputo derivatives, n
/// multiplications by x^nu, rightmost factor applied first).
PowerSeriesRep hyper_bessel_apply(const PowerSeriesRep& rep, double nu, int n);

/// Operator descriptor for eigen_check.
struct EigenOp {
    enum class Kind { FrakD, Mixed, InvXD, HyperBessel };
    Kind kind = Kind::FrakD;
    double alpha = 0.0;  // FrakD / Mixed: order of the composite operator
    int r = 1;           // Mixed: which member of the family, 1 <= r <= [alpha+1]
    double order = 0.5;  // InvXD: the operator is x^{-1} D^{order}, order in (0,1)
    double nu = 1.0;     // HyperBessel
    int n = 0;           // HyperBessel

    static EigenOp frak_d(double alpha);
    static EigenOp mixed(int r, double alpha);
    static EigenOp inv_x_d(double order);
    static EigenOp hyper_bessel(double nu, int n);
    std::string describe() const;
};

struct EigenReport {
    double max_rel_residual = 0.0;
    bool pass = false;
    std::vector<double> residuals;  // per grid point (per coefficient for
                                    // the hyper-Bessel coefficient check)
};

/// Verifies |Op f - lambda f| / |lambda f| over the grid, where f already
/// embeds its own argument scaling (e.g. alexp:alpha,lambda for
/// e_alpha(lambda x)) and lambda is the claimed eigenvalue.
///   FrakD:       (d/dx) D^{alpha}            (alpha >= 0, base 0)
///   Mixed:       (d/dx) delta^{r-1} D^{alpha+1-r}
///   InvXD:       x^{-1} D^{order}            (order in (0,1))
///   HyperBessel: the operator string on the coefficient representation;
///                f must be an ML spec with offset-free powers, and the
///                residuals are per-coefficient rather than per-grid-point.
EigenReport eigen_check(const EigenOp& op, const FunctionSpec& f, double lambda,
                        const std::vector<double>& grid, double tol,
                        const QuadConfig& qcfg = {}, const DiffConfig& dcfg = {},
                        const SeriesConfig& scfg = {});

}  // namespace hml
