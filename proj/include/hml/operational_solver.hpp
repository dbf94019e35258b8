#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hml/fractional_ops.hpp"
#include "hml/quadrature.hpp"

namespace hml {

/// Synthesis basis for coefficient vectors.
///   Monomial: index k  |->  x^k
///   TrigPair: index 2j |-> sin((j+1)x), index 2j+1 |-> cos((j+1)x)
/// (TrigPair has no constant mode; anything even in need of one belongs in
/// the monomial basis.)
enum class Basis { Monomial, TrigPair };

std::string basis_name(Basis b);
Basis parse_basis(const std::string& name);  // throws UsageError

/// A finite linear operator on a truncated basis: the executable surrogate
/// for the Theta_x / Xi_t of the operational solutions.
struct CoefficientOperator {
    int dim = 0;
    Basis basis = Basis::Monomial;
    std::vector<double> matrix;  // row-major dim x dim

    void validate() const;
    double at(int i, int j) const { return matrix[static_cast<std::size_t>(i) * dim + j]; }
    std::vector<double> apply(const std::vector<double>& v) const;

    /// d/dx on the chosen basis.
    static CoefficientOperator derivative(Basis basis, int dim);
    /// d^2/dx^2 on the chosen basis.
    static CoefficientOperator second_derivative(Basis basis, int dim);
    static CoefficientOperator zero(Basis basis, int dim);
    static CoefficientOperator scaled_identity(Basis basis, int dim, double c);
};

/// Coefficients of an analytic datum (initial or boundary condition) on a
/// truncated basis.
struct CoefficientVector {
    Basis basis = Basis::Monomial;
    std::vector<double> coeffs;

    int dim() const { return static_cast<int>(coeffs.size()); }
    /// Pointwise synthesis at x (or t).
    double synthesize(double x) const;
};

/// Result of operator_alpha_exp with its convergence bookkeeping.
struct OperatorExpResult {
    CoefficientVector v;
    double tail_norm = 0.0;  // max-norm of the first neglected series term
    int order = 0;           // truncation order R actually used
};

/// e_alpha(t M) g = sum_{r=0}^{R} t^r M^r g / (r!)^{alpha+1}, truncated
/// when the max-norm of the next term drops to tol. Throws NonConvergence
/// if Rmax is reached with the tail still above tol.
OperatorExpResult operator_alpha_exp_detail(const CoefficientOperator& M,
                                            double t, double alpha,
                                            const CoefficientVector& g,
                                            double tol, int Rmax);

CoefficientVector operator_alpha_exp(const CoefficientOperator& M, double t,
                                     double alpha, const CoefficientVector& g,
                                     double tol = 1e-14, int Rmax = 300);

/// Sampled operational solution plus the data needed to re-evaluate it.
struct SolveReport {
    bool is_bvp = false;
    double alpha = 0.0;
    std::vector<double> t_grid;
    std::vector<double> x_grid;
    /// IVP: values[ti][xi]; BVP: values[xi][ti] (series-variable major).
    std::vector<std::vector<double>> values;
    std::vector<double> tail_est;  // per series-variable grid point
    std::vector<int> order_used;   // truncation order per grid point
    CoefficientVector data;        // g (IVP) or h (BVP)
};

/// Operational solution of the fractional Cauchy problem
///   frak-D_t^alpha f = Theta_x f,  f(x, 0) = g(x):
/// f(x,t) = e_alpha(t Theta) g evaluated on the grids. alpha in [0,1);
/// alpha = 0 is the classical exponential-semigroup boundary.
SolveReport solve_ivp(const CoefficientOperator& theta,
                      const CoefficientVector& g, double alpha,
                      const std::vector<double>& t_grid,
                      const std::vector<double>& x_grid, double tol = 1e-14,
                      int Rmax = 300);

/// Operational solution of the boundary problem with analytic data h(t):
/// w(x,t) = e_alpha(x Xi_t) h; x = 0 reproduces h exactly.
SolveReport solve_bvp(const CoefficientOperator& xi, const CoefficientVector& h,
                      double alpha, const std::vector<double>& x_grid,
                      const std::vector<double>& t_grid, double tol = 1e-14,
                      int Rmax = 300);

/// Laguerre-heat operational solution for polynomial data s(t):
///   S(x,t) = sum_k x^k/(k!)^2 d^k s/dt^k, a finite, exact sum.
/// s_coeffs must be monomial-in-t coefficients.
double laguerre_heat(const CoefficientVector& s_coeffs, double x, double t);

struct ResidualSummary {
    double max_rel_residual = 0.0;
    bool pass = false;
    std::vector<double> residuals;  // row-major over (x_grid, t_grid)
};

/// Verifies frak-D_t^alpha f = Theta_x f at the interior grid points of an
/// IVP report by re-evaluating the operational series at the differencing
/// stencil's t-values. Residuals are relative to |Theta_x f|.
ResidualSummary residual_check(const SolveReport& report, double alpha,
                               const CoefficientOperator& theta,
                               const QuadConfig& qcfg, const DiffConfig& dcfg,
                               double tol);

/// Plain-text operator/vector file format: first line `dim basis`, then
/// dim rows of dim space-separated entries (one row of dim entries for a
/// vector). Throws UsageError on malformed content.
CoefficientOperator read_operator_file(std::istream& in,
                                       const std::string& label);
CoefficientVector read_vector_file(std::istream& in, const std::string& label);
CoefficientOperator load_operator_file(const std::string& path);
CoefficientVector load_vector_file(const std::string& path);

/// CSV emission of a report: header `x,t,value,tail_est`, rows in
/// series-variable-major order, 17 significant digits, LF line endings.
void write_solution_csv(std::ostream& out, const SolveReport& report);

}  // namespace hml
