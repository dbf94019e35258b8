#include "hml/operational_solver.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hml/errors.hpp"

namespace hml {

std::string basis_name(Basis b) {
    return b == Basis::Monomial ? "monomial" : "trigpair";
}

Basis parse_basis(const std::string& name) {
    if (name == "monomial") return Basis::Monomial;
    if (name == "trigpair") return Basis::TrigPair;
    throw UsageError("unknown basis '" + name +
                     "'; expected monomial or trigpair");
}

void CoefficientOperator::validate() const {
    if (dim < 1) throw DomainError("CoefficientOperator: dim must be >= 1");
    if (matrix.size() != static_cast<std::size_t>(dim) * dim)
        throw DomainError("CoefficientOperator: matrix size != dim*dim");
    for (double v : matrix)
        if (!std::isfinite(v))
            throw DomainError("CoefficientOperator: matrix entries must be finite");
}

std::vector<double> CoefficientOperator::apply(
    const std::vector<double>& v) const {
    if (v.size() != static_cast<std::size_t>(dim))
        throw DomainError("CoefficientOperator: vector length != dim");
    std::vector<double> out(v.size(), 0.0);
    for (int i = 0; i < dim; ++i) {
        double acc = 0.0;
        for (int j = 0; j < dim; ++j) acc += at(i, j) * v[j];
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

CoefficientOperator CoefficientOperator::zero(Basis basis, int dim) {
    CoefficientOperator op;
    op.dim = dim;
    op.basis = basis;
    op.matrix.assign(static_cast<std::size_t>(dim) * dim, 0.0);
    op.validate();
    return op;
}

CoefficientOperator CoefficientOperator::scaled_identity(Basis basis, int dim,
                                                         double c) {
    CoefficientOperator op = zero(basis, dim);
    for (int i = 0; i < dim; ++i) op.matrix[static_cast<std::size_t>(i) * dim + i] = c;
    return op;
}

CoefficientOperator CoefficientOperator::derivative(Basis basis, int dim) {
    CoefficientOperator op = zero(basis, dim);
    if (basis == Basis::Monomial) {
        // d/dx sum c_k x^k = sum (k+1) c_{k+1} x^k
        for (int i = 0; i + 1 < dim; ++i)
            op.matrix[static_cast<std::size_t>(i) * dim + (i + 1)] = i + 1.0;
    } else {
        // d/dx sin kx = k cos kx ; d/dx cos kx = -k sin kx
        for (int j = 0; 2 * j < dim; ++j) {
            const double k = j + 1.0;
            const int si = 2 * j, ci = 2 * j + 1;
            if (ci < dim) {
                op.matrix[static_cast<std::size_t>(ci) * dim + si] = k;
                op.matrix[static_cast<std::size_t>(si) * dim + ci] = -k;
            }
        }
    }
    return op;
}

CoefficientOperator CoefficientOperator::second_derivative(Basis basis,
                                                           int dim) {
    CoefficientOperator op = zero(basis, dim);
    if (basis == Basis::Monomial) {
        for (int i = 0; i + 2 < dim; ++i)
            op.matrix[static_cast<std::size_t>(i) * dim + (i + 2)] =
                (i + 2.0) * (i + 1.0);
    } else {
        for (int idx = 0; idx < dim; ++idx) {
            const double k = idx / 2 + 1.0;
            op.matrix[static_cast<std::size_t>(idx) * dim + idx] = -k * k;
        }
    }
    return op;
}

double CoefficientVector::synthesize(double x) const {
    double acc = 0.0;
    if (basis == Basis::Monomial) {
        // Horner from the top coefficient down.
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    } else {
        for (std::size_t idx = 0; idx < coeffs.size(); ++idx) {
            const double k = static_cast<double>(idx / 2) + 1.0;
            const double mode =
                (idx % 2 == 0) ? std::sin(k * x) : std::cos(k * x);
            acc += coeffs[idx] * mode;
        }
    }
    return acc;
}

namespace {

double max_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

OperatorExpResult operator_alpha_exp_detail(const CoefficientOperator& M,
                                            double t, double alpha,
                                            const CoefficientVector& g,
                                            double tol, int Rmax) {
    M.validate();
    if (!(alpha > -1.0))
        throw DomainError("operator_alpha_exp: requires alpha > -1");
    if (M.dim != g.dim() || M.basis != g.basis)
        throw DomainError(
            "operator_alpha_exp: operator and vector dimensions/bases differ");
    if (!(tol > 0.0)) throw DomainError("operator_alpha_exp: tol must be > 0");
    if (Rmax < 1) throw DomainError("operator_alpha_exp: Rmax must be >= 1");

    OperatorExpResult res;
    res.v.basis = g.basis;
    res.v.coeffs.assign(g.coeffs.begin(), g.coeffs.end());

    // w holds t^r M^r g / (r!)^{alpha+1}, advanced by w <- (t/r^{alpha+1}) M w.
    std::vector<double> w = g.coeffs;
    const double ap1 = alpha + 1.0;
    for (int r = 1; r <= Rmax; ++r) {
        w = M.apply(w);
        const double factor = t / std::pow(static_cast<double>(r), ap1);
        for (double& x : w) x *= factor;
        const double norm = max_norm(w);
        if (!std::isfinite(norm))
            throw NonConvergence(
                "operator_alpha_exp: series term overflowed before the "
                "tolerance was met");
        if (norm <= tol) {
            res.tail_norm = norm;
            res.order = r - 1;
            return res;
        }
        for (std::size_t i = 0; i < w.size(); ++i) res.v.coeffs[i] += w[i];
    }
    char msg[128];
    std::snprintf(msg, sizeof(msg),
                  "operator_alpha_exp: tail %.3g still above tol %.3g at "
                  "Rmax=%d",
                  max_norm(w), tol, Rmax);
    throw NonConvergence(msg);
}

CoefficientVector operator_alpha_exp(const CoefficientOperator& M, double t,
                                     double alpha, const CoefficientVector& g,
                                     double tol, int Rmax) {
    return operator_alpha_exp_detail(M, t, alpha, g, tol, Rmax).v;
}

namespace {

SolveReport solve_series(const CoefficientOperator& M,
                         const CoefficientVector& data, double alpha,
                         const std::vector<double>& series_grid,
                         const std::vector<double>& eval_grid, double tol,
                         int Rmax, bool is_bvp) {
    if (!(alpha >= 0.0) || !(alpha < 1.0))
        throw DomainError(
            "operational solver: requires alpha in [0, 1) (alpha = 0 is the "
            "classical boundary)");
    if (is_bvp) {
        for (double x : series_grid)
            if (x < 0.0)
                throw DomainError("solve_bvp: x grid must be nonnegative");
    } else {
        for (double t : series_grid)
            if (t < 0.0)
                throw DomainError("solve_ivp: t grid must be nonnegative");
    }
    SolveReport report;
    report.is_bvp = is_bvp;
    report.alpha = alpha;
    report.data = data;
    if (is_bvp) {
        report.x_grid = series_grid;
        report.t_grid = eval_grid;
    } else {
        report.t_grid = series_grid;
        report.x_grid = eval_grid;
    }
    report.values.reserve(series_grid.size());
    for (double s : series_grid) {
        OperatorExpResult step =
            operator_alpha_exp_detail(M, s, alpha, data, tol, Rmax);
        std::vector<double> row;
        row.reserve(eval_grid.size());
        for (double p : eval_grid) row.push_back(step.v.synthesize(p));
        report.values.push_back(std::move(row));
        report.tail_est.push_back(step.tail_norm);
        report.order_used.push_back(step.order);
    }
    return report;
}

}  // namespace

SolveReport solve_ivp(const CoefficientOperator& theta,
                      const CoefficientVector& g, double alpha,
                      const std::vector<double>& t_grid,
                      const std::vector<double>& x_grid, double tol, int Rmax) {
    return solve_series(theta, g, alpha, t_grid, x_grid, tol, Rmax, false);
}

SolveReport solve_bvp(const CoefficientOperator& xi, const CoefficientVector& h,
                      double alpha, const std::vector<double>& x_grid,
                      const std::vector<double>& t_grid, double tol, int Rmax) {
    return solve_series(xi, h, alpha, x_grid, t_grid, tol, Rmax, true);
}

double laguerre_heat(const CoefficientVector& s_coeffs, double x, double t) {
    if (s_coeffs.basis != Basis::Monomial)
        throw DomainError("laguerre_heat: s must be monomial-in-t coefficients");
    if (x < 0.0) throw DomainError("laguerre_heat: requires x >= 0");
    const std::vector<double>& c = s_coeffs.coeffs;
    const int deg = static_cast<int>(c.size()) - 1;
    double acc = 0.0;
    double xk_over_fact2 = 1.0;  // x^k / (k!)^2
    for (int k = 0; k <= deg; ++k) {
        if (k > 0) xk_over_fact2 *= x / (static_cast<double>(k) * k);
        // d^k s/dt^k = sum_{j>=k} c_j j!/(j-k)! t^{j-k}, Horner in t.
        double dk = 0.0;
        for (int j = deg; j >= k; --j) {
            double fall = 1.0;  // falling factorial j!/(j-k)!
            for (int i = 0; i < k; ++i) fall *= j - i;
            dk = dk * t + c[static_cast<std::size_t>(j)] * fall;
        }
        acc += xk_over_fact2 * dk;
    }
    return acc;
}

ResidualSummary residual_check(const SolveReport& report, double alpha,
                               const CoefficientOperator& theta,
                               const QuadConfig& qcfg, const DiffConfig& dcfg,
                               double tol) {
    if (report.is_bvp)
        throw DomainError(
            "residual_check: defined for IVP reports (frak-D in t vs Theta "
            "in x)");
    if (!(tol > 0.0)) throw DomainError("residual_check: tol must be > 0");
    theta.validate();

    ResidualSummary summary;
    const CoefficientVector& g = report.data;
    for (double x : report.x_grid) {
        auto f_at = [&](double t) {
            return operator_alpha_exp(theta, t, alpha, g).synthesize(x);
        };
        for (double t : report.t_grid) {
            if (!(t > 0.0)) continue;  // differencing needs interior t
            const double lhs = frak_d(f_at, alpha, t, qcfg, dcfg);
            const CoefficientVector ft = operator_alpha_exp(theta, t, alpha, g);
            CoefficientVector th_ft;
            th_ft.basis = ft.basis;
            th_ft.coeffs = theta.apply(ft.coeffs);
            const double rhs = th_ft.synthesize(x);
            const double denom = std::max(std::abs(rhs), 1e-30);
            summary.residuals.push_back(std::abs(lhs - rhs) / denom);
        }
    }
    for (double r : summary.residuals)
        summary.max_rel_residual = std::max(summary.max_rel_residual, r);
    summary.pass =
        !summary.residuals.empty() && summary.max_rel_residual <= tol;
    return summary;
}

namespace {

struct HeaderLine {
    int dim = 0;
    Basis basis = Basis::Monomial;
};

HeaderLine read_header(std::istream& in, const std::string& label) {
    std::string line;
    if (!std::getline(in, line))
        throw UsageError(label + ": empty file, expected 'dim basis' header");
    std::istringstream hs(line);
    HeaderLine h;
    std::string basis_tok;
    if (!(hs >> h.dim >> basis_tok) || h.dim < 1)
        throw UsageError(label +
                         ": malformed header, expected 'dim basis' with dim "
                         ">= 1");
    h.basis = parse_basis(basis_tok);
    return h;
}

std::vector<double> read_numbers(std::istream& in, std::size_t count,
                                 const std::string& label) {
    std::vector<double> out;
    out.reserve(count);
    double v;
    while (out.size() < count && (in >> v)) out.push_back(v);
    if (out.size() != count)
        throw UsageError(label + ": expected " + std::to_string(count) +
                         " numeric entries, found " +
                         std::to_string(out.size()));
    // Anything non-numeric left over is an error; trailing whitespace is not.
    std::string rest;
    if (in >> rest)
        throw UsageError(label + ": unexpected trailing token '" + rest + "'");
    return out;
}

}  // namespace

CoefficientOperator read_operator_file(std::istream& in,
                                       const std::string& label) {
    const HeaderLine h = read_header(in, label);
    CoefficientOperator op;
    op.dim = h.dim;
    op.basis = h.basis;
    op.matrix = read_numbers(
        in, static_cast<std::size_t>(h.dim) * static_cast<std::size_t>(h.dim),
        label);
    op.validate();
    return op;
}

CoefficientVector read_vector_file(std::istream& in, const std::string& label) {
    const HeaderLine h = read_header(in, label);
    CoefficientVector v;
    v.basis = h.basis;
    v.coeffs = read_numbers(in, static_cast<std::size_t>(h.dim), label);
    return v;
}

CoefficientOperator load_operator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open operator file '" + path + "'");
    return read_operator_file(in, path);
}

CoefficientVector load_vector_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open vector file '" + path + "'");
    return read_vector_file(in, path);
}

void write_solution_csv(std::ostream& out, const SolveReport& report) {
    out << "x,t,value,tail_est\n";
    char buf[32];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    for (std::size_t si = 0; si < report.values.size(); ++si) {
        const std::vector<double>& row = report.values[si];
        for (std::size_t pi = 0; pi < row.size(); ++pi) {
            const double x = report.is_bvp ? report.x_grid[si] : report.x_grid[pi];
            const double t = report.is_bvp ? report.t_grid[pi] : report.t_grid[si];
            out << fmt(x) << ',' << fmt(t) << ',' << fmt(row[pi]) << ','
                << fmt(report.tail_est[si]) << '\n';
        }
    }
}

}  // namespace hml
