#include "hml/fractional_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hml/errors.hpp"
#include "hml/gammaln.hpp"

namespace hml {

namespace {

// Finite-difference weights of the m-th derivative at z on the given nodes
// (Fornberg's recursion, Math. Comp. 51 (1988) 699-706).
std::vector<double> fd_weights(double z, const std::vector<double>& xs, int m) {
    const int nd = static_cast<int>(xs.size());
    std::vector<std::vector<double>> c(nd, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - z;
    c[0][0] = 1.0;
    for (int i = 1; i < nd; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = xs[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[i] - xs[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(nd);
    for (int i = 0; i < nd; ++i) w[i] = c[i][m];
    return w;
}

// Richardson ladder for sequences with an error expansion in h^2; `rows`
// holds the latest tableau row, one entry per completed level.
class Richardson {
  public:
    double push(double value) {
        std::vector<double> row{value};
        double p = 1.0;
        for (std::size_t k = 1; k <= prev_.size(); ++k) {
            p *= 4.0;
            row.push_back((p * row[k - 1] - prev_[k - 1]) / (p - 1.0));
        }
        prev_ = std::move(row);
        return prev_.back();
    }

  private:
    std::vector<double> prev_;
};

}  // namespace

QuadResult hadamard_integral(const RealFn& f, double alpha, double a, double x,
                             const QuadConfig& qcfg) {
    if (!(alpha > 0.0))
        throw DomainError("hadamard_integral: requires alpha > 0");
    QuadResult r = detail::log_kernel_integral(f, alpha, a, x, qcfg);
    const double inv_gamma = std::exp(-std::lgamma(alpha));
    r.value *= inv_gamma;
    r.abs_error_est *= inv_gamma;
    return r;
}

double delta_pow(const RealFn& f, int n, double x, const DiffConfig& dcfg) {
    if (n < 0) throw DomainError("delta_pow: order must be >= 0");
    if (!(x > 0.0)) throw DomainError("delta operator requires x > 0");
    if (!(dcfg.log_step > 0.0))
        throw DomainError("DiffConfig: log_step must be > 0");
    if (n == 0) return f(x);

    const double theta0 = std::log(x);
    const int levels = std::max(0, dcfg.richardson_levels);
    double center = 0.0;
    bool have_center = false;
    Richardson ladder;
    double best = 0.0;
    for (int lev = 0; lev <= levels; ++lev) {
        const double h = dcfg.log_step / static_cast<double>(1 << lev);
        std::vector<double> nodes(2 * n + 1);
        for (int j = -n; j <= n; ++j) nodes[j + n] = theta0 + j * h;
        const std::vector<double> w = fd_weights(theta0, nodes, n);
        double acc = 0.0;
        for (int j = -n; j <= n; ++j) {
            if (w[j + n] == 0.0) continue;
            double fv;
            if (j == 0) {
                if (!have_center) {
                    center = f(x);
                    have_center = true;
                }
                fv = center;
            } else {
                fv = f(std::exp(nodes[j + n]));
            }
            acc += w[j + n] * fv;
        }
        best = ladder.push(acc);
    }
    return best;
}

double delta_op(const RealFn& f, double x, const DiffConfig& dcfg) {
    return delta_pow(f, 1, x, dcfg);
}

double deriv_x(const RealFn& f, double x, const DiffConfig& dcfg) {
    if (!(dcfg.log_step > 0.0))
        throw DomainError("DiffConfig: log_step must be > 0");
    const double h0 = dcfg.log_step * std::max(std::abs(x), 1.0);
    const int levels = std::max(0, dcfg.richardson_levels);
    Richardson ladder;
    double best = 0.0;
    for (int lev = 0; lev <= levels; ++lev) {
        const double h = h0 / static_cast<double>(1 << lev);
        best = ladder.push((f(x + h) - f(x - h)) / (2.0 * h));
    }
    return best;
}

namespace {

// Shared J^{n-alpha}-then-delta^n composition behind D^alpha.
double hadamard_deriv_impl(const RealFn& f, double alpha, double a, double x,
                           const QuadConfig& qcfg, const DiffConfig& dcfg) {
    if (alpha == 0.0) return f(x);

    // Outermost stencil reach in theta is n*log_step; every node must stay
    // inside (a, infinity) for the kernel integrals to make sense.
    const double m_round = std::nearbyint(alpha);
    const bool integer_order = std::abs(alpha - m_round) <= 1e-12 && m_round >= 1.0;
    const int n = integer_order ? static_cast<int>(m_round)
                                : static_cast<int>(std::floor(alpha)) + 1;
    if (!(x * std::exp(-n * dcfg.log_step) > a)) {
        char msg[160];
        std::snprintf(msg, sizeof(msg),
                      "hadamard_derivative: stencil of half-width %d*%g in "
                      "log x crosses the base point a=%g (x=%g); reduce "
                      "log_step",
                      n, dcfg.log_step, a, x);
        throw StepTooSmall(msg);
    }
    if (integer_order) return delta_pow(f, n, x, dcfg);

    const double aj = n - alpha;  // in (0,1)
    // At base 0 the operator acts in the operational sense: constants are
    // annihilated, so f(0) is removed before the (otherwise divergent)
    // kernel integral.
    const double f0 = (a == 0.0) ? f(0.0) : 0.0;
    const double inv_gamma = std::exp(-std::lgamma(aj));
    // Quadrature noise gets amplified by the difference quotients; run the
    // kernel integrals tighter than the caller's display tolerance.
    QuadConfig q2 = qcfg;
    q2.rel_tol = std::min(qcfg.rel_tol, 1e-12);
    q2.abs_tol = std::min(qcfg.abs_tol, 1e-15);
    auto g = [&f, f0, aj, a, inv_gamma, &q2](double y) {
        const RealFn shifted = [&f, f0](double t) { return f(t) - f0; };
        return inv_gamma * detail::log_kernel_integral(shifted, aj, a, y, q2).value;
    };
    return delta_pow(g, n, x, dcfg);
}

}  // namespace

double hadamard_derivative(const RealFn& f, double alpha, double a, double x,
                           const QuadConfig& qcfg, const DiffConfig& dcfg) {
    if (alpha < 0.0)
        throw DomainError("hadamard_derivative: requires alpha >= 0");
    if (a < 0.0 || !(x > a))
        throw DomainError("hadamard_derivative: requires x > a >= 0");
    return hadamard_deriv_impl(f, alpha, a, x, qcfg, dcfg);
}

double frak_d(const RealFn& f, double alpha, double x, const QuadConfig& qcfg,
              const DiffConfig& dcfg) {
    if (alpha < 0.0) throw DomainError("frak_d: requires alpha >= 0");
    if (!(x > 0.0)) throw DomainError("frak_d: requires x > 0");
    if (!(x - dcfg.log_step * std::max(std::abs(x), 1.0) > 0.0))
        throw StepTooSmall(
            "frak_d: outer difference stencil leaves (0, inf); reduce "
            "log_step or move x away from 0");
    if (alpha == 0.0) return deriv_x(f, x, dcfg);
    auto inner = [&](double y) {
        return hadamard_deriv_impl(f, alpha, 0.0, y, qcfg, dcfg);
    };
    return deriv_x(inner, x, dcfg);
}

RealFn dilate(const RealFn& f, double lambda) {
    const double scale = std::exp(lambda);
    return [f, scale](double x) { return f(scale * x); };
}

double power_rule(double beta, double alpha) {
    if (!(beta > 0.0)) throw DomainError("power_rule: requires beta > 0");
    return std::pow(beta, alpha);
}

double PowerSeriesRep::evaluate(double x) const {
    if (x < 0.0)
        throw DomainError("PowerSeriesRep: valid for x >= 0 only");
    detail::CompensatedSum<double> acc;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        acc.add(coeffs[k] * std::pow(x, step * static_cast<double>(k) + offset));
    return acc.value();
}

PowerSeriesRep ml_power_series(double alpha, double nu, double gamma,
                               double lambda, int n_terms) {
    if (!(alpha > -1.0))
        throw DomainError("ml_power_series: requires alpha > -1");
    if (!(nu > 0.0)) throw DomainError("ml_power_series: requires nu > 0");
    if (!(gamma > 0.0)) throw DomainError("ml_power_series: requires gamma > 0");
    if (n_terms < 1) throw DomainError("ml_power_series: requires n_terms >= 1");
    PowerSeriesRep rep;
    rep.step = nu;
    rep.offset = 0.0;
    rep.coeffs.resize(static_cast<std::size_t>(n_terms));
    const long double ap1 = static_cast<long double>(alpha) + 1.0L;
    const long double llam =
        lambda == 0.0 ? 0.0L : std::log(std::abs(static_cast<long double>(lambda)));
    for (int k = 0; k < n_terms; ++k) {
        if (lambda == 0.0 && k > 0) {
            rep.coeffs[k] = 0.0;
            continue;
        }
        const long double lg = std::lgamma(
            static_cast<long double>(nu) * k + static_cast<long double>(gamma));
        const long double mag = std::exp(k * llam - ap1 * lg);
        const double sign = (lambda < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
        rep.coeffs[k] = sign * static_cast<double>(mag);
    }
    return rep;
}

PowerSeriesRep caputo_on_series(const PowerSeriesRep& rep, double nu) {
    if (!(nu > 0.0) || nu > 1.0)
        throw DomainError("caputo_on_series: requires nu in (0, 1]");
    if (std::abs(rep.step - nu) > 1e-12)
        throw DomainError("caputo_on_series: series step must equal nu");
    if (std::abs(rep.offset) > 1e-12)
        throw DomainError("caputo_on_series: series offset must be 0");
    PowerSeriesRep out;
    out.step = nu;
    out.offset = 0.0;
    if (rep.coeffs.size() <= 1) return out;  // constants are annihilated
    out.coeffs.resize(rep.coeffs.size() - 1);
    const long double nul = nu;
    for (std::size_t j = 0; j < out.coeffs.size(); ++j) {
        const long double z = nul * static_cast<long double>(j + 1) + 1.0L;
        const long double ratio = std::exp(std::lgamma(z) - std::lgamma(z - nul));
        out.coeffs[j] = static_cast<double>(
            static_cast<long double>(rep.coeffs[j + 1]) * ratio);
    }
    return out;
}

PowerSeriesRep hyper_bessel_apply(const PowerSeriesRep& rep, double nu, int n) {
    if (n < 0) throw DomainError("hyper_bessel_apply: requires n >= 0");
    // The string d^nu x^nu d^nu ... d^nu acts right-to-left: a derivative
    // first, then n rounds of (multiply by x^nu, differentiate).
    PowerSeriesRep r = caputo_on_series(rep, nu);
    for (int i = 0; i < n; ++i) {
        r.coeffs.insert(r.coeffs.begin(), 0.0);  // multiply by x^nu
        r = caputo_on_series(r, nu);
    }
    return r;
}

EigenOp EigenOp::frak_d(double alpha) {
    if (alpha < 0.0) throw DomainError("eigen op frakd: requires alpha >= 0");
    EigenOp op;
    op.kind = Kind::FrakD;
    op.alpha = alpha;
    return op;
}

EigenOp EigenOp::mixed(int r, double alpha) {
    if (alpha < 0.0) throw DomainError("eigen op mixed: requires alpha >= 0");
    const int rmax = static_cast<int>(std::floor(alpha + 1.0));
    if (r < 1 || r > rmax)
        throw DomainError("eigen op mixed: requires 1 <= r <= [alpha+1]");
    EigenOp op;
    op.kind = Kind::Mixed;
    op.alpha = alpha;
    op.r = r;
    return op;
}

EigenOp EigenOp::inv_x_d(double order) {
    if (!(order > 0.0) || !(order < 1.0))
        throw DomainError(
            "eigen op invxd: derivative order must lie in (0,1), i.e. "
            "alpha = order-1 in (-1,0)");
    EigenOp op;
    op.kind = Kind::InvXD;
    op.order = order;
    return op;
}

EigenOp EigenOp::hyper_bessel(double nu, int n) {
    if (!(nu > 0.0) || nu > 1.0)
        throw DomainError("eigen op hyperbessel: requires nu in (0,1]");
    if (n < 0) throw DomainError("eigen op hyperbessel: requires n >= 0");
    EigenOp op;
    op.kind = Kind::HyperBessel;
    op.nu = nu;
    op.n = n;
    return op;
}

std::string EigenOp::describe() const {
    char buf[96];
    switch (kind) {
        case Kind::FrakD:
            std::snprintf(buf, sizeof(buf), "frakd(alpha=%g)", alpha);
            break;
        case Kind::Mixed:
            std::snprintf(buf, sizeof(buf), "mixed(r=%d,alpha=%g)", r, alpha);
            break;
        case Kind::InvXD:
            std::snprintf(buf, sizeof(buf), "invxd(order=%g)", order);
            break;
        case Kind::HyperBessel:
            std::snprintf(buf, sizeof(buf), "hyperbessel(nu=%g,n=%d)", nu, n);
            break;
    }
    return buf;
}

namespace {

double rel_residual(double lhs, double rhs) {
    const double denom = std::abs(rhs);
    if (denom == 0.0) return std::abs(lhs);
    return std::abs(lhs - rhs) / denom;
}

}  // namespace

EigenReport eigen_check(const EigenOp& op, const FunctionSpec& f, double lambda,
                        const std::vector<double>& grid, double tol,
                        const QuadConfig& qcfg, const DiffConfig& dcfg,
                        const SeriesConfig& scfg) {
    EigenReport report;

    if (op.kind == EigenOp::Kind::HyperBessel) {
        if (f.kind != FunctionKind::ML)
            throw DomainError(
                "eigen_check(hyperbessel): the operand must be an ml: "
                "function spec (coefficient representation required)");
        const int n_coeffs = 40;
        const PowerSeriesRep in =
            ml_power_series(f.alpha, f.nu, f.gamma, f.lambda, n_coeffs);
        const PowerSeriesRep out = hyper_bessel_apply(in, op.nu, op.n);
        for (std::size_t j = 0; j < out.coeffs.size(); ++j) {
            const double expect = lambda * in.coeffs[j];
            if (expect == 0.0 && out.coeffs[j] == 0.0) continue;
            report.residuals.push_back(rel_residual(out.coeffs[j], expect));
        }
    } else {
        const RealFn fx = f.as_function(scfg);
        for (double x : grid) {
            double lhs = 0.0;
            switch (op.kind) {
                case EigenOp::Kind::FrakD:
                    lhs = frak_d(fx, op.alpha, x, qcfg, dcfg);
                    break;
                case EigenOp::Kind::Mixed: {
                    const double inner_order = op.alpha + 1.0 - op.r;
                    auto h1 = [&](double y) {
                        return hadamard_deriv_impl(fx, inner_order, 0.0, y,
                                                   qcfg, dcfg);
                    };
                    auto h2 = [&](double y) {
                        return delta_pow(h1, op.r - 1, y, dcfg);
                    };
                    lhs = deriv_x(h2, x, dcfg);
                    break;
                }
                case EigenOp::Kind::InvXD:
                    lhs = hadamard_derivative(fx, op.order, 0.0, x, qcfg,
                                              dcfg) /
                          x;
                    break;
                case EigenOp::Kind::HyperBessel:
                    break;  // handled above
            }
            report.residuals.push_back(rel_residual(lhs, lambda * fx(x)));
        }
    }

    for (double r : report.residuals)
        report.max_rel_residual = std::max(report.max_rel_residual, r);
    report.pass = report.max_rel_residual <= tol && !report.residuals.empty();
    return report;
}

}  // namespace hml
