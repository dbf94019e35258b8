#include "hml/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "hml/errors.hpp"

namespace hml {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct RuleOut {
    double value;
    double error;
};

// Embedded G7/K15 on [a,b] with the QUADPACK error heuristic.
RuleOut gk15(const Integrand& f, double a, double b, long& evals) {
    const double center = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    const double fc = f(center);
    evals += 15;

    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = hl * kXgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const double fsum = fv1[j] + fv2[j];
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    }
    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double value = resk * hl;
    resabs *= std::abs(hl);
    resasc *= std::abs(hl);
    double err = std::abs((resk - resg) * hl);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double uflow = std::numeric_limits<double>::min();
    if (resabs > uflow / (50.0 * eps)) err = std::max(eps * 50.0 * resabs, err);
    return {value, err};
}

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

QuadResult adaptive(const Integrand& f, double a, double b,
                    const QuadConfig& cfg) {
    QuadResult res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::vector<Segment> heap;
    long evals = 0;
    RuleOut first = gk15(f, a, b, evals);
    heap.push_back({a, b, first.value, first.error});

    double total_v = first.value;
    double total_e = first.error;
    int splits = 0;
    while (total_e > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total_v)) &&
           splits < cfg.max_subdivisions) {
        std::pop_heap(heap.begin(), heap.end());
        Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval exhausted at machine resolution; keep as-is
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end());
            break;
        }
        RuleOut left = gk15(f, worst.a, mid, evals);
        RuleOut right = gk15(f, mid, worst.b, evals);
        total_v += left.value + right.value - worst.value;
        total_e += left.error + right.error - worst.error;
        heap.push_back({worst.a, mid, left.value, left.error});
        std::push_heap(heap.begin(), heap.end());
        heap.push_back({mid, worst.b, right.value, right.error});
        std::push_heap(heap.begin(), heap.end());
        ++splits;
    }
    res.value = total_v;
    res.abs_error_est = total_e;
    res.evaluations = evals;
    res.converged =
        total_e <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total_v)) &&
        std::isfinite(total_v);
    return res;
}

}  // namespace

QuadResult integrate_finite(const Integrand& f, double a, double b,
                            const QuadConfig& cfg, SingularEnd singular) {
    if (!(a <= b))
        throw DomainError("integrate_finite: requires a <= b");
    switch (singular) {
        case SingularEnd::None:
            return adaptive(f, a, b, cfg);
        case SingularEnd::Left: {
            // x = a + (b-a) u^2 clusters nodes at the singular endpoint.
            const double len = b - a;
            auto g = [&f, a, len](double u) {
                return f(a + len * u * u) * 2.0 * len * u;
            };
            return adaptive(g, 0.0, 1.0, cfg);
        }
        case SingularEnd::Right: {
            const double len = b - a;
            auto g = [&f, b, len](double u) {
                return f(b - len * u * u) * 2.0 * len * u;
            };
            return adaptive(g, 0.0, 1.0, cfg);
        }
    }
    return {};
}

QuadResult integrate_semi_infinite(const Integrand& f, double a,
                                   const QuadConfig& cfg) {
    constexpr double q = 1.5707963267948966;  // pi/2
    constexpr double t_max = 6.7;             // exp(q sinh t) near overflow
    auto g = [&f, a](double t) {
        const double ex = std::exp(q * std::sinh(t));
        if (ex < 1e-280 || !std::isfinite(ex)) return 0.0;
        const double w = q * std::cosh(t) * ex;
        if (!std::isfinite(w)) return 0.0;
        const double v = f(a + ex);
        return std::isfinite(v) ? v * w : 0.0;
    };
    // Truncate the t-range where the transformed integrand has decayed for
    // good; the double-exponential decay makes a coarse scan sufficient.
    const double step = 0.25;
    double t_lo = 0.0, t_hi = 0.0;
    int quiet = 0;
    for (double t = 0.0; t <= t_max; t += step) {
        if (std::abs(g(t)) > cfg.tail_cutoff_tol) {
            t_hi = t + step;
            quiet = 0;
        } else if (++quiet >= 3 && t > 1.0) {
            break;
        }
    }
    quiet = 0;
    for (double t = 0.0; t >= -t_max; t -= step) {
        if (std::abs(g(t)) > cfg.tail_cutoff_tol) {
            t_lo = t - step;
            quiet = 0;
        } else if (++quiet >= 3 && t < -1.0) {
            break;
        }
    }
    t_hi = std::min(t_hi, t_max);
    t_lo = std::max(t_lo, -t_max);
    if (t_hi <= t_lo) {
        QuadResult r;
        r.converged = true;  // integrand below cutoff everywhere
        return r;
    }
    return adaptive(g, t_lo, t_hi, cfg);
}

namespace detail {

QuadResult log_kernel_integral(const Integrand& g, double alpha, double a,
                               double x, const QuadConfig& cfg) {
    if (!(alpha > 0.0))
        throw DomainError("log kernel: alpha must be > 0");
    if (!(x > a) || a < 0.0)
        throw DomainError("log kernel: requires x > a >= 0");
    const double L = a > 0.0 ? std::log(x / a)
                             : std::numeric_limits<double>::infinity();
    auto G = [&g, x](double s) { return g(x * std::exp(-s)); };

    QuadResult unit{};
    QuadResult rest{};
    double c = std::isfinite(L) ? std::min(1.0, L) : 1.0;
    if (alpha < 1.0) {
        // s = c v^{1/alpha} turns s^{alpha-1} ds into (c^alpha/alpha) dv.
        const double inv_alpha = 1.0 / alpha;
        const double scale = std::pow(c, alpha) * inv_alpha;
        auto h = [&G, c, inv_alpha](double v) {
            return G(c * std::pow(v, inv_alpha));
        };
        unit = integrate_finite(h, 0.0, 1.0, cfg);
        unit.value *= scale;
        unit.abs_error_est *= scale;
    } else {
        auto h = [&G, alpha](double s) { return std::pow(s, alpha - 1.0) * G(s); };
        unit = integrate_finite(h, 0.0, c, cfg);
    }
    if (!std::isfinite(L) || L > c) {
        auto h = [&G, alpha](double s) { return std::pow(s, alpha - 1.0) * G(s); };
        rest = std::isfinite(L) ? integrate_finite(h, c, L, cfg)
                                : integrate_semi_infinite(h, c, cfg);
    } else {
        rest.converged = true;
    }
    QuadResult out;
    out.value = unit.value + rest.value;
    out.abs_error_est = unit.abs_error_est + rest.abs_error_est;
    out.evaluations = unit.evaluations + rest.evaluations;
    out.converged = unit.converged && rest.converged;
    return out;
}

}  // namespace detail

QuadResult integrate_log_singular(const Integrand& g, double alpha, double a,
                                  double x, const QuadConfig& cfg) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw DomainError("integrate_log_singular: alpha must lie in (0, 1]");
    return detail::log_kernel_integral(g, alpha, a, x, cfg);
}

}  // namespace hml
