#include "hml/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hml/errors.hpp"
#include "hml/figures.hpp"
#include "hml/fractional_ops.hpp"
#include "hml/function_spec.hpp"
#include "hml/lamb_bateman.hpp"
#include "hml/operational_solver.hpp"
#include "hml/quadrature.hpp"
#include "hml/series.hpp"
#include "hml/special_functions.hpp"
#include "hml/verification.hpp"
#include "hml/version.hpp"

namespace hml {
namespace {

using ojson = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* status_name(SeriesStatus s) {
    switch (s) {
        case SeriesStatus::Converged: return "converged";
        case SeriesStatus::MaxTermsReached: return "max-terms";
        case SeriesStatus::Overflow: return "overflow";
    }
    return "unknown";
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::vector<double> parse_list(const std::string& text,
                               const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto b = tok.find_first_not_of(" \t");
        const auto e = tok.find_last_not_of(" \t");
        if (b == std::string::npos)
            throw UsageError(flag + ": empty entry in list '" + text + "'");
        tok = tok.substr(b, e - b + 1);
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError(flag + ": '" + tok + "' is not a number");
        }
    }
    if (out.empty())
        throw UsageError(flag + ": expected a comma-separated list of numbers");
    return out;
}

int write_output(const std::string& payload, const std::string& out_path,
                 std::ostream& out, std::ostream& err) {
    if (out_path.empty()) {
        out << payload;
        return 0;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        err << "error: cannot open output file '" << out_path << "'\n";
        return 1;
    }
    f << payload;
    f.flush();
    if (!f) {
        err << "error: failed while writing '" << out_path << "'\n";
        return 1;
    }
    return 0;
}

// ---------------------------------------------------------------- options

struct QuadOpts {
    double rel_tol = QuadConfig{}.rel_tol;
    double abs_tol = QuadConfig{}.abs_tol;
    int max_subdivisions = QuadConfig{}.max_subdivisions;

    QuadConfig config() const {
        QuadConfig q;
        q.rel_tol = rel_tol;
        q.abs_tol = abs_tol;
        q.max_subdivisions = max_subdivisions;
        return q;
    }
};

void add_quad_opts(CLI::App* cmd, QuadOpts& q) {
    cmd->add_option("--quad-rel-tol", q.rel_tol,
                    "Quadrature relative tolerance")
        ->capture_default_str();
    cmd->add_option("--quad-abs-tol", q.abs_tol,
                    "Quadrature absolute tolerance")
        ->capture_default_str();
    cmd->add_option("--max-subdivisions", q.max_subdivisions,
                    "Adaptive bisection budget")
        ->capture_default_str();
}

struct DiffOpts {
    double log_step = DiffConfig{}.log_step;
    int richardson = DiffConfig{}.richardson_levels;

    DiffConfig config() const {
        DiffConfig d;
        d.log_step = log_step;
        d.richardson_levels = richardson;
        return d;
    }
};

void add_diff_opts(CLI::App* cmd, DiffOpts& d) {
    cmd->add_option("--log-step", d.log_step,
                    "Base step of the log-space difference stencils")
        ->capture_default_str();
    cmd->add_option("--richardson", d.richardson,
                    "Richardson extrapolation levels (0 = plain stencil)")
        ->capture_default_str();
}

struct IoOpts {
    std::string out_path;
    std::string format;
};

void add_io_opts(CLI::App* cmd, IoOpts& io, const std::string& def,
                 const std::vector<std::string>& allowed) {
    io.format = def;
    cmd->add_option("--out", io.out_path,
                    "Write the report to this file instead of stdout");
    if (allowed.size() > 1)
        cmd->add_option("--format", io.format, "Output format")
            ->check(CLI::IsMember(allowed))
            ->capture_default_str();
}

ojson make_report(const std::string& command, ojson inputs, ojson results,
                  bool pass, const Clock::time_point& t0) {
    ojson j;
    j["command"] = command;
    j["inputs"] = std::move(inputs);
    j["results"] = std::move(results);
    j["pass"] = pass;
    j["version"] = kVersion;
    j["seconds"] = std::chrono::duration<double>(Clock::now() - t0).count();
    return j;
}

int emit(const IoOpts& io, const std::string& text, const ojson& report,
         std::ostream& out, std::ostream& err, int status) {
    const std::string payload =
        io.format == "json" ? report.dump(2) + "\n" : text;
    const int w = write_output(payload, io.out_path, out, err);
    return w != 0 ? w : status;
}

// ------------------------------------------------------------------ eval

struct EvalOpts {
    double alpha = 0.0;
    double nu = 1.0;
    double gamma = 1.0;
    std::string spec_text;
    std::string x_text;
    int max_terms = 0;  // 0 = inherit the session default
    IoOpts io;
};

SeriesConfig eval_series_config(const EvalOpts& o, const SeriesConfig& base) {
    SeriesConfig scfg = base;
    if (o.max_terms > 0) scfg.max_terms = o.max_terms;
    return scfg;
}

int run_eval_series(const std::string& command, const EvalOpts& o,
                    ojson inputs,
                    const std::function<EvalResult(double)>& evaluate,
                    const Clock::time_point& t0, std::ostream& out,
                    std::ostream& err) {
    const std::vector<double> xs = parse_list(o.x_text, "--x");
    std::ostringstream text;
    ojson results = ojson::array();
    bool all_converged = true;
    if (o.io.format == "csv") text << "x,value,abs_err_est,terms,status\n";
    for (double x : xs) {
        const EvalResult r = evaluate(x);
        all_converged = all_converged && r.status == SeriesStatus::Converged;
        if (o.io.format == "csv")
            text << fmt17(x) << ',' << fmt17(r.value) << ','
                 << fmt17(r.abs_error_est) << ',' << r.terms_used << ','
                 << status_name(r.status) << '\n';
        else
            text << "x=" << fmt17(x) << " value=" << fmt17(r.value)
                 << " abs_err_est=" << fmt17(r.abs_error_est)
                 << " terms=" << r.terms_used
                 << " status=" << status_name(r.status) << '\n';
        results.push_back({{"x", x},
                           {"value", r.value},
                           {"abs_err_est", r.abs_error_est},
                           {"terms", r.terms_used},
                           {"status", status_name(r.status)}});
    }
    inputs["x"] = xs;
    const ojson rep =
        make_report(command, std::move(inputs), std::move(results),
                    all_converged, t0);
    return emit(o.io, text.str(), rep, out, err, all_converged ? 0 : 3);
}

int run_eval_alexp(const EvalOpts& o, const SeriesConfig& base,
                   const Clock::time_point& t0, std::ostream& out,
                   std::ostream& err) {
    const SeriesConfig scfg = eval_series_config(o, base);
    ojson inputs{{"alpha", o.alpha}, {"max_terms", scfg.max_terms}};
    return run_eval_series(
        "eval alexp", o, std::move(inputs),
        [&](double x) { return alpha_l_exponential(o.alpha, x, scfg); }, t0,
        out, err);
}

int run_eval_ml(const EvalOpts& o, const SeriesConfig& base,
                const Clock::time_point& t0, std::ostream& out,
                std::ostream& err) {
    const SeriesConfig scfg = eval_series_config(o, base);
    const MLParams p{o.alpha, o.nu, o.gamma};
    ojson inputs{{"alpha", o.alpha},
                 {"nu", o.nu},
                 {"gamma", o.gamma},
                 {"max_terms", scfg.max_terms}};
    return run_eval_series(
        "eval ml", o, std::move(inputs),
        [&](double x) { return alpha_mittag_leffler(p, x, scfg); }, t0, out,
        err);
}

int run_eval_fn(const EvalOpts& o, const SeriesConfig& base,
                const Clock::time_point& t0, std::ostream& out,
                std::ostream& err) {
    const SeriesConfig scfg = eval_series_config(o, base);
    const FunctionSpec spec = parse_function_spec(o.spec_text);
    const std::vector<double> xs = parse_list(o.x_text, "--x");
    std::ostringstream text;
    ojson results = ojson::array();
    if (o.io.format == "csv") text << "x,value\n";
    for (double x : xs) {
        const double v = spec.evaluate(x, scfg);
        if (o.io.format == "csv")
            text << fmt17(x) << ',' << fmt17(v) << '\n';
        else
            text << "x=" << fmt17(x) << " value=" << fmt17(v) << '\n';
        results.push_back({{"x", x}, {"value", v}});
    }
    ojson inputs{{"spec", spec.describe()},
                 {"x", xs},
                 {"max_terms", scfg.max_terms}};
    const ojson rep = make_report("eval fn", std::move(inputs),
                                  std::move(results), true, t0);
    return emit(o.io, text.str(), rep, out, err, 0);
}

// ------------------------------------------------- hadamard / frak-D

struct OperatorOpts {
    std::string fn_text;
    double alpha = 0.5;
    double a = 0.0;
    std::string x_text;
    QuadOpts quad;
    DiffOpts diff;
    IoOpts io;
};

int run_hadamard_integral(const OperatorOpts& o, const SeriesConfig& base,
                          const Clock::time_point& t0, std::ostream& out,
                          std::ostream& err) {
    if (!(o.alpha > 0.0))
        throw UsageError("--alpha: the Hadamard integral order must be > 0");
    if (o.a < 0.0) throw UsageError("--a: the base point must be >= 0");
    const FunctionSpec spec = parse_function_spec(o.fn_text);
    const RealFn f = spec.as_function(base);
    const QuadConfig qcfg = o.quad.config();
    const std::vector<double> xs = parse_list(o.x_text, "--x");
    std::ostringstream text;
    ojson results = ojson::array();
    bool all_converged = true;
    if (o.io.format == "csv")
        text << "x,value,abs_err_est,evaluations,converged\n";
    for (double x : xs) {
        if (!(x > o.a))
            throw UsageError("--x: evaluation points must satisfy x > a");
        const QuadResult q = hadamard_integral(f, o.alpha, o.a, x, qcfg);
        all_converged = all_converged && q.converged;
        if (o.io.format == "csv")
            text << fmt17(x) << ',' << fmt17(q.value) << ','
                 << fmt17(q.abs_error_est) << ',' << q.evaluations << ','
                 << yes_no(q.converged) << '\n';
        else
            text << "x=" << fmt17(x) << " value=" << fmt17(q.value)
                 << " abs_err_est=" << fmt17(q.abs_error_est)
                 << " evaluations=" << q.evaluations
                 << " converged=" << yes_no(q.converged) << '\n';
        results.push_back({{"x", x},
                           {"value", q.value},
                           {"abs_err_est", q.abs_error_est},
                           {"evaluations", q.evaluations},
                           {"converged", q.converged}});
    }
    ojson inputs{{"fn", spec.describe()},
                 {"alpha", o.alpha},
                 {"a", o.a},
                 {"x", xs}};
    const ojson rep = make_report("hadamard integral", std::move(inputs),
                                  std::move(results), all_converged, t0);
    return emit(o.io, text.str(), rep, out, err, all_converged ? 0 : 3);
}

int run_pointwise_operator(const std::string& command, const OperatorOpts& o,
                           const SeriesConfig& base,
                           const std::function<double(const RealFn&, double)>&
                               apply,
                           ojson extra_inputs, const Clock::time_point& t0,
                           std::ostream& out, std::ostream& err) {
    const FunctionSpec spec = parse_function_spec(o.fn_text);
    const RealFn f = spec.as_function(base);
    const std::vector<double> xs = parse_list(o.x_text, "--x");
    std::ostringstream text;
    ojson results = ojson::array();
    if (o.io.format == "csv") text << "x,value\n";
    for (double x : xs) {
        const double v = apply(f, x);
        if (o.io.format == "csv")
            text << fmt17(x) << ',' << fmt17(v) << '\n';
        else
            text << "x=" << fmt17(x) << " value=" << fmt17(v) << '\n';
        results.push_back({{"x", x}, {"value", v}});
    }
    ojson inputs{{"fn", spec.describe()}, {"alpha", o.alpha}};
    for (auto& item : extra_inputs.items()) inputs[item.key()] = item.value();
    inputs["x"] = xs;
    const ojson rep = make_report(command, std::move(inputs),
                                  std::move(results), true, t0);
    return emit(o.io, text.str(), rep, out, err, 0);
}

int run_hadamard_derivative(const OperatorOpts& o, const SeriesConfig& base,
                            const Clock::time_point& t0, std::ostream& out,
                            std::ostream& err) {
    if (o.alpha < 0.0)
        throw UsageError("--alpha: the Hadamard derivative order must be >= 0");
    if (o.a < 0.0) throw UsageError("--a: the base point must be >= 0");
    const QuadConfig qcfg = o.quad.config();
    const DiffConfig dcfg = o.diff.config();
    return run_pointwise_operator(
        "hadamard derivative", o, base,
        [&](const RealFn& f, double x) {
            if (!(x > o.a))
                throw UsageError("--x: evaluation points must satisfy x > a");
            return hadamard_derivative(f, o.alpha, o.a, x, qcfg, dcfg);
        },
        ojson{{"a", o.a}}, t0, out, err);
}

int run_frakd(const OperatorOpts& o, const SeriesConfig& base,
              const Clock::time_point& t0, std::ostream& out,
              std::ostream& err) {
    if (o.alpha < 0.0)
        throw UsageError("--alpha: the operator order must be >= 0");
    const QuadConfig qcfg = o.quad.config();
    const DiffConfig dcfg = o.diff.config();
    return run_pointwise_operator(
        "frakd", o, base,
        [&](const RealFn& f, double x) {
            if (!(x > 0.0))
                throw UsageError("--x: evaluation points must be > 0");
            return frak_d(f, o.alpha, x, qcfg, dcfg);
        },
        ojson::object(), t0, out, err);
}

// ---------------------------------------------------------- laplace-check

struct LaplaceOpts {
    std::string kind = "ml";
    double alpha = 0.5;
    double nu = 0.5;
    double gamma = 2.0;
    double lambda = 0.3;
    double s = 1.5;
    double tol = 1e-6;
    QuadOpts quad;
    IoOpts io;
};

int run_laplace_check(const LaplaceOpts& o, const SeriesConfig& base,
                      const Clock::time_point& t0, std::ostream& out,
                      std::ostream& err) {
    if (!(o.s > 0.0)) throw UsageError("--s: the Laplace variable must be > 0");
    const QuadConfig qcfg = o.quad.config();
    double closed = 0.0;
    Integrand integrand;
    std::ostringstream head;
    ojson inputs;
    if (o.kind == "ml") {
        const MLParams p{o.alpha, o.nu, o.gamma};
        closed = ml_laplace_transform(p, o.lambda, o.s, base);
        const RealFn fx = FunctionSpec::ml(o.alpha, o.nu, o.gamma, o.lambda)
                              .as_function(base);
        const double gm1 = o.gamma - 1.0;
        const double s = o.s;
        integrand = [fx, s, gm1](double x) {
            if (x <= 0.0) return 0.0;
            const double damp = std::exp(-s * x);
            if (damp == 0.0) return 0.0;
            const double v = fx(x) * std::pow(x, gm1);
            return std::isfinite(v) ? damp * v : 0.0;
        };
        head << "laplace-check kind=ml alpha=" << fmt17(o.alpha)
             << " nu=" << fmt17(o.nu) << " gamma=" << fmt17(o.gamma)
             << " lambda=" << fmt17(o.lambda) << " s=" << fmt17(o.s) << '\n';
        inputs = ojson{{"kind", "ml"},     {"alpha", o.alpha},
                       {"nu", o.nu},       {"gamma", o.gamma},
                       {"lambda", o.lambda}, {"s", o.s},
                       {"tol", o.tol}};
    } else {
        closed = alphaexp_laplace_transform(o.alpha, o.s, base);
        const double alpha = o.alpha;
        const double s = o.s;
        const SeriesConfig scfg = base;
        integrand = [alpha, s, scfg](double x) {
            if (x < 0.0) return 0.0;
            const double damp = std::exp(-s * x);
            if (damp == 0.0) return 0.0;
            const double v = alpha_l_exponential(alpha, x, scfg).value;
            return std::isfinite(v) ? damp * v : 0.0;
        };
        head << "laplace-check kind=alexp alpha=" << fmt17(o.alpha)
             << " s=" << fmt17(o.s) << '\n';
        inputs = ojson{{"kind", "alexp"},
                       {"alpha", o.alpha},
                       {"s", o.s},
                       {"tol", o.tol}};
    }
    const QuadResult q = integrate_semi_infinite(integrand, 0.0, qcfg);
    const double rel_err =
        std::abs(q.value - closed) / std::max(std::abs(closed), 1e-300);
    const bool pass = q.converged && rel_err <= o.tol;

    std::ostringstream text;
    text << head.str();
    text << "closed_form=" << fmt17(closed) << '\n';
    text << "quadrature=" << fmt17(q.value)
         << " abs_err_est=" << fmt17(q.abs_error_est)
         << " converged=" << yes_no(q.converged) << '\n';
    text << "rel_err=" << fmt17(rel_err) << " tol=" << fmt17(o.tol) << '\n';
    text << (pass ? "PASS" : "FAIL") << '\n';

    ojson results = ojson::array();
    results.push_back({{"closed_form", closed},
                       {"quadrature", q.value},
                       {"quad_abs_err_est", q.abs_error_est},
                       {"quad_converged", q.converged},
                       {"rel_err", rel_err},
                       {"pass", pass}});
    const ojson rep = make_report("laplace-check", std::move(inputs),
                                  std::move(results), pass, t0);
    const int status = !q.converged ? 3 : (pass ? 0 : 1);
    return emit(o.io, text.str(), rep, out, err, status);
}

// ------------------------------------------------------------ eigen-check

struct EigenOpts {
    std::string op;
    double alpha = 0.0;
    int r = 1;
    double order = 0.5;
    double nu = 1.0;
    int n = 0;
    std::string fn_text;
    double lambda = 0.0;
    std::string grid_text = "0.5,1,2";
    double tol = 1e-5;
    QuadOpts quad;
    DiffOpts diff;
    IoOpts io;
};

int run_eigen_check(const EigenOpts& o, const SeriesConfig& base,
                    const Clock::time_point& t0, std::ostream& out,
                    std::ostream& err) {
    EigenOp op;
    if (o.op == "frakd")
        op = EigenOp::frak_d(o.alpha);
    else if (o.op == "mixed")
        op = EigenOp::mixed(o.r, o.alpha);
    else if (o.op == "invxd")
        op = EigenOp::inv_x_d(o.order);
    else
        op = EigenOp::hyper_bessel(o.nu, o.n);
    const FunctionSpec f = parse_function_spec(o.fn_text);
    const std::vector<double> grid = parse_list(o.grid_text, "--grid");
    const EigenReport rep = eigen_check(op, f, o.lambda, grid, o.tol,
                                        o.quad.config(), o.diff.config(),
                                        base);

    std::ostringstream text;
    text << "eigen-check op=" << op.describe() << " fn=" << f.describe()
         << " eigenvalue=" << fmt17(o.lambda) << " tol=" << fmt17(o.tol)
         << '\n';
    const bool per_coeff = op.kind == EigenOp::Kind::HyperBessel;
    ojson points = ojson::array();
    for (std::size_t i = 0; i < rep.residuals.size(); ++i) {
        if (per_coeff)
            text << "coeff=" << i;
        else
            text << "x=" << fmt17(grid[i]);
        text << " rel_residual=" << fmt17(rep.residuals[i]) << '\n';
        ojson row;
        if (per_coeff)
            row["coeff"] = i;
        else
            row["x"] = grid[i];
        row["rel_residual"] = rep.residuals[i];
        points.push_back(std::move(row));
    }
    text << "max_rel_residual=" << fmt17(rep.max_rel_residual) << '\n';
    text << (rep.pass ? "PASS" : "FAIL") << '\n';

    ojson inputs{{"op", op.describe()},
                 {"fn", f.describe()},
                 {"eigenvalue", o.lambda},
                 {"grid", grid},
                 {"tol", o.tol}};
    ojson results = ojson::array();
    results.push_back({{"max_rel_residual", rep.max_rel_residual},
                       {"points", std::move(points)},
                       {"pass", rep.pass}});
    const ojson jrep = make_report("eigen-check", std::move(inputs),
                                   std::move(results), rep.pass, t0);
    return emit(o.io, text.str(), jrep, out, err, rep.pass ? 0 : 1);
}

// ------------------------------------------------------- solve-ivp / bvp

struct SolveOpts {
    double alpha = 0.0;
    std::string op_name;
    std::string op_file;
    std::string basis = "monomial";
    std::string coeffs_text;
    std::string data_file;
    std::string t_text;
    std::string x_text;
    double tol = 1e-14;
    int rmax = 300;
    IoOpts io;
};

struct OpAndData {
    CoefficientOperator op;
    CoefficientVector data;
};

OpAndData build_operator_and_data(const SolveOpts& o, const char* op_flag,
                                  const char* coeffs_flag) {
    CoefficientVector data;
    bool have_data = false;
    if (!o.data_file.empty()) {
        data = load_vector_file(o.data_file);
        have_data = true;
    }
    CoefficientOperator op;
    if (!o.op_file.empty()) {
        op = load_operator_file(o.op_file);
    } else {
        const Basis b = have_data ? data.basis : parse_basis(o.basis);
        if (!have_data) {
            data.basis = b;
            data.coeffs = parse_list(o.coeffs_text, coeffs_flag);
            have_data = true;
        }
        const int dim = data.dim();
        if (o.op_name == "d1")
            op = CoefficientOperator::derivative(b, dim);
        else if (o.op_name == "d2")
            op = CoefficientOperator::second_derivative(b, dim);
        else
            throw UsageError(std::string(op_flag) + ": unknown operator '" +
                             o.op_name + "' (expected d1 or d2)");
    }
    if (!have_data) {
        data.basis = op.basis;
        data.coeffs = parse_list(o.coeffs_text, coeffs_flag);
    }
    return {std::move(op), std::move(data)};
}

void append_solution_rows(const SolveReport& rep, std::ostringstream* csv,
                          ojson* rows) {
    if (csv) *csv << "x,t,value,tail_est\n";
    if (!rep.is_bvp) {
        for (std::size_t ti = 0; ti < rep.t_grid.size(); ++ti)
            for (std::size_t xi = 0; xi < rep.x_grid.size(); ++xi) {
                const double v = rep.values[ti][xi];
                if (csv)
                    *csv << fmt17(rep.x_grid[xi]) << ',' << fmt17(rep.t_grid[ti])
                         << ',' << fmt17(v) << ',' << fmt17(rep.tail_est[ti])
                         << '\n';
                if (rows)
                    rows->push_back({{"x", rep.x_grid[xi]},
                                     {"t", rep.t_grid[ti]},
                                     {"value", v},
                                     {"tail_est", rep.tail_est[ti]}});
            }
    } else {
        for (std::size_t xi = 0; xi < rep.x_grid.size(); ++xi)
            for (std::size_t ti = 0; ti < rep.t_grid.size(); ++ti) {
                const double v = rep.values[xi][ti];
                if (csv)
                    *csv << fmt17(rep.x_grid[xi]) << ',' << fmt17(rep.t_grid[ti])
                         << ',' << fmt17(v) << ',' << fmt17(rep.tail_est[xi])
                         << '\n';
                if (rows)
                    rows->push_back({{"x", rep.x_grid[xi]},
                                     {"t", rep.t_grid[ti]},
                                     {"value", v},
                                     {"tail_est", rep.tail_est[xi]}});
            }
    }
}

int run_solve(bool bvp, const SolveOpts& o, const Clock::time_point& t0,
              std::ostream& out, std::ostream& err) {
    const char* op_flag = bvp ? "--xi-op" : "--theta-op";
    const char* coeffs_flag = bvp ? "--h-coeffs" : "--g-coeffs";
    OpAndData parts = build_operator_and_data(o, op_flag, coeffs_flag);
    const std::vector<double> ts = parse_list(o.t_text, "--t");
    const std::vector<double> xs = parse_list(o.x_text, "--x");
    const SolveReport rep =
        bvp ? solve_bvp(parts.op, parts.data, o.alpha, xs, ts, o.tol, o.rmax)
            : solve_ivp(parts.op, parts.data, o.alpha, ts, xs, o.tol, o.rmax);

    std::ostringstream csv;
    ojson rows = ojson::array();
    append_solution_rows(rep, &csv, &rows);

    ojson inputs{{"alpha", o.alpha},
                 {"operator",
                  !o.op_file.empty() ? ojson(o.op_file) : ojson(o.op_name)},
                 {"basis", basis_name(parts.op.basis)},
                 {"dim", parts.op.dim},
                 {"data", parts.data.coeffs},
                 {"t", ts},
                 {"x", xs},
                 {"tol", o.tol},
                 {"rmax", o.rmax}};
    const ojson jrep = make_report(bvp ? "solve-bvp" : "solve-ivp",
                                   std::move(inputs), std::move(rows), true,
                                   t0);
    return emit(o.io, csv.str(), jrep, out, err, 0);
}

// ---------------------------------------------------------- laguerre-heat

struct LaguerreOpts {
    std::string s_text;
    std::string x_text;
    std::string t_text;
    IoOpts io;
};

int run_laguerre_heat(const LaguerreOpts& o, const Clock::time_point& t0,
                      std::ostream& out, std::ostream& err) {
    CoefficientVector s;
    s.basis = Basis::Monomial;
    s.coeffs = parse_list(o.s_text, "--s-coeffs");
    const std::vector<double> xs = parse_list(o.x_text, "--x");
    const std::vector<double> ts = parse_list(o.t_text, "--t");
    std::ostringstream csv;
    ojson rows = ojson::array();
    csv << "x,t,value,tail_est\n";
    for (double x : xs)
        for (double t : ts) {
            const double v = laguerre_heat(s, x, t);
            csv << fmt17(x) << ',' << fmt17(t) << ',' << fmt17(v) << ",0\n";
            rows.push_back(
                {{"x", x}, {"t", t}, {"value", v}, {"tail_est", 0.0}});
        }
    ojson inputs{{"s_coeffs", s.coeffs}, {"x", xs}, {"t", ts}};
    const ojson jrep = make_report("laguerre-heat", std::move(inputs),
                                   std::move(rows), true, t0);
    return emit(o.io, csv.str(), jrep, out, err, 0);
}

// ------------------------------------------------------------------ lamb

struct LambOpts {
    double mu = 0.5;
    std::string fn_text;
    std::string x_text;
    double tol = 1e-7;
    double diff_tol = 1e-4;
    QuadOpts quad;
    DiffOpts diff;
    IoOpts io;
};

int run_lamb_beta(const LambOpts& o, const Clock::time_point& t0,
                  std::ostream& out, std::ostream& err) {
    if (!(o.mu > 0.0)) throw UsageError("--mu: the order must be > 0");
    const double beta = exact_beta(o.mu);
    std::ostringstream text;
    text << "mu=" << fmt17(o.mu) << " beta=" << fmt17(beta) << '\n';
    ojson results = ojson::array();
    results.push_back({{"mu", o.mu}, {"beta", beta}});
    const ojson rep = make_report("lamb beta", ojson{{"mu", o.mu}},
                                  std::move(results), true, t0);
    return emit(o.io, text.str(), rep, out, err, 0);
}

int run_lamb_lhs(const LambOpts& o, const SeriesConfig& base,
                 const Clock::time_point& t0, std::ostream& out,
                 std::ostream& err) {
    if (!(o.mu > 0.0)) throw UsageError("--mu: the order must be > 0");
    const FunctionSpec spec = parse_function_spec(o.fn_text);
    const std::vector<double> xs = parse_list(o.x_text, "--x");
    const QuadConfig qcfg = o.quad.config();
    std::ostringstream text;
    ojson results = ojson::array();
    bool all_converged = true;
    if (o.io.format == "csv") text << "x,integral,abs_err_est,converged\n";
    for (double x : xs) {
        const QuadResult q = lamb_lhs(spec, x, o.mu, qcfg, base);
        all_converged = all_converged && q.converged;
        if (o.io.format == "csv")
            text << fmt17(x) << ',' << fmt17(q.value) << ','
                 << fmt17(q.abs_error_est) << ',' << yes_no(q.converged)
                 << '\n';
        else
            text << "x=" << fmt17(x) << " integral=" << fmt17(q.value)
                 << " abs_err_est=" << fmt17(q.abs_error_est)
                 << " converged=" << yes_no(q.converged) << '\n';
        results.push_back({{"x", x},
                           {"integral", q.value},
                           {"abs_err_est", q.abs_error_est},
                           {"converged", q.converged}});
    }
    ojson inputs{{"fn", spec.describe()}, {"mu", o.mu}, {"x", xs}};
    const ojson rep = make_report("lamb lhs", std::move(inputs),
                                  std::move(results), all_converged, t0);
    return emit(o.io, text.str(), rep, out, err, all_converged ? 0 : 3);
}

int run_lamb_solve(const LambOpts& o, const Clock::time_point& t0,
                   std::ostream& out, std::ostream& err) {
    if (!(o.mu > 0.0)) throw UsageError("--mu: the order must be > 0");
    const FunctionSpec spec = parse_function_spec(o.fn_text);
    const std::vector<double> xs = parse_list(o.x_text, "--x");
    const QuadConfig qcfg = o.quad.config();
    const DiffConfig dcfg = o.diff.config();
    std::ostringstream text;
    ojson results = ojson::array();
    if (o.io.format == "csv") text << "x,u\n";
    for (double x : xs) {
        const double u = solve_given_f(spec, o.mu, x, qcfg, dcfg);
        if (o.io.format == "csv")
            text << fmt17(x) << ',' << fmt17(u) << '\n';
        else
            text << "x=" << fmt17(x) << " u=" << fmt17(u) << '\n';
        results.push_back({{"x", x}, {"u", u}});
    }
    ojson inputs{{"f", spec.describe()}, {"mu", o.mu}, {"x", xs}};
    const ojson rep = make_report("lamb solve", std::move(inputs),
                                  std::move(results), true, t0);
    return emit(o.io, text.str(), rep, out, err, 0);
}

int run_lamb_verify(const LambOpts& o, const Clock::time_point& t0,
                    std::ostream& out, std::ostream& err) {
    if (!(o.mu > 0.0)) throw UsageError("--mu: the order must be > 0");
    const std::vector<double> xs = parse_list(o.x_text, "--x");
    const LambVerifyReport rep = verify_power_solution(
        o.mu, xs, o.tol, o.diff_tol, o.quad.config(), o.diff.config());

    std::ostringstream text;
    text << "lamb verify mu=" << fmt17(o.mu) << " beta=" << fmt17(rep.beta)
         << '\n';
    ojson points = ojson::array();
    for (std::size_t i = 0; i < rep.x_points.size(); ++i) {
        text << "x=" << fmt17(rep.x_points[i])
             << " integral_rel_err=" << fmt17(rep.integral_rel_err[i]);
        ojson row{{"x", rep.x_points[i]},
                  {"integral_rel_err", rep.integral_rel_err[i]}};
        if (rep.diff_checked) {
            text << " diff_rel_err=" << fmt17(rep.diff_rel_err[i]);
            row["diff_rel_err"] = rep.diff_rel_err[i];
        }
        text << '\n';
        points.push_back(std::move(row));
    }
    text << "max_integral_err=" << fmt17(rep.max_integral_err)
         << " tol=" << fmt17(o.tol) << '\n';
    if (rep.diff_checked)
        text << "max_diff_err=" << fmt17(rep.max_diff_err)
             << " diff_tol=" << fmt17(o.diff_tol) << '\n';
    text << (rep.pass ? "PASS" : "FAIL") << '\n';

    ojson inputs{{"mu", o.mu},
                 {"x", xs},
                 {"tol", o.tol},
                 {"diff_tol", o.diff_tol}};
    ojson results = ojson::array();
    results.push_back({{"beta", rep.beta},
                       {"points", std::move(points)},
                       {"max_integral_err", rep.max_integral_err},
                       {"max_diff_err", rep.max_diff_err},
                       {"diff_checked", rep.diff_checked},
                       {"pass", rep.pass}});
    const ojson jrep = make_report("lamb verify", std::move(inputs),
                                   std::move(results), rep.pass, t0);
    return emit(o.io, text.str(), jrep, out, err, rep.pass ? 0 : 1);
}

// ---------------------------------------------------------------- figure

struct FigureOpts {
    std::string which;
    double x_max = 5.0;
    int points = 201;
    IoOpts io;
};

int run_figure(const FigureOpts& o, const SeriesConfig& base,
               const Clock::time_point& t0, std::ostream& out,
               std::ostream& err) {
    (void)t0;
    if (!(o.x_max > 0.0)) throw UsageError("--x-max: must be > 0");
    if (o.points < 2) throw UsageError("--points: need at least 2 points");
    const FigureId id = parse_figure_id(o.which);
    const std::string csv = figure_csv(id, o.x_max, o.points, base);
    return write_output(csv, o.io.out_path, out, err);
}

// ------------------------------------------------------------ verify-all

struct VerifyOpts {
    int criterion = 0;  // 0 = the whole suite
    IoOpts io;
};

int run_verify_all(const VerifyOpts& o, const Clock::time_point& t0,
                   std::ostream& out, std::ostream& err) {
    std::vector<CriterionResult> rs;
    if (o.criterion == 0)
        rs = run_acceptance_criteria();
    else
        rs.push_back(run_criterion(o.criterion));

    std::ostringstream text;
    ojson results = ojson::array();
    int failed = 0;
    for (const CriterionResult& c : rs) {
        if (!c.pass()) ++failed;
        text << format_criterion_line(c) << '\n';
        ojson checks = ojson::array();
        for (const CheckLine& ch : c.checks)
            checks.push_back({{"name", ch.name},
                              {"max_err", ch.max_err},
                              {"tol", ch.tol},
                              {"pass", ch.pass}});
        results.push_back({{"criterion", c.index},
                           {"title", c.title},
                           {"checks", std::move(checks)},
                           {"pass", c.pass()}});
    }
    if (failed == 0)
        text << "all criteria passed\n";
    else
        text << failed << " of " << rs.size() << " criteria failed\n";

    const ojson rep =
        make_report("verify-all", ojson{{"criterion", o.criterion}},
                    std::move(results), failed == 0, t0);
    return emit(o.io, text.str(), rep, out, err, failed == 0 ? 0 : 1);
}

}  // namespace

// -------------------------------------------------------------- run_cli

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    const Clock::time_point t0 = Clock::now();

    SeriesConfig base_series;
    if (const char* env = std::getenv("HADAMARD_ML_MAX_TERMS")) {
        const std::string text(env);
        bool ok = true;
        int v = 0;
        try {
            std::size_t used = 0;
            v = std::stoi(text, &used);
            ok = used == text.size() && v > 0;
        } catch (const std::exception&) {
            ok = false;
        }
        if (!ok) {
            err << "usage error: HADAMARD_ML_MAX_TERMS must be a positive "
                   "integer, got '"
                << text << "'\n";
            return 2;
        }
        base_series.max_terms = v;
    }

    CLI::App app{
        "Numerical toolkit for the alpha-Mittag-Leffler function family: "
        "series evaluation, Hadamard-type fractional operators, operational "
        "PDE solutions and Lamb-Bateman integral equations.",
        "hadamard-ml"};
    app.require_subcommand(1);
    app.set_version_flag("--version",
                         std::string("hadamard-ml ") + kVersion);

    int rc = 0;

    // eval ------------------------------------------------------------
    auto* eval = app.add_subcommand(
        "eval", "Evaluate the special functions or a function spec");
    eval->require_subcommand(1);

    EvalOpts ev_alexp;
    auto* c_alexp = eval->add_subcommand(
        "alexp", "alphaL-exponential e_alpha(x) = sum x^k/(k!)^(alpha+1)");
    c_alexp->add_option("--alpha", ev_alexp.alpha, "Order alpha > -1")
        ->required();
    c_alexp->add_option("--x", ev_alexp.x_text, "Comma-separated arguments")
        ->required();
    c_alexp->add_option("--max-terms", ev_alexp.max_terms,
                        "Series term cap (overrides the environment)");
    add_io_opts(c_alexp, ev_alexp.io, "plain", {"plain", "csv", "json"});
    c_alexp->callback([&] {
        rc = run_eval_alexp(ev_alexp, base_series, t0, out, err);
    });

    EvalOpts ev_ml;
    auto* c_ml = eval->add_subcommand(
        "ml",
        "alpha-Mittag-Leffler E_{alpha;nu,gamma}(x) = "
        "sum x^k/Gamma^(alpha+1)(nu k+gamma)");
    c_ml->add_option("--alpha", ev_ml.alpha, "Order alpha > -1")->required();
    c_ml->add_option("--nu", ev_ml.nu, "Scale nu > 0")->required();
    c_ml->add_option("--gamma", ev_ml.gamma, "Shift gamma > 0")->required();
    c_ml->add_option("--x", ev_ml.x_text, "Comma-separated arguments")
        ->required();
    c_ml->add_option("--max-terms", ev_ml.max_terms,
                     "Series term cap (overrides the environment)");
    add_io_opts(c_ml, ev_ml.io, "plain", {"plain", "csv", "json"});
    c_ml->callback(
        [&] { rc = run_eval_ml(ev_ml, base_series, t0, out, err); });

    EvalOpts ev_fn;
    auto* c_fn = eval->add_subcommand(
        "fn", "Any function spec (power:b | logpow:c[,a] | sin | exp[:rate] "
              "| alexp:a,l | ml:a,n,g,l)");
    c_fn->add_option("--spec", ev_fn.spec_text, "Function spec")->required();
    c_fn->add_option("--x", ev_fn.x_text, "Comma-separated arguments")
        ->required();
    c_fn->add_option("--max-terms", ev_fn.max_terms,
                     "Series term cap (overrides the environment)");
    add_io_opts(c_fn, ev_fn.io, "plain", {"plain", "csv", "json"});
    c_fn->callback(
        [&] { rc = run_eval_fn(ev_fn, base_series, t0, out, err); });

    // hadamard --------------------------------------------------------
    auto* had = app.add_subcommand(
        "hadamard", "Hadamard fractional integral J^alpha and derivative "
                    "D^alpha = delta^n J^(n-alpha)");
    had->require_subcommand(1);

    OperatorOpts had_i;
    auto* c_hi = had->add_subcommand("integral", "J^alpha f at given points");
    c_hi->add_option("--fn", had_i.fn_text, "Function spec")->required();
    c_hi->add_option("--alpha", had_i.alpha, "Order alpha > 0")->required();
    c_hi->add_option("--a", had_i.a, "Base point a >= 0")
        ->capture_default_str();
    c_hi->add_option("--x", had_i.x_text, "Comma-separated points, x > a")
        ->required();
    add_quad_opts(c_hi, had_i.quad);
    add_io_opts(c_hi, had_i.io, "plain", {"plain", "csv", "json"});
    c_hi->callback([&] {
        rc = run_hadamard_integral(had_i, base_series, t0, out, err);
    });

    OperatorOpts had_d;
    auto* c_hd =
        had->add_subcommand("derivative", "D^alpha f at given points");
    c_hd->add_option("--fn", had_d.fn_text, "Function spec")->required();
    c_hd->add_option("--alpha", had_d.alpha, "Order alpha >= 0")->required();
    c_hd->add_option("--a", had_d.a, "Base point a >= 0")
        ->capture_default_str();
    c_hd->add_option("--x", had_d.x_text, "Comma-separated points, x > a")
        ->required();
    add_quad_opts(c_hd, had_d.quad);
    add_diff_opts(c_hd, had_d.diff);
    add_io_opts(c_hd, had_d.io, "plain", {"plain", "csv", "json"});
    c_hd->callback([&] {
        rc = run_hadamard_derivative(had_d, base_series, t0, out, err);
    });

    // frakd -----------------------------------------------------------
    OperatorOpts frak;
    auto* c_fr = app.add_subcommand(
        "frakd", "The composite operator (d/dx) D^alpha at base 0");
    c_fr->add_option("--fn", frak.fn_text, "Function spec")->required();
    c_fr->add_option("--alpha", frak.alpha, "Order alpha >= 0")->required();
    c_fr->add_option("--x", frak.x_text, "Comma-separated points, x > 0")
        ->required();
    add_quad_opts(c_fr, frak.quad);
    add_diff_opts(c_fr, frak.diff);
    add_io_opts(c_fr, frak.io, "plain", {"plain", "csv", "json"});
    c_fr->callback(
        [&] { rc = run_frakd(frak, base_series, t0, out, err); });

    // laplace-check ---------------------------------------------------
    LaplaceOpts lap;
    auto* c_lap = app.add_subcommand(
        "laplace-check",
        "Closed-form Laplace image vs direct quadrature of the transform");
    c_lap->add_option("--kind", lap.kind, "Which pair: ml or alexp")
        ->check(CLI::IsMember({"ml", "alexp"}))
        ->capture_default_str();
    c_lap->add_option("--alpha", lap.alpha, "Order alpha")->required();
    c_lap->add_option("--nu", lap.nu, "Scale nu > 0 (ml)")
        ->capture_default_str();
    c_lap->add_option("--gamma", lap.gamma, "Shift gamma > 0 (ml)")
        ->capture_default_str();
    c_lap->add_option("--lambda", lap.lambda, "Series argument scale (ml)")
        ->capture_default_str();
    c_lap->add_option("--s", lap.s, "Laplace variable s > 0")->required();
    c_lap->add_option("--tol", lap.tol, "Relative tolerance of the check")
        ->capture_default_str();
    add_quad_opts(c_lap, lap.quad);
    add_io_opts(c_lap, lap.io, "plain", {"plain", "json"});
    c_lap->callback(
        [&] { rc = run_laplace_check(lap, base_series, t0, out, err); });

    // eigen-check -----------------------------------------------------
    EigenOpts eig;
    auto* c_eig = app.add_subcommand(
        "eigen-check", "Verify an eigenfunction relation Op f = lambda f");
    c_eig->add_option("--op", eig.op,
                      "Operator: frakd | mixed | invxd | hyperbessel")
        ->check(CLI::IsMember({"frakd", "mixed", "invxd", "hyperbessel"}))
        ->required();
    c_eig->add_option("--alpha", eig.alpha, "Order (frakd, mixed)")
        ->capture_default_str();
    c_eig->add_option("--r", eig.r, "Family member 1..floor(alpha+1) (mixed)")
        ->capture_default_str();
    c_eig->add_option("--order", eig.order, "Order in (0,1) (invxd)")
        ->capture_default_str();
    c_eig->add_option("--nu", eig.nu, "Caputo order in (0,1] (hyperbessel)")
        ->capture_default_str();
    c_eig->add_option("--n", eig.n, "String length parameter (hyperbessel)")
        ->capture_default_str();
    c_eig->add_option("--fn", eig.fn_text, "Claimed eigenfunction spec")
        ->required();
    c_eig->add_option("--lambda", eig.lambda, "Claimed eigenvalue")
        ->required();
    c_eig->add_option("--grid", eig.grid_text, "Comma-separated check points")
        ->capture_default_str();
    c_eig->add_option("--tol", eig.tol, "Residual tolerance")
        ->capture_default_str();
    add_quad_opts(c_eig, eig.quad);
    add_diff_opts(c_eig, eig.diff);
    add_io_opts(c_eig, eig.io, "plain", {"plain", "json"});
    c_eig->callback(
        [&] { rc = run_eigen_check(eig, base_series, t0, out, err); });

    // solve-ivp -------------------------------------------------------
    SolveOpts ivp;
    auto* c_ivp = app.add_subcommand(
        "solve-ivp", "Operational solution of frak-D_t^alpha f = Theta_x f, "
                     "f(x,0) = g(x)");
    c_ivp->add_option("--alpha", ivp.alpha, "Order alpha in [0,1)")
        ->required();
    auto* g_theta = c_ivp->add_option_group("theta", "Coefficient operator");
    g_theta->add_option("--theta-op", ivp.op_name,
                        "Built-in operator: d1 (d/dx) or d2 (d^2/dx^2)");
    g_theta->add_option("--theta-file", ivp.op_file,
                        "Operator file: `dim basis`, then dim rows");
    g_theta->require_option(1);
    auto* g_g = c_ivp->add_option_group("g", "Initial datum");
    g_g->add_option("--g-coeffs", ivp.coeffs_text,
                    "Comma-separated coefficients of g");
    g_g->add_option("--g-file", ivp.data_file,
                    "Vector file: `dim basis`, then one row");
    g_g->require_option(1);
    c_ivp->add_option("--basis", ivp.basis, "monomial or trigpair")
        ->check(CLI::IsMember({"monomial", "trigpair"}))
        ->capture_default_str();
    c_ivp->add_option("--t", ivp.t_text, "Comma-separated times, t >= 0")
        ->required();
    c_ivp->add_option("--x", ivp.x_text, "Comma-separated space points")
        ->required();
    c_ivp->add_option("--tol", ivp.tol, "Series tail tolerance")
        ->capture_default_str();
    c_ivp->add_option("--rmax", ivp.rmax, "Truncation order cap")
        ->capture_default_str();
    add_io_opts(c_ivp, ivp.io, "csv", {"csv", "json"});
    c_ivp->callback([&] { rc = run_solve(false, ivp, t0, out, err); });

    // solve-bvp -------------------------------------------------------
    SolveOpts bvp;
    auto* c_bvp = app.add_subcommand(
        "solve-bvp", "Operational solution of frak-D_x^alpha w = Xi_t w, "
                     "w(0,t) = h(t)");
    c_bvp->add_option("--alpha", bvp.alpha, "Order alpha in [0,1)")
        ->required();
    auto* g_xi = c_bvp->add_option_group("xi", "Coefficient operator");
    g_xi->add_option("--xi-op", bvp.op_name,
                     "Built-in operator: d1 (d/dt) or d2 (d^2/dt^2)");
    g_xi->add_option("--xi-file", bvp.op_file,
                     "Operator file: `dim basis`, then dim rows");
    g_xi->require_option(1);
    auto* g_h = c_bvp->add_option_group("h", "Boundary datum");
    g_h->add_option("--h-coeffs", bvp.coeffs_text,
                    "Comma-separated coefficients of h");
    g_h->add_option("--h-file", bvp.data_file,
                    "Vector file: `dim basis`, then one row");
    g_h->require_option(1);
    c_bvp->add_option("--basis", bvp.basis, "monomial or trigpair")
        ->check(CLI::IsMember({"monomial", "trigpair"}))
        ->capture_default_str();
    c_bvp->add_option("--x", bvp.x_text, "Comma-separated points, x >= 0")
        ->required();
    c_bvp->add_option("--t", bvp.t_text, "Comma-separated times")->required();
    c_bvp->add_option("--tol", bvp.tol, "Series tail tolerance")
        ->capture_default_str();
    c_bvp->add_option("--rmax", bvp.rmax, "Truncation order cap")
        ->capture_default_str();
    add_io_opts(c_bvp, bvp.io, "csv", {"csv", "json"});
    c_bvp->callback([&] { rc = run_solve(true, bvp, t0, out, err); });

    // laguerre-heat ---------------------------------------------------
    LaguerreOpts lag;
    auto* c_lag = app.add_subcommand(
        "laguerre-heat", "Laguerre-type diffusive solution "
                         "S(x,t) = sum_k x^k/(k!)^2 d^k s/dt^k");
    c_lag->add_option("--s-coeffs", lag.s_text,
                      "Monomial coefficients of the polynomial datum s(t)")
        ->required();
    c_lag->add_option("--x", lag.x_text, "Comma-separated points, x >= 0")
        ->required();
    c_lag->add_option("--t", lag.t_text, "Comma-separated times")->required();
    add_io_opts(c_lag, lag.io, "csv", {"csv", "json"});
    c_lag->callback([&] { rc = run_laguerre_heat(lag, t0, out, err); });

    // lamb ------------------------------------------------------------
    auto* lamb = app.add_subcommand(
        "lamb", "Modified Lamb-Bateman equation: solutions and verifiers");
    lamb->require_subcommand(1);

    LambOpts lam_beta;
    auto* c_lbeta = lamb->add_subcommand(
        "beta", "Self-consistent exponent beta = Gamma(mu+1)^(1/mu)");
    c_lbeta->add_option("--mu", lam_beta.mu, "Order mu > 0")->required();
    add_io_opts(c_lbeta, lam_beta.io, "plain", {"plain", "json"});
    c_lbeta->callback([&] { rc = run_lamb_beta(lam_beta, t0, out, err); });

    LambOpts lam_lhs;
    auto* c_llhs = lamb->add_subcommand(
        "lhs", "Left-hand side integral int_0^inf u(exp(-y^(1/mu)) x) dy");
    c_llhs->add_option("--fn", lam_lhs.fn_text, "Function spec for u")
        ->required();
    c_llhs->add_option("--mu", lam_lhs.mu, "Order mu > 0")->required();
    c_llhs->add_option("--x", lam_lhs.x_text, "Comma-separated points, x > 0")
        ->required();
    add_quad_opts(c_llhs, lam_lhs.quad);
    add_io_opts(c_llhs, lam_lhs.io, "plain", {"plain", "csv", "json"});
    c_llhs->callback(
        [&] { rc = run_lamb_lhs(lam_lhs, base_series, t0, out, err); });

    LambOpts lam_solve;
    auto* c_lsolve = lamb->add_subcommand(
        "solve", "Solution u = D^mu f / Gamma(mu+1) for power or log-power f");
    c_lsolve->add_option("--f", lam_solve.fn_text,
                         "Right-hand side spec (power:b or logpow:c[,a])")
        ->required();
    c_lsolve->add_option("--mu", lam_solve.mu, "Order mu > 0")->required();
    c_lsolve->add_option("--x", lam_solve.x_text, "Comma-separated points")
        ->required();
    add_quad_opts(c_lsolve, lam_solve.quad);
    add_diff_opts(c_lsolve, lam_solve.diff);
    add_io_opts(c_lsolve, lam_solve.io, "plain", {"plain", "csv", "json"});
    c_lsolve->callback([&] { rc = run_lamb_solve(lam_solve, t0, out, err); });

    LambOpts lam_verify;
    auto* c_lver = lamb->add_subcommand(
        "verify", "Verify the exact power solution x^beta at given points");
    c_lver->add_option("--mu", lam_verify.mu, "Order mu > 0")->required();
    c_lver->add_option("--x", lam_verify.x_text, "Comma-separated points")
        ->required();
    c_lver->add_option("--tol", lam_verify.tol,
                       "Integral identity tolerance")
        ->capture_default_str();
    c_lver->add_option("--diff-tol", lam_verify.diff_tol,
                       "Differential form tolerance (mu in (0,1))")
        ->capture_default_str();
    add_quad_opts(c_lver, lam_verify.quad);
    add_diff_opts(c_lver, lam_verify.diff);
    add_io_opts(c_lver, lam_verify.io, "plain", {"plain", "json"});
    c_lver->callback([&] { rc = run_lamb_verify(lam_verify, t0, out, err); });

    // figure ----------------------------------------------------------
    FigureOpts fig;
    auto* c_fig = app.add_subcommand(
        "figure", "Emit the shipped curve-family data as CSV (x,alpha,value)");
    c_fig->add_option("which", fig.which, "fig1 or fig2")->required();
    c_fig->add_option("--x-max", fig.x_max, "Right end of the x range")
        ->capture_default_str();
    c_fig->add_option("--points", fig.points, "Samples per curve (>= 2)")
        ->capture_default_str();
    add_io_opts(c_fig, fig.io, "csv", {"csv"});
    c_fig->callback(
        [&] { rc = run_figure(fig, base_series, t0, out, err); });

    // verify-all ------------------------------------------------------
    VerifyOpts ver;
    auto* c_ver = app.add_subcommand(
        "verify-all", "Run the complete identity suite (one line per "
                      "criterion) and exit 0 only if everything passes");
    c_ver->add_option("--criterion", ver.criterion,
                      "Run a single criterion 1..10 (0 = all)")
        ->capture_default_str();
    add_io_opts(c_ver, ver.io, "plain", {"plain", "json"});
    c_ver->callback([&] { rc = run_verify_all(ver, t0, out, err); });

    // parse + dispatch ------------------------------------------------
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("hadamard-ml");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "usage error: " << e.what() << '\n'
            << "run 'hadamard-ml --help' for usage\n";
        return 2;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return 2;
    } catch (const StepTooSmall& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const NonConvergence& e) {
        err << "numerical failure: " << e.what() << '\n';
        return 3;
    }
    return rc;
}

}  // namespace hml
