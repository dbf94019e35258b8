#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "hml/errors.hpp"
#include "hml/operational_solver.hpp"
#include "hml/special_functions.hpp"

using namespace hml;

namespace {

// Test-only dense matrix exponential: scaling and squaring around a Taylor
// core. Independent of the operator series under test.
std::vector<double> mat_mul(const std::vector<double>& A,
                            const std::vector<double>& B, int n) {
    std::vector<double> C(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const double a = A[static_cast<std::size_t>(i) * n + k];
            if (a == 0.0) continue;
            for (int j = 0; j < n; ++j)
                C[static_cast<std::size_t>(i) * n + j] +=
                    a * B[static_cast<std::size_t>(k) * n + j];
        }
    return C;
}

std::vector<double> expm(std::vector<double> M, int n) {
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j)
            row += std::abs(M[static_cast<std::size_t>(i) * n + j]);
        norm = std::max(norm, row);
    }
    int s = 0;
    while (norm > 0.5) {
        norm /= 2.0;
        ++s;
    }
    const double scale = std::ldexp(1.0, -s);
    for (double& m : M) m *= scale;

    std::vector<double> E(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) E[static_cast<std::size_t>(i) * n + i] = 1.0;
    std::vector<double> term = E;
    for (int k = 1; k <= 24; ++k) {
        term = mat_mul(term, M, n);
        for (double& t : term) t /= k;
        for (std::size_t i = 0; i < E.size(); ++i) E[i] += term[i];
    }
    for (int i = 0; i < s; ++i) E = mat_mul(E, E, n);
    return E;
}

std::vector<double> mat_vec(const std::vector<double>& A,
                            const std::vector<double>& v, int n) {
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out[static_cast<std::size_t>(i)] +=
                A[static_cast<std::size_t>(i) * n + j] *
                v[static_cast<std::size_t>(j)];
    return out;
}

}  // namespace

TEST_SUITE("operational") {

TEST_CASE("basis names round trip") {
    CHECK(basis_name(Basis::Monomial) == "monomial");
    CHECK(basis_name(Basis::TrigPair) == "trigpair");
    CHECK(parse_basis("monomial") == Basis::Monomial);
    CHECK(parse_basis("trigpair") == Basis::TrigPair);
    CHECK_THROWS_AS(parse_basis("fourier"), UsageError);
}

TEST_CASE("monomial derivative matrix differentiates a cubic") {
    const CoefficientOperator d = CoefficientOperator::derivative(
        Basis::Monomial, 4);
    // (1+x)^3 = 1 + 3x + 3x^2 + x^3
    const std::vector<double> c{1.0, 3.0, 3.0, 1.0};
    const std::vector<double> dc = d.apply(c);
    CHECK(dc[0] == doctest::Approx(3.0));
    CHECK(dc[1] == doctest::Approx(6.0));
    CHECK(dc[2] == doctest::Approx(3.0));
    CHECK(dc[3] == doctest::Approx(0.0));
}

TEST_CASE("trig-pair derivative matrices act like d/dx") {
    const int dim = 4;
    const CoefficientOperator d1 =
        CoefficientOperator::derivative(Basis::TrigPair, dim);
    const CoefficientOperator d2 =
        CoefficientOperator::second_derivative(Basis::TrigPair, dim);
    CoefficientVector v;
    v.basis = Basis::TrigPair;
    v.coeffs = {0.3, -0.7, 0.2, 0.1};  // 0.3 sin x - 0.7 cos x + 0.2 sin 2x + 0.1 cos 2x
    const double x = 0.9;
    CoefficientVector dv;
    dv.basis = Basis::TrigPair;
    dv.coeffs = d1.apply(v.coeffs);
    const double want1 = 0.3 * std::cos(x) + 0.7 * std::sin(x) +
                         0.4 * std::cos(2 * x) - 0.2 * std::sin(2 * x);
    CHECK(dv.synthesize(x) == doctest::Approx(want1).epsilon(1e-14));
    CoefficientVector ddv;
    ddv.basis = Basis::TrigPair;
    ddv.coeffs = d2.apply(v.coeffs);
    const double want2 = -0.3 * std::sin(x) + 0.7 * std::cos(x) -
                         0.8 * std::sin(2 * x) - 0.4 * std::cos(2 * x);
    CHECK(ddv.synthesize(x) == doctest::Approx(want2).epsilon(1e-14));
}

TEST_CASE("coefficient vector synthesis in both bases") {
    CoefficientVector m;
    m.basis = Basis::Monomial;
    m.coeffs = {1.0, -2.0, 0.5};
    CHECK(m.synthesize(2.0) == doctest::Approx(1 - 4 + 2).epsilon(1e-15));
    CoefficientVector t;
    t.basis = Basis::TrigPair;
    t.coeffs = {1.0, 0.0, 0.0, 2.0};
    CHECK(t.synthesize(0.7) ==
          doctest::Approx(std::sin(0.7) + 2 * std::cos(1.4)).epsilon(1e-15));
}

TEST_CASE("alpha = 0 operator exponential matches a dense expm oracle") {
    const int dim = 5;
    const CoefficientOperator theta =
        CoefficientOperator::second_derivative(Basis::Monomial, dim);
    CoefficientVector g;
    g.basis = Basis::Monomial;
    g.coeffs = {1.0, 0.5, -0.25, 1.0 / 3.0, 0.125};
    const double t = 0.7;

    std::vector<double> tM = theta.matrix;
    for (double& m : tM) m *= t;
    const std::vector<double> truth =
        mat_vec(expm(tM, dim), g.coeffs, dim);

    const CoefficientVector got = operator_alpha_exp(theta, t, 0.0, g);
    REQUIRE(got.dim() == dim);
    for (int i = 0; i < dim; ++i)
        CHECK(got.coeffs[static_cast<std::size_t>(i)] ==
              doctest::Approx(truth[static_cast<std::size_t>(i)])
                  .epsilon(1e-12));
}

TEST_CASE("operator exponential is basis independent for scaled identities") {
    // Theta = cI gives e_alpha(t Theta) g = e_alpha(c t) g in any basis.
    const double c = 0.8;
    const double alpha = 0.45;
    const double t = 1.3;
    const double factor = alpha_l_exponential(alpha, c * t).value;
    for (Basis b : {Basis::Monomial, Basis::TrigPair}) {
        const int dim = b == Basis::Monomial ? 3 : 2;
        const CoefficientOperator id =
            CoefficientOperator::scaled_identity(b, dim, c);
        CoefficientVector g;
        g.basis = b;
        g.coeffs.assign(static_cast<std::size_t>(dim), 0.0);
        g.coeffs[0] = 1.0;
        if (dim > 1) g.coeffs[1] = -0.5;
        const CoefficientVector got = operator_alpha_exp(id, t, alpha, g);
        for (int i = 0; i < dim; ++i)
            CHECK(got.coeffs[static_cast<std::size_t>(i)] ==
                  doctest::Approx(factor * g.coeffs[static_cast<std::size_t>(i)])
                      .epsilon(1e-13));
    }
}

TEST_CASE("truncation order grows as the tail tolerance shrinks") {
    const CoefficientOperator theta =
        CoefficientOperator::second_derivative(Basis::TrigPair, 2);
    CoefficientVector g;
    g.basis = Basis::TrigPair;
    g.coeffs = {1.0, 0.0};
    const OperatorExpResult loose =
        operator_alpha_exp_detail(theta, 1.0, 0.3, g, 1e-4, 300);
    const OperatorExpResult tight =
        operator_alpha_exp_detail(theta, 1.0, 0.3, g, 1e-12, 300);
    CHECK(tight.order > loose.order);
    CHECK(loose.tail_norm <= 1e-4);
    CHECK(tight.tail_norm <= 1e-12);
}

TEST_CASE("exhausted truncation budget throws") {
    const CoefficientOperator theta =
        CoefficientOperator::second_derivative(Basis::TrigPair, 2);
    CoefficientVector g;
    g.basis = Basis::TrigPair;
    g.coeffs = {1.0, 0.0};
    CHECK_THROWS_AS(operator_alpha_exp_detail(theta, 5.0, 0.0, g, 1e-14, 3),
                    NonConvergence);
}

TEST_CASE("dimension and basis mismatches are rejected") {
    const CoefficientOperator theta =
        CoefficientOperator::derivative(Basis::Monomial, 3);
    CoefficientVector g;
    g.basis = Basis::Monomial;
    g.coeffs = {1.0, 2.0};
    CHECK_THROWS_AS(operator_alpha_exp(theta, 1.0, 0.0, g), DomainError);
    g.coeffs = {1.0, 2.0, 3.0};
    g.basis = Basis::TrigPair;
    CHECK_THROWS_AS(operator_alpha_exp(theta, 1.0, 0.0, g), DomainError);
}

TEST_CASE("solver domain: alpha outside [0,1) is rejected") {
    const CoefficientOperator theta =
        CoefficientOperator::derivative(Basis::Monomial, 2);
    CoefficientVector g;
    g.basis = Basis::Monomial;
    g.coeffs = {0.0, 1.0};
    CHECK_THROWS_AS(solve_ivp(theta, g, 1.0, {0.5}, {1.0}), DomainError);
    CHECK_THROWS_AS(solve_ivp(theta, g, -0.1, {0.5}, {1.0}), DomainError);
}

TEST_CASE("classical shift semigroup: e^{x d/dt} h(t) = h(t+x)") {
    // BVP with Xi = d/dt on polynomials and alpha = 0 gives translation.
    const CoefficientOperator xi =
        CoefficientOperator::derivative(Basis::Monomial, 3);
    CoefficientVector h;
    h.basis = Basis::Monomial;
    h.coeffs = {1.0, -2.0, 0.5};  // h(t) = 1 - 2t + t^2/2
    const std::vector<double> xs{0.0, 0.4, 1.1};
    const std::vector<double> ts{0.3, 2.0};
    const SolveReport rep = solve_bvp(xi, h, 0.0, xs, ts);
    REQUIRE(rep.is_bvp);
    for (std::size_t xi_i = 0; xi_i < xs.size(); ++xi_i)
        for (std::size_t ti = 0; ti < ts.size(); ++ti) {
            const double want = h.synthesize(ts[ti] + xs[xi_i]);
            CHECK(rep.values[xi_i][ti] ==
                  doctest::Approx(want).epsilon(1e-13));
        }
}

TEST_CASE("boundary datum is reproduced exactly at x = 0") {
    const CoefficientOperator xi =
        CoefficientOperator::derivative(Basis::Monomial, 3);
    CoefficientVector h;
    h.basis = Basis::Monomial;
    h.coeffs = {0.7, 1.3, -0.2};
    const SolveReport rep = solve_bvp(xi, h, 0.45, {0.0}, {0.25, 1.5});
    for (std::size_t ti = 0; ti < rep.t_grid.size(); ++ti)
        CHECK(rep.values[0][ti] ==
              doctest::Approx(h.synthesize(rep.t_grid[ti])).epsilon(1e-15));
}

TEST_CASE("IVP report carries grids, tails and orders per series point") {
    const CoefficientOperator theta =
        CoefficientOperator::second_derivative(Basis::TrigPair, 2);
    CoefficientVector g;
    g.basis = Basis::TrigPair;
    g.coeffs = {1.0, 0.0};
    const SolveReport rep =
        solve_ivp(theta, g, 0.5, {0.25, 0.5, 1.0}, {0.5, 1.0});
    CHECK(!rep.is_bvp);
    REQUIRE(rep.values.size() == 3);
    REQUIRE(rep.values[0].size() == 2);
    REQUIRE(rep.tail_est.size() == 3);
    REQUIRE(rep.order_used.size() == 3);
    for (double tail : rep.tail_est) CHECK(tail <= 1e-13);
    for (int order : rep.order_used) CHECK(order > 0);
}

TEST_CASE("operational residual check accepts the fractional solution") {
    const CoefficientOperator theta =
        CoefficientOperator::second_derivative(Basis::TrigPair, 2);
    CoefficientVector g;
    g.basis = Basis::TrigPair;
    g.coeffs = {1.0, 0.0};
    const SolveReport rep = solve_ivp(theta, g, 0.5, {0.4, 0.8}, {0.6, 1.2});
    const ResidualSummary res =
        residual_check(rep, 0.5, theta, {}, {}, 1e-4);
    CHECK(res.pass);
    CHECK(res.max_rel_residual < 1e-6);
}

TEST_CASE("residual check refuses BVP reports") {
    const CoefficientOperator xi =
        CoefficientOperator::derivative(Basis::Monomial, 2);
    CoefficientVector h;
    h.basis = Basis::Monomial;
    h.coeffs = {1.0, 1.0};
    const SolveReport rep = solve_bvp(xi, h, 0.0, {0.5}, {1.0});
    CHECK_THROWS_AS(residual_check(rep, 0.0, xi, {}, {}, 1e-4), DomainError);
}

TEST_CASE("Laguerre-heat polynomial solution is exact") {
    CoefficientVector s;
    s.basis = Basis::Monomial;
    s.coeffs = {0.0, 0.0, 1.0};  // s(t) = t^2
    const double x = 0.8;
    const double t = 1.7;
    // S = t^2 + x * 2t + (x^2/4) * 2
    const double want = t * t + 2 * x * t + 0.5 * x * x;
    CHECK(laguerre_heat(s, x, t) == doctest::Approx(want).epsilon(1e-15));
    // at x = 0 only the k = 0 term survives, so the datum comes back exactly
    CHECK(laguerre_heat(s, 0.0, t) == t * t);
    CHECK_THROWS_AS(laguerre_heat(s, -0.5, t), DomainError);
}

TEST_CASE("operator and vector files parse and validate") {
    std::istringstream op_text("2 monomial\n0 1\n0 0\n");
    const CoefficientOperator op = read_operator_file(op_text, "test");
    CHECK(op.dim == 2);
    CHECK(op.basis == Basis::Monomial);
    CHECK(op.at(0, 1) == 1.0);

    std::istringstream vec_text("2 trigpair\n1 0\n");
    const CoefficientVector v = read_vector_file(vec_text, "test");
    CHECK(v.dim() == 2);
    CHECK(v.basis == Basis::TrigPair);

    std::istringstream bad_basis("2 fourier\n0 1\n0 0\n");
    CHECK_THROWS_AS(read_operator_file(bad_basis, "test"), UsageError);
    std::istringstream short_matrix("2 monomial\n0 1\n0\n");
    CHECK_THROWS_AS(read_operator_file(short_matrix, "test"), UsageError);
    std::istringstream trailing("2 monomial\n0 1\n0 0 7\n");
    CHECK_THROWS_AS(read_operator_file(trailing, "test"), UsageError);
    CHECK_THROWS_AS(load_operator_file("/nonexistent/op.txt"), UsageError);
}

TEST_CASE("solution CSV schema and ordering") {
    const CoefficientOperator theta =
        CoefficientOperator::derivative(Basis::Monomial, 2);
    CoefficientVector g;
    g.basis = Basis::Monomial;
    g.coeffs = {1.0, 1.0};
    const SolveReport rep = solve_ivp(theta, g, 0.0, {0.0, 1.0}, {2.0});
    std::ostringstream csv;
    write_solution_csv(csv, rep);
    const std::string text = csv.str();
    CHECK(text.rfind("x,t,value,tail_est\n", 0) == 0);
    // two t rows for the single x point, plus header
    int lines = 0;
    for (char ch : text)
        if (ch == '\n') ++lines;
    CHECK(lines == 3);
}

}  // TEST_SUITE
