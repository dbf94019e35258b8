#pragma once

#include <string>
#include <vector>

namespace hml {

/// One named check with its worst observed error and pinned tolerance.
struct CheckLine {
    std::string name;
    double max_err = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// One acceptance criterion: a titled group of checks that must all pass.
struct CriterionResult {
    int index = 0;
    std::string title;
    std::vector<CheckLine> checks;

    bool pass() const;
    double worst_err() const;
};

/// The full identity suite, grouped into the ten shipped acceptance
/// criteria (reduction anchors, Laplace pairs, power rules, fixed points,
/// left inverse, eigenfunctions, hyper-Bessel coefficients, operational
/// solver, figure data). Tolerances are pinned inside; every suite is
/// deterministic and finishes at desk scale.
std::vector<CriterionResult> run_acceptance_criteria();

/// Run a single criterion by 1-based index (throws DomainError if out of
/// range).
CriterionResult run_criterion(int index);

/// One-line summary "PASS criterion N (title): check err E/tol T, ...",
/// shared by the CLI and the acceptance runner.
std::string format_criterion_line(const CriterionResult& c);

}  // namespace hml
