#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gmpea/matrix.hpp"
#include "gmpea/scalarize.hpp"

// Benchmark CMOP definitions with batched evaluation: LIRCMOP1-14, the
// C-DTLZ and DC-DTLZ families, and the weapon-target assignment scenarios
// P1-P10. All constraints use the <= 0 feasible convention; raw values are
// returned so callers can form violations with violation_per_constraint.

namespace gmpea {

struct ProblemDef {
    std::string name;
    std::size_t d = 0;       // decision dimension
    std::size_t m = 0;       // objective count
    std::size_t n_ineq = 0;
    std::size_t n_eq = 0;
    std::vector<std::pair<double, double>> bounds;  // per-variable [lo, hi]
    enum class Encoding { continuous, wta } encoding = Encoding::continuous;

    // evaluates one decision row into objectives f (m) and raw constraints g
    std::function<void(std::span<const double> x, std::span<double> f,
                       std::span<double> g)> eval_row;

    // generates candidate Pareto-optimal decision vectors for pf_reference;
    // empty when no analytic front is known
    std::function<Matrix(std::size_t n_samples)> front_candidates;

    ConstraintSpec cspec() const { return {n_ineq, n_eq, 1e-6}; }
};

/// Looks up a suite problem by name. Throws on unknown names.
ProblemDef make_problem(const std::string& name);

/// All registered problem names.
std::vector<std::string> problem_names();

/// Batched evaluation of N decision rows. Throws when any row is out of
/// bounds, listing the offending row indices.
struct EvalResult {
    Matrix F;  // N x m
    Matrix G;  // N x n_constraints, raw values, <= 0 feasible
};
EvalResult evaluate(const ProblemDef& p, const Matrix& X);

/// Well-spread sample of the constrained Pareto front. Throws for problems
/// without a known analytic front (callers should fall back to HV).
Matrix pf_reference(const ProblemDef& p, std::size_t n_points);

// reference-front text files: header "# <problem> m=<m>", one point per line
void save_front(const Matrix& F, const std::string& problem_name,
                const std::string& path);
Matrix load_front(const std::string& path, std::string* problem_name = nullptr);

/// Deterministic subsample of k rows (evenly strided after a stable sort on
/// the first objective); returns the input when it has <= k rows.
Matrix subsample_front(const Matrix& F, std::size_t k);

}  // namespace gmpea
