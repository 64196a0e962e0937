#pragma once

#include <span>
#include <vector>

#include "gmpea/matrix.hpp"

// Per-solution and pairwise evaluation math: constraint violation, Pareto
// dominance, the constraint dominance principle, PBI aggregation and the
// feasibility priority rule. Each exists in scalar and batched form; batched
// results equal the scalar ones rowwise.

namespace gmpea {

struct ConstraintSpec {
    std::size_t n_ineq = 0;   // inequality constraints g, feasible when g <= 0
    std::size_t n_eq = 0;     // equality constraints h, relaxed by delta
    double delta = 1e-6;
};

/// Reference vectors, ideal point and PBI penalty shared by the
/// decomposition machinery. Every W row is nonnegative with unit L1 norm.
struct ScalarizationContext {
    Matrix W;
    std::vector<double> z;
    double theta = 5.0;
};

/// C_j = max(0, g_j) for inequalities, max(0, |h_j| - delta) for equalities.
std::vector<double> violation_per_constraint(std::span<const double> g_vals,
                                             std::span<const double> h_vals,
                                             const ConstraintSpec& spec);

double cv_total(std::span<const double> g_vals, std::span<const double> h_vals,
                const ConstraintSpec& spec);

/// Total violation of one raw constraint row laid out as [g..., h...].
double cv_from_raw(std::span<const double> raw, const ConstraintSpec& spec);

bool pareto_dominates(std::span<const double> fa, std::span<const double> fb);

bool cdp_better(std::span<const double> fa, double cva,
                std::span<const double> fb, double cvb);

double pbi(std::span<const double> f, std::span<const double> w,
           std::span<const double> z, double theta);

bool fpr_better(double ga, double cva, double gb, double cvb);

// batched forms
std::vector<double> cv_batch(const Matrix& raw, const ConstraintSpec& spec);
std::vector<double> pbi_batch(const Matrix& F, const Matrix& W,
                              std::span<const double> z, double theta);
Mask dominates_batch(const Matrix& FA, const Matrix& FB);
Mask cdp_better_batch(const Matrix& FA, std::span<const double> cva,
                      const Matrix& FB, std::span<const double> cvb);
Mask fpr_better_batch(std::span<const double> ga, std::span<const double> cva,
                      std::span<const double> gb, std::span<const double> cvb);

}  // namespace gmpea
