#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmpea/matrix.hpp"
#include "gmpea/problems.hpp"
#include "gmpea/rng.hpp"
#include "gmpea/scalarize.hpp"

// Decomposition-based dual-population algorithm with a three-stage branch-free
// environmental selection: offspring cooperation, update indexing and elite
// update.

namespace gmpea {

/// One population: paired decision/objective/constraint matrices plus the
/// cached total violation per row.
struct Population {
    Matrix X;               // N x d
    Matrix F;               // N x m
    Matrix C;               // N x n_constraints, raw values
    std::vector<double> cv; // cached cv_total per row

    std::size_t size() const { return X.rows; }
};

Population evaluate_population(const ProblemDef& p, Matrix X);

/// Das-Dennis simplex lattice with parameter H: all nonnegative integer
/// compositions of H into m parts, scaled to unit L1 norm, lexicographic order.
Matrix simplex_lattice(std::size_t m, std::size_t H);

/// Smallest lattice with >= target_n rows, truncated from the tail of the
/// lexicographic order to exactly target_n rows.
Matrix reference_vectors(std::size_t m, std::size_t target_n);

/// Per-subproblem neighbor lists under Euclidean distance between reference
/// vectors, ties broken toward the lower index. B1 is the small neighborhood,
/// B2 the large one.
struct NeighborhoodTopology {
    std::vector<std::vector<std::uint32_t>> b1;
    std::vector<std::vector<std::uint32_t>> b2;
    std::size_t t1 = 0, t2 = 0;
};
NeighborhoodTopology build_neighborhoods(const Matrix& W, std::size_t t1,
                                         std::size_t t2);

/// Componentwise minimum of z and all rows of F_new.
std::vector<double> update_ideal(std::vector<double> z, const Matrix& F_new);

enum class VariationOp { sbx_pm, de };

struct OperatorParams {
    double sbx_prob = 1.0;
    double sbx_eta = 20.0;
    double pm_eta = 20.0;
    double de_cr = 1.0;
    double de_f = 0.5;
    // pm_prob defaults to 1/d when unset
    std::optional<double> pm_prob;
};

/// One offspring per subproblem; parents are drawn from that subproblem's own
/// neighborhood row. Genes are clipped to the problem bounds.
Matrix reproduce(const Population& pop,
                 const std::vector<std::vector<std::uint32_t>>& neighborhoods,
                 const ProblemDef& problem, Rng& rng, VariationOp op,
                 const OperatorParams& params);

struct SelectionContext {
    const Matrix& W;
    const std::vector<double>& z;
    double theta;
};

/// OP1: per subproblem, cross-exchange the two offspring streams so each
/// stream keeps its preferred candidate (FPR-style selector for the
/// constrained stream, PBI for the unconstrained one).
void op1_offspring_cooperation(Population& off1, Population& off2,
                               const SelectionContext& ctx);

/// OP2 output: row i lists subproblem i's neighborhood; an entry is -1 when
/// the offspring of subproblem i should replace that neighbor, otherwise the
/// untouched neighbor index.
struct UpdateIndexMatrix {
    std::vector<IndexVector> rows;  // N rows of length t
};

std::pair<UpdateIndexMatrix, UpdateIndexMatrix> op2_update_indexing(
    const NeighborhoodTopology& topo, const Population& off1,
    const Population& off2, const Population& pop1, const Population& pop2,
    const SelectionContext& ctx);

/// OP3: resolves replacement conflicts per parent slot. Pop1 keys on
/// (CV, PBI), Pop2 on PBI alone; remaining ties go to the lowest candidate
/// index with the parent occupying the first unmarked slot.
std::pair<Population, Population> op3_elite_update(
    const NeighborhoodTopology& topo, const UpdateIndexMatrix& i1,
    const UpdateIndexMatrix& i2, const Population& pop1, const Population& pop2,
    const Population& off1, const Population& off2, const SelectionContext& ctx);

/// OP1 -> OP2 -> OP3 chained.
std::pair<Population, Population> environmental_selection(
    const Population& pop1, const Population& pop2, Population off1,
    Population off2, const NeighborhoodTopology& topo,
    const SelectionContext& ctx);

struct RunConfig {
    std::size_t n = 100;                 // requested population size
    std::size_t k_max = 0;               // generation cap (0 = unbounded)
    std::optional<double> time_budget_s; // wall-clock budget
    std::optional<std::size_t> eval_budget;
    std::uint64_t seed = 1;
    VariationOp op = VariationOp::sbx_pm;
    OperatorParams op_params;
    double theta = 5.0;
    std::size_t t1 = 5, t2 = 20;
    bool record_walltime = true;
    // metric hooks filled by the harness; empty = skip
    std::function<double(const Population&)> igd_metric;
    std::function<double(const Population&)> hv_metric;
};

struct GenRecord {
    std::size_t gen = 0;
    std::size_t evals = 0;
    double wall_ms = 0.0;
    double feasible_ratio = 0.0;
    std::optional<double> igd;
    std::optional<double> hv;
};

struct RunResult {
    Population pop1;
    std::vector<GenRecord> history;
    std::size_t effective_n = 0;
};

RunResult run_gmpea(const ProblemDef& problem, const RunConfig& cfg);

}  // namespace gmpea
