#pragma once

#include <cstdint>
#include <vector>

#include "gmpea/gmpea.hpp"

// Comparison algorithms: a constraint-handling NSGA-II (CDP-ranked
// nondominated sort plus crowding) and a coevolutionary two-population method
// whose archives are truncated one element at a time.

namespace gmpea {

/// Fast nondominated sort under a caller-supplied strict "better" relation.
/// Returns the 0-based rank per row.
std::vector<std::size_t> nondominated_sort(
    const Matrix& F, const std::vector<double>& cv, bool use_cdp);

/// Crowding distance within one front (boundary points get +inf).
std::vector<double> crowding_distance(const Matrix& F,
                                      const std::vector<std::size_t>& front);

/// SPEA2 fitness (strength raw fitness + kNN density) over one pool.
/// cv participates through CDP dominance when use_cdp is set.
std::vector<double> spea2_fitness(const Matrix& F, const std::vector<double>& cv,
                                  bool use_cdp);

/// Environmental selection of SPEA2: keep nondominated, serially truncate by
/// nearest-neighbor distance when over capacity, fill by fitness when under.
std::vector<std::size_t> spea2_select(const Matrix& F,
                                      const std::vector<double>& cv, bool use_cdp,
                                      std::size_t capacity);

RunResult run_cnsga2(const ProblemDef& problem, const RunConfig& cfg);
RunResult run_ccmo(const ProblemDef& problem, const RunConfig& cfg);

}  // namespace gmpea
