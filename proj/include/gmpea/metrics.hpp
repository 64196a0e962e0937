#pragma once

#include <optional>
#include <vector>

#include "gmpea/gmpea.hpp"
#include "gmpea/matrix.hpp"

// Quality indicators and the paired statistical test used in result tables.

namespace gmpea {

/// Mean over reference points of the distance to the closest approximation
/// point. Empty approximation -> +inf.
double igd(const Matrix& approx, const Matrix& reference);

/// Hypervolume dominated by `points` relative to `ref_point` (minimization;
/// points beyond the reference contribute nothing). Exact for 2 and 3
/// objectives; Monte Carlo with a fixed seed above that.
double hypervolume(const Matrix& points, std::span<const double> ref_point);

/// Maps objectives into [0,1]^m with the given ideal/nadir ranges so the
/// conventional (1.1, ..., 1.1) reference applies.
Matrix normalize_for_hv(const Matrix& F, std::span<const double> ideal,
                        std::span<const double> nadir);

/// Feasible, deduplicated, mutually nondominated objective rows of a
/// population: the subset indicators are computed on.
Matrix metric_front(const Population& pop);

/// Indicator bundle for one returned population. Metrics are computed on the
/// feasible nondominated subset; with no feasible point IGD is +inf, HV is 0
/// and the flag is set.
struct MetricReport {
    std::optional<double> igd;
    std::optional<double> hv;
    double feasible_ratio = 0.0;
    std::size_t n_points = 0;
    bool no_feasible = false;
};

/// reference_front enables IGD; ideal/nadir (nonempty) enable normalized HV
/// with the (1.1, ..., 1.1) reference point.
MetricReport metric_report(const Population& pop, const Matrix* reference_front,
                           std::span<const double> ideal = {},
                           std::span<const double> nadir = {});

struct WilcoxonResult {
    double p_value = 1.0;
    int direction = 0;  // -1: a lower (better), +1: a higher, 0: no call
};

/// Two-sided Wilcoxon rank-sum with tie correction (normal approximation).
/// direction compares medians and is 0 unless p < alpha.
WilcoxonResult wilcoxon_rank_sum(const std::vector<double>& a,
                                 const std::vector<double>& b,
                                 double alpha = 0.05);

}  // namespace gmpea
