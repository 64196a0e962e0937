#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmpea/matrix.hpp"
#include "gmpea/problems.hpp"

// Weapon-target assignment: two objectives (expected target survival term and
// ammunition use) over binary assignment variables x[target][slot][vehicle],
// decoded from continuous genes so all algorithms share real-coded operators.
// Constraint set: per-vehicle capacity and per-target strike count.

namespace gmpea {

struct WTAInstance {
    std::string scenario;                 // P1..P10
    std::size_t n_targets = 0;            // N_I
    std::size_t n_vehicles = 0;           // N_M
    std::vector<std::size_t> max_strikes; // N_K per target
    std::vector<std::vector<double>> p;   // p[i][k], interception probability
    std::vector<std::size_t> capacity;    // per-vehicle assignment budget

    std::size_t total_slots() const;      // sum of max_strikes
    std::size_t gene_count() const { return total_slots() * n_vehicles; }
    std::size_t gene_index(std::size_t i, std::size_t k, std::size_t m) const;
};

/// Built-in scenarios P1..P10 with sizes growing from P1 to P10.
WTAInstance wta_scenario(const std::string& id);

// scenario files: "key value" lines (targets, vehicles, capacity, strikes,
// and one "p <i> <k> <prob>" line per strike slot)
WTAInstance load_wta(const std::string& path);
void save_wta(const WTAInstance& inst, const std::string& path);

/// Threshold decode (gene >= 0.5) followed by per-vehicle capacity capping in
/// descending gene-value order (ties to the lower flat index).
std::vector<std::uint8_t> decode_wta(std::span<const double> genes,
                                     const WTAInstance& inst);

/// Objectives and raw constraints for one decoded assignment.
void evaluate_wta(const WTAInstance& inst, std::span<const std::uint8_t> x,
                  std::span<double> f, std::span<double> g);

/// Wraps a scenario as a ProblemDef over [0,1] genes.
ProblemDef make_wta_problem(const WTAInstance& inst);

}  // namespace gmpea
