#pragma once

#include <string>
#include <vector>

#include "gmpea/gmpea.hpp"

// Run-history persistence: one JSON object per generation, one line each,
// fields {gen, evals, wall_ms, feasible_ratio, igd?, hv?}.

namespace gmpea {

std::string record_to_jsonl(const std::vector<GenRecord>& history);
std::vector<GenRecord> parse_jsonl(const std::string& text);

void save_records(const std::vector<GenRecord>& history, const std::string& path);
std::vector<GenRecord> load_records(const std::string& path);

}  // namespace gmpea
