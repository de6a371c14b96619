#pragma once

#include <string>
#include <vector>

#include "pubcausal/citest.hpp"
#include "pubcausal/graph.hpp"

namespace pubcausal {

struct MmpcConfig {
    double alpha = 0.01;
    int max_cond_size = 3;
};

// Max-min parents-children: per-target forward growth by the max-min
// association heuristic, CI-test shrinking, then symmetrization by
// intersection. Output graph carries undirected edges only.
Cpdag mmpc(const std::vector<std::string>& variables, const CorrelationCache& data,
           const MmpcConfig& config = {});

}  // namespace pubcausal
