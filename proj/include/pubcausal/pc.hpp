#pragma once

#include <string>
#include <vector>

#include "pubcausal/citest.hpp"
#include "pubcausal/graph.hpp"

namespace pubcausal {

struct PcConfig {
    double alpha = 0.01;
    int max_cond_size = 3;
};

// Stable PC: level-wise skeleton pruning with conditioning sets drawn from
// per-level adjacency snapshots, v-structure orientation from separating
// sets, then Meek closure.
Cpdag pc(const std::vector<std::string>& variables, const CorrelationCache& data,
         const PcConfig& config = {});

}  // namespace pubcausal
