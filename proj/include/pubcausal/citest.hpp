#pragma once

#include <cstddef>
#include <vector>

#include "pubcausal/linalg.hpp"

namespace pubcausal {

// Correlation matrix shared by every CI test over one dataset; computed
// once and read-only afterwards.
struct CorrelationCache {
    size_t n = 0;  // sample size
    Matrix corr;

    static CorrelationCache from_columns(const std::vector<std::vector<double>>& columns);
};

struct CiTestResult {
    size_t i = 0;
    size_t j = 0;
    std::vector<size_t> conditioning;
    double partial_corr = 0.0;
    double statistic = 0.0;
    double p_value = 1.0;
    bool independent = true;
    bool low_rank = false;  // correlation submatrix was singular (pseudo-inverse used)
};

// Partial correlation of i and j given S via inversion of the correlation
// submatrix, Fisher z-transformed and tested against the standard normal.
CiTestResult fisher_z_test(const CorrelationCache& data, size_t i, size_t j,
                           const std::vector<size_t>& conditioning, double alpha);

}  // namespace pubcausal
