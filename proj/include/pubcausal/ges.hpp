#pragma once

#include <string>
#include <vector>

#include "pubcausal/graph.hpp"
#include "pubcausal/linalg.hpp"

namespace pubcausal {

struct GesConfig {
    size_t max_insert_set = 8;  // cap on |T| / |H| enumeration
    double min_improvement = 1e-9;
};

// Gaussian BIC local score -(n/2) ln(RSS/n) - (|PA|+1) ln(n) / 2 computed
// from the covariance matrix.
class BicScore {
public:
    BicScore(Matrix covariance, size_t n_samples);

    double local(size_t v, const std::vector<size_t>& parents) const;
    size_t sample_size() const { return n_; }

private:
    Matrix cov_;
    size_t n_;
};

// Total score after each applied operator, recorded per phase.
struct GesTrace {
    std::vector<double> forward_scores;
    std::vector<double> backward_scores;
};

// Greedy equivalence search: forward insert phase to a local optimum, then
// backward delete phase; state is kept as a CPDAG throughout.
Cpdag ges(const std::vector<std::string>& variables, const BicScore& score,
          const GesConfig& config = {}, GesTrace* trace = nullptr);

// Total BIC of (any consistent extension of) a CPDAG; forward and backward
// phases never decrease it.
double cpdag_total_score(const Cpdag& g, const BicScore& score);

}  // namespace pubcausal
