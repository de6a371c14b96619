#pragma once

#include <string>
#include <vector>

#include "pubcausal/graph.hpp"
#include "pubcausal/linalg.hpp"

namespace pubcausal {

struct CcdrConfig {
    double lambda = 0.1;
    double mcp_gamma = 2.0;
    int max_sweeps = 500;
    double tol = 1e-6;  // L-inf coefficient change
};

struct CcdrResult {
    Cpdag graph;  // fully directed
    Matrix coefficients;  // beta(i, j): weight of edge i -> j
    bool converged = true;
};

// MCP-penalized coordinate descent over directed edge coefficients of a
// linear model; an update that would close a directed cycle is rejected.
// Expects standardized columns.
CcdrResult ccdr_simplified(const std::vector<std::string>& variables,
                           const std::vector<std::vector<double>>& columns,
                           const CcdrConfig& config = {});

struct CcdrPathResult {
    CcdrResult best;
    double chosen_lambda = 0.0;
    std::vector<double> lambda_grid;
};

// Runs the solver over a log-spaced lambda grid (warm starts) and keeps the
// graph with the best total BIC after per-node OLS refits.
CcdrPathResult ccdr_bic_path(const std::vector<std::string>& variables,
                             const std::vector<std::vector<double>>& columns,
                             size_t grid_points = 10, const CcdrConfig& base = {});

}  // namespace pubcausal
