#include "pubcausal/ccdr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "pubcausal/ges.hpp"
#include "pubcausal/stats.hpp"

namespace pubcausal {

namespace {

double mcp_penalty(double t, double lambda, double gamma) {
    const double at = std::fabs(t);
    if (at <= gamma * lambda) return lambda * at - t * t / (2.0 * gamma);
    return gamma * lambda * lambda / 2.0;
}

// argmin over beta of 0.5*a*beta^2 - c*beta + MCP(beta)
double mcp_update(double a, double c, double lambda, double gamma) {
    const auto objective = [&](double b) {
        return 0.5 * a * b * b - c * b + mcp_penalty(b, lambda, gamma);
    };
    double best = 0.0;
    double best_val = objective(0.0);
    const double soft = std::fabs(c) > lambda ? (c > 0 ? c - lambda : c + lambda) : 0.0;
    if (soft != 0.0 && a > 1.0 / gamma) {
        const double b1 = soft / (a - 1.0 / gamma);
        if (std::fabs(b1) <= gamma * lambda && objective(b1) < best_val) {
            best = b1;
            best_val = objective(b1);
        }
    }
    if (a > 0.0) {
        const double b2 = c / a;
        if (std::fabs(b2) > gamma * lambda && objective(b2) < best_val) {
            best = b2;
            best_val = objective(b2);
        }
    }
    return best;
}

// does a directed path from `from` reach `to` over nonzero coefficients?
bool path_exists(const std::vector<std::vector<uint8_t>>& edge, size_t from, size_t to) {
    const size_t p = edge.size();
    std::vector<uint8_t> seen(p, 0);
    std::vector<size_t> stack = {from};
    seen[from] = 1;
    while (!stack.empty()) {
        const size_t v = stack.back();
        stack.pop_back();
        if (v == to) return true;
        for (size_t u = 0; u < p; ++u) {
            if (edge[v][u] && !seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
        }
    }
    return false;
}

}  // namespace

CcdrResult ccdr_simplified(const std::vector<std::string>& variables,
                           const std::vector<std::vector<double>>& columns,
                           const CcdrConfig& config) {
    const size_t p = variables.size();
    CcdrResult result;
    result.graph = Cpdag(variables);
    result.coefficients = Matrix(p, p, 0.0);
    if (p < 2 || columns.empty() || columns[0].empty()) return result;

    // Gram matrix; all coordinate updates work off it, so the sweep cost is
    // independent of the sample size
    Matrix gram(p, p);
    const size_t n = columns[0].size();
    for (size_t i = 0; i < p; ++i) {
        for (size_t j = i; j < p; ++j) {
            double s = 0.0;
            for (size_t r = 0; r < n; ++r) s += columns[i][r] * columns[j][r];
            gram(i, j) = s;
            gram(j, i) = s;
        }
    }

    Matrix& beta = result.coefficients;
    std::vector<std::vector<uint8_t>> edge(p, std::vector<uint8_t>(p, 0));

    result.converged = false;
    for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
        double max_change = 0.0;
        for (size_t i = 0; i < p; ++i) {
            for (size_t j = 0; j < p; ++j) {
                if (i == j) continue;
                const double old = beta(i, j);
                // c = <x_i, x_j - sum_{k != i} beta_kj x_k>
                double c = gram(i, j);
                for (size_t k = 0; k < p; ++k) {
                    if (k == i || beta(k, j) == 0.0) continue;
                    c -= beta(k, j) * gram(i, k);
                }
                double updated = mcp_update(gram(i, i), c, config.lambda, config.mcp_gamma);
                if (updated != 0.0 && old == 0.0) {
                    // cycle rejection: i -> j closes a cycle iff j reaches i
                    if (path_exists(edge, j, i)) updated = 0.0;
                }
                if (updated != old) {
                    beta(i, j) = updated;
                    edge[i][j] = updated != 0.0 ? 1 : 0;
                    max_change = std::max(max_change, std::fabs(updated - old));
                }
            }
        }
        if (max_change < config.tol) {
            result.converged = true;
            break;
        }
    }

    for (size_t i = 0; i < p; ++i)
        for (size_t j = 0; j < p; ++j)
            if (beta(i, j) != 0.0) result.graph.add_directed(i, j);
    return result;
}

CcdrPathResult ccdr_bic_path(const std::vector<std::string>& variables,
                             const std::vector<std::vector<double>>& columns,
                             size_t grid_points, const CcdrConfig& base) {
    const size_t p = variables.size();
    CcdrPathResult out;
    if (p < 2 || columns.empty() || columns[0].empty() || grid_points == 0) {
        out.best = ccdr_simplified(variables, columns, base);
        return out;
    }
    const size_t n = columns[0].size();

    // lambda_max: smallest lambda where the first sweep keeps everything at
    // zero (max absolute cross moment, averaged per sample)
    double max_cross = 0.0;
    for (size_t i = 0; i < p; ++i) {
        for (size_t j = i + 1; j < p; ++j) {
            double s = 0.0;
            for (size_t r = 0; r < n; ++r) s += columns[i][r] * columns[j][r];
            max_cross = std::max(max_cross, std::fabs(s));
        }
    }
    const double lambda_max = std::max(max_cross, 1e-8);
    const double lambda_min = lambda_max * 0.01;

    const BicScore score(covariance_matrix(columns), n);

    double best_bic = -1e300;
    for (size_t g = 0; g < grid_points; ++g) {
        const double f = grid_points == 1
                             ? 0.0
                             : static_cast<double>(g) / static_cast<double>(grid_points - 1);
        // descend from lambda_max so dense graphs come last
        const double lambda = std::exp(std::log(lambda_max) +
                                       f * (std::log(lambda_min) - std::log(lambda_max)));
        CcdrConfig cfg = base;
        cfg.lambda = lambda;
        CcdrResult res = ccdr_simplified(variables, columns, cfg);

        double bic = 0.0;
        for (size_t v = 0; v < p; ++v) bic += score.local(v, res.graph.parents(v));
        out.lambda_grid.push_back(lambda);
        if (bic > best_bic + 1e-9) {
            best_bic = bic;
            out.best = std::move(res);
            out.chosen_lambda = lambda;
        }
    }
    return out;
}

}  // namespace pubcausal
