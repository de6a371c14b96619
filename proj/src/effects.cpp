#include "pubcausal/effects.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pubcausal/common.hpp"
#include "pubcausal/csv.hpp"
#include "pubcausal/parallel.hpp"
#include "pubcausal/rng.hpp"
#include "pubcausal/stats.hpp"

namespace pubcausal {

EffectInput effect_input_from_panel(const AnalysisPanel& panel, const std::string& treatment,
                                    const std::string& outcome) {
    const size_t t_col = panel.treatment_index(treatment);
    const size_t o_col = panel.outcome_index(outcome);
    EffectInput input;
    input.covariates.assign(kNumCovariates, {});
    for (size_t i = 0; i < panel.size(); ++i) {
        if (panel.outcome_defined(i, o_col) == 0.0) continue;
        for (size_t j = 0; j < kNumCovariates; ++j)
            input.covariates[j].push_back(panel.covariates_std(i, j));
        input.treatment.push_back(panel.treatments(i, t_col) != 0.0 ? 1 : 0);
        input.outcome.push_back(panel.outcomes(i, o_col));
    }
    return input;
}

namespace {

std::pair<size_t, size_t> arm_sizes(const EffectInput& input) {
    size_t treated = 0;
    for (uint8_t t : input.treatment) treated += t;
    return {treated, input.size() - treated};
}

}  // namespace

AteEstimate naive_ate(const EffectInput& input) {
    AteEstimate est;
    est.method = "naive";
    const auto [nt, nc] = arm_sizes(input);
    est.n_treated = nt;
    est.n_control = nc;
    if (nt == 0 || nc == 0) return est;
    double sum_t = 0.0, sum_c = 0.0;
    for (size_t i = 0; i < input.size(); ++i) {
        if (input.treatment[i]) sum_t += input.outcome[i];
        else sum_c += input.outcome[i];
    }
    est.estimate = sum_t / static_cast<double>(nt) - sum_c / static_cast<double>(nc);
    est.defined = true;
    return est;
}

double PropensityModel::logit(const std::vector<std::vector<double>>& covariates,
                              size_t row) const {
    double z = coefficients.empty() ? 0.0 : coefficients[0];
    for (size_t j = 0; j + 1 < coefficients.size(); ++j) z += coefficients[j + 1] * covariates[j][row];
    return z;
}

double PropensityModel::propensity(const std::vector<std::vector<double>>& covariates,
                                   size_t row) const {
    const double p = 1.0 / (1.0 + std::exp(-logit(covariates, row)));
    return std::clamp(p, 1e-6, 1.0 - 1e-6);
}

PropensityModel fit_propensity(const EffectInput& input) {
    const size_t n = input.size();
    const size_t p = input.covariates.size();
    PropensityModel model;
    model.coefficients.assign(p + 1, 0.0);
    if (n == 0) return model;

    const auto [nt, nc] = arm_sizes(input);
    model.degenerate = nt < 2 || nc < 2;

    const auto loss_at = [&](const std::vector<double>& theta) {
        double loss = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double z = theta[0];
            for (size_t j = 0; j < p; ++j) z += theta[j + 1] * input.covariates[j][i];
            // numerically stable -log likelihood
            const double t = input.treatment[i] ? 1.0 : 0.0;
            loss += std::max(z, 0.0) - t * z + std::log1p(std::exp(-std::fabs(z)));
        }
        return loss / static_cast<double>(n);
    };

    std::vector<double> theta(p + 1, 0.0);
    std::vector<double> grad(p + 1, 0.0);
    double step = 1.0;
    double current_loss = loss_at(theta);
    constexpr int kMaxIter = 10000;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        std::fill(grad.begin(), grad.end(), 0.0);
        for (size_t i = 0; i < n; ++i) {
            double z = theta[0];
            for (size_t j = 0; j < p; ++j) z += theta[j + 1] * input.covariates[j][i];
            const double resid = 1.0 / (1.0 + std::exp(-z)) - (input.treatment[i] ? 1.0 : 0.0);
            grad[0] += resid;
            for (size_t j = 0; j < p; ++j) grad[j + 1] += resid * input.covariates[j][i];
        }
        double grad_max = 0.0;
        for (auto& g : grad) {
            g /= static_cast<double>(n);
            grad_max = std::max(grad_max, std::fabs(g));
        }
        if (grad_max < 1e-8) {
            model.converged = true;
            break;
        }
        // step halving until the loss decreases
        bool moved = false;
        for (int half = 0; half < 60; ++half) {
            std::vector<double> cand = theta;
            for (size_t j = 0; j <= p; ++j) cand[j] -= step * grad[j];
            const double cand_loss = loss_at(cand);
            if (cand_loss <= current_loss) {
                theta = std::move(cand);
                current_loss = cand_loss;
                moved = true;
                step *= 1.25;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;  // flat to machine precision
    }
    model.coefficients = theta;
    model.log_loss = current_loss;
    return model;
}

AteEstimate psm_ate(const EffectInput& input, const PsmConfig& config) {
    AteEstimate est;
    est.method = "psm";
    const auto [nt, nc] = arm_sizes(input);
    est.n_treated = nt;
    est.n_control = nc;
    if (nt == 0 || nc == 0) return est;

    const PropensityModel model = fit_propensity(input);
    const size_t n = input.size();
    std::vector<double> logits(n);
    for (size_t i = 0; i < n; ++i) {
        const double p = model.propensity(input.covariates, i);
        logits[i] = std::log(p / (1.0 - p));
    }
    const double caliper = config.caliper_sd_multiple * std::sqrt(variance_population(logits));

    // controls sorted by logit; treated matched greedily in unit order
    std::vector<size_t> controls;
    for (size_t i = 0; i < n; ++i)
        if (!input.treatment[i]) controls.push_back(i);
    std::sort(controls.begin(), controls.end(),
              [&](size_t a, size_t b) { return logits[a] < logits[b]; });
    std::vector<uint8_t> used(controls.size(), 0);

    double pair_sum = 0.0;
    size_t pairs = 0;
    size_t unmatched = 0;
    for (size_t i = 0; i < n; ++i) {
        if (!input.treatment[i]) continue;
        const double target = logits[i];
        // nearest unused control within the caliper
        size_t lo = std::lower_bound(controls.begin(), controls.end(), target,
                                     [&](size_t c, double v) { return logits[c] < v; }) -
                    controls.begin();
        long best = -1;
        double best_dist = caliper;
        for (long dir : {0L, 1L}) {
            long k = dir == 0 ? static_cast<long>(lo) - 1 : static_cast<long>(lo);
            const long step = dir == 0 ? -1 : 1;
            while (k >= 0 && k < static_cast<long>(controls.size())) {
                const double d = std::fabs(logits[controls[k]] - target);
                if (d > best_dist) break;  // sorted: no closer candidate this way
                if (!used[k] && (d < best_dist || best < 0)) {
                    if (d <= caliper && (best < 0 || d < best_dist)) {
                        best = k;
                        best_dist = d;
                    }
                }
                k += step;
            }
        }
        if (best >= 0) {
            used[best] = 1;
            pair_sum += input.outcome[i] - input.outcome[controls[best]];
            ++pairs;
        } else {
            ++unmatched;
        }
    }
    est.diagnostics["matched_pairs"] = static_cast<double>(pairs);
    est.diagnostics["unmatched_treated"] = static_cast<double>(unmatched);
    est.diagnostics["caliper"] = caliper;
    est.diagnostics["propensity_converged"] = model.converged ? 1.0 : 0.0;
    if (pairs == 0) return est;
    est.estimate = pair_sum / static_cast<double>(pairs);
    est.defined = true;
    return est;
}

// ---------------------------------------------------------------------------
// causal forest
// ---------------------------------------------------------------------------

namespace {

struct TreeNode {
    bool leaf = true;
    size_t feature = 0;
    double threshold = 0.0;
    double effect = 0.0;  // honest leaf estimate
    int left = -1;
    int right = -1;
};

struct Tree {
    std::vector<TreeNode> nodes;
    std::vector<uint8_t> in_subsample;
};

struct ArmStats {
    size_t n_t = 0, n_c = 0;
    double sum_t = 0.0, sum_c = 0.0;

    bool both_arms() const { return n_t > 0 && n_c > 0; }
    size_t total() const { return n_t + n_c; }
    double effect() const {
        return sum_t / static_cast<double>(n_t) - sum_c / static_cast<double>(n_c);
    }
};

ArmStats collect(const EffectInput& input, const std::vector<size_t>& idx) {
    ArmStats s;
    for (size_t i : idx) {
        if (input.treatment[i]) {
            ++s.n_t;
            s.sum_t += input.outcome[i];
        } else {
            ++s.n_c;
            s.sum_c += input.outcome[i];
        }
    }
    return s;
}

struct SplitChoice {
    bool found = false;
    size_t feature = 0;
    double threshold = 0.0;
    double criterion = -1.0;
};

// best split by the between-child variance of the child effect estimates,
// subject to min-leaf and both-arms constraints in both honest halves
SplitChoice choose_split(const EffectInput& input, const std::vector<size_t>& structure,
                         const std::vector<size_t>& estimate, size_t min_leaf) {
    SplitChoice best;
    const size_t p = input.covariates.size();
    const size_t m = structure.size();
    std::vector<size_t> order(m);

    for (size_t f = 0; f < p; ++f) {
        const auto& col = input.covariates[f];
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return col[structure[a]] < col[structure[b]];
        });
        std::vector<size_t> est_sorted = estimate;
        std::sort(est_sorted.begin(), est_sorted.end(),
                  [&](size_t a, size_t b) { return col[a] < col[b]; });

        // prefix stats over the sorted structure half
        ArmStats left;
        size_t est_cursor = 0;
        ArmStats est_left;
        const ArmStats total = collect(input, structure);
        const ArmStats est_total = collect(input, estimate);

        for (size_t k = 0; k + 1 < m; ++k) {
            const size_t i = structure[order[k]];
            if (input.treatment[i]) {
                ++left.n_t;
                left.sum_t += input.outcome[i];
            } else {
                ++left.n_c;
                left.sum_c += input.outcome[i];
            }
            const double v = col[i];
            const double v_next = col[structure[order[k + 1]]];
            if (v == v_next) continue;  // not a boundary between distinct values
            const double threshold = 0.5 * (v + v_next);

            // advance the estimation-half cursor to this threshold
            while (est_cursor < est_sorted.size() && col[est_sorted[est_cursor]] <= threshold) {
                const size_t e = est_sorted[est_cursor];
                if (input.treatment[e]) {
                    ++est_left.n_t;
                    est_left.sum_t += input.outcome[e];
                } else {
                    ++est_left.n_c;
                    est_left.sum_c += input.outcome[e];
                }
                ++est_cursor;
            }
            ArmStats right{total.n_t - left.n_t, total.n_c - left.n_c,
                           total.sum_t - left.sum_t, total.sum_c - left.sum_c};
            ArmStats est_right{est_total.n_t - est_left.n_t, est_total.n_c - est_left.n_c,
                               est_total.sum_t - est_left.sum_t,
                               est_total.sum_c - est_left.sum_c};
            if (left.total() < min_leaf || right.total() < min_leaf) continue;
            if (!left.both_arms() || !right.both_arms()) continue;
            if (est_left.total() < min_leaf || est_right.total() < min_leaf) continue;
            if (!est_left.both_arms() || !est_right.both_arms()) continue;

            const double diff = left.effect() - right.effect();
            const double criterion = static_cast<double>(left.total()) *
                                     static_cast<double>(right.total()) * diff * diff;
            if (criterion > best.criterion) {
                best = {true, f, threshold, criterion};
            }
        }
    }
    return best;
}

int grow_node(const EffectInput& input, Tree& tree, std::vector<size_t> structure,
              std::vector<size_t> estimate, size_t min_leaf) {
    const SplitChoice split = choose_split(input, structure, estimate, min_leaf);
    TreeNode node;
    if (!split.found) {
        const ArmStats s = collect(input, estimate);
        node.effect = s.effect();
        tree.nodes.push_back(node);
        return static_cast<int>(tree.nodes.size() - 1);
    }
    node.leaf = false;
    node.feature = split.feature;
    node.threshold = split.threshold;
    const int self = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(node);

    auto partition = [&](const std::vector<size_t>& idx, bool left_side) {
        std::vector<size_t> out;
        for (size_t i : idx) {
            const bool goes_left = input.covariates[split.feature][i] <= split.threshold;
            if (goes_left == left_side) out.push_back(i);
        }
        return out;
    };
    const int left = grow_node(input, tree, partition(structure, true), partition(estimate, true),
                               min_leaf);
    const int right = grow_node(input, tree, partition(structure, false),
                                partition(estimate, false), min_leaf);
    tree.nodes[self].left = left;
    tree.nodes[self].right = right;
    return self;
}

double predict_tree(const EffectInput& input, const Tree& tree, size_t row) {
    int at = 0;
    while (!tree.nodes[at].leaf) {
        const TreeNode& node = tree.nodes[at];
        at = input.covariates[node.feature][row] <= node.threshold ? node.left : node.right;
    }
    return tree.nodes[at].effect;
}

}  // namespace

AteEstimate causal_forest_ate(const EffectInput& input, const ForestConfig& config,
                              uint64_t seed) {
    AteEstimate est;
    est.method = "causal_forest";
    const auto [nt, nc] = arm_sizes(input);
    est.n_treated = nt;
    est.n_control = nc;
    const size_t n = input.size();
    if (nt == 0 || nc == 0 || n < 4 * config.min_leaf) return est;

    std::vector<Tree> trees(config.n_trees);
    std::vector<uint8_t> grown(config.n_trees, 0);

    parallel_for(config.n_trees, [&](size_t t) {
        auto rng = make_rng(derive_seed(seed, "forest_tree_" + std::to_string(t)));
        std::vector<size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const size_t take = std::max<size_t>(2, static_cast<size_t>(
                                                    config.subsample_fraction * static_cast<double>(n)));
        std::vector<size_t> structure(perm.begin(), perm.begin() + take / 2);
        std::vector<size_t> estimate(perm.begin() + take / 2, perm.begin() + take);

        const ArmStats ss = collect(input, structure);
        const ArmStats es = collect(input, estimate);
        if (!ss.both_arms() || !es.both_arms() || structure.size() < config.min_leaf ||
            estimate.size() < config.min_leaf)
            return;  // tree skipped

        Tree& tree = trees[t];
        tree.in_subsample.assign(n, 0);
        for (size_t k = 0; k < take; ++k) tree.in_subsample[perm[k]] = 1;
        grow_node(input, tree, std::move(structure), std::move(estimate), config.min_leaf);
        grown[t] = 1;
    });

    size_t n_grown = 0;
    std::vector<double> cate_sum(n, 0.0);
    std::vector<size_t> cate_count(n, 0);
    for (size_t t = 0; t < config.n_trees; ++t) {
        if (!grown[t]) continue;
        ++n_grown;
        for (size_t i = 0; i < n; ++i) {
            if (trees[t].in_subsample[i]) continue;  // out-of-bag only
            cate_sum[i] += predict_tree(input, trees[t], i);
            ++cate_count[i];
        }
    }
    est.diagnostics["trees_grown"] = static_cast<double>(n_grown);
    est.diagnostics["trees_requested"] = static_cast<double>(config.n_trees);
    if (n_grown * 2 < config.n_trees) return est;  // more than half skipped

    double sum = 0.0;
    size_t covered = 0;
    est.unit_cates.assign(n, std::nullopt);
    for (size_t i = 0; i < n; ++i) {
        if (cate_count[i] == 0) continue;
        est.unit_cates[i] = cate_sum[i] / static_cast<double>(cate_count[i]);
        sum += *est.unit_cates[i];
        ++covered;
    }
    if (covered == 0) return est;
    est.estimate = sum / static_cast<double>(covered);
    est.defined = true;
    est.diagnostics["units_covered"] = static_cast<double>(covered);
    return est;
}

// ---------------------------------------------------------------------------
// cluster-local estimation
// ---------------------------------------------------------------------------

namespace {

struct KmeansResult {
    std::vector<size_t> assignment;
    double inertia = 0.0;
};

KmeansResult kmeans_once(const std::vector<std::vector<double>>& points, size_t k,
                         std::mt19937_64& rng) {
    const size_t n = points.size();
    const size_t d = n ? points[0].size() : 0;
    KmeansResult result;
    result.assignment.assign(n, 0);
    if (n == 0) return result;

    auto dist2 = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (size_t j = 0; j < d; ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
        return s;
    };

    // k-means++ seeding
    std::vector<std::vector<double>> centers;
    std::uniform_int_distribution<size_t> first(0, n - 1);
    centers.push_back(points[first(rng)]);
    std::vector<double> min_d2(n, 0.0);
    while (centers.size() < std::min(k, n)) {
        double total = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double best = dist2(points[i], centers[0]);
            for (size_t c = 1; c < centers.size(); ++c)
                best = std::min(best, dist2(points[i], centers[c]));
            min_d2[i] = best;
            total += best;
        }
        if (total <= 0.0) break;  // fewer distinct points than centers
        std::uniform_real_distribution<double> u(0.0, total);
        double pick = u(rng);
        size_t chosen = n - 1;
        for (size_t i = 0; i < n; ++i) {
            pick -= min_d2[i];
            if (pick <= 0.0) {
                chosen = i;
                break;
            }
        }
        centers.push_back(points[chosen]);
    }

    const size_t kk = centers.size();
    for (int iter = 0; iter < 100; ++iter) {
        bool moved = false;
        for (size_t i = 0; i < n; ++i) {
            size_t best = 0;
            double best_d = dist2(points[i], centers[0]);
            for (size_t c = 1; c < kk; ++c) {
                const double dd = dist2(points[i], centers[c]);
                if (dd < best_d) {
                    best_d = dd;
                    best = c;
                }
            }
            if (result.assignment[i] != best) {
                result.assignment[i] = best;
                moved = true;
            }
        }
        std::vector<std::vector<double>> sums(kk, std::vector<double>(d, 0.0));
        std::vector<size_t> counts(kk, 0);
        for (size_t i = 0; i < n; ++i) {
            ++counts[result.assignment[i]];
            for (size_t j = 0; j < d; ++j) sums[result.assignment[i]][j] += points[i][j];
        }
        for (size_t c = 0; c < kk; ++c) {
            if (counts[c] == 0) continue;  // empty cluster keeps its center
            for (size_t j = 0; j < d; ++j) centers[c][j] = sums[c][j] / static_cast<double>(counts[c]);
        }
        if (!moved && iter > 0) break;
    }
    result.inertia = 0.0;
    for (size_t i = 0; i < n; ++i) result.inertia += dist2(points[i], centers[result.assignment[i]]);
    return result;
}

}  // namespace

AteEstimate vaine_ate(const EffectInput& input, const VaineConfig& config, uint64_t seed) {
    AteEstimate est;
    est.method = "vaine";
    const auto [nt, nc] = arm_sizes(input);
    est.n_treated = nt;
    est.n_control = nc;
    const size_t n = input.size();
    if (nt == 0 || nc == 0 || config.k < 2 || n < config.k) return est;

    // latent space: top-2 principal directions of the (standardized) covariates
    const Matrix dirs = principal_directions(input.covariates, 2);
    const size_t d = dirs.cols;
    std::vector<std::vector<double>> points(n, std::vector<double>(std::max<size_t>(d, 1), 0.0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t c = 0; c < d; ++c) {
            double s = 0.0;
            for (size_t j = 0; j < input.covariates.size(); ++j)
                s += input.covariates[j][i] * dirs(j, c);
            points[i][c] = s;
        }
    }

    KmeansResult best;
    bool have = false;
    for (size_t r = 0; r < config.restarts; ++r) {
        auto rng = make_rng(derive_seed(seed, "kmeans_restart_" + std::to_string(r)));
        KmeansResult cand = kmeans_once(points, config.k, rng);
        if (!have || cand.inertia < best.inertia - 1e-12) {
            best = std::move(cand);
            have = true;
        }
    }

    size_t n_groups = 0;
    for (size_t i = 0; i < n; ++i) n_groups = std::max(n_groups, best.assignment[i] + 1);

    double retained_sum = 0.0;
    double retained_weight = 0.0;
    size_t retained_count = 0;
    for (size_t gidx = 0; gidx < n_groups; ++gidx) {
        std::vector<double> t_col, y_col;
        size_t g_treated = 0;
        for (size_t i = 0; i < n; ++i) {
            if (best.assignment[i] != gidx) continue;
            t_col.push_back(input.treatment[i] ? 1.0 : 0.0);
            y_col.push_back(input.outcome[i]);
            g_treated += input.treatment[i];
        }
        if (t_col.empty()) continue;
        VaineGroup group;
        group.size = t_col.size();
        group.n_treated = g_treated;
        if (g_treated == 0 || g_treated == group.size) {
            est.groups.push_back(group);  // missing an arm: excluded
            continue;
        }
        const SimpleOls fit = ols_slope_test(t_col, y_col);
        if (!fit.ok) {
            est.groups.push_back(group);
            continue;
        }
        group.effect = fit.slope;
        group.p_value = fit.p_value;
        group.retained = fit.p_value < config.alpha;
        est.groups.push_back(group);
        if (group.retained) {
            const double w = config.weighted_mean ? static_cast<double>(group.size) : 1.0;
            retained_sum += w * group.effect;
            retained_weight += w;
            ++retained_count;
        }
    }
    est.diagnostics["groups_total"] = static_cast<double>(est.groups.size());
    est.diagnostics["groups_retained"] = static_cast<double>(retained_count);
    if (retained_count == 0) return est;
    est.estimate = retained_sum / retained_weight;
    est.defined = true;
    return est;
}

std::optional<double> mean_across_methods(const std::vector<std::optional<double>>& estimates) {
    double sum = 0.0;
    size_t count = 0;
    for (const auto& e : estimates) {
        if (!e) continue;
        sum += *e;
        ++count;
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
}

void write_estimates_csv(const std::string& path, const std::vector<AteEstimate>& estimates) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(estimates.size());
    for (const auto& e : estimates) {
        rows.push_back({e.method, e.treatment, e.outcome, std::to_string(e.year),
                        e.defined ? format_double(e.estimate) : "",
                        std::to_string(e.n_treated), std::to_string(e.n_control),
                        e.defined ? "1" : "0"});
    }
    write_csv_file(path, split(kEstimatesCsvHeader, ','), rows);
}

std::vector<AteEstimate> read_estimates_csv(const std::string& path) {
    const CsvTable csv = read_csv_file(path);
    if (csv_join(csv.header) != kEstimatesCsvHeader)
        throw DataError("unexpected estimates CSV header in " + path);
    std::vector<AteEstimate> out;
    for (const auto& row : csv.rows) {
        if (row.size() != 8) throw DataError("estimates CSV record needs 8 fields");
        AteEstimate e;
        e.method = row[0];
        e.treatment = row[1];
        e.outcome = row[2];
        e.year = std::stoi(row[3]);
        e.defined = row[7] == "1";
        if (e.defined) e.estimate = std::stod(row[4]);
        e.n_treated = static_cast<size_t>(std::stoul(row[5]));
        e.n_control = static_cast<size_t>(std::stoul(row[6]));
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace pubcausal
