#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pubcausal/panel.hpp"

namespace pubcausal {

// Complete-case estimation input: standardized covariate columns, a binary
// treatment and a numeric outcome.
struct EffectInput {
    std::vector<std::vector<double>> covariates;  // column-major
    std::vector<uint8_t> treatment;
    std::vector<double> outcome;

    size_t size() const { return treatment.size(); }
};

EffectInput effect_input_from_panel(const AnalysisPanel& panel, const std::string& treatment,
                                    const std::string& outcome);

struct VaineGroup {
    size_t size = 0;
    size_t n_treated = 0;
    double effect = 0.0;
    double p_value = 1.0;
    bool retained = false;
};

struct AteEstimate {
    std::string method;
    std::string treatment;
    std::string outcome;
    int year = 0;
    bool defined = false;
    double estimate = 0.0;
    size_t n_treated = 0;
    size_t n_control = 0;
    std::map<std::string, double> diagnostics;
    std::vector<VaineGroup> groups;  // cluster-local method only
    std::vector<std::optional<double>> unit_cates;  // forest only, out-of-bag
};

// Unadjusted mean difference E(y|t) - E(y|c); the baseline the adjusted
// estimators are judged against.
AteEstimate naive_ate(const EffectInput& input);

struct PropensityModel {
    std::vector<double> coefficients;  // intercept first, then covariates
    bool converged = false;
    bool degenerate = false;  // an arm has fewer than 2 units
    double log_loss = 0.0;

    double propensity(const std::vector<std::vector<double>>& covariates, size_t row) const;
    double logit(const std::vector<std::vector<double>>& covariates, size_t row) const;
};

// Logistic regression by full-batch gradient descent with step halving;
// converged when the gradient L-inf norm drops below 1e-8.
PropensityModel fit_propensity(const EffectInput& input);

struct PsmConfig {
    double caliper_sd_multiple = 0.2;  // caliper = multiple * SD(logit propensity)
};

// 1-NN matching without replacement on the logit propensity; matched-pair
// mean difference (ATT form).
AteEstimate psm_ate(const EffectInput& input, const PsmConfig& config = {});

struct ForestConfig {
    size_t n_trees = 500;
    double subsample_fraction = 0.5;
    size_t min_leaf = 5;  // per honest half, with both arms present
};

// Honest causal forest: structure half picks splits maximizing the
// between-child variance of the leaf effect estimate, estimation half
// supplies leaf effects, out-of-bag averages give per-unit effects.
AteEstimate causal_forest_ate(const EffectInput& input, const ForestConfig& config, uint64_t seed);

struct VaineConfig {
    size_t k = 10;
    double alpha = 0.05;
    size_t restarts = 50;
    bool weighted_mean = false;  // weight retained groups by size
};

// Cluster-local estimation: project covariates to the top two principal
// components, k-means the units, fit outcome ~ treatment per group and
// average the significant local slopes.
AteEstimate vaine_ate(const EffectInput& input, const VaineConfig& config, uint64_t seed);

// Arithmetic mean over the defined entries; empty when none are defined.
std::optional<double> mean_across_methods(const std::vector<std::optional<double>>& estimates);

inline constexpr const char* kEstimatesCsvHeader =
    "method,treatment,outcome,year,estimate,n_treated,n_control,defined";

void write_estimates_csv(const std::string& path, const std::vector<AteEstimate>& estimates);
std::vector<AteEstimate> read_estimates_csv(const std::string& path);

}  // namespace pubcausal
