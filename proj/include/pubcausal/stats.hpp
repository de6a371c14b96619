#pragma once

#include <cstddef>
#include <vector>

#include "pubcausal/linalg.hpp"

namespace pubcausal {

double mean(const std::vector<double>& v);
double variance_population(const std::vector<double>& v);

// z-score transform with population variance; a (near-)constant column maps
// to all zeros.
std::vector<double> standardize(const std::vector<double>& v);

double normal_cdf(double z);
// two-sided tail probability of |Z| >= z for Z ~ N(0,1)
double normal_two_sided_p(double z);

// Regularized incomplete beta I_x(a, b); continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

// two-sided p-value of a Student-t statistic with df degrees of freedom
double t_two_sided_p(double t, double df);

struct SimpleOls {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    double t_stat = 0.0;
    double p_value = 1.0;
    size_t n = 0;
    bool ok = false;  // false when x is constant or n < 3
};

// OLS of y on a single regressor with a two-sided t-test on the slope.
SimpleOls ols_slope_test(const std::vector<double>& x, const std::vector<double>& y);

// Pearson correlation matrix of column-major data. Constant columns get
// zero off-diagonal entries and a unit diagonal.
Matrix correlation_matrix(const std::vector<std::vector<double>>& columns);

// Population covariance matrix of column-major data.
Matrix covariance_matrix(const std::vector<std::vector<double>>& columns);

}  // namespace pubcausal
