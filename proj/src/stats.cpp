#include "pubcausal/stats.hpp"

#include <cmath>
#include <limits>

namespace pubcausal {

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double variance_population(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

std::vector<double> standardize(const std::vector<double>& v) {
    const double m = mean(v);
    const double var = variance_population(v);
    std::vector<double> out(v.size(), 0.0);
    if (var <= 1e-24) return out;
    const double sd = std::sqrt(var);
    for (size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - m) / sd;
    return out;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_two_sided_p(double z) { return std::erfc(std::fabs(z) / std::sqrt(2.0)); }

namespace {

double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-14;
    constexpr double kFpMin = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_beta = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
    const double front = std::exp(ln_beta + a * std::log(x) + b * std::log(1.0 - x));
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * betacf(a, b, x) / a;
    }
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double t_two_sided_p(double t, double df) {
    if (df <= 0.0) return 1.0;
    if (!std::isfinite(t)) return 0.0;
    const double x = df / (df + t * t);
    return incomplete_beta(df / 2.0, 0.5, x);
}

SimpleOls ols_slope_test(const std::vector<double>& x, const std::vector<double>& y) {
    SimpleOls res;
    res.n = x.size();
    if (x.size() != y.size() || x.size() < 3) return res;
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 1e-24) return res;
    res.slope = sxy / sxx;
    res.intercept = my - res.slope * mx;
    double rss = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - res.intercept - res.slope * x[i];
        rss += r * r;
    }
    const double df = static_cast<double>(x.size()) - 2.0;
    const double sigma2 = rss / df;
    res.slope_se = std::sqrt(sigma2 / sxx);
    if (res.slope_se > 0.0) {
        res.t_stat = res.slope / res.slope_se;
        res.p_value = t_two_sided_p(res.t_stat, df);
    } else {
        // perfect fit: slope is exact
        res.t_stat = res.slope == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
        res.p_value = res.slope == 0.0 ? 1.0 : 0.0;
    }
    res.ok = true;
    return res;
}

Matrix covariance_matrix(const std::vector<std::vector<double>>& columns) {
    const size_t p = columns.size();
    Matrix cov(p, p, 0.0);
    if (p == 0 || columns[0].empty()) return cov;
    const size_t n = columns[0].size();
    std::vector<double> means(p);
    for (size_t j = 0; j < p; ++j) means[j] = mean(columns[j]);
    for (size_t i = 0; i < p; ++i) {
        for (size_t j = i; j < p; ++j) {
            double s = 0.0;
            const double mi = means[i], mj = means[j];
            const auto& ci = columns[i];
            const auto& cj = columns[j];
            for (size_t r = 0; r < n; ++r) s += (ci[r] - mi) * (cj[r] - mj);
            const double c = s / static_cast<double>(n);
            cov(i, j) = c;
            cov(j, i) = c;
        }
    }
    return cov;
}

Matrix correlation_matrix(const std::vector<std::vector<double>>& columns) {
    Matrix cov = covariance_matrix(columns);
    const size_t p = cov.rows;
    Matrix corr(p, p, 0.0);
    for (size_t i = 0; i < p; ++i) corr(i, i) = 1.0;
    for (size_t i = 0; i < p; ++i) {
        for (size_t j = i + 1; j < p; ++j) {
            const double denom = std::sqrt(cov(i, i) * cov(j, j));
            const double r = denom > 1e-24 ? cov(i, j) / denom : 0.0;
            corr(i, j) = r;
            corr(j, i) = r;
        }
    }
    return corr;
}

}  // namespace pubcausal
