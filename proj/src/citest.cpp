#include "pubcausal/citest.hpp"

#include <algorithm>
#include <cmath>

#include "pubcausal/stats.hpp"

namespace pubcausal {

CorrelationCache CorrelationCache::from_columns(const std::vector<std::vector<double>>& columns) {
    CorrelationCache cache;
    cache.n = columns.empty() ? 0 : columns[0].size();
    cache.corr = correlation_matrix(columns);
    return cache;
}

CiTestResult fisher_z_test(const CorrelationCache& data, size_t i, size_t j,
                           const std::vector<size_t>& conditioning, double alpha) {
    CiTestResult res;
    res.i = i;
    res.j = j;
    res.conditioning = conditioning;

    double r;
    if (i == j) {
        r = 1.0;
    } else if (conditioning.empty()) {
        r = data.corr(i, j);
    } else {
        // invert the correlation submatrix over {i, j} u S; the negated
        // scaled off-diagonal of the inverse is the partial correlation
        std::vector<size_t> idx = {i, j};
        idx.insert(idx.end(), conditioning.begin(), conditioning.end());
        const size_t m = idx.size();
        Matrix sub(m, m);
        for (size_t a = 0; a < m; ++a)
            for (size_t b = 0; b < m; ++b) sub(a, b) = data.corr(idx[a], idx[b]);
        Matrix inv;
        if (!invert(sub, inv)) {
            inv = pinv_sym(sub);
            res.low_rank = true;
        }
        const double denom = inv(0, 0) * inv(1, 1);
        r = denom > 0.0 ? -inv(0, 1) / std::sqrt(denom) : 0.0;
    }

    constexpr double kClamp = 1.0 - 1e-12;
    r = std::clamp(r, -kClamp, kClamp);
    res.partial_corr = r;

    const double z = 0.5 * std::log((1.0 + r) / (1.0 - r));
    const double df = static_cast<double>(data.n) - static_cast<double>(conditioning.size()) - 3.0;
    res.statistic = df > 0.0 ? std::sqrt(df) * std::fabs(z) : 0.0;
    res.p_value = normal_two_sided_p(res.statistic);
    res.independent = res.p_value > alpha;
    return res;
}

}  // namespace pubcausal
