#include "pubcausal/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pubcausal {

Matrix Matrix::identity(size_t n) {
    Matrix m(n, n, 0.0);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix matmul(const Matrix& x, const Matrix& y) {
    Matrix out(x.rows, y.cols, 0.0);
    for (size_t i = 0; i < x.rows; ++i) {
        for (size_t k = 0; k < x.cols; ++k) {
            const double v = x(i, k);
            if (v == 0.0) continue;
            for (size_t j = 0; j < y.cols; ++j) out(i, j) += v * y(k, j);
        }
    }
    return out;
}

bool invert(Matrix m, Matrix& out, double eps) {
    const size_t n = m.rows;
    out = Matrix::identity(n);
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        for (size_t r = col + 1; r < n; ++r) {
            if (std::fabs(m(r, col)) > std::fabs(m(pivot, col))) pivot = r;
        }
        if (std::fabs(m(pivot, col)) < eps) return false;
        if (pivot != col) {
            for (size_t j = 0; j < n; ++j) {
                std::swap(m(pivot, j), m(col, j));
                std::swap(out(pivot, j), out(col, j));
            }
        }
        const double d = m(col, col);
        for (size_t j = 0; j < n; ++j) {
            m(col, j) /= d;
            out(col, j) /= d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = m(r, col);
            if (f == 0.0) continue;
            for (size_t j = 0; j < n; ++j) {
                m(r, j) -= f * m(col, j);
                out(r, j) -= f * out(col, j);
            }
        }
    }
    return true;
}

bool cholesky_solve(const Matrix& A, const std::vector<double>& b, std::vector<double>& x) {
    const size_t n = A.rows;
    Matrix L(n, n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j <= i; ++j) {
            double s = A(i, j);
            for (size_t k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            if (i == j) {
                if (s <= 0.0) return false;
                L(i, i) = std::sqrt(s);
            } else {
                L(i, j) = s / L(j, j);
            }
        }
    }
    std::vector<double> y(n);
    for (size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (size_t k = 0; k < i; ++k) s -= L(i, k) * y[k];
        y[i] = s / L(i, i);
    }
    x.assign(n, 0.0);
    for (size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (size_t k = ii + 1; k < n; ++k) s -= L(k, ii) * x[k];
        x[ii] = s / L(ii, ii);
    }
    return true;
}

void jacobi_eigen_sym(const Matrix& m, std::vector<double>& values, Matrix& vectors,
                      int max_sweeps) {
    const size_t n = m.rows;
    Matrix a = m;
    vectors = Matrix::identity(n);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-24) break;
        for (size_t p = 0; p < n; ++p) {
            for (size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (size_t k = 0; k < n; ++k) {
                    const double vkp = vectors(k, p), vkq = vectors(k, q);
                    vectors(k, p) = c * vkp - s * vkq;
                    vectors(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    values.resize(n);
    for (size_t i = 0; i < n; ++i) values[i] = a(i, i);

    // sort eigenpairs by descending eigenvalue
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) { return values[x] > values[y]; });
    std::vector<double> sorted_vals(n);
    Matrix sorted_vecs(n, n);
    for (size_t j = 0; j < n; ++j) {
        sorted_vals[j] = values[order[j]];
        for (size_t i = 0; i < n; ++i) sorted_vecs(i, j) = vectors(i, order[j]);
    }
    values = std::move(sorted_vals);
    vectors = std::move(sorted_vecs);
}

Matrix pinv_sym(const Matrix& m, double tol) {
    std::vector<double> vals;
    Matrix vecs;
    jacobi_eigen_sym(m, vals, vecs);
    const size_t n = m.rows;
    double vmax = 0.0;
    for (double v : vals) vmax = std::max(vmax, std::fabs(v));
    const double cutoff = tol * std::max(vmax, 1.0);
    Matrix out(n, n, 0.0);
    for (size_t k = 0; k < n; ++k) {
        if (std::fabs(vals[k]) <= cutoff) continue;
        const double inv = 1.0 / vals[k];
        for (size_t i = 0; i < n; ++i) {
            const double vik = vecs(i, k);
            if (vik == 0.0) continue;
            for (size_t j = 0; j < n; ++j) out(i, j) += inv * vik * vecs(j, k);
        }
    }
    return out;
}

Matrix principal_directions(const std::vector<std::vector<double>>& columns, size_t k) {
    const size_t p = columns.size();
    if (p == 0) return Matrix(0, 0);
    const size_t n = columns[0].size();
    std::vector<double> means(p, 0.0);
    for (size_t j = 0; j < p; ++j) {
        double s = 0.0;
        for (double v : columns[j]) s += v;
        means[j] = n ? s / static_cast<double>(n) : 0.0;
    }
    Matrix cov(p, p, 0.0);
    for (size_t i = 0; i < p; ++i) {
        for (size_t j = i; j < p; ++j) {
            double s = 0.0;
            for (size_t r = 0; r < n; ++r) s += (columns[i][r] - means[i]) * (columns[j][r] - means[j]);
            const double c = n ? s / static_cast<double>(n) : 0.0;
            cov(i, j) = c;
            cov(j, i) = c;
        }
    }
    std::vector<double> vals;
    Matrix vecs;
    jacobi_eigen_sym(cov, vals, vecs);
    const size_t kk = std::min(k, p);
    Matrix out(p, kk);
    for (size_t j = 0; j < kk; ++j) {
        // fix sign so the largest-magnitude component is positive (stable output)
        size_t arg = 0;
        for (size_t i = 1; i < p; ++i)
            if (std::fabs(vecs(i, j)) > std::fabs(vecs(arg, j))) arg = i;
        const double sign = vecs(arg, j) < 0.0 ? -1.0 : 1.0;
        for (size_t i = 0; i < p; ++i) out(i, j) = sign * vecs(i, j);
    }
    return out;
}

}  // namespace pubcausal
