#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "persistry/detail/linalg.hpp"

namespace persistry::detail {

struct LpSolution {
    bool optimal = false;  ///< false: unbounded or pivot limit hit
    std::vector<double> z;
    double objective = 0.0;
};

/// maximize c.z  subject to  A z <= b, z >= 0, for b >= 0 (the origin is
/// feasible, so no phase 1).
///
/// Condensed dictionary form: basic = beta - D * nonbasic, objective =
/// zeta + d . nonbasic. Slack columns are never stored, so a pivot costs
/// O(rows * cols). Dantzig pricing, switching to Bland's rule (smallest
/// variable label) after a run of degenerate pivots.
inline LpSolution maximize_lp(const Matrix& a, const std::vector<double>& b, const std::vector<double>& c) {
    const std::size_t m = a.rows;
    const std::size_t n = a.cols;
    Matrix dict = a;
    std::vector<double> beta(m);
    for (std::size_t r = 0; r < m; ++r) beta[r] = std::max(0.0, b[r]);
    std::vector<double> d = c;
    double zeta = 0.0;
    // labels: 0..n-1 structural, n..n+m-1 slack
    std::vector<std::size_t> nonbasic(n), basic(m);
    for (std::size_t j = 0; j < n; ++j) nonbasic[j] = j;
    for (std::size_t r = 0; r < m; ++r) basic[r] = n + r;

    constexpr double eps = 1e-12;
    std::size_t degenerate_run = 0;
    LpSolution out;
    const std::size_t max_pivots = 50 * (n + m) + 200;
    for (std::size_t pivot = 0; pivot < max_pivots; ++pivot) {
        const bool bland = degenerate_run > 30;
        std::size_t s = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (d[j] <= eps) continue;
            if (s == n || (bland ? nonbasic[j] < nonbasic[s] : d[j] > d[s])) s = j;
        }
        if (s == n) {
            out.optimal = true;
            break;
        }
        std::size_t r = m;
        double ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            const double coef = dict(i, s);
            if (coef <= eps) continue;
            const double q = beta[i] / coef;
            if (r == m || q < ratio - eps) {
                ratio = q;
                r = i;
            } else if (q <= ratio + eps && basic[i] < basic[r]) {
                r = i;
            }
        }
        if (r == m) return out;  // unbounded
        degenerate_run = ratio <= eps ? degenerate_run + 1 : 0;

        const double p = dict(r, s);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r) continue;
            const double f = dict(i, s) / p;
            if (f == 0.0) continue;
            beta[i] -= f * beta[r];
            for (std::size_t j = 0; j < n; ++j)
                if (j != s) dict(i, j) -= f * dict(r, j);
            dict(i, s) = -f;
        }
        const double fd = d[s] / p;
        zeta += fd * beta[r];
        for (std::size_t j = 0; j < n; ++j)
            if (j != s) d[j] -= fd * dict(r, j);
        d[s] = -fd;
        beta[r] /= p;
        for (std::size_t j = 0; j < n; ++j)
            if (j != s) dict(r, j) /= p;
        dict(r, s) = 1.0 / p;
        std::swap(basic[r], nonbasic[s]);
    }
    out.z.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basic[i] < n) out.z[basic[i]] = std::max(0.0, beta[i]);
    out.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) out.objective += c[j] * out.z[j];
    return out;
}

}  // namespace persistry::detail
