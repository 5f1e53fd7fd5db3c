#include "inj/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace inj {

double leading_minor(const SquareMatrix<double>& a, int m) {
    // LU with partial pivoting on a copy of the leading block.
    std::array<double, SquareMatrix<double>::kMaxOrder * SquareMatrix<double>::kMaxOrder> w{};
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) w[static_cast<std::size_t>(i * m + j)] = a(i, j);
    double det = 1.0;
    for (int k = 0; k < m; ++k) {
        int pivot = k;
        double best = std::abs(w[static_cast<std::size_t>(k * m + k)]);
        for (int i = k + 1; i < m; ++i) {
            const double cand = std::abs(w[static_cast<std::size_t>(i * m + k)]);
            if (cand > best) {
                best = cand;
                pivot = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != k) {
            for (int j = 0; j < m; ++j)
                std::swap(w[static_cast<std::size_t>(k * m + j)],
                          w[static_cast<std::size_t>(pivot * m + j)]);
            det = -det;
        }
        const double p = w[static_cast<std::size_t>(k * m + k)];
        det *= p;
        for (int i = k + 1; i < m; ++i) {
            const double f = w[static_cast<std::size_t>(i * m + k)] / p;
            for (int j = k; j < m; ++j)
                w[static_cast<std::size_t>(i * m + j)] -= f * w[static_cast<std::size_t>(k * m + j)];
        }
    }
    return det;
}

std::vector<double> leading_minors(const SquareMatrix<double>& a) {
    const int n = a.order();
    std::vector<double> minors(static_cast<std::size_t>(n));
    // Bareiss fraction-free elimination; the pivot after eliminating the
    // k-th column equals the (k+1)-st leading principal minor.
    SquareMatrix<double> w = a;
    double prev = 1.0;
    bool broke_down = false;
    for (int k = 0; k < n; ++k) {
        const double pivot = w(k, k);
        minors[static_cast<std::size_t>(k)] = pivot;
        if (k == n - 1) break;
        if (pivot == 0.0) {
            broke_down = true;
            break;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                w(i, j) = (w(i, j) * pivot - w(i, k) * w(k, j)) / prev;
        prev = pivot;
    }
    if (broke_down) {
        for (int m = 1; m <= n; ++m)
            minors[static_cast<std::size_t>(m - 1)] = leading_minor(a, m);
    }
    return minors;
}

double determinant(const SquareMatrix<double>& a) { return leading_minor(a, a.order()); }

namespace {

// Interval Gaussian elimination on the leading m x m block with mignitude
// pivoting.  Returns false when every pivot candidate straddles zero.
bool interval_lu_det(const SquareMatrix<Interval>& a, int m, Interval& out) {
    std::array<Interval, SquareMatrix<Interval>::kMaxOrder * SquareMatrix<Interval>::kMaxOrder> w;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) w[static_cast<std::size_t>(i * m + j)] = a(i, j);
    Interval det(1.0);
    double sign = 1.0;
    for (int k = 0; k < m; ++k) {
        int pivot = -1;
        double best = 0.0;
        for (int i = k; i < m; ++i) {
            const double mig = w[static_cast<std::size_t>(i * m + k)].mig();
            if (mig > best) {
                best = mig;
                pivot = i;
            }
        }
        if (pivot < 0) return false;
        if (pivot != k) {
            for (int j = 0; j < m; ++j)
                std::swap(w[static_cast<std::size_t>(k * m + j)],
                          w[static_cast<std::size_t>(pivot * m + j)]);
            sign = -sign;
        }
        const Interval p = w[static_cast<std::size_t>(k * m + k)];
        det = det * p;
        for (int i = k + 1; i < m; ++i) {
            const Interval f = w[static_cast<std::size_t>(i * m + k)] / p;
            for (int j = k + 1; j < m; ++j)
                w[static_cast<std::size_t>(i * m + j)] =
                    w[static_cast<std::size_t>(i * m + j)] - f * w[static_cast<std::size_t>(k * m + j)];
        }
    }
    out = sign > 0 ? det : -det;
    return true;
}

} // namespace

Interval leading_minor(const SquareMatrix<Interval>& a, int m) {
    if (m <= 4) return detail::leading_det_cofactor(a, m);
    Interval det;
    if (interval_lu_det(a, m, det)) return det;
    return detail::leading_det_cofactor(a, m);
}

std::vector<Interval> leading_minors(const SquareMatrix<Interval>& a) {
    std::vector<Interval> minors;
    minors.reserve(static_cast<std::size_t>(a.order()));
    for (int m = 1; m <= a.order(); ++m) minors.push_back(leading_minor(a, m));
    return minors;
}

} // namespace inj
