#include "fcone/linalg.hpp"

#include <cstddef>

namespace fcone {

std::vector<int> rref(Mat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();

    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = rows;
        for (std::size_t i = row; i < rows; ++i) {
            if (m[i][col] != 0) { sel = i; break; }
        }
        if (sel == rows) continue;
        std::swap(m[row], m[sel]);

        const Rational inv = m[row][col];
        for (std::size_t j = col; j < cols; ++j) m[row][j] /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0) continue;
            const Rational f = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(static_cast<int>(col));
        ++row;
    }
    return pivots;
}

int rank(Mat m) {
    return static_cast<int>(rref(m).size());
}

std::optional<Vec> solve_linear(const Mat& a, const Vec& b) {
    Mat rhs(b.size(), Vec(1));
    for (std::size_t i = 0; i < b.size(); ++i) rhs[i][0] = b[i];
    auto multi = solve_linear_multi(a, rhs);
    if (!multi) return std::nullopt;
    Vec x(multi->size());
    for (std::size_t j = 0; j < multi->size(); ++j) x[j] = (*multi)[j][0];
    return x;
}

std::optional<Mat> solve_linear_multi(const Mat& a, const Mat& rhs_columns) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    const std::size_t nrhs = rows == 0 ? (rhs_columns.empty() ? 0 : rhs_columns[0].size())
                                       : rhs_columns[0].size();

    Mat aug(rows, Vec(cols + nrhs, Rational(0)));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        for (std::size_t j = 0; j < nrhs; ++j) aug[i][cols + j] = rhs_columns[i][j];
    }
    std::vector<int> pivots = rref(aug);

    // a pivot in the rhs block means some system is inconsistent
    for (int p : pivots) {
        if (static_cast<std::size_t>(p) >= cols) return std::nullopt;
    }

    Mat x(cols, Vec(nrhs, Rational(0)));
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        const std::size_t col = static_cast<std::size_t>(pivots[k]);
        for (std::size_t j = 0; j < nrhs; ++j) x[col][j] = aug[k][cols + j];
    }
    return x;
}

Mat nullspace(const Mat& a) {
    if (a.empty()) return {};
    Mat m = a;
    std::vector<int> pivots = rref(m);
    const std::size_t cols = a[0].size();

    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;

    Mat basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        Vec v(cols, Rational(0));
        v[free_col] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            v[static_cast<std::size_t>(pivots[k])] = -m[k][free_col];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace fcone
