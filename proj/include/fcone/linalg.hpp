#pragma once

#include <optional>

#include "fcone/rational.hpp"

namespace fcone {

// small dense exact-arithmetic kernel shared by the geometry and grid code.
// row operations scan for the first nonzero pivot in index order, so results
// are deterministic functions of the input.

// reduces m in place to reduced row echelon form; returns the pivot columns.
std::vector<int> rref(Mat& m);

int rank(Mat m);

// one solution of a*x = b, or empty when the system is inconsistent.
std::optional<Vec> solve_linear(const Mat& a, const Vec& b);

// solves a*x = b for several right-hand sides at once (columns of rhs);
// every system must be consistent or the call returns empty.
std::optional<Mat> solve_linear_multi(const Mat& a, const Mat& rhs_columns);

// basis of the kernel of a (vectors of length = #columns).
Mat nullspace(const Mat& a);

}  // namespace fcone
