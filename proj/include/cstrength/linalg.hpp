#pragma once

#include <cstddef>
#include <vector>

namespace cstrength {

// Minimal dense row-major matrix. All systems solved in this project are
// tiny (3x3 KKT, 4x4 KKT, 25x25 normal equations), so the solvers below are
// plain textbook routines.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// Solve S x = b for symmetric positive-definite S via Cholesky.
// Returns false and sets *bad_col to the offending pivot column when S is
// not positive definite to working precision.
bool cholesky_solve(const Mat& s, const std::vector<double>& b, std::vector<double>& x,
                    std::size_t* bad_col = nullptr);

// Solve A x = b via LU with partial pivoting. Returns false when singular.
bool lu_solve(const Mat& a, const std::vector<double>& b, std::vector<double>& x);

// Eigenvalues of a small symmetric matrix (cyclic Jacobi). Ascending order.
std::vector<double> sym_eigenvalues(const Mat& s);

// 2-norm condition number estimate of a symmetric matrix via Jacobi.
double sym_cond(const Mat& s);

}  // namespace cstrength
