#pragma once

#include <cstddef>
#include <vector>

namespace entroproj {

// Dense helpers for the tiny systems this project meets (K <= 8 dual
// dimensions, <= 12 grid points in the primal oracle). Row-major.
using Vec = std::vector<double>;

struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;
    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

double dot(const Vec& x, const Vec& y);
double norm2(const Vec& x);
Vec matvec(const Mat& A, const Vec& x);
Vec matvec_t(const Mat& A, const Vec& x); // A^T x

// Jacobi eigendecomposition of a symmetric matrix; eigenvalues ascending.
// Returns false only for non-square input.
bool jacobi_eigen(const Mat& S, Vec& eigenvalues, Mat& eigenvectors);

// Symmetric pseudo-inverse solve: x = S^+ b, dropping eigenvalues below
// rel_tol * max|eigenvalue|.
Vec solve_sym(const Mat& S, const Vec& b, double rel_tol = 1e-14);

// |lambda|_max / |lambda|_min of a symmetric matrix; +inf when singular.
double cond_sym(const Mat& S);

// Orthonormal basis of the null space of A (rows = constraints), by
// Gram-Schmidt completion of the row space. Columns of the result span ker A.
Mat null_space(const Mat& A, double rank_tol = 1e-12);

// Least-norm solution of A f = b via the row-space normal equations with a
// pseudo-inverse; the caller checks the residual for consistency.
Vec least_norm_solution(const Mat& A, const Vec& b);

} // namespace entroproj
