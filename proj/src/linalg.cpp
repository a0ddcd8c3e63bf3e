#include "entroproj/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "entroproj/common.hpp"

namespace entroproj {

double dot(const Vec& x, const Vec& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(const Vec& x) { return std::sqrt(dot(x, x)); }

Vec matvec(const Mat& A, const Vec& x) {
    Vec y(A.rows, 0.0);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) y[i] += A.at(i, j) * x[j];
    return y;
}

Vec matvec_t(const Mat& A, const Vec& x) {
    Vec y(A.cols, 0.0);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) y[j] += A.at(i, j) * x[i];
    return y;
}

bool jacobi_eigen(const Mat& S, Vec& eigenvalues, Mat& eigenvectors) {
    if (S.rows != S.cols) return false;
    const std::size_t n = S.rows;
    Mat a = S;
    Mat v(n, n);
    for (std::size_t i = 0; i < n; ++i) v.at(i, i) = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a.at(i, j) * a.at(i, j);
        if (off < 1e-300) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a.at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                double app = a.at(p, p), aqq = a.at(q, q);
                double tau = (aqq - app) / (2.0 * apq);
                double t = (tau >= 0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a.at(i, i) < a.at(j, j); });
    eigenvalues.assign(n, 0.0);
    eigenvectors = Mat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        eigenvalues[j] = a.at(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i)
            eigenvectors.at(i, j) = v.at(i, order[j]);
    }
    return true;
}

Vec solve_sym(const Mat& S, const Vec& b, double rel_tol) {
    Vec lam;
    Mat U;
    jacobi_eigen(S, lam, U);
    double lmax = 0.0;
    for (double l : lam) lmax = std::max(lmax, std::abs(l));
    Vec x(S.rows, 0.0);
    for (std::size_t j = 0; j < lam.size(); ++j) {
        if (std::abs(lam[j]) <= rel_tol * lmax) continue;
        double uj_b = 0.0;
        for (std::size_t i = 0; i < S.rows; ++i) uj_b += U.at(i, j) * b[i];
        double coef = uj_b / lam[j];
        for (std::size_t i = 0; i < S.rows; ++i) x[i] += coef * U.at(i, j);
    }
    return x;
}

double cond_sym(const Mat& S) {
    Vec lam;
    Mat U;
    jacobi_eigen(S, lam, U);
    double lmax = 0.0, lmin = kInf;
    for (double l : lam) {
        lmax = std::max(lmax, std::abs(l));
        lmin = std::min(lmin, std::abs(l));
    }
    if (lmin == 0.0) return kInf;
    return lmax / lmin;
}

Mat null_space(const Mat& A, double rank_tol) {
    const std::size_t n = A.cols;
    // orthonormalize the rows of A
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < A.rows; ++i) {
        Vec r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = A.at(i, j);
        for (const Vec& b : basis) {
            double c = dot(r, b);
            for (std::size_t j = 0; j < n; ++j) r[j] -= c * b[j];
        }
        double nr = norm2(r);
        if (nr > rank_tol) {
            for (double& v : r) v /= nr;
            basis.push_back(std::move(r));
        }
    }
    const std::size_t rank = basis.size();
    // complete with standard basis vectors
    std::vector<Vec> null_basis;
    for (std::size_t e = 0; e < n && rank + null_basis.size() < n; ++e) {
        Vec r(n, 0.0);
        r[e] = 1.0;
        for (const Vec& b : basis) {
            double c = dot(r, b);
            for (std::size_t j = 0; j < n; ++j) r[j] -= c * b[j];
        }
        for (const Vec& b : null_basis) {
            double c = dot(r, b);
            for (std::size_t j = 0; j < n; ++j) r[j] -= c * b[j];
        }
        double nr = norm2(r);
        if (nr > 1e-8) {
            for (double& v : r) v /= nr;
            null_basis.push_back(std::move(r));
        }
    }
    Mat N(n, null_basis.size());
    for (std::size_t j = 0; j < null_basis.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) N.at(i, j) = null_basis[j][i];
    return N;
}

Vec least_norm_solution(const Mat& A, const Vec& b) {
    const std::size_t k = A.rows;
    Mat G(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < A.cols; ++c) s += A.at(i, c) * A.at(j, c);
            G.at(i, j) = s;
        }
    Vec w = solve_sym(G, b, 1e-13);
    return matvec_t(A, w);
}

} // namespace entroproj
