#include "entroproj/problem.hpp"

#include <stdexcept>

#include "entroproj/orlicz.hpp"

namespace entroproj {

ConstraintSet ConstraintSet::equality(Vec x0) {
    ConstraintSet c;
    c.kind = Kind::equality;
    c.lo = x0;
    c.hi = std::move(x0);
    return c;
}

ConstraintSet ConstraintSet::lower_bounds(Vec cvec) {
    ConstraintSet c;
    c.kind = Kind::lower_bounds;
    c.lo = std::move(cvec);
    c.hi.assign(c.lo.size(), kInf);
    return c;
}

ConstraintSet ConstraintSet::box(Vec lo, Vec hi) {
    if (lo.size() != hi.size())
        throw std::invalid_argument("box bounds must have equal length");
    for (std::size_t k = 0; k < lo.size(); ++k)
        if (!(lo[k] <= hi[k])) throw std::invalid_argument("box needs lo <= hi");
    ConstraintSet c;
    c.kind = Kind::box;
    c.lo = std::move(lo);
    c.hi = std::move(hi);
    return c;
}

MomentProblem::MomentProblem(Measure R_, Entropy spec_,
                             std::vector<TestFunction> theta_,
                             ConstraintSet constraint_)
    : R(std::move(R_)), spec(std::move(spec_)), theta(std::move(theta_)),
      constraint(std::move(constraint_)) {
    if (theta.empty()) throw std::invalid_argument("need at least one test function");
    if (constraint.dim() != theta.size())
        throw std::invalid_argument("constraint dimension != number of test functions");
    for (const TestFunction& t : theta)
        if (t.is_grid()) {
            if (!R.is_discrete())
                throw std::invalid_argument("grid test function needs a discrete measure");
            if (t.values().size() != R.discrete().size())
                throw std::invalid_argument("grid test function length mismatch");
        }
}

bool MomentProblem::has_grid_theta() const {
    for (const TestFunction& t : theta)
        if (t.is_grid()) return true;
    return false;
}

double MomentProblem::theta_dot(const Vec& y, double z) const {
    double s = 0.0;
    for (std::size_t k = 0; k < theta.size(); ++k) s += y[k] * theta[k](z);
    return s;
}

Vec MomentProblem::theta_at(double z) const {
    Vec v(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) v[k] = theta[k](z);
    return v;
}

double MomentProblem::theta_dot_index(const Vec& y, std::size_t j) const {
    const auto& d = R.discrete();
    double s = 0.0;
    for (std::size_t k = 0; k < theta.size(); ++k)
        s += y[k] * (theta[k].is_grid() ? theta[k].at_index(j) : theta[k](d.point(j)));
    return s;
}

Vec MomentProblem::theta_at_index(std::size_t j) const {
    const auto& d = R.discrete();
    Vec v(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k)
        v[k] = theta[k].is_grid() ? theta[k].at_index(j) : theta[k](d.point(j));
    return v;
}

void validate_problem(const MomentProblem& prob, double rank_tol) {
    const std::size_t K = prob.K();
    // Gram matrix of theta in L2(R); rank deficiency means <y,theta> = 0
    // R-a.e. for some y != 0.
    Mat G(K, K);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = k; l < K; ++l) {
            double g;
            if (prob.R.is_discrete()) {
                const auto& d = prob.R.discrete();
                g = 0.0;
                for (std::size_t j = 0; j < d.size(); ++j) {
                    Vec th = prob.theta_at_index(j);
                    g += d.weight(j) * th[k] * th[l];
                }
            } else {
                g = prob.R.integrate(
                    [&](double z) { return prob.theta[k](z) * prob.theta[l](z); });
            }
            G.at(k, l) = G.at(l, k) = g;
        }
    Vec lam;
    Mat U;
    jacobi_eigen(G, lam, U);
    double lmax = 0.0;
    for (double l : lam) lmax = std::max(lmax, std::abs(l));
    if (lmax <= 0.0 || lam.front() < rank_tol * lmax)
        throw std::invalid_argument(
            "test functions are linearly dependent on the support of R");

    for (std::size_t k = 0; k < K; ++k) {
        if (prob.theta[k].is_grid()) continue; // discrete: always small_orlicz
        if (integrability_class(prob.theta[k], prob.spec, prob.R) ==
            IntegrabilityClass::outside)
            throw std::invalid_argument(
                "a test function lies outside the Orlicz integrability class");
    }
}

const char* to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::boundary_optimum: return "boundary_optimum";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::infeasible: return "infeasible";
    }
    return "?";
}

} // namespace entroproj
