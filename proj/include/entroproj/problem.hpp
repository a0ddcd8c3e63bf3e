#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "entroproj/entropy.hpp"
#include "entroproj/linalg.hpp"
#include "entroproj/measure.hpp"
#include "entroproj/testfn.hpp"

namespace entroproj {

/**
 * Constraint region C for the moment vector x = int theta dQ. All three
 * variants are handled internally through a single box view lo <= x <= hi:
 *  equality     -> lo = hi = x0
 *  lower_bounds -> lo = c, hi = +inf
 *  box          -> as given (entries may be +-inf)
 */
struct ConstraintSet {
    enum class Kind { equality, lower_bounds, box };

    static ConstraintSet equality(Vec x0);
    static ConstraintSet lower_bounds(Vec c);
    static ConstraintSet box(Vec lo, Vec hi);

    Kind kind = Kind::equality;
    Vec lo, hi; // canonical box view
    std::size_t dim() const { return lo.size(); }
};

/// The minimization data: reference measure, integrand catalog entry, test
/// functions theta_1..theta_K and the constraint region.
struct MomentProblem {
    MomentProblem(Measure R_, Entropy spec_, std::vector<TestFunction> theta_,
                  ConstraintSet constraint_);

    Measure R;
    Entropy spec;
    std::vector<TestFunction> theta;
    ConstraintSet constraint;

    std::size_t K() const { return theta.size(); }
    bool has_grid_theta() const;

    // <y, theta(z)> for closed-form test functions
    double theta_dot(const Vec& y, double z) const;
    Vec theta_at(double z) const;
    // per-atom versions, required when any theta is grid-bound
    double theta_dot_index(const Vec& y, std::size_t j) const;
    Vec theta_at_index(std::size_t j) const;
};

// Throws std::invalid_argument when theta components are linearly dependent
// on the support of R (Gram matrix conditioning beyond 1/rank_tol) or any
// basis direction classifies as outside the integrability ladder.
void validate_problem(const MomentProblem& prob, double rank_tol = 1e-10);

enum class SolveStatus { converged, boundary_optimum, max_iter, infeasible };
const char* to_string(SolveStatus s);

struct DualSolution {
    Vec y;
    double dual_value = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    // y pinned against the boundary of {y : Gamma(y) < inf}
    bool boundary_active = false;
    // per coordinate: the sign constraint at the kink y_k = 0 binds
    std::vector<bool> multiplier_active;
    SolveStatus status = SolveStatus::max_iter;
};

/// dQ/dR produced by reconstruct_primal. For density measures f/log_f are
/// pointwise maps; for discrete measures atom_values holds f at each atom.
struct PrimalDensity {
    std::function<double(double)> f;
    std::function<double(double)> log_f;
    Vec atom_values;
};

} // namespace entroproj
