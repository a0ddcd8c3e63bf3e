#pragma once

#include <cstdint>

#include "entroproj/problem.hpp"

namespace entroproj {

struct SolverOptions {
    int max_iter = 500;
    // converged when the projected gradient norm <= tol_scale * (1 + |x_C|)
    double tol_scale = 1e-10;
    // objective beyond this declares the dual unbounded (no feasible primal)
    double unbounded_cutoff = 1e10;
};

// inf_{x in C} <y,x> - int gamma(<y,theta>) dR; -kInf when y is outside the
// dual effective domain (sign-infeasible for the corner term, or the
// integral diverges).
double dual_objective(const MomentProblem& prob, const Vec& y);

// x_C(y) - int theta gamma'(<y,theta>) dR, with the minimal-norm subgradient
// convention at kinks (y_k = 0 on lower-bound/box coordinates).
Vec dual_gradient(const MomentProblem& prob, const Vec& y);

// int theta_k gamma'(<y,theta>) dR, the moment of the tilted measure.
Vec tilted_moment(const MomentProblem& prob, const Vec& y);

DualSolution solve_dual(const MomentProblem& prob, const SolverOptions& opt = {});

// z -> gamma'(<y,theta(z)>); status must be converged or boundary_optimum.
PrimalDensity reconstruct_primal(const MomentProblem& prob, const DualSolution& sol);

// I(fR) = int gamma*(f) dR; +inf when gamma*(f) is infinite somewhere that
// carries mass. Uses log_f for an overflow-safe path when available.
double primal_entropy(const MomentProblem& prob, const PrimalDensity& f);

// Same value computed from the dual side as int gamma*(gamma'(s)) dR with
// the composition reduced in closed form (Young equality); immune to
// overflow near the dual-domain boundary.
double primal_entropy_at_dual(const MomentProblem& prob, const Vec& y);

struct FenchelResiduals {
    double dual_equality_gap = 0.0; // |I(Q) - dual_value|
    double d3_gap = 0.0;            // |I(Q) + int gamma(s) dR - int s dQ|
};

FenchelResiduals fenchel_residuals(const MomentProblem& prob, const DualSolution& sol,
                                   const PrimalDensity& fhat);

/**
 * Independent primal-side oracle for small discrete problems (<= 12 atoms,
 * K <= 3): minimizes sum_j gamma*(f_j) r_j under the moment constraints by
 * null-space projected-gradient descent with diminishing steps from
 * `restarts` random starts, refined by coordinate search at resolution 1e-7.
 * Lower-bound/box constraints are handled by enumerating active-set
 * patterns, each solved as a reduced equality problem.
 */
struct BruteForceResult {
    Vec f;
    double value = kInf;
    bool feasible = false;
};

BruteForceResult brute_force_primal(const MomentProblem& prob, std::uint64_t seed,
                                    int restarts = 100);

} // namespace entroproj
