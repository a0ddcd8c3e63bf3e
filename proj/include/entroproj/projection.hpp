#pragma once

#include "entroproj/dual_solver.hpp"

namespace entroproj {

struct GammaStarReport {
    Vec x;
    double value = kInf; // +inf when no representing density exists
    DualSolution maximizer;
};

// Gamma*(x) = sup_y <y,x> - int gamma(<y,theta>) dR, via the dual solver
// with the constraint replaced by Equality(x).
GammaStarReport gamma_star_of_x(const MomentProblem& prob, const Vec& x);

struct RecessionEstimates {
    double quotient = 0.0; // anchored difference quotients, extrapolated in 1/t
    double support = 0.0;  // support function of dom Gamma by ray search
    double value = 0.0;    // consensus (the support estimate)
};

/**
 * Recession function of Gamma* in direction xi: lim_t Gamma*(x0 + t xi)/t,
 * anchored at the unconstrained moment x0 = int theta m dR. Two independent
 * estimators must agree within 1e-3 (1 + |E1|) or EstimateDisagreement is
 * thrown. +inf is a legitimate consensus.
 */
RecessionEstimates recession_function(const MomentProblem& prob, const Vec& xi);

struct Decomposition {
    Vec x, x_a, x_s;
    double gamma_star_x = 0.0;
    double gamma_star_xa = 0.0;
    double recession_xs = 0.0;
    PrimalDensity density_a;
    bool is_dominating = false;
    DualSolution sol;
};

// Split x into the representable moment x_a (carried by an actual density
// under R) and the recessive remainder x_s = x - x_a. Converged dual means
// x_a = x; a boundary optimum reads x_a off the boundary tilt.
// Requires Gamma*(x) < +inf.
Decomposition decompose(const MomentProblem& prob, const Vec& x);

struct DominatingCertificate {
    bool feasible = false;            // x in C and Gamma*(x) < inf
    double support_gap = 0.0;         // min over sampled x' in C of <y, x'-x>
    double representation_residual = 0.0; // |x - int theta gamma'(<y,theta>) dR|
    Vec y;                            // supporting functional (constrained dual)
};

std::pair<bool, DominatingCertificate>
is_dominating_point(const MomentProblem& prob, const Vec& x);

// Entropy carried by a singular component: the recession function at x_s.
double singular_entropy_value(const MomentProblem& prob, const Vec& x_s);

} // namespace entroproj
