#include "entroproj/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entroproj {

namespace {

MomentProblem with_equality(const MomentProblem& prob, Vec x) {
    return MomentProblem(prob.R, prob.spec, prob.theta,
                         ConstraintSet::equality(std::move(x)));
}

// Gamma(t u) < inf, probed through the dual objective of an equality problem
// pinned at the origin (whose linear part vanishes identically).
bool gamma_finite_along(const MomentProblem& zero_prob, const Vec& u, double t) {
    Vec y(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) y[k] = t * u[k];
    if (zero_prob.R.is_discrete()) {
        // atoms admit an exact answer: the tilt must keep every atom strictly
        // inside dom gamma. Hugely tilted but finite values stay in, so the
        // objective's double overflow never masquerades as the boundary.
        Interval dg = zero_prob.spec.dom_gamma();
        const auto& d = zero_prob.R.discrete();
        for (std::size_t j = 0; j < d.size(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < y.size(); ++k) {
                const TestFunction& th = zero_prob.theta[k];
                s += y[k] * (th.is_grid() ? th.at_index(j) : th(d.point(j)));
            }
            if (s <= dg.lo || s >= dg.hi) return false;
        }
        return true;
    }
    return dual_objective(zero_prob, y) > -kInf;
}

// Largest t with Gamma(t u) finite, or +inf past the expansion cap.
double ray_extent(const MomentProblem& zero_prob, const Vec& u) {
    const double cap = 1e6;
    double lo = 0.0, hi = 1.0;
    while (hi <= cap && gamma_finite_along(zero_prob, u, hi)) {
        lo = hi;
        hi *= 2.0;
    }
    if (hi > cap) return kInf;
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hi);
        if (gamma_finite_along(zero_prob, u, mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

// Neville tableau at h = 0 from samples (h_i, q_i).
double extrapolate_to_zero(std::vector<double> h, std::vector<double> q) {
    const std::size_t n = h.size();
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i)
            q[i] = q[i] + (q[i] - q[i - 1]) * h[i] / (h[i - j] - h[i]);
    return q[n - 1];
}

} // namespace

GammaStarReport gamma_star_of_x(const MomentProblem& prob, const Vec& x) {
    if (x.size() != prob.K())
        throw std::invalid_argument("gamma_star_of_x: dimension mismatch");
    MomentProblem eq = with_equality(prob, x);
    GammaStarReport rep;
    rep.x = x;
    rep.maximizer = solve_dual(eq);
    switch (rep.maximizer.status) {
    case SolveStatus::converged:
    case SolveStatus::boundary_optimum:
        rep.value = rep.maximizer.dual_value;
        break;
    case SolveStatus::infeasible:
        rep.value = kInf;
        break;
    default:
        throw std::runtime_error("gamma_star_of_x: dual ascent stalled");
    }
    return rep;
}

RecessionEstimates recession_function(const MomentProblem& prob, const Vec& xi) {
    if (xi.size() != prob.K())
        throw std::invalid_argument("recession_function: dimension mismatch");
    const std::size_t K = prob.K();

    RecessionEstimates est;
    double xin = norm2(xi);
    if (xin == 0.0) return est;

    // E1: anchored difference quotients. The anchor is the moment of the
    // untilted slope y = 0, where Gamma* vanishes up to solver noise.
    Vec x0 = tilted_moment(prob, Vec(K, 0.0));
    double gs0 = gamma_star_of_x(prob, x0).value;

    std::vector<double> hs, qs;
    bool quotient_infinite = false;
    for (int p = 4; p <= 12; ++p) {
        double t = std::ldexp(1.0, p);
        Vec xt(K);
        for (std::size_t k = 0; k < K; ++k) xt[k] = x0[k] + t * xi[k];
        double g = gamma_star_of_x(prob, xt).value;
        if (!is_finite(g)) {
            quotient_infinite = true;
            break;
        }
        hs.push_back(1.0 / t);
        qs.push_back((g - gs0) / t);
    }
    // superlinear growth never produces an infinite rung: the chord slopes
    // just keep climbing. Call the ladder divergent when the last octave
    // still adds a non-shrinking increment.
    if (!quotient_infinite && qs.size() >= 3) {
        double d1 = qs[qs.size() - 1] - qs[qs.size() - 2];
        double d0 = qs[qs.size() - 2] - qs[qs.size() - 3];
        if (d1 > 1e-2 * (1.0 + std::abs(qs.back())) && d1 > 0.4 * d0)
            quotient_infinite = true;
    }
    est.quotient = quotient_infinite ? kInf : extrapolate_to_zero(hs, qs);

    // E2: support function of dom Gamma. Sample rays, find how far each stays
    // inside the finiteness region, take the best linear gain along it.
    MomentProblem zero_prob = with_equality(prob, Vec(K, 0.0));
    std::vector<Vec> rays;
    if (K == 1) {
        rays.push_back({1.0});
        rays.push_back({-1.0});
    } else if (K == 2) {
        for (int i = 0; i < 32; ++i) {
            double a = 2.0 * M_PI * i / 32.0;
            rays.push_back({std::cos(a), std::sin(a)});
        }
        rays.push_back({xi[0] / xin, xi[1] / xin});
        rays.push_back({1.0, 0.0});
        rays.push_back({-1.0, 0.0});
        rays.push_back({0.0, 1.0});
        rays.push_back({0.0, -1.0});
    } else {
        Vec u(K);
        for (std::size_t k = 0; k < K; ++k) u[k] = xi[k] / xin;
        rays.push_back(u);
        for (std::size_t k = 0; k < K; ++k) {
            Vec e(K, 0.0);
            e[k] = 1.0;
            rays.push_back(e);
            e[k] = -1.0;
            rays.push_back(e);
        }
    }

    double best = 0.0; // y = 0 is always admissible
    for (const Vec& u : rays) {
        double gain = dot(u, xi);
        double tb = ray_extent(zero_prob, u);
        if (!is_finite(tb)) {
            if (gain > 1e-12 * xin) {
                best = kInf;
                break;
            }
            continue;
        }
        best = std::max(best, tb * std::max(gain, 0.0));
    }
    est.support = best;

    bool both_inf = !is_finite(est.quotient) && !is_finite(est.support);
    if (!both_inf) {
        if (!is_finite(est.quotient) || !is_finite(est.support) ||
            std::abs(est.quotient - est.support) > 1e-3 * (1.0 + std::abs(est.quotient)))
            throw EstimateDisagreement("recession_function", est.quotient, est.support);
    }
    est.value = est.support;
    return est;
}

Decomposition decompose(const MomentProblem& prob, const Vec& x) {
    Decomposition d;
    d.x = x;

    MomentProblem eq = with_equality(prob, x);
    d.sol = solve_dual(eq);

    const std::size_t K = prob.K();
    switch (d.sol.status) {
    case SolveStatus::converged: {
        d.x_a = x;
        d.x_s = Vec(K, 0.0);
        d.gamma_star_x = d.sol.dual_value;
        d.gamma_star_xa = d.sol.dual_value;
        d.recession_xs = 0.0;
        d.density_a = reconstruct_primal(eq, d.sol);
        break;
    }
    case SolveStatus::boundary_optimum: {
        d.x_a = tilted_moment(eq, d.sol.y);
        d.x_s.resize(K);
        for (std::size_t k = 0; k < K; ++k) d.x_s[k] = x[k] - d.x_a[k];
        d.density_a = reconstruct_primal(eq, d.sol);
        d.gamma_star_x = d.sol.dual_value;
        d.gamma_star_xa = primal_entropy(eq, d.density_a);
        d.recession_xs = recession_function(prob, d.x_s).value;
        break;
    }
    case SolveStatus::infeasible:
        throw std::invalid_argument("decompose: Gamma*(x) = +inf, nothing to split");
    default:
        throw std::runtime_error("decompose: dual ascent stalled");
    }

    d.is_dominating = norm2(d.x_s) <= 1e-6 * (1.0 + norm2(x));
    return d;
}

std::pair<bool, DominatingCertificate>
is_dominating_point(const MomentProblem& prob, const Vec& x) {
    DominatingCertificate cert;
    const std::size_t K = prob.K();

    // (a) feasibility: x inside the constraint region with finite entropy
    bool in_C = true;
    for (std::size_t k = 0; k < K; ++k) {
        if (x[k] < prob.constraint.lo[k] - 1e-12 * (1.0 + std::abs(prob.constraint.lo[k])) ||
            x[k] > prob.constraint.hi[k] + 1e-12 * (1.0 + std::abs(prob.constraint.hi[k])))
            in_C = false;
    }
    GammaStarReport gs = gamma_star_of_x(prob, x);
    cert.feasible = in_C && is_finite(gs.value);
    if (!cert.feasible) return {false, cert};

    Decomposition d = decompose(prob, x);

    // supporting functional from the constrained problem
    DualSolution con = solve_dual(prob);
    cert.y = con.y;

    // (b) weak-duality side: <y_C, x' - x> over tilted moments landing in C;
    // a dominating point supports C at x, so the gap stays >= -tol.
    double gap = kInf;
    std::vector<Vec> probes;
    probes.push_back(con.y);
    for (int j = -2; j <= 2; ++j) {
        Vec yp = con.y;
        for (std::size_t k = 0; k < K; ++k) yp[k] += 0.1 * j;
        probes.push_back(yp);
        yp = con.y;
        for (std::size_t k = 0; k < K; ++k) yp[k] *= (1.0 + 0.15 * j);
        probes.push_back(yp);
    }
    for (const Vec& yp : probes) {
        if (!is_finite(dual_objective(with_equality(prob, Vec(K, 0.0)), yp))) continue;
        Vec xp;
        try {
            xp = tilted_moment(prob, yp);
        } catch (const NonIntegrable&) {
            continue;
        }
        bool inside = true;
        for (std::size_t k = 0; k < K; ++k) {
            if (xp[k] < prob.constraint.lo[k] - 1e-9 ||
                xp[k] > prob.constraint.hi[k] + 1e-9)
                inside = false;
        }
        if (!inside) continue;
        double s = 0.0;
        for (std::size_t k = 0; k < K; ++k) s += con.y[k] * (xp[k] - x[k]);
        gap = std::min(gap, s);
    }
    cert.support_gap = gap;

    // (c) x must be carried by an actual tilted density
    Vec xr = tilted_moment(prob, con.y);
    double rr = 0.0;
    for (std::size_t k = 0; k < K; ++k) rr += (x[k] - xr[k]) * (x[k] - xr[k]);
    cert.representation_residual = std::sqrt(rr);

    return {d.is_dominating, cert};
}

double singular_entropy_value(const MomentProblem& prob, const Vec& x_s) {
    if (norm2(x_s) == 0.0) return 0.0;
    return recession_function(prob, x_s).value;
}

} // namespace entroproj
