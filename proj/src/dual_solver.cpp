#include "entroproj/dual_solver.hpp"

#include <algorithm>
#include <cmath>

namespace entroproj {

namespace {

// int gamma(<y,theta>) dR; +inf when the integral diverges or the linear
// combination exits dom gamma on the support.
double big_gamma(const MomentProblem& P, const Vec& y) {
    try {
        if (P.R.is_discrete()) {
            const auto& d = P.R.discrete();
            double s = 0.0;
            for (std::size_t j = 0; j < d.size(); ++j) {
                double sj = P.theta_dot_index(y, j);
                if (!P.spec.dual_finite(sj)) return kInf;
                double g = P.spec.dual(sj);
                if (!is_finite(g)) return kInf;
                s += d.weight(j) * g;
            }
            return s;
        }
        if (P.spec.kind() == EntropyKind::relative) {
            // gamma(s) = e^s - 1: fold the tilt into the kernel exponent
            double I = P.R.integrate_weighted(
                [](double) { return 1.0; },
                [&](double z) { return P.theta_dot(y, z); });
            return I - P.R.mass();
        }
        return P.R.integrate([&](double z) {
            double s = P.theta_dot(y, z);
            return P.spec.dual_finite(s) ? P.spec.dual(s) : kInf;
        });
    } catch (const NonIntegrable&) {
        return kInf;
    } catch (const QuadratureDivergence&) {
        return kInf;
    }
}

// sum_k inf over the box of y_k x_k; -inf when the sign pattern of y sees an
// unbounded side.
double corner_term(const MomentProblem& P, const Vec& y) {
    const Vec& lo = P.constraint.lo;
    const Vec& hi = P.constraint.hi;
    double s = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (y[k] == 0.0) continue;
        double b = y[k] > 0.0 ? lo[k] : hi[k];
        if (!is_finite(b)) return -kInf;
        s += y[k] * b;
    }
    return s;
}

// curvature C = int theta theta^T gamma''(s) dR = -(Hessian of the dual);
// positive semidefinite. Throws on divergence (caller falls back to gradient
// ascent).
Mat curvature(const MomentProblem& P, const Vec& y) {
    const std::size_t K = P.K();
    Mat C(K, K);
    if (P.R.is_discrete()) {
        const auto& d = P.R.discrete();
        for (std::size_t j = 0; j < d.size(); ++j) {
            double sj = P.theta_dot_index(y, j);
            double g2 = P.spec.dual_second(sj);
            if (!is_finite(g2)) throw NonIntegrable("infinite curvature at atom");
            Vec th = P.theta_at_index(j);
            for (std::size_t k = 0; k < K; ++k)
                for (std::size_t l = 0; l < K; ++l)
                    C.at(k, l) += d.weight(j) * th[k] * th[l] * g2;
        }
        return C;
    }
    const bool rel = P.spec.kind() == EntropyKind::relative;
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = k; l < K; ++l) {
            double v;
            if (rel)
                v = P.R.integrate_weighted(
                    [&](double z) { return P.theta[k](z) * P.theta[l](z); },
                    [&](double z) { return P.theta_dot(y, z); });
            else
                v = P.R.integrate([&](double z) {
                    return P.theta[k](z) * P.theta[l](z) *
                           P.spec.dual_second(P.theta_dot(y, z));
                });
            C.at(k, l) = C.at(l, k) = v;
        }
    return C;
}

} // namespace

Vec tilted_moment(const MomentProblem& P, const Vec& y) {
    const std::size_t K = P.K();
    Vec m(K, 0.0);
    if (P.R.is_discrete()) {
        const auto& d = P.R.discrete();
        for (std::size_t j = 0; j < d.size(); ++j) {
            double gp = P.spec.dual_prime(P.theta_dot_index(y, j));
            Vec th = P.theta_at_index(j);
            for (std::size_t k = 0; k < K; ++k) m[k] += d.weight(j) * th[k] * gp;
        }
        return m;
    }
    const bool rel = P.spec.kind() == EntropyKind::relative;
    for (std::size_t k = 0; k < K; ++k) {
        if (rel)
            m[k] = P.R.integrate_weighted(
                [&](double z) { return P.theta[k](z); },
                [&](double z) { return P.theta_dot(y, z); });
        else
            m[k] = P.R.integrate([&](double z) {
                return P.theta[k](z) * P.spec.dual_prime(P.theta_dot(y, z));
            });
    }
    return m;
}

double dual_objective(const MomentProblem& P, const Vec& y) {
    double lin = corner_term(P, y);
    if (lin == -kInf) return -kInf;
    double g = big_gamma(P, y);
    if (g == kInf) return -kInf;
    return lin - g;
}

Vec dual_gradient(const MomentProblem& P, const Vec& y) {
    Vec m = tilted_moment(P, y);
    const Vec& lo = P.constraint.lo;
    const Vec& hi = P.constraint.hi;
    Vec g(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (y[k] > 0.0)
            g[k] = lo[k] - m[k];
        else if (y[k] < 0.0)
            g[k] = hi[k] - m[k];
        else
            g[k] = std::clamp(m[k], lo[k], hi[k]) - m[k];
    }
    return g;
}

DualSolution solve_dual(const MomentProblem& P, const SolverOptions& opt) {
    const std::size_t K = P.K();
    const Vec& lo = P.constraint.lo;
    const Vec& hi = P.constraint.hi;

    Vec y(K, 0.0);
    double F = dual_objective(P, y); // Gamma(0) = 0, corners vanish: F = 0
    std::vector<char> frozen(K, 0);
    bool hit_boundary = false;

    DualSolution out;
    out.multiplier_active.assign(K, false);

    // signed ascent derivative per coordinate, honoring kinks at y_k = 0
    auto ascent = [&](const Vec& m, bool respect_frozen) {
        Vec a(K, 0.0);
        for (std::size_t k = 0; k < K; ++k) {
            if (respect_frozen && frozen[k]) continue;
            bool kink = lo[k] < hi[k];
            if (!kink || y[k] > 0.0)
                a[k] = lo[k] - m[k];
            else if (y[k] < 0.0)
                a[k] = hi[k] - m[k];
            else {
                double up = is_finite(lo[k]) ? lo[k] - m[k] : -kInf;
                double dn = is_finite(hi[k]) ? m[k] - hi[k] : -kInf;
                if (up <= 0.0 && dn <= 0.0)
                    a[k] = 0.0;
                else
                    a[k] = up >= dn ? up : -dn;
            }
        }
        return a;
    };

    auto point_at = [&](const Vec& d, double t) {
        Vec yt = y;
        for (std::size_t k = 0; k < K; ++k) {
            if (d[k] == 0.0) continue;
            double raw = y[k] + t * d[k];
            bool kink = lo[k] < hi[k];
            if (kink) {
                // moves stay within the orthant picked for this iteration
                if (y[k] > 0.0 || (y[k] == 0.0 && d[k] > 0.0))
                    raw = std::max(raw, 0.0);
                else
                    raw = std::min(raw, 0.0);
            }
            yt[k] = raw;
        }
        return yt;
    };

    int iter = 0;
    for (; iter < opt.max_iter; ++iter) {
        Vec m = tilted_moment(P, y);
        Vec a = ascent(m, true);
        double pg = norm2(a);

        Vec xc(K);
        for (std::size_t k = 0; k < K; ++k)
            xc[k] = y[k] > 0.0 ? lo[k]
                  : y[k] < 0.0 ? hi[k]
                               : std::clamp(m[k], std::max(lo[k], -1e300),
                                            std::min(hi[k], 1e300));
        const double tol = opt.tol_scale * (1.0 + norm2(xc));

        if (F > opt.unbounded_cutoff) {
            out.status = SolveStatus::infeasible;
            break;
        }
        if (pg <= tol) {
            bool at_bound = hit_boundary;
            for (char f : frozen) at_bound = at_bound || f;
            out.status = at_bound ? SolveStatus::boundary_optimum
                                  : SolveStatus::converged;
            break;
        }

        // Newton direction on the working coordinates; gradient fallback
        Vec d = a;
        bool newton_dir = false;
        std::vector<std::size_t> work;
        for (std::size_t k = 0; k < K; ++k)
            if (!frozen[k] && a[k] != 0.0) work.push_back(k);
        try {
            Mat C = curvature(P, y);
            Mat Cw(work.size(), work.size());
            for (std::size_t i = 0; i < work.size(); ++i)
                for (std::size_t j = 0; j < work.size(); ++j)
                    Cw.at(i, j) = C.at(work[i], work[j]);
            if (!work.empty() && cond_sym(Cw) < 1e12) {
                Vec aw(work.size());
                for (std::size_t i = 0; i < work.size(); ++i) aw[i] = a[work[i]];
                Vec dw = solve_sym(Cw, aw);
                double along = 0.0;
                for (std::size_t i = 0; i < work.size(); ++i) along += dw[i] * aw[i];
                if (along > 0.0) {
                    d.assign(K, 0.0);
                    for (std::size_t i = 0; i < work.size(); ++i)
                        d[work[i]] = dw[i];
                    newton_dir = true;
                }
            }
        } catch (const NonIntegrable&) {
        } catch (const QuadratureDivergence&) {
        }

        auto value_at = [&](double t) { return dual_objective(P, point_at(d, t)); };

        double t = 1.0;
        double Ft = value_at(t);
        if (Ft == -kInf) {
            // trim against the boundary of the dual effective domain
            double tl = 0.0, th = 1.0;
            for (int i = 0; i < 60; ++i) {
                double tm = 0.5 * (tl + th);
                (value_at(tm) > -kInf ? tl : th) = tm;
            }
            Vec yb = point_at(d, tl);
            Vec diff(K);
            for (std::size_t k = 0; k < K; ++k) diff[k] = yb[k] - y[k];
            if (norm2(diff) < 1e-9 * (1.0 + norm2(y))) {
                // blocked: freeze the culprit coordinate and keep optimizing
                // the rest along the boundary
                std::size_t culprit = K;
                double best = 0.0;
                for (std::size_t k : work) {
                    if (std::abs(d[k]) <= best) continue;
                    Vec dk = d;
                    dk[k] = 0.0;
                    if (dual_objective(P, point_at(dk, 1e-6)) > -kInf) {
                        culprit = k;
                        best = std::abs(d[k]);
                    }
                }
                hit_boundary = true;
                if (culprit < K) {
                    frozen[culprit] = 1;
                    continue;
                }
                out.status = SolveStatus::boundary_optimum;
                break;
            }
            t = 0.99 * tl;
            Ft = value_at(t);
        } else {
            // expand while the objective keeps climbing (covers unbounded duals)
            while (t < 1e12) {
                double F2 = value_at(2.0 * t);
                if (!(F2 > Ft)) break;
                t *= 2.0;
                Ft = F2;
            }
        }

        double slope = dot(a, d);
        int back = 0;
        while (back < 60 && !(Ft >= F + 1e-4 * t * slope && Ft > -kInf)) {
            t *= 0.5;
            Ft = value_at(t);
            ++back;
        }
        if (back >= 60 || !(Ft > F)) {
            // no progress along d; accept current point as stationary. For a
            // Newton direction, slope = <g, H^-1 g> bounds the remaining gain
            // (half the squared decrement), so an underflowing step with a
            // negligible decrement still counts as resolved even when sheer
            // curvature keeps the raw gradient above tol.
            bool at_bound = hit_boundary;
            for (char f : frozen) at_bound = at_bound || f;
            bool resolved = pg <= 100.0 * tol ||
                            (newton_dir && slope <= 1e-9 * (1.0 + std::abs(F)));
            out.status = at_bound ? SolveStatus::boundary_optimum
                         : resolved ? SolveStatus::converged
                                    : SolveStatus::max_iter;
            break;
        }
        y = point_at(d, t);
        F = Ft;
        out.status = SolveStatus::max_iter;
    }

    if (F > opt.unbounded_cutoff) out.status = SolveStatus::infeasible;

    Vec m = tilted_moment(P, y);
    out.y = y;
    out.dual_value = F;
    out.grad_norm = norm2(ascent(m, false));
    out.iterations = iter;
    out.boundary_active = hit_boundary;
    for (char f : frozen) out.boundary_active = out.boundary_active || f;
    for (std::size_t k = 0; k < K; ++k)
        out.multiplier_active[k] = lo[k] < hi[k] && y[k] == 0.0;
    return out;
}

PrimalDensity reconstruct_primal(const MomentProblem& P, const DualSolution& sol) {
    if (sol.status != SolveStatus::converged &&
        sol.status != SolveStatus::boundary_optimum)
        throw std::invalid_argument("reconstruct_primal needs a usable dual solution");
    PrimalDensity out;
    Vec y = sol.y;
    if (P.R.is_discrete()) {
        const auto& d = P.R.discrete();
        out.atom_values.resize(d.size());
        for (std::size_t j = 0; j < d.size(); ++j)
            out.atom_values[j] = P.spec.dual_prime(P.theta_dot_index(y, j));
        return out;
    }
    MomentProblem copy = P;
    out.f = [copy, y](double z) { return copy.spec.dual_prime(copy.theta_dot(y, z)); };
    if (P.spec.kind() == EntropyKind::relative)
        out.log_f = [copy, y](double z) { return copy.theta_dot(y, z); };
    return out;
}

double primal_entropy(const MomentProblem& P, const PrimalDensity& f) {
    try {
        if (P.R.is_discrete()) {
            const auto& d = P.R.discrete();
            double s = 0.0;
            for (std::size_t j = 0; j < d.size(); ++j) {
                double v = P.spec.star(f.atom_values[j]);
                if (!is_finite(v)) return kInf;
                s += d.weight(j) * v;
            }
            return s;
        }
        if (f.log_f && P.spec.kind() == EntropyKind::relative) {
            // gamma*(e^L) = (L - 1) e^L + 1, with e^L folded into the kernel
            double I = P.R.integrate_weighted(
                [&](double z) { return f.log_f(z) - 1.0; }, f.log_f);
            return I + P.R.mass();
        }
        return P.R.integrate([&](double z) { return P.spec.star(f.f(z)); });
    } catch (const NonIntegrable&) {
        return kInf;
    } catch (const QuadratureDivergence&) {
        return kInf;
    }
}

double primal_entropy_at_dual(const MomentProblem& P, const Vec& y) {
    // Young equality: gamma*(gamma'(s)) = s gamma'(s) - gamma(s)
    if (P.R.is_discrete()) {
        const auto& d = P.R.discrete();
        double s = 0.0;
        for (std::size_t j = 0; j < d.size(); ++j) {
            double sj = P.theta_dot_index(y, j);
            s += d.weight(j) * (sj * P.spec.dual_prime(sj) - P.spec.dual(sj));
        }
        return s;
    }
    if (P.spec.kind() == EntropyKind::relative) {
        double I = P.R.integrate_weighted(
            [&](double z) { return P.theta_dot(y, z) - 1.0; },
            [&](double z) { return P.theta_dot(y, z); });
        return I + P.R.mass();
    }
    return P.R.integrate([&](double z) {
        double s = P.theta_dot(y, z);
        return s * P.spec.dual_prime(s) - P.spec.dual(s);
    });
}

FenchelResiduals fenchel_residuals(const MomentProblem& P, const DualSolution& sol,
                                   const PrimalDensity& fhat) {
    FenchelResiduals r;
    double I = primal_entropy(P, fhat);
    r.dual_equality_gap = std::abs(I - sol.dual_value);

    double G = big_gamma(P, sol.y);
    double cross; // int <y,theta> dQ = int s gamma'(s) dR
    if (P.R.is_discrete()) {
        const auto& d = P.R.discrete();
        cross = 0.0;
        for (std::size_t j = 0; j < d.size(); ++j)
            cross += d.weight(j) * P.theta_dot_index(sol.y, j) * fhat.atom_values[j];
    } else if (fhat.log_f) {
        cross = P.R.integrate_weighted(
            [&](double z) { return P.theta_dot(sol.y, z); }, fhat.log_f);
    } else {
        cross = P.R.integrate(
            [&](double z) { return P.theta_dot(sol.y, z) * fhat.f(z); });
    }
    r.d3_gap = std::abs(I + G - cross);
    return r;
}

} // namespace entroproj
