#include "entroproj/rel_entropy.hpp"

#include "entroproj/dual_solver.hpp"
#include "entroproj/projection.hpp"
#include "entroproj/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entroproj {

namespace {

double th_value(const TestFunction& th, std::size_t j, double z) {
    return th.is_grid() ? th.at_index(j) : th(z);
}

// Shift that keeps exp(y theta + log density - M) <= e^O(1) on a probe grid,
// so genuinely finite transforms never overflow in linear space.
double exponent_shift(const Measure& R, const TestFunction& th, double y) {
    if (y == 0.0) return 0.0;
    const Density1D& d = R.density();
    Interval sup = d.support();
    double best = -kInf;
    auto probe = [&](double z) {
        double e = y * th(z) + d.log_density(z);
        if (is_finite(e) && e > best) best = e;
    };
    double lo = std::max(sup.lo, -1e6);
    double hi = std::min(sup.hi, 1e6);
    for (int i = 0; i <= 256; ++i) probe(lo + (hi - lo) * i / 256.0);
    // geometric sweep catches maxima far from the endpoints
    for (int k = -20; k <= 20; ++k) {
        double z = std::ldexp(1.0, k);
        if (z > lo && z < hi) probe(z);
        if (-z > lo && -z < hi) probe(-z);
    }
    return is_finite(best) ? best : 0.0;
}

struct TiltedMoments {
    double log_norm = kInf; // log int e^{y theta} dR
    double mean = 0.0;
    double var = 0.0;
};

TiltedMoments tilted_moments(const Measure& R, const TestFunction& th, double y) {
    TiltedMoments out;
    if (R.is_discrete()) {
        const DiscreteMeasure& d = R.discrete();
        double M = -kInf;
        for (std::size_t j = 0; j < d.size(); ++j)
            M = std::max(M, y * th_value(th, j, d.points()[j]));
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (std::size_t j = 0; j < d.size(); ++j) {
            double t = th_value(th, j, d.points()[j]);
            double w = d.weights()[j] * std::exp(y * t - M);
            s0 += w;
            s1 += w * t;
            s2 += w * t * t;
        }
        out.log_norm = M + std::log(s0);
        out.mean = s1 / s0;
        out.var = s2 / s0 - out.mean * out.mean;
        return out;
    }

    double M = exponent_shift(R, th, y);
    auto logf = [&th, y, M](double z) { return y * th(z) - M; };
    double s0, s1, s2;
    try {
        s0 = R.integrate_weighted([](double) { return 1.0; }, logf);
        if (!is_finite(s0) || s0 > 1e15) return out; // divergent tail
        s1 = R.integrate_weighted([&th](double z) { return th(z); }, logf);
        s2 = R.integrate_weighted([&th](double z) { return th(z) * th(z); }, logf);
    } catch (const NonIntegrable&) {
        return out;
    } catch (const QuadratureDivergence&) {
        return out;
    }
    if (!is_finite(s1) || !is_finite(s2)) return out;
    out.log_norm = M + std::log(s0);
    out.mean = s1 / s0;
    out.var = s2 / s0 - out.mean * out.mean;
    return out;
}

double lambda_only(const Measure& R, const TestFunction& th, double y) {
    if (R.is_discrete()) return tilted_moments(R, th, y).log_norm;
    double M = exponent_shift(R, th, y);
    try {
        double v = R.integrate_weighted([](double) { return 1.0; },
                                        [&th, y, M](double z) { return y * th(z) - M; });
        if (!is_finite(v) || v > 1e15) return kInf;
        return M + std::log(v);
    } catch (const NonIntegrable&) {
        return kInf;
    } catch (const QuadratureDivergence&) {
        return kInf;
    }
}

// Solve log_laplace'(y) = x on [ylo, yhi] given slope(ylo) < x < slope(yhi),
// by Newton steps clipped to a shrinking bisection bracket.
double solve_tilt_on(const Measure& R, const TestFunction& th, double x,
                     double ylo, double yhi) {
    double y = 0.5 * (ylo + yhi);
    for (int it = 0; it < 200; ++it) {
        TiltedMoments m = tilted_moments(R, th, y);
        if (!is_finite(m.log_norm)) { // stepped past the finiteness boundary
            yhi = y;
            y = 0.5 * (ylo + yhi);
            continue;
        }
        double g = m.mean - x;
        if (std::abs(g) <= 1e-12 * (1.0 + std::abs(x))) return y;
        if (g < 0.0)
            ylo = y;
        else
            yhi = y;
        if (yhi - ylo <= 1e-15 * (1.0 + std::abs(y))) return y;
        double step = (m.var > 0.0 && is_finite(m.var)) ? y - g / m.var : kInf;
        y = (step > ylo && step < yhi) ? step : 0.5 * (ylo + yhi);
    }
    return y;
}

} // namespace

double log_laplace(const Measure& R, const TestFunction& th, double y) {
    return lambda_only(R, th, y);
}

double log_laplace_prime(const Measure& R, const TestFunction& th, double y) {
    TiltedMoments m = tilted_moments(R, th, y);
    if (!is_finite(m.log_norm))
        throw std::domain_error("log_laplace_prime: transform diverges here");
    return m.mean;
}

double log_laplace_second(const Measure& R, const TestFunction& th, double y) {
    TiltedMoments m = tilted_moments(R, th, y);
    if (!is_finite(m.log_norm))
        throw std::domain_error("log_laplace_second: transform diverges here");
    return m.var;
}

// A bisected finiteness endpoint can sit in a sliver just past the true
// boundary where truncated quadrature still reports a finite value. Compare
// against the value one relative step inside plus the measured local growth;
// pull the endpoint back one step when the value breaks that bound.
void settle_boundary(const std::function<double(double)>& lam, double dir,
                     double& yb, double& lam_yb) {
    double step = std::max(std::abs(yb), 1.0) * 1e-9;
    double v1 = lam(yb - dir * step);
    double v2 = lam(yb - 2.0 * dir * step);
    if (!is_finite(lam_yb) || !is_finite(v1) || !is_finite(v2)) return;
    double local = std::max((v1 - v2) / step, 0.0);
    double bound = v1 + 2.0 * local * step + 1e-6 * (1.0 + std::abs(v1));
    if (lam_yb > bound) {
        yb -= dir * step;
        lam_yb = v1;
    }
}

double cramer_transform(const Measure& R, const TestFunction& th, double x) {
    const double cap = 1e8;

    // strictly outside the closure of theta over the support no tilt can
    // reach x: the supremum is +inf
    Interval sup = R.support();
    Interval tr = th.range(sup.lo, sup.hi);
    if (x < tr.lo || x > tr.hi) return kInf;

    TiltedMoments at0 = tilted_moments(R, th, 0.0);
    double mean = at0.mean;
    if (x == mean) return -at0.log_norm;

    double dir = (x > mean) ? 1.0 : -1.0;

    // expand until the slope equation brackets, the transform dies, or we
    // give up at |y| = cap (then the supremum is +inf for density references)
    double lo = 0.0, hi = dir;
    bool bracketed = false;
    double boundary_value = kInf;
    while (true) {
        TiltedMoments m = tilted_moments(R, th, hi);
        if (!is_finite(m.log_norm)) {
            // finiteness boundary between lo and hi
            double a = lo, b = hi;
            for (int i = 0; i < 100; ++i) {
                double mid = 0.5 * (a + b);
                if (is_finite(lambda_only(R, th, mid)))
                    a = mid;
                else
                    b = mid;
            }
            double lam_a = lambda_only(R, th, a);
            settle_boundary([&](double y) { return lambda_only(R, th, y); },
                            dir, a, lam_a);
            TiltedMoments mb = tilted_moments(R, th, a);
            if (!is_finite(mb.log_norm) || dir * (mb.mean - x) >= 0.0) {
                // either the slope reaches x inside, or the moment integrals
                // outran the quadrature at the edge, which only happens when
                // the slope blows up there; both bracket the root
                bracketed = true;
                hi = a;
            } else if (is_finite(lam_a)) {
                // slope never reaches x inside: affine continuation
                boundary_value = x * a - lam_a;
            }
            break;
        }
        if (dir * (m.mean - x) >= 0.0) {
            bracketed = true;
            break;
        }
        lo = hi;
        hi *= 2.0;
        if (std::abs(hi) > cap) return kInf;
    }
    if (!bracketed) return boundary_value;

    double a = std::min(lo, hi), b = std::max(lo, hi);
    double y = solve_tilt_on(R, th, x, a, b);
    return x * y - lambda_only(R, th, y);
}

double augmentation_residual(const Measure& R, const TestFunction& th, double x) {
    std::vector<TestFunction> theta{TestFunction::constant(1.0), th};
    MomentProblem aug(R, Entropy::relative(), theta,
                      ConstraintSet::equality({1.0, x}));
    GammaStarReport rep = gamma_star_of_x(aug, {1.0, x});
    double xi = cramer_transform(R, th, x);
    if (!is_finite(rep.value) && !is_finite(xi)) return 0.0;
    return std::abs(rep.value - xi);
}

LaplaceReport steepness_probe(const Measure& R, const TestFunction& th,
                              double direction) {
    LaplaceReport rep;
    auto L = [&](double t) { return lambda_only(R, th, direction * t); };
    auto Lp = [&](double t) {
        TiltedMoments m = tilted_moments(R, th, direction * t);
        // unavailable moments at a point where the transform itself is finite
        // mean the slope integral outran the quadrature: signal, don't guess
        if (!is_finite(m.log_norm))
            throw std::domain_error("steepness_probe: moments diverge here");
        return direction * m.mean;
    };

    // a compact density support makes the transform entire with the slope
    // saturating at the best value of direction * theta; skip the numeric
    // expansion, whose quadrature dies long before any honest boundary
    Interval sup = R.support();
    if (!R.is_discrete() && is_finite(sup.lo) && is_finite(sup.hi)) {
        rep.y_max = kInf;
        rep.lambda_at_y_max = kInf;
        rep.steep = false;
        Interval tr = th.range(sup.lo, sup.hi);
        rep.x_star = direction > 0.0 ? tr.hi : -tr.lo;
        return rep;
    }

    // how far the transform stays finite along the probe direction
    double lo = 0.0, hi = 1.0;
    const double expand_cap = std::ldexp(1.0, 60);
    while (hi <= expand_cap && is_finite(L(hi))) {
        lo = hi;
        hi *= 2.0;
    }

    auto check_monotone = [](double prev, double cur) {
        if (cur < prev - 1e-8 * (1.0 + std::abs(prev)))
            throw EstimateDisagreement("steepness_probe: slope ladder not monotone",
                                       prev, cur);
    };

    if (hi > expand_cap) {
        // entire half-line: the slope either saturates or blows up. Rungs
        // stop at 2^20 where quadrature noise would drown the increments.
        rep.y_max = kInf;
        rep.lambda_at_y_max = kInf;
        double prev = -kInf;
        std::vector<double> ms;
        for (int k = 0; k <= 20; ++k) {
            double m = Lp(std::ldexp(1.0, k));
            check_monotone(prev, m);
            prev = m;
            if (m >= 1e6) {
                rep.steep = true;
                rep.x_star = kInf;
                return rep;
            }
            ms.push_back(m);
        }
        // saturation: extrapolate the last rungs linearly in 1/t, but never
        // trust a jump larger than the observed increments
        std::size_t n = ms.size();
        double last = ms[n - 1], prev6 = ms[n - 7];
        double extrap = last + (last - ms[n - 2]);
        if (extrap >= last && extrap - last <= 2.0 * (last - prev6) + 1e-12)
            rep.x_star = extrap;
        else
            rep.x_star = last;
        rep.steep = false;
        return rep;
    }

    for (int i = 0; i < 100; ++i) {
        double mid = 0.5 * (lo + hi);
        if (is_finite(L(mid)))
            lo = mid;
        else
            hi = mid;
    }
    rep.y_max = lo;
    rep.lambda_at_y_max = L(lo);
    settle_boundary(L, 1.0, rep.y_max, rep.lambda_at_y_max);

    if (is_finite(rep.lambda_at_y_max)) {
        double slope_at_edge = kInf;
        try {
            slope_at_edge = Lp(rep.y_max);
        } catch (const std::domain_error&) {
        }
        if (is_finite(slope_at_edge) && slope_at_edge < 1e6) {
            rep.x_star = slope_at_edge;
            rep.steep = false;
            return rep;
        }
    }

    // climb toward the boundary from inside
    double prev = -kInf;
    std::vector<double> ms;
    for (int k = 1; k <= 30; ++k) {
        double t = rep.y_max - std::ldexp(rep.y_max, -k);
        double m;
        try {
            m = Lp(t);
        } catch (const std::domain_error&) {
            continue;
        }
        check_monotone(prev, m);
        prev = m;
        if (m >= 1e6) {
            rep.steep = true;
            rep.x_star = kInf;
            return rep;
        }
        ms.push_back(m);
    }
    rep.steep = false;
    rep.x_star = ms.empty() ? kInf : ms.back();
    return rep;
}

ProjectionReport entropic_projection(const Measure& R, const TestFunction& th,
                                     double c) {
    ProjectionReport rep;
    TiltedMoments at0 = tilted_moments(R, th, 0.0);
    double mean = at0.mean;

    if (c <= mean + 1e-12 * (1.0 + std::abs(mean))) {
        rep.kind = ProjectionKind::reference;
        rep.y = 0.0;
        rep.lambda_y = at0.log_norm;
        rep.x_hat = mean;
        rep.x_s = 0.0;
        rep.entropy_value = 0.0;
        rep.density = [](double) { return 1.0; };
        rep.log_density = [](double) { return 0.0; };
        return rep;
    }

    LaplaceReport probe = steepness_probe(R, th, 1.0);

    if (!probe.steep && is_finite(probe.x_star) && c > probe.x_star &&
        !is_finite(probe.y_max))
        throw std::invalid_argument(
            "entropic_projection: level exceeds the reachable means and no "
            "boundary tilt exists");

    auto tilt_report = [&](double y, ProjectionKind kind, double x_carried) {
        rep.kind = kind;
        rep.y = y;
        rep.lambda_y = lambda_only(R, th, y);
        rep.x_hat = x_carried;
        TestFunction th_copy = th;
        double lam = rep.lambda_y;
        rep.log_density = [th_copy, y, lam](double z) {
            return y * th_copy(z) - lam;
        };
        auto ld = rep.log_density;
        rep.density = [ld](double z) { return std::exp(ld(z)); };
    };

    bool interior = probe.steep || c <= probe.x_star + 1e-12 * (1.0 + std::abs(c));
    if (interior) {
        // bracket the slope equation inside the finiteness interval
        double lo = 0.0, hi;
        if (is_finite(probe.y_max)) {
            hi = probe.y_max;
            double t = probe.y_max;
            for (int k = 1; k <= 60; ++k) {
                t = probe.y_max - std::ldexp(probe.y_max, -k);
                double m;
                try {
                    m = log_laplace_prime(R, th, t);
                } catch (const std::domain_error&) {
                    continue;
                }
                if (m >= c) {
                    hi = t;
                    break;
                }
                lo = t;
            }
        } else {
            hi = 1.0;
            while (log_laplace_prime(R, th, hi) < c) {
                lo = hi;
                hi *= 2.0;
                if (hi > 1e9)
                    throw std::invalid_argument(
                        "entropic_projection: slope equation does not bracket");
            }
        }
        double y = solve_tilt_on(R, th, c, lo, hi);
        tilt_report(y, ProjectionKind::projection, c);
        rep.x_s = 0.0;
        rep.entropy_value = y * c - rep.lambda_y;
        return rep;
    }

    // boundary tilt plus an escaping remainder
    if (!is_finite(probe.lambda_at_y_max))
        throw std::runtime_error(
            "entropic_projection: boundary tilt is not integrable");
    tilt_report(probe.y_max, ProjectionKind::generalized, probe.x_star);
    rep.x_s = c - probe.x_star;
    // beyond the boundary slope the transform continues affinely with slope
    // y_max, so the value at c is the conjugate of the boundary pair
    rep.entropy_value = probe.y_max * c - probe.lambda_at_y_max;
    return rep;
}

std::vector<CurvePoint> lambda_curve(const Measure& R, const TestFunction& th,
                                     const std::vector<double>& ys) {
    std::vector<CurvePoint> out;
    out.reserve(ys.size());
    for (double y : ys) out.push_back({y, log_laplace(R, th, y)});
    return out;
}

std::vector<CurvePoint> xi_curve(const Measure& R, const TestFunction& th,
                                 const std::vector<double>& xs) {
    std::vector<CurvePoint> out;
    out.reserve(xs.size());
    for (double x : xs) out.push_back({x, cramer_transform(R, th, x)});
    return out;
}

Scenario exponential_scenario(double rate) {
    Scenario s{Measure(Density1D::exponential(rate))};
    s.a0 = s.R.density().kernel_mass();
    s.mean = log_laplace_prime(s.R, s.th, 0.0);
    s.laplace = steepness_probe(s.R, s.th, 1.0);
    s.name = "exponential";
    return s;
}

Scenario exp_poly_scenario() {
    Scenario s{Measure(Density1D::exp_poly(1.0, 3.0))};
    s.a0 = s.R.density().kernel_mass();
    // normalizer of the boundary-tilted law: int dz / (1 + z^3)
    s.a1 = integrate_gk([](double z) { return 1.0 / (1.0 + z * z * z); }, 0.0,
                        kInf)
               .value;
    s.mean = log_laplace_prime(s.R, s.th, 0.0);
    s.laplace = steepness_probe(s.R, s.th, 1.0);
    s.name = "exp_poly";
    return s;
}

Scenario gaussian_scenario(double mu, double sigma) {
    Scenario s{Measure(Density1D::gaussian(mu, sigma))};
    s.mean = mu;
    // dom of the transform is the whole line and the slope mu + sigma^2 y is
    // unbounded; the numeric probe cannot follow the mode that far out.
    s.laplace.y_max = kInf;
    s.laplace.lambda_at_y_max = kInf;
    s.laplace.steep = true;
    s.laplace.x_star = kInf;
    s.name = "gaussian";
    return s;
}

Scenario uniform_scenario() {
    // tight tolerances: saturation rungs integrate boundary layers of total
    // mass ~2^-20, which default tolerances would resolve too coarsely
    QuadratureOptions q;
    q.abs_tol = 1e-14;
    q.rel_tol = 1e-10;
    Scenario s{Measure(Density1D::uniform(0.0, 1.0, true, q))};
    s.mean = log_laplace_prime(s.R, s.th, 0.0);
    s.laplace = steepness_probe(s.R, s.th, 1.0);
    s.name = "uniform";
    return s;
}

ScenarioSolve solve_scenario(const Scenario& scen, double c) {
    ProjectionReport proj = entropic_projection(scen.R, scen.th, c);
    ScenarioSolve out{scen, c, std::move(proj), 0.0, false};
    out.xi_c = out.proj.entropy_value;
    out.dominating = out.proj.kind != ProjectionKind::generalized;
    return out;
}

MomentProblem augmented_problem(const Scenario& scen, double c) {
    std::vector<TestFunction> theta{TestFunction::constant(1.0), scen.th};
    return MomentProblem(scen.R, Entropy::relative(), theta,
                         ConstraintSet::box({1.0, c}, {1.0, kInf}));
}

} // namespace entroproj
