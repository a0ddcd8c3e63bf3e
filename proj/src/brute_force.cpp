#include <algorithm>
#include <cmath>
#include <random>

#include "entroproj/dual_solver.hpp"

namespace entroproj {

namespace {

double clamped_star_prime(const Entropy& e, double t) {
    try {
        double v = e.star_prime(t);
        return std::clamp(v, -1e12, 1e12);
    } catch (const DomainBoundary&) {
        // steer off the boundary: the objective falls toward the interior
        Interval dom = e.dom_gamma_star();
        if (is_finite(dom.lo) && t <= dom.lo) return -1e12;
        return 1e12;
    }
}

struct EqualityOutcome {
    Vec f;
    double value = kInf;
    bool feasible = false;
};

// minimize sum_j r_j gamma*(f_j) subject to A f = b, by projected-gradient
// descent in null-space coordinates with a diminishing step schedule,
// restarted from random points, then polished by coordinate search.
EqualityOutcome minimize_on_slice(const Entropy& spec, const Vec& r, const Mat& A,
                                  const Vec& b, std::mt19937_64& rng, int restarts) {
    const std::size_t J = r.size();
    EqualityOutcome out;

    Vec f_center(J, spec.m());
    if (A.rows > 0) {
        Vec resid = b;
        Vec Am = matvec(A, f_center);
        for (std::size_t k = 0; k < A.rows; ++k) resid[k] -= Am[k];
        Vec corr = least_norm_solution(A, resid);
        for (std::size_t j = 0; j < J; ++j) f_center[j] += corr[j];
        Vec check = matvec(A, f_center);
        double rn = 0.0, bn = 0.0;
        for (std::size_t k = 0; k < A.rows; ++k) {
            rn += (check[k] - b[k]) * (check[k] - b[k]);
            bn += b[k] * b[k];
        }
        if (std::sqrt(rn) > 1e-8 * (1.0 + std::sqrt(bn))) return out; // b not in range
    }

    Mat N = A.rows > 0 ? null_space(A) : [&] {
        Mat I(J, J);
        for (std::size_t j = 0; j < J; ++j) I.at(j, j) = 1.0;
        return I;
    }();
    const std::size_t D = N.cols;

    auto f_of = [&](const Vec& w) {
        Vec f = f_center;
        for (std::size_t j = 0; j < J; ++j)
            for (std::size_t i = 0; i < D; ++i) f[j] += N.at(j, i) * w[i];
        return f;
    };
    auto value_of = [&](const Vec& f) {
        double s = 0.0;
        for (std::size_t j = 0; j < J; ++j) {
            double v = spec.star(f[j]);
            if (!is_finite(v)) return kInf;
            s += r[j] * v;
        }
        return s;
    };

    std::normal_distribution<double> gauss(0.0, 1.0);
    double scale = 1.0 + norm2(f_center);

    Vec best_w(D, 0.0);
    double best_v = value_of(f_center);

    for (int s = 0; s < restarts; ++s) {
        Vec w(D, 0.0);
        if (s > 0) {
            double sigma = scale * (s % 3 == 1 ? 0.3 : s % 3 == 2 ? 1.0 : 3.0);
            for (double& wi : w) wi = sigma * gauss(rng);
        }
        // walk random starts into the feasible region before descending
        int shrink = 0;
        while (value_of(f_of(w)) == kInf && shrink++ < 60)
            for (double& wi : w) wi *= 0.5;
        if (value_of(f_of(w)) == kInf) continue;

        double v = value_of(f_of(w));
        const double step0 = 0.5 * scale;
        for (int t = 0; t < 1500; ++t) {
            Vec f = f_of(w);
            Vec g(D, 0.0);
            for (std::size_t j = 0; j < J; ++j) {
                double gp = r[j] * clamped_star_prime(spec, f[j]);
                for (std::size_t i = 0; i < D; ++i) g[i] += N.at(j, i) * gp;
            }
            double gn = norm2(g);
            if (gn < 1e-14) break;
            double step = step0 / (1.0 + 0.05 * t);
            Vec w2(D);
            for (std::size_t i = 0; i < D; ++i) w2[i] = w[i] - step * g[i] / (1.0 + gn);
            double v2 = value_of(f_of(w2));
            if (v2 == kInf) {
                // halve into the domain instead of stepping out
                for (int h = 0; h < 50 && v2 == kInf; ++h) {
                    for (std::size_t i = 0; i < D; ++i)
                        w2[i] = 0.5 * (w2[i] + w[i]);
                    v2 = value_of(f_of(w2));
                }
                if (v2 == kInf) break;
            }
            w = w2;
            if (v2 < v) v = v2;
            if (v2 < best_v) {
                best_v = v2;
                best_w = w2;
            }
        }
        if (v < best_v) {
            best_v = v;
            best_w = w;
        }
    }
    if (best_v == kInf) return out;

    // coordinate polish down to resolution 1e-7
    for (double delta = 1e-3; delta >= 1e-7 / 1.5; delta *= 0.1) {
        bool moved = true;
        int guard = 0;
        while (moved && guard++ < 400) {
            moved = false;
            for (std::size_t i = 0; i < D; ++i)
                for (double sgn : {+1.0, -1.0}) {
                    Vec w2 = best_w;
                    w2[i] += sgn * delta;
                    double v2 = value_of(f_of(w2));
                    if (v2 < best_v - 1e-15) {
                        best_v = v2;
                        best_w = w2;
                        moved = true;
                    }
                }
        }
    }

    out.f = f_of(best_w);
    out.value = best_v;
    out.feasible = true;
    return out;
}

bool lex_less(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

} // namespace

BruteForceResult brute_force_primal(const MomentProblem& P, std::uint64_t seed,
                                    int restarts) {
    if (!P.R.is_discrete())
        throw std::invalid_argument("brute_force_primal needs a discrete measure");
    const auto& d = P.R.discrete();
    const std::size_t J = d.size();
    const std::size_t K = P.K();
    if (J > 12 || K > 3)
        throw std::invalid_argument("brute_force_primal is for <= 12 atoms, K <= 3");

    Mat A(K, J); // A f = moment vector of f R
    for (std::size_t j = 0; j < J; ++j) {
        Vec th = P.theta_at_index(j);
        for (std::size_t k = 0; k < K; ++k) A.at(k, j) = th[k] * d.weight(j);
    }
    const Vec& lo = P.constraint.lo;
    const Vec& hi = P.constraint.hi;

    // coordinate states: 0 = pinned at lo, 1 = pinned at hi, 2 = free
    std::vector<std::vector<int>> patterns{{}};
    for (std::size_t k = 0; k < K; ++k) {
        std::vector<int> states;
        if (lo[k] == hi[k])
            states = {0};
        else {
            if (is_finite(lo[k])) states.push_back(0);
            if (is_finite(hi[k])) states.push_back(1);
            states.push_back(2);
        }
        std::vector<std::vector<int>> next;
        for (const auto& p : patterns)
            for (int st : states) {
                auto q = p;
                q.push_back(st);
                next.push_back(std::move(q));
            }
        patterns = std::move(next);
    }

    std::mt19937_64 rng(seed);
    Vec rw = d.weights();

    BruteForceResult best;
    for (const auto& pat : patterns) {
        std::vector<std::size_t> act;
        for (std::size_t k = 0; k < K; ++k)
            if (pat[k] != 2) act.push_back(k);
        Mat Aact(act.size(), J);
        Vec bact(act.size());
        for (std::size_t i = 0; i < act.size(); ++i) {
            for (std::size_t j = 0; j < J; ++j) Aact.at(i, j) = A.at(act[i], j);
            bact[i] = pat[act[i]] == 0 ? lo[act[i]] : hi[act[i]];
        }
        EqualityOutcome eo = minimize_on_slice(P.spec, rw, Aact, bact, rng, restarts);
        if (!eo.feasible) continue;
        // verify the inactive bounds
        Vec x = matvec(A, eo.f);
        bool ok = true;
        for (std::size_t k = 0; k < K; ++k) {
            double slack = 1e-7 * (1.0 + std::abs(x[k]));
            if (x[k] < lo[k] - slack || x[k] > hi[k] + slack) ok = false;
        }
        if (!ok) continue;
        if (!best.feasible || eo.value < best.value - 1e-12 ||
            (std::abs(eo.value - best.value) <= 1e-12 && lex_less(eo.f, best.f))) {
            best.f = eo.f;
            best.value = eo.value;
            best.feasible = true;
        }
    }
    return best;
}

} // namespace entroproj
