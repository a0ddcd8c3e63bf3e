#include "entroproj/gibbs.hpp"

#include "entroproj/dual_solver.hpp"
#include "entroproj/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entroproj {

namespace {

double sample_std_normal(SplitMix& g) {
    double u1 = g.next_unit(), u2 = g.next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double sample_ref(const Density1D& d, SplitMix& g) {
    switch (d.family()) {
    case DensityFamily::exponential:
        return -std::log(g.next_unit()) / d.param0();
    case DensityFamily::uniform:
        return d.param0() + (d.param1() - d.param0()) * g.next_unit();
    case DensityFamily::gaussian:
        return d.param0() + d.param1() * sample_std_normal(g);
    case DensityFamily::exp_poly: {
        // rejection against the e^{-a z} envelope; accept prob 1/(1+z^b)
        double a = d.param0(), b = d.param1();
        for (;;) {
            double z = -std::log(g.next_unit()) / a;
            if (g.next_unit() * (1.0 + std::pow(z, b)) <= 1.0) return z;
        }
    }
    }
    throw std::logic_error("sample_ref: unhandled family");
}

// density proportional to 1/(1+z^b) on [0,inf): a uniform piece on [0,1]
// and a Pareto tail beyond, each thinned down to the exact law
double sample_poly_tail(double b, SplitMix& g) {
    double head_share = (b - 1.0) / b;
    for (;;) {
        if (g.next_unit() < head_share) {
            double z = g.next_unit();
            if (g.next_unit() * (1.0 + std::pow(z, b)) <= 1.0) return z;
        } else {
            double z = std::pow(g.next_unit(), -1.0 / (b - 1.0));
            double zb = std::pow(z, b);
            if (g.next_unit() * (1.0 + zb) <= zb) return z;
        }
    }
}

double sample_tilted(const Density1D& d, double y, SplitMix& g) {
    if (y == 0.0) return sample_ref(d, g);
    switch (d.family()) {
    case DensityFamily::exponential: {
        double a = d.param0();
        if (y >= a)
            throw std::invalid_argument("tilt at or beyond the exponential rate");
        return -std::log(g.next_unit()) / (a - y);
    }
    case DensityFamily::uniform: {
        double lo = d.param0(), w = d.param1() - d.param0();
        double u = g.next_unit();
        return lo + std::log1p(u * std::expm1(y * w)) / y;
    }
    case DensityFamily::gaussian:
        return d.param0() + d.param1() * d.param1() * y +
               d.param1() * sample_std_normal(g);
    case DensityFamily::exp_poly: {
        double a = d.param0(), b = d.param1();
        if (y > a + 1e-12)
            throw std::invalid_argument("tilt beyond the exp_poly boundary");
        if (y >= a - 1e-12) return sample_poly_tail(b, g);
        for (;;) {
            double z = -std::log(g.next_unit()) / (a - y);
            if (g.next_unit() * (1.0 + std::pow(z, b)) <= 1.0) return z;
        }
    }
    }
    throw std::logic_error("sample_tilted: unhandled family");
}

int poisson_draw(double mean, SplitMix& g) {
    if (mean < 30.0) {
        double L = std::exp(-mean), p = 1.0;
        int k = 0;
        do {
            ++k;
            p *= g.next_unit();
        } while (p > L);
        return k - 1;
    }
    // normal approximation; the error is far below any binned statistic here
    double w = mean + std::sqrt(mean) * sample_std_normal(g);
    return w > 0.0 ? static_cast<int>(std::llround(w)) : 0;
}

double logsumexp2(double a, double b) {
    double m = std::max(a, b);
    if (!is_finite(m)) return m;
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// edges define rows()-1 regular bins; the last row is the catch-all for
// anything outside [front, back)
struct Hist {
    std::vector<double> edges;
    std::size_t rows() const { return edges.size(); }

    std::size_t index(double z) const {
        if (z < edges.front() || z >= edges.back()) return edges.size() - 1;
        std::size_t i =
            std::upper_bound(edges.begin(), edges.end(), z) - edges.begin();
        return i - 1;
    }
};

// streaming importance-weighted sums, rescaled so the largest log-weight
// seen so far maps to 1; keeps everything representable at any tilt
struct ScaledSums {
    double shift = -kInf;
    double sum_w = 0.0, sum_w2 = 0.0;
    std::vector<double> rows;

    explicit ScaledSums(std::size_t width) : rows(width, 0.0) {}

    void add(double logw, const std::vector<double>& contrib) {
        if (logw == -kInf) return; // zero weight contributes nothing
        if (logw > shift) {
            double s = is_finite(shift) ? std::exp(shift - logw) : 0.0;
            sum_w *= s;
            sum_w2 *= s * s;
            for (double& r : rows) r *= s;
            shift = logw;
        }
        double w = std::exp(logw - shift);
        sum_w += w;
        sum_w2 += w * w;
        for (std::size_t i = 0; i < contrib.size(); ++i) rows[i] += w * contrib[i];
    }
};

Entropy paired_entropy(WeightLaw law) {
    switch (law) {
    case WeightLaw::poisson1: return Entropy::relative();
    case WeightLaw::exponential1: return Entropy::reverse_relative();
    case WeightLaw::two_point: return Entropy::fermi_dirac();
    case WeightLaw::normal01: return Entropy::lp_norm(2.0);
    }
    throw std::logic_error("paired_entropy: unhandled law");
}

double weight_draw(WeightLaw law, double s, SplitMix& g) {
    switch (law) {
    case WeightLaw::poisson1: return poisson_draw(std::exp(s), g);
    case WeightLaw::exponential1:
        if (s >= 1.0)
            throw std::invalid_argument("exponential1 tilt needs s < 1");
        return -std::log(g.next_unit()) / (1.0 - s);
    case WeightLaw::two_point: {
        double p_plus = 1.0 / (1.0 + std::exp(-2.0 * s));
        return g.next_unit() < p_plus ? 1.0 : -1.0;
    }
    case WeightLaw::normal01: return s + sample_std_normal(g);
    }
    throw std::logic_error("weight_draw: unhandled law");
}

bool event_hit(double mean_theta, double c, const SimConfig& cfg) {
    if (cfg.band) return mean_theta >= c && mean_theta <= c + cfg.delta;
    return mean_theta >= c - cfg.delta;
}

std::vector<double> auto_edges_iid(const Scenario& scen,
                                   const std::function<double(double)>& pdf,
                                   double c) {
    double T = std::max(1.0, c);
    for (int i = 0; i < 40; ++i) {
        if (integrate_gk(pdf, T, kInf).value < 1e-3) break;
        T *= 2.0;
    }
    double lo = scen.R.support().lo;
    if (!is_finite(lo)) lo = 2.0 * scen.mean - T;
    std::vector<double> edges(41);
    for (int i = 0; i <= 40; ++i) edges[i] = lo + (T - lo) * i / 40.0;
    return edges;
}

constexpr int kMaxExcision = 32;

struct EngineOut {
    SimResult res;
    std::vector<double> bulk_mean_by_k; // weighted bulk mean after dropping top k
    double topk_over_n = 0.0;           // weighted mean of the excised mass / n
    double topk_stderr = 0.0;
    double x_star = kInf;
};

// accumulator row layout shared by both engines
struct Layout {
    std::size_t B;
    std::size_t cond(std::size_t i) const { return i; }
    std::size_t bulk(std::size_t i) const { return B + i; }
    std::size_t top1() const { return 2 * B; }
    std::size_t bulk_mean() const { return 2 * B + 1; }
    std::size_t topk() const { return 2 * B + 2; }
    std::size_t ladder(int k) const { return 2 * B + 3 + (k - 1); } // k >= 1
    std::size_t top1_sq() const { return 2 * B + 3 + kMaxExcision; }
    std::size_t bulk_sq() const { return 2 * B + 4 + kMaxExcision; }
    std::size_t topk_sq() const { return 2 * B + 5 + kMaxExcision; }
    std::size_t width() const { return 2 * B + 6 + kMaxExcision; }
};

// per-trial tail statistics: sorted_vals holds the n per-particle
// contributions ascending, total their plain sum
void tail_rows(const Layout& L, const std::vector<double>& sorted_vals,
               double total, int n, int top_k, std::vector<double>& contrib) {
    contrib[L.top1()] = sorted_vals[n - 1] / n;
    double running = total;
    for (int k = 1; k <= kMaxExcision && k < n; ++k) {
        running -= sorted_vals[n - k];
        contrib[L.ladder(k)] = running / (n - k);
    }
    int kk = std::min(std::max(top_k, 0), n - 1);
    contrib[L.bulk_mean()] = kk >= 1 ? contrib[L.ladder(std::min(kk, kMaxExcision))]
                                     : total / n;
    double topk_sum = 0.0;
    for (int k = 1; k <= kk; ++k) topk_sum += sorted_vals[n - k];
    contrib[L.topk()] = topk_sum / n;
    contrib[L.top1_sq()] = contrib[L.top1()] * contrib[L.top1()];
    contrib[L.bulk_sq()] = contrib[L.bulk_mean()] * contrib[L.bulk_mean()];
    contrib[L.topk_sq()] = contrib[L.topk()] * contrib[L.topk()];
}

void finalize(EngineOut& out, const Hist& hist, const std::vector<double>& target,
              const SimConfig& cfg, const ScaledSums& acc, const ScaledSums& pacc) {
    const Layout L{hist.rows()};
    const std::size_t B = L.B;
    SimResult& r = out.res;

    r.trials = cfg.trials;
    r.acceptance_rate = static_cast<double>(r.accepted) / cfg.trials;
    if (r.accepted == 0) throw NoAcceptedTrials("no trial satisfied the event");

    r.bin_lo.assign(hist.edges.begin(), hist.edges.end() - 1);
    r.bin_hi.assign(hist.edges.begin() + 1, hist.edges.end());
    r.bin_lo.push_back(hist.edges.back());
    r.bin_hi.push_back(kInf);
    r.target_hist = target;

    double W = acc.sum_w;
    r.ess = W * W / acc.sum_w2;
    auto row = [&](std::size_t i) { return acc.rows[i] / W; };

    r.conditioned_hist.resize(B);
    r.bulk_hist.resize(B);
    for (std::size_t i = 0; i < B; ++i) r.conditioned_hist[i] = row(L.cond(i));
    for (std::size_t i = 0; i < B; ++i) r.bulk_hist[i] = row(L.bulk(i));
    r.top_particle_over_n = row(L.top1());
    r.bulk_mean = row(L.bulk_mean());
    out.topk_over_n = row(L.topk());

    out.bulk_mean_by_k.resize(kMaxExcision);
    for (int k = 1; k <= kMaxExcision; ++k)
        out.bulk_mean_by_k[k - 1] = row(L.ladder(k));

    double neff = std::max(r.ess, 1.0);
    auto sd = [&](std::size_t sq, double mean) {
        return std::sqrt(std::max(0.0, row(sq) - mean * mean) / neff);
    };
    r.top_particle_stderr = sd(L.top1_sq(), r.top_particle_over_n);
    r.bulk_mean_stderr = sd(L.bulk_sq(), r.bulk_mean);
    out.topk_stderr = sd(L.topk_sq(), out.topk_over_n);

    double tv = 0.0, tvb = 0.0;
    for (std::size_t i = 0; i < B; ++i) {
        tv += std::abs(r.conditioned_hist[i] - target[i]);
        tvb += std::abs(r.bulk_hist[i] - target[i]);
    }
    r.distance_to_target = 0.5 * tv;
    r.bulk_distance_to_target = 0.5 * tvb;

    // event-probability estimate over all trials, kept in shifted space;
    // misses entered pacc with zero weight, so only the count matters there
    double T = cfg.trials;
    double m_shifted = pacc.sum_w / T;
    double var_shifted = std::max(0.0, pacc.sum_w2 / T - m_shifted * m_shifted) /
                         std::max(1.0, T - 1.0);
    double log_p = pacc.shift + std::log(m_shifted);
    r.p_hat = std::exp(log_p);
    r.p_stderr = std::exp(pacc.shift) * std::sqrt(var_shifted);
    r.rate_estimate = -log_p / cfg.n;
    r.rate_stderr = std::sqrt(var_shifted) / (m_shifted * cfg.n);
}

EngineOut run_iid(const Scenario& scen, const SimConfig& cfg, double c) {
    const Density1D& d = scen.R.density();
    const TestFunction& th = scen.th;
    const int n = cfg.n;

    ProjectionReport proj = entropic_projection(scen.R, scen.th, c);
    EngineOut out;
    out.x_star = scen.laplace.x_star;

    auto target_pdf = [&](double z) {
        return std::exp(proj.log_density(z) + d.log_density(z));
    };

    double tilt_y = cfg.tilt_y != 0.0 ? cfg.tilt_y : proj.y;
    double lambda_tilt = 0.0;
    if (cfg.proposal == ProposalKind::exponential_tilt) {
        lambda_tilt = log_laplace(scen.R, th, tilt_y);
        if (!is_finite(lambda_tilt))
            throw std::invalid_argument("tilt outside the transform's domain");
    }

    const bool mixture = cfg.proposal == ProposalKind::boundary_mixture;
    double a = 0.0, b = 0.0, log_a1a0 = 0.0;
    if (mixture) {
        if (proj.kind != ProjectionKind::generalized ||
            d.family() != DensityFamily::exp_poly)
            throw std::invalid_argument(
                "boundary_mixture needs the heavy-tail (generalized) case");
        if (th.kind() != TestFnKind::identity)
            throw std::invalid_argument("boundary_mixture assumes theta(z) = z");
        if (cfg.band)
            throw std::invalid_argument("boundary_mixture targets one-sided events");
        a = d.param0();
        b = d.param1();
        log_a1a0 = std::log(scen.a1 / scen.a0);
    }

    Hist hist;
    hist.edges = cfg.bins.empty() ? auto_edges_iid(scen, target_pdf, c) : cfg.bins;
    const Layout L{hist.rows()};
    const std::size_t B = L.B;

    std::vector<double> target(B, 0.0);
    double covered = 0.0;
    for (std::size_t i = 0; i + 1 < B; ++i) {
        target[i] = integrate_gk(target_pdf, hist.edges[i], hist.edges[i + 1]).value;
        covered += target[i];
    }
    target[B - 1] = std::max(0.0, 1.0 - covered);

    ScaledSums acc(L.width()), pacc(0);
    std::vector<double> z(n), theta(n), sorted(n), contrib(L.width());
    std::vector<std::size_t> order(n);
    SimResult& r = out.res;

    for (int t = 0; t < cfg.trials; ++t) {
        SplitMix g = trial_stream(cfg.seed, static_cast<std::uint64_t>(t));
        double logw = 0.0;

        if (cfg.proposal == ProposalKind::plain_rejection) {
            for (int i = 0; i < n; ++i) z[i] = sample_ref(d, g);
        } else if (cfg.proposal == ProposalKind::exponential_tilt) {
            for (int i = 0; i < n; ++i) z[i] = sample_tilted(d, tilt_y, g);
        } else {
            // one coordinate jumps to wherever it must to trip the event;
            // the weight uses the exact density of the realized mixture
            bool jump = g.next_unit() < cfg.mixture_beta;
            int slot = jump ? static_cast<int>(g.next_unit() * n) % n : -1;
            double others = 0.0;
            for (int i = 0; i < n; ++i) {
                if (i == slot) continue;
                z[i] = sample_poly_tail(b, g);
                others += z[i];
            }
            double total = others;
            if (jump) {
                double shift = std::max(n * (c - cfg.delta) - others, 0.0);
                z[slot] = shift - std::log(g.next_unit()) / a;
                total += z[slot];
            }
            double lse_g = -kInf;
            for (int j = 0; j < n; ++j) {
                double shift_j =
                    std::max(n * (c - cfg.delta) - (total - z[j]), 0.0);
                if (z[j] < shift_j) continue;
                double gj = std::log(a * scen.a1) + std::log1p(std::pow(z[j], b)) -
                            a * (z[j] - shift_j);
                lse_g = logsumexp2(lse_g, gj);
            }
            double log_ratio =
                logsumexp2(std::log1p(-cfg.mixture_beta),
                           std::log(cfg.mixture_beta / n) + lse_g);
            logw = n * log_a1a0 - a * total - log_ratio;
        }

        double mean_theta = 0.0;
        for (int i = 0; i < n; ++i) {
            theta[i] = th(z[i]);
            mean_theta += theta[i];
        }
        mean_theta /= n;

        if (cfg.proposal == ProposalKind::exponential_tilt)
            logw = -n * (tilt_y * mean_theta - lambda_tilt);

        bool hit = event_hit(mean_theta, c, cfg);
        pacc.add(hit ? logw : -kInf, {});
        if (!hit) continue;
        ++r.accepted;

        std::fill(contrib.begin(), contrib.end(), 0.0);
        for (int i = 0; i < n; ++i) contrib[L.cond(hist.index(z[i]))] += 1.0 / n;

        // drop the top_k particles by theta for the bulk view
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t p, std::size_t q) { return theta[p] < theta[q]; });
        int keep = std::max(n - std::max(cfg.top_k, 0), 1);
        for (int i = 0; i < keep; ++i)
            contrib[L.bulk(hist.index(z[order[i]]))] += 1.0 / keep;

        for (int i = 0; i < n; ++i) sorted[i] = theta[order[i]];
        tail_rows(L, sorted, mean_theta * n, n, cfg.top_k, contrib);
        acc.add(logw, contrib);
    }

    finalize(out, hist, target, cfg, acc, pacc);
    return out;
}

EngineOut run_weighted(const Scenario& scen, const SimConfig& cfg, double c) {
    const int n = cfg.n;
    const TestFunction& th = scen.th;
    if (cfg.proposal == ProposalKind::boundary_mixture)
        throw std::invalid_argument("boundary_mixture is an iid-mode proposal");

    // deterministic grid carrying random weights
    std::vector<double> grid(n), gw(n, 1.0 / n);
    for (int i = 0; i < n; ++i) grid[i] = (i + 0.5) / n;

    Entropy ent = paired_entropy(cfg.weight_law);
    MomentProblem grid_prob(Measure(DiscreteMeasure(grid, gw)), ent, {th},
                            ConstraintSet::lower_bounds({c}));

    // the target is always the solved minimizer on the grid, whatever the
    // sampling proposal does
    DualSolution sol = solve_dual(grid_prob);
    if (sol.status != SolveStatus::converged &&
        sol.status != SolveStatus::boundary_optimum)
        throw std::invalid_argument("weighted mode: grid problem has no minimizer");
    double y_star = sol.y[0];
    double y_samp = cfg.tilt_y != 0.0 ? cfg.tilt_y : y_star;

    std::vector<double> s_samp(n), kappa(n), gprime(n);
    for (int i = 0; i < n; ++i) {
        s_samp[i] = y_samp * th(grid[i]);
        kappa[i] = ent.dual(s_samp[i]);
        gprime[i] = ent.dual_prime(y_star * th(grid[i]));
    }

    Hist hist;
    if (cfg.bins.empty()) {
        hist.edges.resize(21);
        for (int i = 0; i <= 20; ++i) hist.edges[i] = i / 20.0;
    } else {
        hist.edges = cfg.bins;
    }
    const Layout L{hist.rows()};
    const std::size_t B = L.B;

    std::vector<double> target(B, 0.0);
    double tmass = 0.0;
    for (int i = 0; i < n; ++i) tmass += gprime[i];
    for (int i = 0; i < n; ++i) target[hist.index(grid[i])] += gprime[i] / tmass;

    ScaledSums acc(L.width()), pacc(0);
    std::vector<double> w(n), contribution(n), sorted(n), contrib(L.width());
    std::vector<std::size_t> order(n);

    EngineOut out;
    SimResult& r = out.res;
    const bool tilted = cfg.proposal == ProposalKind::exponential_tilt;

    for (int t = 0; t < cfg.trials; ++t) {
        SplitMix g = trial_stream(cfg.seed, static_cast<std::uint64_t>(t));
        double logw = 0.0, total = 0.0, wsum = 0.0;
        for (int i = 0; i < n; ++i) {
            double si = tilted ? s_samp[i] : 0.0;
            w[i] = weight_draw(cfg.weight_law, si, g);
            if (tilted) logw += -si * w[i] + kappa[i];
            contribution[i] = w[i] * th(grid[i]);
            total += contribution[i];
            wsum += w[i];
        }
        double mean_theta = total / n;

        bool hit = event_hit(mean_theta, c, cfg);
        pacc.add(hit ? logw : -kInf, {});
        if (!hit) continue;
        ++r.accepted;

        std::fill(contrib.begin(), contrib.end(), 0.0);
        // normalized weighted empirical measure; a vanishing weight sum has
        // no sensible normalization, so such a trial lands in the catch-all
        if (std::abs(wsum) > 1e-9 * n) {
            for (int i = 0; i < n; ++i)
                contrib[L.cond(hist.index(grid[i]))] += w[i] / wsum;
        } else {
            contrib[L.cond(B - 1)] = 1.0;
        }

        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
            return contribution[p] < contribution[q];
        });
        int keep = std::max(n - std::max(cfg.top_k, 0), 1);
        double bulk_wsum = 0.0;
        for (int i = 0; i < keep; ++i) bulk_wsum += w[order[i]];
        if (std::abs(bulk_wsum) > 1e-9 * keep) {
            for (int i = 0; i < keep; ++i)
                contrib[L.bulk(hist.index(grid[order[i]]))] +=
                    w[order[i]] / bulk_wsum;
        } else {
            contrib[L.bulk(B - 1)] = 1.0;
        }

        for (int i = 0; i < n; ++i) sorted[i] = contribution[order[i]];
        tail_rows(L, sorted, total, n, cfg.top_k, contrib);
        acc.add(logw, contrib);
    }

    out.x_star = kInf;
    finalize(out, hist, target, cfg, acc, pacc);
    return out;
}

EngineOut run_engine(const Scenario& scen, const SimConfig& cfg, double c) {
    if (cfg.n < 1 || cfg.trials < 1 || cfg.delta <= 0.0)
        throw std::invalid_argument("sim config: need n >= 1, trials >= 1, delta > 0");
    if (!cfg.bins.empty()) {
        if (cfg.bins.size() < 2 ||
            !std::is_sorted(cfg.bins.begin(), cfg.bins.end()) ||
            std::adjacent_find(cfg.bins.begin(), cfg.bins.end()) != cfg.bins.end())
            throw std::invalid_argument("sim config: bin edges must strictly increase");
    }
    return cfg.mode == SimMode::iid_empirical ? run_iid(scen, cfg, c)
                                              : run_weighted(scen, cfg, c);
}

} // namespace

SimResult run_conditional_sim(const Scenario& scen, const SimConfig& cfg, double c) {
    return run_engine(scen, cfg, c).res;
}

SingularDiagnostic singular_diagnostic(const Scenario& scen, const SimConfig& cfg,
                                       double c) {
    EngineOut eo = run_engine(scen, cfg, c);

    SingularDiagnostic diag;
    diag.topk_ratio_mean = eo.topk_over_n;
    diag.topk_ratio_stderr = eo.topk_stderr;
    diag.bulk_mean = eo.res.bulk_mean;
    diag.bulk_mean_stderr = eo.res.bulk_mean_stderr;

    diag.smallest_adequate_k = -1;
    if (is_finite(eo.x_star)) {
        for (int k = 1; k <= kMaxExcision && k < cfg.n; ++k) {
            if (std::abs(eo.bulk_mean_by_k[k - 1] - eo.x_star) <= cfg.delta) {
                diag.smallest_adequate_k = k;
                break;
            }
        }
    }
    diag.k_over_n = diag.smallest_adequate_k > 0
                        ? static_cast<double>(diag.smallest_adequate_k) / cfg.n
                        : 0.0;
    return diag;
}

std::vector<RateRung> rate_estimate(const Scenario& scen, const SimConfig& cfg,
                                    double c, const std::vector<int>& ns) {
    std::vector<RateRung> ladder;
    bool any = false;
    for (int n : ns) {
        SimConfig rc = cfg;
        rc.n = n;
        RateRung rung;
        rung.n = n;
        try {
            SimResult res = run_conditional_sim(scen, rc, c);
            rung.rate = res.rate_estimate;
            rung.stderr_est = res.rate_stderr;
            rung.accepted = res.accepted;
            rung.ok = true;
            any = true;
        } catch (const NoAcceptedTrials&) {
            rung.ok = false;
        }
        ladder.push_back(rung);
    }
    if (!any) throw NoAcceptedTrials("every ladder rung came back empty");
    return ladder;
}

} // namespace entroproj
