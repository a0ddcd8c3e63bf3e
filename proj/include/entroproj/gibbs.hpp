#pragma once

#include "entroproj/rel_entropy.hpp"
#include "entroproj/rng.hpp"

namespace entroproj {

enum class SimMode { iid_empirical, weighted_empirical };

enum class ProposalKind {
    plain_rejection,  // particles straight from R
    exponential_tilt, // e^{y theta - Lambda(y)} dR with exact trial weights
    // bulk from the boundary-tilted law, plus (probability beta) one particle
    // jumping by the trial's own deficit; exact mixture weights
    boundary_mixture,
};

enum class WeightLaw { poisson1, exponential1, two_point, normal01 };

struct SimConfig {
    SimMode mode = SimMode::iid_empirical;
    int n = 100;
    double delta = 0.05;
    int trials = 100;
    std::uint64_t seed = 1;
    ProposalKind proposal = ProposalKind::plain_rejection;
    double tilt_y = 0.0;   // exponential_tilt; weighted mode: 0 = solve for it
    WeightLaw weight_law = WeightLaw::poisson1;
    std::vector<double> bins; // edges, strictly increasing; empty = auto
    int top_k = 1;
    bool band = false; // event [c, c+delta] instead of [c-delta, inf)
    double mixture_beta = 0.5;
};

/**
 * One batch of conditioned trials. Histogram vectors carry one entry per bin
 * plus a final overflow entry; conditioned/bulk rows are self-normalized per
 * trial (mass exactly one) before the importance-weighted average.
 */
struct SimResult {
    int accepted = 0;
    int trials = 0;
    double acceptance_rate = 0.0;
    std::vector<double> bin_lo, bin_hi; // overflow row has hi = +inf
    std::vector<double> conditioned_hist, bulk_hist, target_hist;
    double distance_to_target = 0.0;      // binned TV, conditioned vs target
    double bulk_distance_to_target = 0.0; // binned TV, bulk vs target
    double top_particle_over_n = 0.0;
    double top_particle_stderr = 0.0;
    double bulk_mean = 0.0;
    double bulk_mean_stderr = 0.0;
    double p_hat = 0.0; // unnormalized importance estimate of the event
    double p_stderr = 0.0;
    double rate_estimate = 0.0; // -(1/n) log p_hat
    double rate_stderr = 0.0;
    double ess = 0.0; // effective trial count under the importance weights
};

// Conditioned empirical measure of n particles given the moment event.
// The comparison target is the analytic projection for the requested level
// (the boundary law when the projection is generalized, R itself when the
// constraint is slack). Throws NoAcceptedTrials when nothing passes.
SimResult run_conditional_sim(const Scenario& scen, const SimConfig& cfg, double c);

struct SingularDiagnostic {
    double topk_ratio_mean = 0.0; // (sum of top k particles)/n
    double topk_ratio_stderr = 0.0;
    double bulk_mean = 0.0; // mean of the remaining particles
    double bulk_mean_stderr = 0.0;
    int smallest_adequate_k = -1; // excision bringing bulk mean near x_star
    double k_over_n = 0.0;
};

// How much of the constraint excess is carried by the top order statistics.
SingularDiagnostic singular_diagnostic(const Scenario& scen, const SimConfig& cfg,
                                       double c);

struct RateRung {
    int n = 0;
    double rate = 0.0;
    double stderr_est = 0.0;
    int accepted = 0;
    bool ok = false; // false: rung omitted (no accepted trials)
};

// -(1/n) log p_hat_n along a ladder of particle counts. Throws
// NoAcceptedTrials only if every rung comes back empty.
std::vector<RateRung> rate_estimate(const Scenario& scen, const SimConfig& cfg,
                                    double c, const std::vector<int>& ns);

} // namespace entroproj
