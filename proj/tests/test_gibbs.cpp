#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entroproj/gibbs.hpp"

#include <cmath>
#include <numeric>
#include <vector>

using namespace entroproj;

namespace {

double hist_sum(const std::vector<double>& h) {
    return std::accumulate(h.begin(), h.end(), 0.0);
}

} // namespace

TEST_CASE("runs are deterministic in the seed") {
    Scenario s = exponential_scenario();
    SimConfig cfg;
    cfg.n = 40;
    cfg.trials = 200;
    cfg.seed = 7;
    cfg.proposal = ProposalKind::exponential_tilt;
    cfg.tilt_y = 0.5;
    SimResult a = run_conditional_sim(s, cfg, 2.0);
    SimResult b = run_conditional_sim(s, cfg, 2.0);
    CHECK(a.accepted == b.accepted);
    CHECK(a.p_hat == b.p_hat); // bitwise
    CHECK(a.conditioned_hist == b.conditioned_hist);
    cfg.seed = 8;
    SimResult c = run_conditional_sim(s, cfg, 2.0);
    CHECK(a.p_hat != c.p_hat);
}

TEST_CASE("slack constraint accepts everything and reproduces the reference") {
    Scenario s = exponential_scenario();
    SimConfig cfg;
    cfg.n = 200;
    cfg.trials = 300;
    cfg.seed = 3;
    SimResult r = run_conditional_sim(s, cfg, 0.0); // mean 1 >= 0 always
    CHECK(r.accepted == r.trials);
    CHECK(r.acceptance_rate == 1.0);
    // conditioning is vacuous: the empirical law is R itself
    CHECK(r.distance_to_target < 0.05);
    CHECK(r.rate_estimate == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("histogram rows are laid out with a trailing overflow bin") {
    Scenario s = exponential_scenario();
    SimConfig cfg;
    cfg.n = 30;
    cfg.trials = 100;
    cfg.seed = 11;
    cfg.bins = {0.0, 1.0, 2.0, 4.0};
    SimResult r = run_conditional_sim(s, cfg, 0.5);
    REQUIRE(r.bin_lo.size() == 4); // 3 bins + overflow
    CHECK(r.bin_hi[2] == 4.0);
    CHECK(r.bin_lo[3] == 4.0);
    CHECK(r.bin_hi[3] == kInf);
    // per-trial self-normalization: conditioned mass is exactly one
    CHECK(hist_sum(r.conditioned_hist) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hist_sum(r.target_hist) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("tilted proposals are unbiased for the event probability") {
    // Theta(1) event so plain rejection still sees it: compare estimators
    Scenario s = exponential_scenario();
    SimConfig plain;
    plain.n = 50;
    plain.trials = 60000;
    plain.seed = 12;
    SimResult rp = run_conditional_sim(s, plain, 1.2);

    SimConfig tilt = plain;
    tilt.trials = 20000;
    tilt.proposal = ProposalKind::exponential_tilt;
    tilt.tilt_y = 0.3;
    SimResult rt = run_conditional_sim(s, tilt, 1.2);

    double sigma = std::hypot(rp.p_stderr, rt.p_stderr);
    CHECK(std::abs(rp.p_hat - rt.p_hat) < 3.0 * sigma);
    CHECK(rt.ess > 500.0);
}

TEST_CASE("conditioned law concentrates on the tilted target") {
    // exchange the constraint for the tilt: conditioned on mean >= 2 the
    // particles should look like Exp(1/2)
    Scenario s = exponential_scenario();
    SimConfig cfg;
    cfg.n = 2000;
    cfg.delta = 0.05;
    cfg.trials = 400;
    cfg.seed = 42;
    cfg.proposal = ProposalKind::exponential_tilt;
    cfg.tilt_y = 0.5;
    SimResult r = run_conditional_sim(s, cfg, 2.0);
    CHECK(r.accepted > 100);
    CHECK(r.distance_to_target < 0.1);
    // rate approaches Xi(2) = 1 - log 2 from above at finite n
    CHECK(r.rate_estimate == doctest::Approx(1.0 - std::log(2.0)).epsilon(0.15));
}

TEST_CASE("weighted mode matches its analytic target") {
    Scenario s = exponential_scenario(); // reference shape for the grid law
    SimConfig cfg;
    cfg.mode = SimMode::weighted_empirical;
    cfg.weight_law = WeightLaw::poisson1;
    cfg.proposal = ProposalKind::exponential_tilt; // draw weights under the solved tilt
    cfg.n = 2000;
    cfg.delta = 0.05;
    cfg.trials = 200;
    cfg.seed = 5;
    SimResult r = run_conditional_sim(s, cfg, 1.0);
    CHECK(r.accepted > 0);
    CHECK(hist_sum(r.conditioned_hist) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.distance_to_target <= 0.15);
}

TEST_CASE("impossible events throw typed errors") {
    Scenario s = exponential_scenario();
    SimConfig cfg;
    cfg.n = 400;
    cfg.trials = 50;
    cfg.seed = 2;
    // mean >= 30 under plain rejection: never accepted at this budget
    CHECK_THROWS_AS(run_conditional_sim(s, cfg, 30.0), NoAcceptedTrials);
}

TEST_CASE("rate ladder marks empty rungs instead of failing") {
    Scenario s = exponential_scenario();
    SimConfig cfg;
    cfg.trials = 4000;
    cfg.seed = 17;
    std::vector<RateRung> rungs = rate_estimate(s, cfg, 2.0, {5, 10, 400});
    REQUIRE(rungs.size() == 3);
    CHECK(rungs[0].ok);
    CHECK(rungs[0].n == 5);
    CHECK_FALSE(rungs[2].ok); // plain rejection cannot reach n = 400
    CHECK(rungs[0].rate > 0.0);
}

TEST_CASE("singular diagnostic flags the escaping particle") {
    Scenario p = exp_poly_scenario();
    SimConfig cfg;
    cfg.n = 200;
    cfg.delta = 0.05;
    cfg.trials = 3000;
    cfg.seed = 23;
    cfg.proposal = ProposalKind::boundary_mixture;
    SingularDiagnostic d = singular_diagnostic(p, cfg, 2.0);
    // one giant particle carries the excess n(c - x_star) ~ n
    CHECK(d.topk_ratio_mean > 0.7);
    CHECK(d.topk_ratio_mean < 1.3);
    CHECK(d.bulk_mean > 0.85);
    CHECK(d.bulk_mean < 1.15);
    CHECK(d.smallest_adequate_k >= 1);
    CHECK(d.k_over_n <= 0.05);
}

TEST_CASE("no excess means no singular part") {
    Scenario s = exponential_scenario();
    SimConfig cfg;
    cfg.n = 150;
    cfg.trials = 400;
    cfg.seed = 29;
    SingularDiagnostic d = singular_diagnostic(s, cfg, 0.5); // slack
    CHECK(d.topk_ratio_mean < 0.1); // top particle is O(log n / n)
    CHECK(d.bulk_mean == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("mixture proposal guards its preconditions") {
    Scenario e = exponential_scenario();
    SimConfig cfg;
    cfg.proposal = ProposalKind::boundary_mixture;
    cfg.n = 50;
    cfg.trials = 10;
    // the jump correction needs the polynomial-tail reference
    CHECK_THROWS_AS(run_conditional_sim(e, cfg, 2.0), std::invalid_argument);
}

TEST_CASE("config validation") {
    Scenario s = exponential_scenario();
    SimConfig cfg;
    cfg.n = 0;
    CHECK_THROWS_AS(run_conditional_sim(s, cfg, 1.0), std::invalid_argument);
    cfg.n = 10;
    cfg.delta = 0.0;
    CHECK_THROWS_AS(run_conditional_sim(s, cfg, 1.0), std::invalid_argument);
    cfg.delta = 0.1;
    cfg.bins = {1.0, 1.0};
    CHECK_THROWS_AS(run_conditional_sim(s, cfg, 1.0), std::invalid_argument);
}
