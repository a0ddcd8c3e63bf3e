#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entroproj/projection.hpp"

#include <cmath>
#include <vector>

using namespace entroproj;

namespace {

MomentProblem exp_problem(ConstraintSet c) {
    return MomentProblem(Measure(Density1D::exponential(1.0)), Entropy::relative(),
                         {TestFunction::identity()}, std::move(c));
}

MomentProblem poly_problem(ConstraintSet c) {
    return MomentProblem(Measure(Density1D::exp_poly(1.0, 3.0)), Entropy::relative(),
                         {TestFunction::identity()}, std::move(c));
}

// mass-and-mean version: the constant coordinate pins total mass at one, so
// values land on the normalized (probability) scale
MomentProblem augmented(Density1D ref, ConstraintSet c) {
    return MomentProblem(Measure(std::move(ref)), Entropy::relative(),
                         {TestFunction::constant(1.0), TestFunction::identity()},
                         std::move(c));
}

// normalized transform of the heavy-tailed reference at its attainable edge
constexpr double kXiPoly1 = 0.345232921346087;

} // namespace

TEST_CASE("transform of the moment map at representable points") {
    // Exp(1), bare mean constraint: value (sqrt(x)-1)^2, maximizer 1 - 1/sqrt(x)
    MomentProblem prob = exp_problem(ConstraintSet::equality({2.0}));
    for (double x : {0.4, 1.0, 2.0, 3.5}) {
        GammaStarReport rep = gamma_star_of_x(prob, {x});
        double root = std::sqrt(x);
        CHECK(rep.value ==
              doctest::Approx((root - 1.0) * (root - 1.0)).epsilon(1e-8).scale(1.0));
        CHECK(rep.maximizer.y[0] ==
              doctest::Approx(1.0 - 1.0 / root).epsilon(1e-6).scale(1.0));
    }

    // pinning the mass alongside the mean moves values to the normalized scale
    for (double x : {0.5, 2.0}) {
        MomentProblem aug = augmented(Density1D::exponential(1.0),
                                      ConstraintSet::equality({1.0, x}));
        GammaStarReport rep = gamma_star_of_x(aug, {1.0, x});
        CHECK(rep.value ==
              doctest::Approx(x - 1.0 - std::log(x)).epsilon(1e-7).scale(1.0));
    }

    // atoms, checked against the independent primal oracle
    MomentProblem d(Measure(DiscreteMeasure({0.0, 1.0, 2.0}, {0.3, 0.4, 0.3})),
                    Entropy::lp_norm(2.0), {TestFunction::identity()},
                    ConstraintSet::equality({0.9}));
    GammaStarReport rep = gamma_star_of_x(d, {0.9});
    BruteForceResult bf = brute_force_primal(d, 5);
    REQUIRE(bf.feasible);
    CHECK(rep.value == doctest::Approx(bf.value).epsilon(1e-6).scale(1.0));
}

TEST_CASE("recession function on atoms with a one-sided integrand") {
    // reverse relative: the transform is finite only while every tilted atom
    // stays below the pole, so on atoms {1,2} the slope cap is y < 1/2 and
    // sigma(+1) = 1/2; mass cannot recede downward, sigma(-1) = +inf
    MomentProblem prob(Measure(DiscreteMeasure({1.0, 2.0}, {1.0, 1.0})),
                       Entropy::reverse_relative(), {TestFunction::identity()},
                       ConstraintSet::equality({3.0}));
    RecessionEstimates up = recession_function(prob, {1.0});
    CHECK(up.value == doctest::Approx(0.5).epsilon(1e-3));
    RecessionEstimates down = recession_function(prob, {-1.0});
    CHECK(down.value == kInf);

    // relative entropy is superlinear: both directions recede at +inf
    MomentProblem rel(Measure(DiscreteMeasure({1.0, 2.0}, {1.0, 1.0})),
                      Entropy::relative(), {TestFunction::identity()},
                      ConstraintSet::equality({3.0}));
    CHECK(recession_function(rel, {1.0}).value == kInf);
    CHECK(recession_function(rel, {-1.0}).value == kInf);
}

TEST_CASE("recession function along the non-steep tail") {
    // heavy-tailed reference: the tilt caps at 1, so sigma(+1) = 1
    MomentProblem prob = poly_problem(ConstraintSet::equality({2.0}));
    RecessionEstimates up = recession_function(prob, {1.0});
    CHECK(up.value == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(std::abs(up.quotient - up.support) < 1e-3 * (1.0 + std::abs(up.quotient)));
}

TEST_CASE("decomposition splits representable and recessive parts") {
    // steep reference: everything is representable
    MomentProblem e = augmented(Density1D::exponential(1.0),
                                ConstraintSet::equality({1.0, 2.0}));
    Decomposition de = decompose(e, {1.0, 2.0});
    CHECK(de.x_a[1] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(std::abs(de.x_s[0]) < 1e-6);
    CHECK(std::abs(de.x_s[1]) < 1e-6);
    CHECK(de.is_dominating);
    CHECK(de.gamma_star_x == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-7));

    // mean demand beyond the attainable slope leaks into the recessive part
    MomentProblem p = augmented(Density1D::exp_poly(1.0, 3.0),
                                ConstraintSet::equality({1.0, 2.0}));
    Decomposition dp = decompose(p, {1.0, 2.0});
    CHECK(dp.x_a[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(dp.x_a[1] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(std::abs(dp.x_s[0]) < 1e-4);
    CHECK(dp.x_s[1] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK_FALSE(dp.is_dominating);
    // value splits additively: Gamma*(x) = Gamma*(x_a) + recession(x_s)
    CHECK(dp.gamma_star_x ==
          doctest::Approx(dp.gamma_star_xa + dp.recession_xs).epsilon(1e-4).scale(1.0));
    CHECK(dp.gamma_star_x == doctest::Approx(1.0 + kXiPoly1).epsilon(1e-6));
    CHECK(dp.gamma_star_xa == doctest::Approx(kXiPoly1).epsilon(1e-6));
    CHECK(dp.recession_xs == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("dominating point certificates") {
    MomentProblem e = augmented(Density1D::exponential(1.0),
                                ConstraintSet::box({1.0, 2.0}, {1.0, kInf}));
    auto [dom_e, cert_e] = is_dominating_point(e, {1.0, 2.0});
    CHECK(dom_e);
    CHECK(cert_e.feasible);
    CHECK(cert_e.support_gap >= -1e-8);
    CHECK(cert_e.representation_residual < 1e-6);

    for (double x : {1.5, 2.0, 3.0}) {
        MomentProblem p = augmented(Density1D::exp_poly(1.0, 3.0),
                                    ConstraintSet::box({1.0, x}, {1.0, kInf}));
        auto [dom, cert] = is_dominating_point(p, {1.0, x});
        CHECK_FALSE(dom); // beyond the attainable slope: no representing density
        (void)cert;
    }
    for (double x : {0.5, 0.9}) {
        MomentProblem p = augmented(Density1D::exp_poly(1.0, 3.0),
                                    ConstraintSet::box({1.0, x}, {1.0, kInf}));
        auto [dom, cert] = is_dominating_point(p, {1.0, x});
        CHECK(dom);
        CHECK(cert.representation_residual < 1e-6);
    }
}

TEST_CASE("singular entropy matches the recession value") {
    MomentProblem p = poly_problem(ConstraintSet::equality({2.0}));
    CHECK(singular_entropy_value(p, {1.0}) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(singular_entropy_value(p, {0.0}) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}
