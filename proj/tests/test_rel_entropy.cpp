#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entroproj/rel_entropy.hpp"
#include "entroproj/quadrature.hpp"

#include <cmath>
#include <vector>

using namespace entroproj;

// frozen reference constants for the polynomial-tail law e^{-z}/(1+z^3)
namespace {
constexpr double kA0 = 0.62825543897962112;      // kernel mass
constexpr double kA1 = 1.2091995761561452;       // mass of the y=1 tilt
constexpr double kMeanPoly = 0.49624613049936618;
constexpr double kXiPoly1 = 0.345232921346087;   // log(a1/a0) at x = 1
} // namespace

TEST_CASE("log laplace of the exponential law") {
    Scenario s = exponential_scenario();
    for (double y : {-2.0, -0.5, 0.0, 0.3, 0.9}) {
        CHECK(log_laplace(s.R, s.th, y) ==
              doctest::Approx(-std::log1p(-y)).epsilon(1e-8).scale(1.0));
        CHECK(log_laplace_prime(s.R, s.th, y) ==
              doctest::Approx(1.0 / (1.0 - y)).epsilon(1e-7));
    }
    CHECK(log_laplace(s.R, s.th, 1.5) == kInf);

    // normalization of the tilted law: int e^{y z - Lambda} dR = 1
    for (double y : {-1.0, 0.4, 0.8}) {
        double lam = log_laplace(s.R, s.th, y);
        double mass = s.R.integrate_weighted([](double) { return 1.0; },
                                             [&](double z) { return y * z - lam; });
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("legendre transform of the exponential law") {
    Scenario s = exponential_scenario();
    for (double x : {0.3, 0.7, 1.0, 1.8, 3.0}) {
        CHECK(cramer_transform(s.R, s.th, x) ==
              doctest::Approx(x - 1.0 - std::log(x)).epsilon(1e-7).scale(1.0));
    }
    CHECK(std::abs(cramer_transform(s.R, s.th, s.mean)) < 1e-8);
    CHECK(cramer_transform(s.R, s.th, -0.5) == kInf); // left of the support

    // midpoint convexity along a grid
    std::vector<double> xs;
    for (double x = 0.2; x <= 4.0; x += 0.2) xs.push_back(x);
    for (std::size_t i = 0; i + 2 < xs.size(); ++i) {
        double a = cramer_transform(s.R, s.th, xs[i]);
        double b = cramer_transform(s.R, s.th, xs[i + 1]);
        double c = cramer_transform(s.R, s.th, xs[i + 2]);
        CHECK(0.5 * (a + c) - b >= -1e-9);
    }
}

TEST_CASE("steepness probes sort the catalog") {
    Scenario e = exponential_scenario();
    CHECK(e.laplace.steep);
    CHECK(e.laplace.y_max == doctest::Approx(1.0).epsilon(1e-6));

    Scenario p = exp_poly_scenario();
    CHECK_FALSE(p.laplace.steep);
    CHECK(p.laplace.y_max == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(p.laplace.x_star == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(p.laplace.lambda_at_y_max ==
          doctest::Approx(std::log(kA1 / kA0)).epsilon(1e-7));

    Scenario g = gaussian_scenario();
    CHECK(g.laplace.y_max == kInf); // finite everywhere, slope unbounded
    CHECK(g.laplace.steep);

    Scenario u = uniform_scenario();
    CHECK(u.laplace.y_max == kInf);
    CHECK_FALSE(u.laplace.steep);
    CHECK(u.laplace.x_star == doctest::Approx(1.0).epsilon(1e-4)); // saturates at sup support
}

TEST_CASE("polynomial-tail scenario constants") {
    Scenario p = exp_poly_scenario();
    CHECK(p.a0 == doctest::Approx(kA0).epsilon(1e-9));
    CHECK(p.a1 == doctest::Approx(kA1).epsilon(1e-9));
    CHECK(p.mean == doctest::Approx(kMeanPoly).epsilon(1e-8));

    CHECK(cramer_transform(p.R, p.th, 1.0) == doctest::Approx(kXiPoly1).epsilon(1e-7));
    // affine continuation with unit slope past x_star = 1
    double prev = cramer_transform(p.R, p.th, 1.0);
    for (double x = 1.5; x <= 4.0; x += 0.5) {
        double v = cramer_transform(p.R, p.th, x);
        CHECK((v - prev) / 0.5 == doctest::Approx(1.0).epsilon(1e-6));
        prev = v;
    }
}

TEST_CASE("augmented problem reproduces the scalar transform") {
    Scenario p = exp_poly_scenario();
    Scenario e = exponential_scenario();
    for (double x : {0.5, 0.8, 1.5, 2.0, 3.0}) {
        CHECK(augmentation_residual(p.R, p.th, x) < 1e-6);
        CHECK(augmentation_residual(e.R, e.th, x) < 1e-6);
    }
}

TEST_CASE("projection of the exponential law at c = 2") {
    Scenario s = exponential_scenario();
    ScenarioSolve sol = solve_scenario(s, 2.0);
    CHECK(sol.proj.kind == ProjectionKind::projection);
    CHECK(sol.dominating);
    CHECK(sol.proj.y == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(sol.xi_c == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-8));
    CHECK(sol.proj.x_hat == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(sol.proj.x_s == 0.0);

    // the projected law is Exp(1/2): check the density ratio pointwise
    for (double z : {0.0, 1.0, 5.0, 20.0}) {
        double want = 0.5 * std::exp(0.5 * z);
        CHECK(sol.proj.density(z) == doctest::Approx(want).epsilon(1e-8));
        CHECK(sol.proj.log_density(z) ==
              doctest::Approx(std::log(want)).epsilon(1e-8).scale(1.0));
    }

    // entropy value as a divergence: KL(Exp(1/2) || Exp(1)) = 1 - log 2
    double kl = s.R.integrate_weighted(
        [&](double z) { return sol.proj.log_density(z); },
        [&](double z) { return sol.proj.log_density(z); });
    CHECK(kl == doctest::Approx(sol.xi_c).epsilon(1e-7));
}

TEST_CASE("projection below the mean returns the reference") {
    Scenario s = exponential_scenario();
    ScenarioSolve sol = solve_scenario(s, 0.5);
    CHECK(sol.proj.kind == ProjectionKind::reference);
    CHECK(sol.proj.y == 0.0);
    CHECK(sol.xi_c == 0.0);
    CHECK(sol.proj.density(3.0) == 1.0);
}

TEST_CASE("generalized projection past the attainable slope") {
    Scenario p = exp_poly_scenario();
    ScenarioSolve sol = solve_scenario(p, 2.0);
    CHECK(sol.proj.kind == ProjectionKind::generalized);
    CHECK_FALSE(sol.dominating);
    CHECK(sol.proj.y == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sol.proj.x_hat == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(sol.proj.x_s == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(sol.xi_c == doctest::Approx(1.0 + kXiPoly1).epsilon(1e-6));

    // density part is the boundary tilt: dP1/dR = (a0/a1) e^{z}... through the
    // kernels, P1(z) = e^{z} a0/a1 relative to R
    for (double z : {0.0, 2.0, 10.0}) {
        double want = std::exp(z) * kA0 / kA1;
        CHECK(sol.proj.density(z) == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("curves carry the sampled grids") {
    Scenario s = exponential_scenario();
    std::vector<double> ys{-1.0, 0.0, 0.5};
    auto lc = lambda_curve(s.R, s.th, ys);
    REQUIRE(lc.size() == 3);
    CHECK(lc[1].arg == 0.0);
    CHECK(std::abs(lc[1].val) < 1e-10);
    CHECK(lc[2].val == doctest::Approx(std::log(2.0)).epsilon(1e-9));

    std::vector<double> xs{0.5, 1.0, 2.0};
    auto xc = xi_curve(s.R, s.th, xs);
    REQUIRE(xc.size() == 3);
    CHECK(xc[2].val == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-7));
    CHECK(std::abs(xc[1].val) < 1e-7);
}

TEST_CASE("scenario solves match the curve transform everywhere") {
    Scenario p = exp_poly_scenario();
    for (double c : {0.7, 1.2, 2.5}) {
        ScenarioSolve sol = solve_scenario(p, c);
        CHECK(sol.xi_c ==
              doctest::Approx(cramer_transform(p.R, p.th, c)).epsilon(1e-6).scale(1.0));
    }
}
