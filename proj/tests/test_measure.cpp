#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entroproj/measure.hpp"

#include <cmath>
#include <stdexcept>

using namespace entroproj;

TEST_CASE("discrete measure basics") {
    DiscreteMeasure d({0.0, 1.0, 3.0}, {0.5, 0.25, 0.25});
    CHECK(d.size() == 3);
    CHECK(d.mass() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.integrate([](double z) { return z; }) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.support().lo == 0.0);
    CHECK(d.support().hi == 3.0);
    CHECK(d.integrate_testfn(TestFunction::identity()) == doctest::Approx(1.0));

    CHECK_THROWS_AS(DiscreteMeasure({0.0, 1.0}, {0.5, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(DiscreteMeasure({0.0}, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("discrete weighted integration stays in log space") {
    DiscreteMeasure d({0.0, 1000.0}, {1.0, 1.0});
    // e^{1000} alone overflows; paired with logf = -z it must not
    double v = d.integrate_weighted([](double) { return 1.0; },
                                    [](double z) { return z - 1000.0; });
    CHECK(v == doctest::Approx(std::exp(-1000.0) + 1.0).epsilon(1e-14));
    // exp(-inf) contributes zero
    double w = d.integrate_weighted([](double) { return 1.0; },
                                    [](double z) { return z > 0 ? -kInf : 0.0; });
    CHECK(w == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("exponential density") {
    Density1D d = Density1D::exponential(2.0);
    CHECK(d.kernel_mass() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.mass() == 1.0);
    CHECK(d.density(0.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(d.log_density(1.0) == doctest::Approx(std::log(2.0) - 2.0).epsilon(1e-12));
    CHECK(d.log_density(-0.5) == -kInf);
    CHECK(d.integrate([](double z) { return z; }) == doctest::Approx(0.5).epsilon(1e-10));

    Density1D raw = Density1D::exponential(2.0, false);
    CHECK(raw.mass() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(raw.density(0.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("exp_poly density constants") {
    Density1D d = Density1D::exp_poly(1.0, 3.0);
    // int_0^inf e^-z / (1+z^3) dz
    CHECK(d.kernel_mass() == doctest::Approx(0.62825543897962112).epsilon(1e-10));
    CHECK(d.integrate([](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d.integrate([](double z) { return z; }) ==
          doctest::Approx(0.49624613049936618).epsilon(1e-9));
    CHECK(d.density(0.0) == doctest::Approx(1.0 / 0.62825543897962112).epsilon(1e-9));
}

TEST_CASE("gaussian and uniform densities") {
    Density1D g = Density1D::gaussian(1.0, 2.0);
    CHECK(g.integrate([](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g.integrate([](double z) { return z; }) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(g.log_density(1.0) ==
          doctest::Approx(-std::log(2.0 * std::sqrt(2.0 * M_PI))).epsilon(1e-12));

    Density1D u = Density1D::uniform(0.0, 4.0);
    CHECK(u.density(2.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(u.density(5.0) == 0.0);
    CHECK(u.integrate([](double z) { return z; }) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("density weighted integration folds the tilt into the exponent") {
    Density1D d = Density1D::exponential(1.0);
    // int e^{0.5 z} dR = 2 even though e^{0.5 z} alone explodes
    double v = d.integrate_weighted([](double) { return 1.0; },
                                    [](double z) { return 0.5 * z; });
    CHECK(v == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("measure wrapper dispatches both forms") {
    Measure md(DiscreteMeasure({1.0, 2.0}, {1.0, 1.0}));
    Measure mc(Density1D::exponential(1.0));
    CHECK(md.is_discrete());
    CHECK_FALSE(mc.is_discrete());
    CHECK(md.mass() == doctest::Approx(2.0));
    CHECK(mc.mass() == doctest::Approx(1.0));
    CHECK(md.integrate([](double z) { return z; }) == doctest::Approx(3.0));
    CHECK(mc.integrate([](double z) { return z; }) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(mc.support().hi == kInf);
}
