#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entroproj/orlicz.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace entroproj;

TEST_CASE("luxemburg norm has a closed form on atoms") {
    // int rho_p(u/beta) dR = 1 solves to beta = (sum r |u|^p / p)^{1/p}
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> uz(-3.0, 3.0);
    std::uniform_real_distribution<double> uw(0.1, 2.0);
    for (double p : {1.5, 2.0, 3.0}) {
        auto rho = young_power(p);
        for (int rep = 0; rep < 5; ++rep) {
            std::vector<double> z, r, vals;
            for (int j = 0; j < 10; ++j) {
                z.push_back(j); // atom positions are irrelevant, values carry u
                r.push_back(uw(rng));
                vals.push_back(uz(rng));
            }
            Measure R((DiscreteMeasure(z, r)));
            double want = 0.0;
            for (int j = 0; j < 10; ++j)
                want += r[j] * std::pow(std::abs(vals[j]), p) / p;
            want = std::pow(want, 1.0 / p);
            double got = luxemburg_norm(TestFunction::grid_values(vals), rho, R);
            CHECK(got == doctest::Approx(want).epsilon(1e-10));
        }
    }
}

TEST_CASE("luxemburg norm handles edge inputs") {
    Measure R((DiscreteMeasure({0.0, 1.0}, {0.5, 0.5})));
    CHECK(luxemburg_norm(TestFunction::grid_values({0.0, 0.0}), young_power(2.0), R) == 0.0);
    // constant c under a probability measure: beta = c / sqrt(2) for rho_2
    Measure P((DiscreteMeasure({0.0, 1.0}, {0.5, 0.5})));
    double b = luxemburg_norm(TestFunction::constant(3.0), young_power(2.0), P);
    CHECK(b == doctest::Approx(3.0 / std::sqrt(2.0)).epsilon(1e-10));
    // density reference: identity under Exp(1), rho_1.5, solved numerically
    Measure E((Density1D::exponential(1.0)));
    double be = luxemburg_norm(TestFunction::identity(), young_power(1.5), E);
    // int (z/beta)^1.5 / 1.5 e^-z dz = Gamma(2.5) / (1.5 beta^1.5) = 1
    double want = std::pow(std::tgamma(2.5) / 1.5, 1.0 / 1.5);
    CHECK(be == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("numeric conjugate recovers the dual power") {
    auto conj = numeric_conjugate(young_power(1.5));
    for (double t : {0.3, 1.0, 2.7}) {
        double want = std::pow(t, 3.0) / 3.0;
        CHECK(conj(t) == doctest::Approx(want).epsilon(1e-6).scale(1.0));
        CHECK(conj(-t) == doctest::Approx(want).epsilon(1e-6).scale(1.0));
    }
    auto self = numeric_conjugate(young_power(2.0));
    CHECK(self(1.7) == doctest::Approx(1.7 * 1.7 / 2.0).epsilon(1e-6));
}

TEST_CASE("holder residual is nonnegative") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> uz(-2.0, 2.0);
    std::uniform_real_distribution<double> uw(0.1, 1.0);
    const double ps[3] = {1.5, 2.0, 3.0};
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> z, r, uvals, vvals;
        for (int j = 0; j < 6; ++j) {
            z.push_back(j);
            r.push_back(uw(rng));
            uvals.push_back(uz(rng));
            vvals.push_back(uz(rng));
        }
        Measure R((DiscreteMeasure(z, r)));
        double res = holder_residual(TestFunction::grid_values(uvals),
                                     TestFunction::grid_values(vvals),
                                     young_power(ps[rep % 3]), R);
        CHECK(res >= -1e-10);
    }
}

TEST_CASE("integrability ladder sorts the standard directions") {
    Entropy rel = Entropy::relative();

    // identity under Exp(1): e^{alpha z} integrable only below alpha = 1
    Measure E((Density1D::exponential(1.0)));
    CHECK(integrability_class(TestFunction::identity(), rel, E) ==
          IntegrabilityClass::orlicz_only);

    // bounded support keeps every multiple finite
    Measure U((Density1D::uniform(0.0, 1.0)));
    CHECK(integrability_class(TestFunction::identity(), rel, U) ==
          IntegrabilityClass::small_orlicz);

    // z^2 against a bare exponential tail diverges at every ladder rung
    Measure P((Density1D::exp_poly(1.0, 3.0)));
    CHECK(integrability_class(TestFunction::power(2), rel, P) ==
          IntegrabilityClass::outside);
    CHECK(integrability_class(TestFunction::identity(), rel, P) ==
          IntegrabilityClass::orlicz_only);

    // quadratic young function against a gaussian: all rungs finite
    Measure G((Density1D::gaussian(0.0, 1.0)));
    CHECK(integrability_class(TestFunction::identity(), Entropy::lp_norm(2.0), G) ==
          IntegrabilityClass::small_orlicz);

    // atoms are always small by definition
    Measure D((DiscreteMeasure({0.0, 5.0}, {0.5, 0.5})));
    CHECK(integrability_class(TestFunction::identity(), rel, D) ==
          IntegrabilityClass::small_orlicz);

    CHECK(std::string(to_string(IntegrabilityClass::orlicz_only)) == "orlicz_only");
}
