#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entroproj/entropy.hpp"

#include <cmath>
#include <vector>

using namespace entroproj;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    v.reserve(n);
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

} // namespace

TEST_CASE("relative entropy closed forms") {
    Entropy e = Entropy::relative();
    CHECK(e.m() == 1.0);
    CHECK(e.superlinear());
    CHECK_FALSE(e.delta2());

    CHECK(e.star(1.0) == 0.0);
    CHECK(e.star(0.0) == 1.0); // t log t -> 0
    CHECK(e.star(2.0) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-15));
    CHECK(e.star(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(e.star(-0.1) == kInf);
    CHECK_FALSE(e.star_finite(-1e-12));

    CHECK(e.dual(0.0) == 0.0);
    CHECK(e.dual(1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
    CHECK(e.dual(-50.0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(e.dual_prime(1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(e.star_prime(2.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(e.star_prime(0.0), DomainBoundary);

    // lambda(s) = e^s - 1 - s
    CHECK(e.young(0.0) == 0.0);
    CHECK(e.young(1.0) == doctest::Approx(std::exp(1.0) - 2.0).epsilon(1e-15));
    CHECK(e.young(-1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(e.young_diamond(1.0) == doctest::Approx(std::exp(1.0) - 2.0).epsilon(1e-15));
    CHECK(e.young_diamond(-1.0) == e.young_diamond(1.0));
}

TEST_CASE("reverse relative entropy closed forms") {
    Entropy e = Entropy::reverse_relative();
    CHECK(e.m() == 1.0);
    CHECK_FALSE(e.superlinear());

    CHECK(e.star(1.0) == 0.0);
    CHECK(e.star(2.0) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-15));
    CHECK(e.star(0.5) == doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-15));
    CHECK(e.star(0.0) == kInf); // open at the origin
    CHECK(e.star(-1.0) == kInf);

    CHECK(e.dual(0.0) == 0.0);
    CHECK(e.dual(0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(e.dual(1.0) == kInf);
    CHECK(e.dual(2.0) == kInf);
    CHECK_FALSE(e.dual_finite(1.0));
    CHECK(e.dual_prime(0.5) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(e.dual_prime(1.0), DomainBoundary);
    CHECK(e.star_prime(2.0) == doctest::Approx(0.5).epsilon(1e-15));

    CHECK(e.young(0.5) == doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-15));
}

TEST_CASE("fermi_dirac closed forms") {
    Entropy e = Entropy::fermi_dirac();
    CHECK(e.m() == 0.0);
    CHECK(e.delta2());

    CHECK(e.star(0.0) == 0.0);
    CHECK(e.star(1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(e.star(-1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(e.star(1.0 + 1e-12) == kInf);
    // ((1.5)log(1.5) + (0.5)log(0.5)) / 2
    CHECK(e.star(0.5) == doctest::Approx(0.130812035941137).epsilon(1e-14));
    CHECK(e.star(0.5) == e.star(-0.5));

    CHECK(e.dual(1.0) == doctest::Approx(std::log(std::cosh(1.0))).epsilon(1e-14));
    CHECK(e.dual(-1.0) == e.dual(1.0));
    // log cosh stays stable far out: log cosh s = |s| - log 2 + o(1)
    CHECK(e.dual(800.0) == doctest::Approx(800.0 - std::log(2.0)).epsilon(1e-14));
    CHECK(e.dual_prime(1.0) == doctest::Approx(std::tanh(1.0)).epsilon(1e-15));
    CHECK(e.star_prime(0.5) == doctest::Approx(std::atanh(0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(e.star_prime(1.0), DomainBoundary);

    CHECK(e.young(2.0) == e.dual(2.0)); // m = 0
}

TEST_CASE("lp entries and conjugate exponents") {
    CHECK_THROWS_AS(Entropy::lp_norm(1.0), std::invalid_argument);
    CHECK_THROWS_AS(Entropy::lp_entropy(0.5), std::invalid_argument);

    Entropy n2 = Entropy::lp_norm(2.0);
    CHECK(n2.q() == 2.0);
    CHECK(n2.star(-3.0) == doctest::Approx(4.5).epsilon(1e-15));
    CHECK(n2.dual(-3.0) == doctest::Approx(4.5).epsilon(1e-15));
    CHECK(n2.dual_second(0.0) == 1.0);

    Entropy n3 = Entropy::lp_norm(3.0);
    CHECK(n3.q() == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(n3.star(2.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
    CHECK(n3.star_prime(-2.0) == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK(n3.dual(4.0) == doctest::Approx(8.0 / 1.5).epsilon(1e-15));
    CHECK(n3.dual_prime(4.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(n3.dual_second(0.0) == kInf); // q < 2 kink at the origin

    // one-sided power: flat for s <= 0
    Entropy h2 = Entropy::lp_entropy(2.0);
    CHECK(h2.star(-1e-9) == kInf);
    CHECK(h2.dual(-3.0) == 0.0);
    CHECK(h2.dual(2.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(h2.dual_prime(-3.0) == 0.0);
    CHECK(h2.dual_prime(2.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("conjugacy against the brute-force inner maximum") {
    // sup_t { s t - gamma*(t) } on a fine t grid must reproduce the closed
    // form of gamma within discretization error
    auto t_pos = linspace(1e-9, 12.0, 6001);
    auto t_sym = linspace(-12.0, 12.0, 6001);
    auto t_fd = linspace(-1.0, 1.0, 6001);

    CHECK(verify_conjugacy(Entropy::relative(), linspace(-2.0, 2.0, 41), t_pos) < 1e-4);
    CHECK(verify_conjugacy(Entropy::reverse_relative(), linspace(-3.0, 0.9, 40), t_pos) < 1e-4);
    CHECK(verify_conjugacy(Entropy::fermi_dirac(), linspace(-4.0, 4.0, 41), t_fd) < 1e-4);
    CHECK(verify_conjugacy(Entropy::lp_norm(2.0), linspace(-5.0, 5.0, 41), t_sym) < 1e-4);
    CHECK(verify_conjugacy(Entropy::lp_norm(1.5), linspace(-3.0, 3.0, 41), t_sym) < 1e-4);
    CHECK(verify_conjugacy(Entropy::lp_entropy(3.0), linspace(-2.0, 3.0, 41), t_pos) < 1e-4);
}

TEST_CASE("young equality along the optimality map") {
    // gamma*(gamma'(s)) = s gamma'(s) - gamma(s) at every interior s
    std::vector<Entropy> cat = {
        Entropy::relative(),  Entropy::reverse_relative(), Entropy::fermi_dirac(),
        Entropy::lp_norm(2.0), Entropy::lp_norm(3.0),      Entropy::lp_entropy(2.0),
    };
    for (const Entropy& e : cat) {
        for (double s : linspace(-2.0, 0.9, 30)) {
            if (!e.dual_finite(s)) continue;
            double t = e.dual_prime(s);
            double lhs = e.star(t);
            double rhs = s * t - e.dual(s);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("derivatives match difference quotients") {
    std::vector<Entropy> cat = {
        Entropy::relative(),  Entropy::reverse_relative(), Entropy::fermi_dirac(),
        Entropy::lp_norm(2.0), Entropy::lp_norm(3.0),      Entropy::lp_entropy(3.0),
    };
    const double h = 1e-6;
    for (const Entropy& e : cat) {
        for (double s : {-1.5, -0.3, 0.4, 0.85}) {
            if (!e.dual_finite(s + h) || !e.dual_finite(s - h)) continue;
            double fd = (e.dual(s + h) - e.dual(s - h)) / (2.0 * h);
            CHECK(e.dual_prime(s) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
            double fd2 = (e.dual_prime(s + h) - e.dual_prime(s - h)) / (2.0 * h);
            CHECK(e.dual_second(s) == doctest::Approx(fd2).epsilon(1e-5).scale(1.0));
        }
        for (double t : {0.35, 0.8, 2.5}) {
            if (!e.star_finite(t + h) || t - h <= e.dom_gamma_star().lo) continue;
            if (t + h >= e.dom_gamma_star().hi) continue;
            double fd = (e.star(t + h) - e.star(t - h)) / (2.0 * h);
            CHECK(e.star_prime(t) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
        }
    }
}
