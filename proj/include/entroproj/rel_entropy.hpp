#pragma once

#include "entroproj/problem.hpp"

#include <functional>

namespace entroproj {

// log int exp(y theta) dR; +inf where the integral diverges (not an error).
double log_laplace(const Measure& R, const TestFunction& th, double y);

// d/dy log_laplace, the mean of theta under the exponentially tilted law.
double log_laplace_prime(const Measure& R, const TestFunction& th, double y);

double log_laplace_second(const Measure& R, const TestFunction& th, double y);

/**
 * Legendre transform Xi(x) = sup_y { x y - log_laplace(y) }. Interior points
 * solve log_laplace'(y) = x; beyond the reachable means the transform
 * continues affinely with slope y_max. +inf left of the support.
 */
double cramer_transform(const Measure& R, const TestFunction& th, double x);

// |Gamma*(1, x) - Xi(x)| for the mass-augmented relative-entropy problem;
// the two routes must agree, which pins the augmentation encoding.
double augmentation_residual(const Measure& R, const TestFunction& th, double x);

struct LaplaceReport {
    double y_max = kInf;     // sup of the finiteness interval along +theta
    double lambda_at_y_max = kInf;
    double x_star = kInf;    // lim of log_laplace' at the boundary
    bool steep = false;      // slope blows up at the boundary
};

// direction +1 probes the upper boundary of dom(log_laplace), -1 the lower.
LaplaceReport steepness_probe(const Measure& R, const TestFunction& th,
                              double direction = 1.0);

enum class ProjectionKind {
    reference,   // constraint already satisfied by R, y = 0
    projection,  // tilted density with moment exactly c
    generalized, // boundary tilt plus a mass-escaping remainder c - x_star
};

struct ProjectionReport {
    ProjectionKind kind = ProjectionKind::reference;
    double y = 0.0;       // tilt actually used (y_max for generalized)
    double lambda_y = 0.0;
    double x_hat = 0.0;   // moment carried by the density part
    double x_s = 0.0;     // escaping remainder (generalized only)
    double entropy_value = 0.0; // Xi(c)
    std::function<double(double)> density;     // dP/dR
    std::function<double(double)> log_density;
};

// Minimize relative entropy over { P : int theta dP >= c }.
// Throws std::invalid_argument when Xi is identically +inf on [c, inf).
ProjectionReport entropic_projection(const Measure& R, const TestFunction& th,
                                     double c);

struct CurvePoint {
    double arg;
    double val;
};

std::vector<CurvePoint> lambda_curve(const Measure& R, const TestFunction& th,
                                     const std::vector<double>& ys);
std::vector<CurvePoint> xi_curve(const Measure& R, const TestFunction& th,
                                 const std::vector<double>& xs);

/**
 * Packaged one-dimensional scenarios used across tests, the simulator and
 * the command line: theta(z) = z with an exponential or polynomial-tail
 * reference law. `augmented` builds the two-dimensional problem whose first
 * coordinate pins total mass to one.
 */
struct Scenario {
    explicit Scenario(Measure m) : R(std::move(m)) {}

    Measure R;
    TestFunction th = TestFunction::identity();
    double a0 = 1.0;     // reference normalizer
    double a1 = 1.0;     // normalizer of the boundary-tilted law
    double mean = 0.0;
    LaplaceReport laplace;
    std::string name;
};

Scenario exponential_scenario(double rate = 1.0);
Scenario exp_poly_scenario();
Scenario gaussian_scenario(double mu = 0.0, double sigma = 1.0);
Scenario uniform_scenario();

struct ScenarioSolve {
    Scenario scen;
    double c = 0.0;
    ProjectionReport proj;
    double xi_c = 0.0;
    bool dominating = false; // c is reachable by a density under R
};

ScenarioSolve solve_scenario(const Scenario& scen, double c);

MomentProblem augmented_problem(const Scenario& scen, double c);

} // namespace entroproj
