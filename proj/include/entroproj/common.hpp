#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace entroproj {

// Extended reals: +inf is an explicit sentinel value, never the result of
// overflow. IEEE doubles make comparisons against it total.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_finite(double x) { return x == x && x < kInf && x > -kInf; }

struct Interval {
    double lo = -kInf;
    double hi = kInf;
    bool lo_closed = false;
    bool hi_closed = false;
};

// Evaluation outside the interior of an effective domain where a finite
// value is required (e.g. gamma' at the boundary).
class DomainBoundary : public std::runtime_error {
public:
    explicit DomainBoundary(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive quadrature exhausted its subdivision budget without meeting
// tolerance while all node values stayed finite.
class QuadratureDivergence : public std::runtime_error {
public:
    explicit QuadratureDivergence(const std::string& what) : std::runtime_error(what) {}
};

// The integrand's growth beats the reference measure's decay; the integral
// is infinite.
class NonIntegrable : public std::runtime_error {
public:
    explicit NonIntegrable(const std::string& what) : std::runtime_error(what) {}
};

// Two independent estimators of the same quantity refused to agree.
class EstimateDisagreement : public std::runtime_error {
public:
    EstimateDisagreement(const std::string& what, double first, double second)
        : std::runtime_error(what), estimate_a(first), estimate_b(second) {}
    double estimate_a;
    double estimate_b;
};

// A conditional simulation accepted no trials at all.
class NoAcceptedTrials : public std::runtime_error {
public:
    explicit NoAcceptedTrials(const std::string& what) : std::runtime_error(what) {}
};

} // namespace entroproj
