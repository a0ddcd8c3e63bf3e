#pragma once

#include <functional>
#include <vector>

#include "entroproj/common.hpp"

namespace entroproj {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;
    // Where the inverted-tail change of variables takes over on an infinite
    // end. The finite part is integrated directly; beyond it z = anchor/u
    // folds the tail into (0, 1], pre-split geometrically so growth at any
    // scale up to ~1e17 lands on a node.
    double truncation = 100.0;
    // Extra initial breakpoints (peaks the caller knows about). Points
    // outside the integration range are ignored.
    std::vector<double> breakpoints;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

/**
 * Adaptive Gauss-Kronrod (15-point) integration of f over [a, b]; either end
 * may be infinite. Worst-panel-first subdivision until the summed error
 * estimate meets max(abs_tol, rel_tol * |value|).
 *
 * Throws NonIntegrable when any node evaluates to a non-finite value (the
 * folded tails place nodes out to ~1e17 * truncation, so exponential blow-up
 * at any relevant scale is caught), QuadratureDivergence when the
 * subdivision budget runs out.
 */
QuadratureResult integrate_gk(const std::function<double(double)>& f, double a,
                              double b, const QuadratureOptions& opt = {});

// Integral over [a, min(b, L)] with the same machinery; used by the
// doubling probes that classify integrability.
double truncated_integral(const std::function<double(double)>& f, double a,
                          double L, const QuadratureOptions& opt = {});

} // namespace entroproj
