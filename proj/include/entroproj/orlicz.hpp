#pragma once

#include <functional>

#include "entroproj/entropy.hpp"
#include "entroproj/measure.hpp"
#include "entroproj/testfn.hpp"

namespace entroproj {

// rho_p(s) = |s|^p / p, the power Young function.
std::function<double(double)> young_power(double p);

// Numeric convex conjugate of an even Young function: t -> sup_s (|t| s - rho(s)).
// Golden-section on the finite part of the domain, expanded geometrically.
std::function<double(double)> numeric_conjugate(std::function<double(double)> rho);

/**
 * inf { beta > 0 : int rho(u/beta) dR <= 1 }, by bisection on beta in
 * [1e-12, 1e12]; 0 when u vanishes R-a.e., +inf when no finite beta works
 * (possible only for unbounded-support densities).
 */
double luxemburg_norm(const TestFunction& u, const std::function<double(double)>& rho,
                      const Measure& R);

enum class IntegrabilityClass { small_orlicz, orlicz_only, outside };

/**
 * Probes int lambda_diamond(alpha u) dR on the geometric ladder
 * alpha = 2^k, k = -10..10. All finite -> small_orlicz; some finite yet
 * diverging at larger alpha -> orlicz_only; never finite -> outside.
 * Discrete measures classify as small_orlicz by definition. Each probe reads
 * the log-space end behavior of the integrand at geometric tail checkpoints
 * (out to 100 * 2^14), so double overflow of the Young function never
 * masquerades as divergence; divergence is declared when the tail is still
 * climbing at the last octave, sits at a non-summable level, or the Young
 * function's domain is crossed where the density carries mass.
 */
IntegrabilityClass integrability_class(const TestFunction& u, const Entropy& spec,
                                       const Measure& R);

const char* to_string(IntegrabilityClass c);

// 2 ||u||_rho ||v||_rho* - int |u v| dR  (>= 0, the Orlicz Holder inequality)
double holder_residual(const TestFunction& u, const TestFunction& v,
                       const std::function<double(double)>& rho, const Measure& R);

} // namespace entroproj
