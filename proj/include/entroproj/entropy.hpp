#pragma once

#include <string>
#include <vector>

#include "entroproj/common.hpp"

namespace entroproj {

enum class EntropyKind {
    relative,         // gamma*(t) = t log t - t + 1 on [0,inf)
    reverse_relative, // gamma*(t) = t - log t - 1 on (0,inf)
    fermi_dirac,      // gamma*(t) = ((1+t)log(1+t) + (1-t)log(1-t))/2 on [-1,1]
    lp_norm,          // gamma*(t) = |t|^p / p
    lp_entropy,       // gamma*(t) = t^p / p on [0,inf)
};

/**
 * One catalog entry: the convex integrand gamma* together with every scalar
 * function derived from it. gamma is the convex conjugate of gamma*, m is the
 * location of the minimum of gamma* (gamma*(m) = 0), lambda(s) = gamma(s) - m s
 * is the centered Young function and lambda_diamond its symmetrization
 * max(lambda(s), lambda(-s)).
 *
 * All entries are z-independent. p/q are the conjugate exponents and are only
 * meaningful for the lp_* kinds.
 */
class Entropy {
public:
    static Entropy relative();
    static Entropy reverse_relative();
    static Entropy fermi_dirac();
    static Entropy lp_norm(double p);
    static Entropy lp_entropy(double p);

    EntropyKind kind() const { return kind_; }
    double p() const { return p_; }
    double q() const { return q_; }
    double m() const { return m_; }
    bool superlinear() const { return superlinear_; }
    bool delta2() const { return delta2_; }
    Interval dom_gamma() const { return dom_gamma_; }
    Interval dom_gamma_star() const { return dom_gamma_star_; }
    const std::string& name() const { return name_; }

    // gamma*(t); +inf outside its domain.
    double star(double t) const;
    // d/dt gamma*(t) on the interior of dom gamma*; throws DomainBoundary outside.
    double star_prime(double t) const;
    // gamma(s) = sup_t { s t - gamma*(t) }; +inf outside its domain.
    double dual(double s) const;
    // gamma'(s); throws DomainBoundary outside the interior of dom gamma.
    double dual_prime(double s) const;
    // gamma''(s) on the interior of dom gamma (may be +inf for lp kinds at s=0
    // when q < 2).
    double dual_second(double s) const;
    // lambda(s) = gamma(s) - m s
    double young(double s) const;
    // lambda_diamond(s) = max(lambda(s), lambda(-s))
    double young_diamond(double s) const;
    // log lambda_diamond(s), finite far past where the direct form overflows;
    // -inf at s = 0, +inf only on a genuine domain crossing
    double young_diamond_log(double s) const;

    bool star_finite(double t) const;
    bool dual_finite(double s) const;

private:
    Entropy() = default;
    EntropyKind kind_ = EntropyKind::relative;
    std::string name_;
    double p_ = 0.0;
    double q_ = 0.0;
    double m_ = 0.0;
    bool superlinear_ = true;
    bool delta2_ = false;
    Interval dom_gamma_;
    Interval dom_gamma_star_;
};

// max over s_grid of |gamma(s) - max over t_grid of (s t - gamma*(t))|.
// The inner brute-force max is the oracle the closed forms are checked against.
double verify_conjugacy(const Entropy& e, const std::vector<double>& s_grid,
                        const std::vector<double>& t_grid);

} // namespace entroproj
