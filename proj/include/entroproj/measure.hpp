#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "entroproj/common.hpp"
#include "entroproj/quadrature.hpp"
#include "entroproj/testfn.hpp"

namespace entroproj {

/// Finite weighted grid: atoms z_j with weights r_j > 0.
class DiscreteMeasure {
public:
    DiscreteMeasure(std::vector<double> points, std::vector<double> weights);

    std::size_t size() const { return points_.size(); }
    double point(std::size_t j) const { return points_[j]; }
    double weight(std::size_t j) const { return weights_[j]; }
    const std::vector<double>& points() const { return points_; }
    const std::vector<double>& weights() const { return weights_; }
    double mass() const { return mass_; }

    double integrate(const std::function<double(double)>& f) const;
    // sum_j r_j g(z_j) exp(logf(z_j)); exp(-inf) = 0 handled.
    double integrate_weighted(const std::function<double(double)>& g,
                              const std::function<double(double)>& logf) const;
    double integrate_testfn(const TestFunction& th) const;

    Interval support() const;

private:
    std::vector<double> points_;
    std::vector<double> weights_;
    double mass_ = 0.0;
};

enum class DensityFamily { exponential, exp_poly, gaussian, uniform };

/**
 * Cataloged 1D reference density. The raw kernels are
 *   exponential(rate a):   e^{-a z}                 on [0, inf)
 *   exp_poly(a, b):         e^{-a z} / (1 + z^b)     on [0, inf)
 *   gaussian(mu, sigma):   e^{-(z-mu)^2/(2 sigma^2)} on R
 *   uniform(lo, hi):       1                        on [lo, hi]
 * `normalized` divides by the kernel mass (closed form where available,
 * quadrature for exp_poly, cached at construction).
 */
class Density1D {
public:
    static Density1D exponential(double rate, bool normalized = true,
                                 QuadratureOptions q = {});
    static Density1D exp_poly(double a, double b, bool normalized = true,
                             QuadratureOptions q = {});
    static Density1D gaussian(double mu, double sigma, bool normalized = true,
                              QuadratureOptions q = {});
    static Density1D uniform(double lo, double hi, bool normalized = true,
                             QuadratureOptions q = {});

    DensityFamily family() const { return family_; }
    bool normalized() const { return normalized_; }
    double param0() const { return p0_; } // rate / a / mu / lo
    double param1() const { return p1_; } // -  / b / sigma / hi
    const QuadratureOptions& quad() const { return quad_; }
    std::string family_name() const;

    Interval support() const { return support_; }
    double mass() const { return normalized_ ? 1.0 : kernel_mass_; }
    double kernel_mass() const { return kernel_mass_; }

    double density(double z) const;
    // log of the density including normalization; -inf off the support.
    double log_density(double z) const;

    // integral of f against the measure
    double integrate(const std::function<double(double)>& f) const;
    // integral of g(z) exp(logf(z)) against the measure, with logf folded
    // into the exponent of the density so tilts like e^{y z} never overflow
    // ahead of the kernel's decay.
    double integrate_weighted(const std::function<double(double)>& g,
                              const std::function<double(double)>& logf) const;

private:
    Density1D() = default;
    double log_kernel(double z) const;

    DensityFamily family_ = DensityFamily::exponential;
    bool normalized_ = true;
    double p0_ = 1.0, p1_ = 0.0;
    double kernel_mass_ = 1.0;
    Interval support_;
    QuadratureOptions quad_;
};

/// Reference measure: either form, one integration interface.
class Measure {
public:
    Measure(DiscreteMeasure d) : v_(std::move(d)) {}
    Measure(Density1D d) : v_(std::move(d)) {}

    bool is_discrete() const { return std::holds_alternative<DiscreteMeasure>(v_); }
    const DiscreteMeasure& discrete() const { return std::get<DiscreteMeasure>(v_); }
    const Density1D& density() const { return std::get<Density1D>(v_); }

    double mass() const;
    Interval support() const;
    double integrate(const std::function<double(double)>& f) const;
    double integrate_weighted(const std::function<double(double)>& g,
                              const std::function<double(double)>& logf) const;
    double integrate_testfn(const TestFunction& th) const;

private:
    std::variant<DiscreteMeasure, Density1D> v_;
};

} // namespace entroproj
