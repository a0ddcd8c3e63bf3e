#include "entroproj/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace entroproj {

DiscreteMeasure::DiscreteMeasure(std::vector<double> points,
                                 std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.empty() || points_.size() != weights_.size())
        throw std::invalid_argument("discrete measure needs matching nonempty points/weights");
    for (double w : weights_) {
        if (!(w > 0.0) || !is_finite(w))
            throw std::invalid_argument("discrete weights must be positive and finite");
        mass_ += w;
    }
    for (double z : points_)
        if (!is_finite(z)) throw std::invalid_argument("discrete points must be finite");
    if (!is_finite(mass_)) throw std::invalid_argument("discrete mass must be finite");
}

double DiscreteMeasure::integrate(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (std::size_t j = 0; j < points_.size(); ++j) s += weights_[j] * f(points_[j]);
    return s;
}

double DiscreteMeasure::integrate_weighted(
    const std::function<double(double)>& g,
    const std::function<double(double)>& logf) const {
    double s = 0.0;
    for (std::size_t j = 0; j < points_.size(); ++j) {
        double gv = g(points_[j]);
        if (gv == 0.0) continue;
        s += weights_[j] * gv * std::exp(logf(points_[j]));
    }
    if (!is_finite(s)) throw NonIntegrable("weighted sum overflowed");
    return s;
}

double DiscreteMeasure::integrate_testfn(const TestFunction& th) const {
    if (th.is_grid()) {
        if (th.values().size() != points_.size())
            throw std::invalid_argument("grid test function length mismatch");
        double s = 0.0;
        for (std::size_t j = 0; j < points_.size(); ++j)
            s += weights_[j] * th.at_index(j);
        return s;
    }
    return integrate([&](double z) { return th(z); });
}

Interval DiscreteMeasure::support() const {
    Interval r;
    r.lo = points_[0];
    r.hi = points_[0];
    for (double z : points_) {
        r.lo = std::min(r.lo, z);
        r.hi = std::max(r.hi, z);
    }
    r.lo_closed = r.hi_closed = true;
    return r;
}

// ---------------------------------------------------------------------------

Density1D Density1D::exponential(double rate, bool normalized, QuadratureOptions q) {
    if (!(rate > 0.0)) throw std::invalid_argument("exponential rate must be > 0");
    Density1D d;
    d.family_ = DensityFamily::exponential;
    d.normalized_ = normalized;
    d.p0_ = rate;
    d.support_ = {0.0, kInf, true, false};
    d.kernel_mass_ = 1.0 / rate;
    q.truncation = std::max(q.truncation, 60.0 / rate);
    d.quad_ = std::move(q);
    return d;
}

Density1D Density1D::exp_poly(double a, double b, bool normalized, QuadratureOptions q) {
    if (!(a > 0.0) || !(b > 1.0))
        throw std::invalid_argument("exp_poly family needs a > 0, b > 1");
    Density1D d;
    d.family_ = DensityFamily::exp_poly;
    d.normalized_ = normalized;
    d.p0_ = a;
    d.p1_ = b;
    d.support_ = {0.0, kInf, true, false};
    q.truncation = std::max(q.truncation, 60.0 / a);
    d.quad_ = std::move(q);
    d.kernel_mass_ = integrate_gk([&d](double z) { return std::exp(d.log_kernel(z)); },
                                  0.0, kInf, d.quad_)
                         .value;
    return d;
}

Density1D Density1D::gaussian(double mu, double sigma, bool normalized,
                              QuadratureOptions q) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian sigma must be > 0");
    Density1D d;
    d.family_ = DensityFamily::gaussian;
    d.normalized_ = normalized;
    d.p0_ = mu;
    d.p1_ = sigma;
    d.support_ = {-kInf, kInf, false, false};
    d.kernel_mass_ = sigma * std::sqrt(2.0 * 3.14159265358979323846);
    q.truncation = std::max(q.truncation, std::abs(mu) + 40.0 * sigma);
    for (int k = -3; k <= 3; ++k) q.breakpoints.push_back(mu + k * sigma);
    d.quad_ = std::move(q);
    return d;
}

Density1D Density1D::uniform(double lo, double hi, bool normalized, QuadratureOptions q) {
    if (!(is_finite(lo) && is_finite(hi) && lo < hi))
        throw std::invalid_argument("uniform needs finite lo < hi");
    Density1D d;
    d.family_ = DensityFamily::uniform;
    d.normalized_ = normalized;
    d.p0_ = lo;
    d.p1_ = hi;
    d.support_ = {lo, hi, true, true};
    d.kernel_mass_ = hi - lo;
    d.quad_ = std::move(q);
    return d;
}

std::string Density1D::family_name() const {
    switch (family_) {
    case DensityFamily::exponential: return "exponential";
    case DensityFamily::exp_poly: return "exp_poly";
    case DensityFamily::gaussian: return "gaussian";
    case DensityFamily::uniform: return "uniform";
    }
    return "?";
}

double Density1D::log_kernel(double z) const {
    switch (family_) {
    case DensityFamily::exponential:
        return z >= 0.0 ? -p0_ * z : -kInf;
    case DensityFamily::exp_poly: {
        if (z < 0.0) return -kInf;
        // log(1 + z^b) without overflow for huge z
        double lzb = p1_ * std::log(z); // -inf at z = 0, fine
        double l1p = lzb > 700.0 ? lzb : std::log1p(std::pow(z, p1_));
        return -p0_ * z - l1p;
    }
    case DensityFamily::gaussian: {
        double t = (z - p0_) / p1_;
        return -0.5 * t * t;
    }
    case DensityFamily::uniform:
        return (z >= p0_ && z <= p1_) ? 0.0 : -kInf;
    }
    return -kInf;
}

double Density1D::log_density(double z) const {
    double lk = log_kernel(z);
    return normalized_ ? lk - std::log(kernel_mass_) : lk;
}

double Density1D::density(double z) const { return std::exp(log_density(z)); }

double Density1D::integrate(const std::function<double(double)>& f) const {
    auto integrand = [&](double z) {
        double fz = f(z);
        if (fz == 0.0) return 0.0;
        return fz * density(z);
    };
    return integrate_gk(integrand, support_.lo, support_.hi, quad_).value;
}

double Density1D::integrate_weighted(
    const std::function<double(double)>& g,
    const std::function<double(double)>& logf) const {
    auto integrand = [&](double z) {
        double gv = g(z);
        if (gv == 0.0) return 0.0;
        return gv * std::exp(logf(z) + log_density(z));
    };
    return integrate_gk(integrand, support_.lo, support_.hi, quad_).value;
}

// ---------------------------------------------------------------------------

double Measure::mass() const {
    return is_discrete() ? discrete().mass() : density().mass();
}

Interval Measure::support() const {
    return is_discrete() ? discrete().support() : density().support();
}

double Measure::integrate(const std::function<double(double)>& f) const {
    return is_discrete() ? discrete().integrate(f) : density().integrate(f);
}

double Measure::integrate_weighted(const std::function<double(double)>& g,
                                   const std::function<double(double)>& logf) const {
    return is_discrete() ? discrete().integrate_weighted(g, logf)
                         : density().integrate_weighted(g, logf);
}

double Measure::integrate_testfn(const TestFunction& th) const {
    if (is_discrete()) return discrete().integrate_testfn(th);
    if (th.is_grid())
        throw std::invalid_argument("grid test function on a density measure");
    return density().integrate([&](double z) { return th(z); });
}

} // namespace entroproj
