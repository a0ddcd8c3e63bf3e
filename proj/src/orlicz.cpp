#include "entroproj/orlicz.hpp"

#include <cmath>
#include <stdexcept>

namespace entroproj {

namespace {

// Evaluate int rho(u(z) * scale) dR, honoring grid-bound test functions.
// Returns +inf when the integral does not exist (quadrature blow-up counts).
double modular(const TestFunction& u, double scale,
               const std::function<double(double)>& rho, const Measure& R) {
    try {
        if (R.is_discrete() && u.is_grid()) {
            const auto& d = R.discrete();
            double s = 0.0;
            for (std::size_t j = 0; j < d.size(); ++j) {
                double v = rho(u.at_index(j) * scale);
                if (!is_finite(v)) return kInf;
                s += d.weight(j) * v;
            }
            return s;
        }
        return R.integrate([&](double z) { return rho(u(z) * scale); });
    } catch (const NonIntegrable&) {
        return kInf;
    } catch (const QuadratureDivergence&) {
        return kInf;
    }
}

} // namespace

std::function<double(double)> young_power(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("young_power needs p > 1");
    return [p](double s) { return std::pow(std::abs(s), p) / p; };
}

std::function<double(double)> numeric_conjugate(std::function<double(double)> rho) {
    return [rho = std::move(rho)](double t) {
        const double a = std::abs(t);
        auto phi = [&](double s) {
            double r = rho(s);
            return is_finite(r) ? a * s - r : -kInf;
        };
        // find a finite search cap, then expand while the objective climbs
        double cap = 1e12;
        if (!is_finite(rho(cap))) {
            double lo = 0.0, hi = cap;
            for (int i = 0; i < 200; ++i) {
                double mid = 0.5 * (lo + hi);
                (is_finite(rho(mid)) ? lo : hi) = mid;
            }
            cap = lo;
        }
        double hi = std::min(1.0, cap);
        while (hi < cap && phi(std::min(2.0 * hi, cap)) > phi(hi))
            hi = std::min(2.0 * hi, cap);
        // golden-section maximization of the concave objective on [0, hi]
        const double gr = 0.6180339887498949;
        double x0 = 0.0, x3 = hi;
        double x1 = x3 - gr * (x3 - x0), x2 = x0 + gr * (x3 - x0);
        double f1 = phi(x1), f2 = phi(x2);
        for (int i = 0; i < 160; ++i) {
            if (f1 < f2) {
                x0 = x1;
                x1 = x2;
                f1 = f2;
                x2 = x0 + gr * (x3 - x0);
                f2 = phi(x2);
            } else {
                x3 = x2;
                x2 = x1;
                f2 = f1;
                x1 = x3 - gr * (x3 - x0);
                f1 = phi(x1);
            }
        }
        double best = std::max({phi(0.0), f1, f2, phi(hi)});
        return std::max(best, 0.0); // Young conjugates are nonnegative (rho(0) = 0)
    };
}

double luxemburg_norm(const TestFunction& u, const std::function<double(double)>& rho,
                      const Measure& R) {
    double lo = 1e-12, hi = 1e12;
    double m_lo = modular(u, 1.0 / lo, rho, R);
    if (m_lo == 0.0) return 0.0; // u = 0 R-a.e.
    if (m_lo <= 1.0) return lo;
    if (modular(u, 1.0 / hi, rho, R) > 1.0) return kInf;
    for (int i = 0; i < 200 && (hi - lo) > 1e-12 * hi; ++i) {
        double mid = std::sqrt(lo * hi); // geometric: the bracket spans 24 decades
        (modular(u, 1.0 / mid, rho, R) <= 1.0 ? hi : lo) = mid;
    }
    return hi;
}

namespace {

// finiteness of int lambda_diamond(alpha u) dR for one alpha
bool probe_finite(const TestFunction& u, double alpha, const Entropy& spec,
                  const Measure& R) {
    if (R.is_discrete()) return true;
    const Density1D& d = R.density();
    Interval sup = d.support();

    // log of the integrand, stable far past double overflow. A domain crossing
    // where the density still carries mass reads +inf; over zero density it
    // contributes nothing.
    auto log_term = [&](double z) {
        double yl = spec.young_diamond_log(alpha * u(z));
        if (yl == kInf) {
            double ld = d.log_density(z);
            return is_finite(ld) ? kInf : -kInf;
        }
        return yl + d.log_density(z);
    };

    // on a bounded window the integrand is continuous, so only a domain
    // crossing can break finiteness there
    double lo1 = is_finite(sup.lo) ? sup.lo : -100.0;
    double hi1 = is_finite(sup.hi) ? sup.hi : 100.0;
    for (int i = 0; i <= 400; ++i) {
        if (log_term(lo1 + (hi1 - lo1) * i / 400.0) == kInf) return false;
    }
    if (is_finite(sup.lo) && is_finite(sup.hi)) return true;

    // the tails are exponential races; geometric checkpoints reach far enough
    // out to read the end behavior instead of trusting any fixed cutoff
    for (double side : {1.0, -1.0}) {
        if (side > 0.0 ? is_finite(sup.hi) : is_finite(sup.lo)) continue;
        double lprev = 0.0, lv = -kInf, z = 0.0;
        for (int j = 0; j <= 14; ++j) {
            z = side * 100.0 * std::ldexp(1.0, j);
            lprev = lv;
            lv = log_term(z);
            if (lv == kInf) return false;
        }
        // still climbing over the last octave, or flat at a non-summable
        // level: the race is lost
        if (lv > lprev + 1e-4 && lv > -667.0) return false;
        if (lv + std::log(std::abs(z)) > std::log(1e-2)) return false;
    }
    return true;
}

} // namespace

IntegrabilityClass integrability_class(const TestFunction& u, const Entropy& spec,
                                       const Measure& R) {
    if (R.is_discrete()) return IntegrabilityClass::small_orlicz;
    int finite = 0, total = 0;
    for (int k = -10; k <= 10; ++k) {
        ++total;
        if (probe_finite(u, std::ldexp(1.0, k), spec, R)) ++finite;
    }
    if (finite == total) return IntegrabilityClass::small_orlicz;
    if (finite == 0) return IntegrabilityClass::outside;
    return IntegrabilityClass::orlicz_only;
}

const char* to_string(IntegrabilityClass c) {
    switch (c) {
    case IntegrabilityClass::small_orlicz: return "small_orlicz";
    case IntegrabilityClass::orlicz_only: return "orlicz_only";
    case IntegrabilityClass::outside: return "outside";
    }
    return "?";
}

double holder_residual(const TestFunction& u, const TestFunction& v,
                       const std::function<double(double)>& rho, const Measure& R) {
    auto rho_star = numeric_conjugate(rho);
    double nu = luxemburg_norm(u, rho, R);
    double nv = luxemburg_norm(v, rho_star, R);
    double cross;
    if (R.is_discrete() && (u.is_grid() || v.is_grid())) {
        const auto& d = R.discrete();
        cross = 0.0;
        for (std::size_t j = 0; j < d.size(); ++j) {
            double uz = u.is_grid() ? u.at_index(j) : u(d.point(j));
            double vz = v.is_grid() ? v.at_index(j) : v(d.point(j));
            cross += d.weight(j) * std::abs(uz * vz);
        }
    } else {
        cross = R.integrate([&](double z) { return std::abs(u(z) * v(z)); });
    }
    return 2.0 * nu * nv - cross;
}

} // namespace entroproj
