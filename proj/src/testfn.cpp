#include "entroproj/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace entroproj {

TestFunction TestFunction::identity() {
    TestFunction f;
    f.kind_ = TestFnKind::identity;
    return f;
}

TestFunction TestFunction::power(int k) {
    if (k < 0) throw std::invalid_argument("power test function needs k >= 0");
    TestFunction f;
    f.kind_ = TestFnKind::power;
    f.k_ = k;
    return f;
}

TestFunction TestFunction::affine(double a, double b) {
    TestFunction f;
    f.kind_ = TestFnKind::affine;
    f.a_ = a;
    f.b_ = b;
    return f;
}

TestFunction TestFunction::grid_values(std::vector<double> values) {
    TestFunction f;
    f.kind_ = TestFnKind::grid_values;
    f.values_ = std::move(values);
    return f;
}

double TestFunction::operator()(double z) const {
    switch (kind_) {
    case TestFnKind::identity: return z;
    case TestFnKind::power: return std::pow(z, k_);
    case TestFnKind::affine: return a_ * z + b_;
    case TestFnKind::grid_values:
        throw std::logic_error("grid_values test function has no pointwise form");
    }
    return 0.0;
}

double TestFunction::at_index(std::size_t j) const {
    if (kind_ != TestFnKind::grid_values)
        throw std::logic_error("at_index is only for grid_values");
    if (j >= values_.size()) throw std::out_of_range("grid index");
    return values_[j];
}

Interval TestFunction::range(double zlo, double zhi) const {
    Interval r;
    r.lo_closed = is_finite(zlo);
    r.hi_closed = is_finite(zhi);
    switch (kind_) {
    case TestFnKind::identity:
        r.lo = zlo;
        r.hi = zhi;
        return r;
    case TestFnKind::affine: {
        double v0 = a_ * zlo + b_;
        double v1 = a_ * zhi + b_;
        if (a_ == 0.0) {
            r.lo = r.hi = b_;
            r.lo_closed = r.hi_closed = true;
            return r;
        }
        r.lo = std::min(v0, v1);
        r.hi = std::max(v0, v1);
        if (a_ < 0.0) std::swap(r.lo_closed, r.hi_closed);
        return r;
    }
    case TestFnKind::power: {
        if (k_ == 0) {
            r.lo = r.hi = 1.0;
            r.lo_closed = r.hi_closed = true;
            return r;
        }
        double v0 = std::pow(zlo, k_);
        double v1 = std::pow(zhi, k_);
        if (k_ % 2 == 1) {
            r.lo = v0;
            r.hi = v1;
            return r;
        }
        // even power: minimum at 0 if the interval straddles it
        if (zlo <= 0.0 && zhi >= 0.0) {
            r.lo = 0.0;
            r.lo_closed = true;
            r.hi = std::max(v0, v1);
            r.hi_closed = (r.hi == v0 ? is_finite(zlo) : is_finite(zhi));
        } else {
            r.lo = std::min(v0, v1);
            r.hi = std::max(v0, v1);
            bool lo_from_zlo = (v0 <= v1);
            r.lo_closed = lo_from_zlo ? is_finite(zlo) : is_finite(zhi);
            r.hi_closed = lo_from_zlo ? is_finite(zhi) : is_finite(zlo);
        }
        return r;
    }
    case TestFnKind::grid_values: {
        if (values_.empty()) throw std::logic_error("empty grid_values");
        auto [mn, mx] = std::minmax_element(values_.begin(), values_.end());
        r.lo = *mn;
        r.hi = *mx;
        r.lo_closed = r.hi_closed = true;
        return r;
    }
    }
    return r;
}

int TestFunction::degree() const {
    switch (kind_) {
    case TestFnKind::identity: return 1;
    case TestFnKind::power: return k_;
    case TestFnKind::affine: return a_ == 0.0 ? 0 : 1;
    case TestFnKind::grid_values:
        throw std::logic_error("grid_values has no degree");
    }
    return 0;
}

} // namespace entroproj
