#pragma once

#include <cstddef>
#include <vector>

#include "entroproj/common.hpp"

namespace entroproj {

enum class TestFnKind { identity, power, affine, grid_values };

/**
 * A constraint test function theta_k. The first three kinds are closed-form
 * maps z -> theta(z); grid_values binds a value per point of a
 * DiscreteMeasure and is only evaluable by index.
 */
class TestFunction {
public:
    static TestFunction identity();
    static TestFunction power(int k);
    static TestFunction affine(double a, double b); // z -> a z + b
    static TestFunction constant(double b) { return affine(0.0, b); }
    static TestFunction grid_values(std::vector<double> values);

    TestFnKind kind() const { return kind_; }
    int power_exponent() const { return k_; }
    double affine_slope() const { return a_; }
    double affine_offset() const { return b_; }
    const std::vector<double>& values() const { return values_; }

    bool is_grid() const { return kind_ == TestFnKind::grid_values; }

    // Pointwise evaluation; grid_values requires the bound index.
    double operator()(double z) const;
    double at_index(std::size_t j) const;

    // Range of theta over [zlo, zhi] (closed, possibly unbounded); exact for
    // the closed-form kinds.
    Interval range(double zlo, double zhi) const;

    // Among the closed-form kinds: the polynomial degree (identity/affine 1 or
    // 0, power k). Used for tail-growth reasoning.
    int degree() const;

private:
    TestFnKind kind_ = TestFnKind::identity;
    int k_ = 1;
    double a_ = 1.0;
    double b_ = 0.0;
    std::vector<double> values_;
};

} // namespace entroproj
