#include "chaineq/force_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chaineq {

ForceField ForceField::constant(double value) {
    ForceField f;
    f.kind_ = Kind::Constant;
    f.c0_ = value;
    return f;
}

ForceField ForceField::affine(double c0, double c1) {
    ForceField f;
    f.kind_ = Kind::Affine;
    f.c0_ = c0;
    f.c1_ = c1;
    return f;
}

ForceField ForceField::piecewise_linear(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2)
        throw std::invalid_argument("ForceField::piecewise_linear: need at least 2 points");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (!(points[i].first > points[i - 1].first))
            throw std::invalid_argument("ForceField::piecewise_linear: x must be strictly ascending");
    ForceField f;
    f.kind_ = Kind::PiecewiseLinear;
    f.points_ = std::move(points);
    f.cumulative_.assign(f.points_.size(), 0.0);
    for (std::size_t i = 1; i < f.points_.size(); ++i) {
        const auto& [xa, fa] = f.points_[i - 1];
        const auto& [xb, fb] = f.points_[i];
        f.cumulative_[i] = f.cumulative_[i - 1] + 0.5 * (fa + fb) * (xb - xa);
    }
    return f;
}

double ForceField::value(double x) const {
    switch (kind_) {
    case Kind::Constant:
        return c0_;
    case Kind::Affine:
        return c0_ + c1_ * x;
    case Kind::PiecewiseLinear:
        break;
    }
    if (x <= points_.front().first)
        return points_.front().second;
    if (x >= points_.back().first)
        return points_.back().second;
    std::size_t lo = 0, hi = points_.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (points_[mid].first <= x)
            lo = mid;
        else
            hi = mid;
    }
    const auto& [xa, fa] = points_[lo];
    const auto& [xb, fb] = points_[lo + 1];
    return fa + (x - xa) / (xb - xa) * (fb - fa);
}

double ForceField::integral_from_zero(double x) const {
    switch (kind_) {
    case Kind::Constant:
        return c0_ * x;
    case Kind::Affine:
        return c0_ * x + 0.5 * c1_ * x * x;
    case Kind::PiecewiseLinear:
        break;
    }
    const double x0 = points_.front().first;
    const double xn = points_.back().first;
    if (x <= x0)
        return points_.front().second * x; // constant extension left of the table
    double acc = points_.front().second * x0;
    if (x >= xn)
        return acc + cumulative_.back() + points_.back().second * (x - xn);
    std::size_t lo = 0, hi = points_.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (points_[mid].first <= x)
            lo = mid;
        else
            hi = mid;
    }
    const auto& [xa, fa] = points_[lo];
    const double fx = value(x);
    return acc + cumulative_[lo] + 0.5 * (fa + fx) * (x - xa);
}

double ForceField::sup(double lo, double hi) const {
    double s = std::max(value(lo), value(hi));
    if (kind_ == Kind::PiecewiseLinear)
        for (const auto& [x, fx] : points_)
            if (x > lo && x < hi)
                s = std::max(s, fx);
    return s;
}

bool ForceField::monotone_nonincreasing(double lo, double hi) const {
    const int grid = 1024;
    double prev = value(lo);
    const double slack = 1e-12 * (1.0 + std::abs(prev));
    for (int i = 1; i < grid; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / (grid - 1);
        const double cur = value(x);
        if (cur > prev + slack)
            return false;
        prev = cur;
    }
    return true;
}

ForceField ForceField::reflected(double length) const {
    switch (kind_) {
    case Kind::Constant:
        return constant(-c0_);
    case Kind::Affine:
        return affine(-c0_ - c1_ * length, c1_);
    case Kind::PiecewiseLinear:
        break;
    }
    std::vector<std::pair<double, double>> pts(points_.rbegin(), points_.rend());
    for (auto& [x, fx] : pts) {
        x = length - x;
        fx = -fx;
    }
    return piecewise_linear(std::move(pts));
}

void ForceField::declare_monotone_nonincreasing(double lo, double hi) {
    if (!monotone_nonincreasing(lo, hi))
        throw std::invalid_argument(
            "ForceField: monotone_nonincreasing declared but grid check failed");
    declared_monotone_ = true;
}

double ForceField::constant_value() const {
    if (kind_ != Kind::Constant)
        throw std::logic_error("ForceField::constant_value: field is not constant");
    return c0_;
}

} // namespace chaineq
