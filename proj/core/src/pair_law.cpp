#include "chaineq/pair_law.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace chaineq {

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// piecewise-linear value of f at r, nodes bracketing r given by index i
double interp(const std::vector<double>& xs, const std::vector<double>& ys,
              std::size_t i, double x) {
    const double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return ys[i] + t * (ys[i + 1] - ys[i]);
}

std::size_t segment_index(const std::vector<double>& xs, double x) {
    // xs strictly ascending, x within [xs.front(), xs.back()]
    std::size_t lo = 0, hi = xs.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (xs[mid] <= x)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

} // namespace

PairLaw PairLaw::power(double alpha, double exponent) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("PairLaw::power: alpha must be > 0");
    if (!(exponent > 1.0))
        throw std::invalid_argument("PairLaw::power: exponent must be > 1");
    PairLaw law;
    law.kind_ = Kind::Power;
    law.alpha_ = alpha;
    law.exponent_ = exponent;
    return law;
}

PairLaw PairLaw::tabulated(std::vector<std::pair<double, double>> samples,
                           double tail_potential) {
    if (samples.size() < 2)
        throw std::invalid_argument("PairLaw::tabulated: need at least 2 samples");
    PairLaw law;
    law.kind_ = Kind::Tabulated;
    law.r_.reserve(samples.size());
    law.f_.reserve(samples.size());
    for (const auto& [r, f] : samples) {
        if (!(r > 0.0))
            throw std::invalid_argument("PairLaw::tabulated: r samples must be > 0");
        if (!(f > 0.0))
            throw std::invalid_argument("PairLaw::tabulated: f samples must be > 0");
        if (!law.r_.empty()) {
            if (!(r > law.r_.back()))
                throw std::invalid_argument("PairLaw::tabulated: r samples must be strictly ascending");
            if (!(f < law.f_.back()))
                throw std::invalid_argument("PairLaw::tabulated: f samples must be strictly decreasing");
        }
        law.r_.push_back(r);
        law.f_.push_back(f);
    }
    // suffix trapezoid integrals, exact for the piecewise-linear f
    law.suffix_integral_.assign(law.r_.size(), 0.0);
    for (std::size_t i = law.r_.size() - 1; i-- > 0;) {
        const double piece =
            0.5 * (law.f_[i] + law.f_[i + 1]) * (law.r_[i + 1] - law.r_[i]);
        law.suffix_integral_[i] = law.suffix_integral_[i + 1] + piece;
    }
    law.tail_potential_ = tail_potential;
    return law;
}

double PairLaw::force(double r) const {
    if (!(r > 0.0))
        throw std::domain_error("PairLaw::force: r must be > 0 (particles coincide)");
    if (kind_ == Kind::Power)
        return alpha_ * std::pow(r, -exponent_);
    if (r < r_.front() || r > r_.back())
        throw std::out_of_range("PairLaw::force: r outside tabulated range");
    return interp(r_, f_, segment_index(r_, r), r);
}

double PairLaw::inverse_force(double y) const {
    if (!(y > 0.0))
        throw std::domain_error("PairLaw::inverse_force: no r with f(r) <= 0");
    if (kind_ == Kind::Power)
        return std::pow(y / alpha_, -1.0 / exponent_);
    if (y > f_.front() || y < f_.back())
        throw std::out_of_range("PairLaw::inverse_force: y outside tabulated force range");
    // bisection on the monotone interpolant to 1e-12 relative in f
    double lo = r_.front(), hi = r_.back();
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = interp(r_, f_, segment_index(r_, mid), mid);
        if (std::abs(fm - y) <= 1e-12 * y)
            return mid;
        if (fm > y)
            lo = mid; // f decreasing: too much force means r too small
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double PairLaw::potential(double r) const {
    if (!(r > 0.0))
        throw std::domain_error("PairLaw::potential: r must be > 0");
    if (kind_ == Kind::Power)
        return alpha_ * std::pow(r, 1.0 - exponent_) / (exponent_ - 1.0);
    if (r < r_.front())
        throw std::out_of_range("PairLaw::potential: r below tabulated range");
    if (r >= r_.back())
        return tail_potential_;
    const std::size_t i = segment_index(r_, r);
    const double fr = interp(r_, f_, i, r);
    const double piece = 0.5 * (fr + f_[i + 1]) * (r_[i + 1] - r);
    return piece + suffix_integral_[i + 1] + tail_potential_;
}

double PairLaw::min_force() const {
    return kind_ == Kind::Power ? 0.0 : f_.back();
}

double PairLaw::max_force() const {
    return kind_ == Kind::Power ? kInf : f_.front();
}

} // namespace chaineq
