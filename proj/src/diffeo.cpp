#include "scalefn/diffeo.hpp"

#include <cmath>

#include "scalefn/errors.hpp"

namespace scalefn {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Diffeo Diffeo::identity(const Interval& ambient) {
    Diffeo d;
    d.kind_ = Kind::Identity;
    d.ambient_ = ambient;
    return d;
}

Diffeo Diffeo::poly(std::vector<double> coeffs, const Interval& ambient) {
    Diffeo d;
    d.kind_ = Kind::Poly;
    d.coeffs_ = std::move(coeffs);
    d.ambient_ = ambient;
    return d;
}

Diffeo Diffeo::sinusoidal(double epsilon, int k, const Interval& ambient) {
    Diffeo d;
    d.kind_ = Kind::Sin;
    d.epsilon_ = epsilon;
    d.freq_ = k;
    d.ambient_ = ambient;
    return d;
}

double Diffeo::u_value(double u) const {
    switch (kind_) {
    case Kind::Identity:
        return u;
    case Kind::Sin:
        return u + epsilon_ * std::sin(kTwoPi * freq_ * u);
    case Kind::Poly: {
        double p = 0.0;
        for (size_t i = coeffs_.size(); i-- > 0;) p = p * u + coeffs_[i];
        return u + u * (1.0 - u) * p;
    }
    }
    return u;
}

double Diffeo::u_derivative(double u) const {
    switch (kind_) {
    case Kind::Identity:
        return 1.0;
    case Kind::Sin:
        return 1.0 + epsilon_ * kTwoPi * freq_ * std::cos(kTwoPi * freq_ * u);
    case Kind::Poly: {
        double p = 0.0, dp = 0.0;
        for (size_t i = coeffs_.size(); i-- > 1;)
            dp = dp * u + coeffs_[i] * static_cast<double>(i);
        for (size_t i = coeffs_.size(); i-- > 0;) p = p * u + coeffs_[i];
        return 1.0 + (1.0 - 2.0 * u) * p + u * (1.0 - u) * dp;
    }
    }
    return 1.0;
}

double Diffeo::value(double x) const {
    if (kind_ == Kind::Identity) return x;
    const double span = ambient_.length();
    double u = (x - ambient_.lo) / span;
    return ambient_.lo + span * u_value(u);
}

double Diffeo::derivative(double x) const {
    if (kind_ == Kind::Identity) return 1.0;
    double u = (x - ambient_.lo) / ambient_.length();
    return u_derivative(u);
}

double Diffeo::inverse(double y) const {
    if (kind_ == Kind::Identity) return y;
    const double span = ambient_.length();
    double target = (y - ambient_.lo) / span;
    if (target <= 0.0) return ambient_.lo;
    if (target >= 1.0) return ambient_.hi;
    // Monotone increasing on [0,1]: bisection bracket, Newton once the
    // bracket is tight, 1e-15 residual in normalized coordinates.
    double a = 0.0, b = 1.0;
    double u = target; // good initial guess: the perturbations are small
    for (int it = 0; it < 200; ++it) {
        double f = u_value(u) - target;
        if (std::abs(f) < 1e-15) break;
        if (f > 0.0) b = u;
        else a = u;
        double du = u_derivative(u);
        double next = du > 1e-12 ? u - f / du : 0.5 * (a + b);
        if (!(next > a && next < b)) next = 0.5 * (a + b);
        u = next;
    }
    return ambient_.lo + span * u;
}

double Diffeo::derivative_lower_bound() const {
    switch (kind_) {
    case Kind::Identity:
        return 1.0;
    case Kind::Sin:
        return 1.0 - std::abs(epsilon_) * kTwoPi * freq_;
    case Kind::Poly: {
        double lb = 1e300;
        const int n = 4096;
        for (int i = 0; i <= n; ++i)
            lb = std::min(lb, u_derivative(static_cast<double>(i) / n));
        return lb;
    }
    }
    return 1.0;
}

void Diffeo::validate() const {
    if (ambient_.length() <= 0.0) throw NonDiffeo("diffeo ambient interval is empty");
    if (kind_ == Kind::Sin && std::abs(epsilon_) * kTwoPi * freq_ >= 1.0)
        throw NonDiffeo("sinusoidal perturbation too large: eps*k*2pi >= 1");
    double lb = derivative_lower_bound();
    if (!(lb > 0.0)) throw NonDiffeo("diffeo derivative is not positive everywhere");
    // sampled sanity check regardless of model
    const int n = 512;
    for (int i = 0; i <= n; ++i) {
        if (!(u_derivative(static_cast<double>(i) / n) > 0.0))
            throw NonDiffeo("diffeo derivative changes sign");
    }
}

} // namespace scalefn
