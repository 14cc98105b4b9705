#ifndef SCALEFN_DIFFEO_HPP
#define SCALEFN_DIFFEO_HPP

#include <vector>

#include "scalefn/interval.hpp"

namespace scalefn {

// Orientation-preserving diffeomorphism of a fixed ambient interval.
// All models fix both endpoints and have strictly positive derivative.
// Internally the models act on normalized coordinates u = (x-lo)/(hi-lo):
//   identity    u
//   poly        u + u(1-u) * P(u),  P given by a coefficient vector
//   sinusoidal  u + eps * sin(2 pi k u)
class Diffeo {
  public:
    enum class Kind { Identity, Poly, Sin };

    static Diffeo identity(const Interval& ambient = {0.0, 1.0});
    static Diffeo poly(std::vector<double> coeffs, const Interval& ambient);
    static Diffeo sinusoidal(double epsilon, int k, const Interval& ambient);

    Kind kind() const { return kind_; }
    const Interval& ambient() const { return ambient_; }
    double epsilon() const { return epsilon_; }
    int frequency() const { return freq_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    double value(double x) const;
    double derivative(double x) const;
    double inverse(double y) const; // safeguarded monotone solve

    // Throws NonDiffeo unless the derivative is bounded below by a positive
    // constant (analytic bound for the sinusoidal model, dense sampling for
    // the polynomial one).
    void validate() const;

    // Lower bound for h' used by the validation, for diagnostics.
    double derivative_lower_bound() const;

  private:
    Kind kind_ = Kind::Identity;
    std::vector<double> coeffs_;
    double epsilon_ = 0.0;
    int freq_ = 0;
    Interval ambient_{0.0, 1.0};

    double u_value(double u) const;
    double u_derivative(double u) const;
};

} // namespace scalefn

#endif
