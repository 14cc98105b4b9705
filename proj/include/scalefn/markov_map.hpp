#ifndef SCALEFN_MARKOV_MAP_HPP
#define SCALEFN_MARKOV_MAP_HPP

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scalefn/diffeo.hpp"
#include "scalefn/interval.hpp"
#include "scalefn/word.hpp"

namespace scalefn {

class Branch;

// f(x) = slope * x + intercept
struct AffineModel {
    double slope = 1.0;
    double intercept = 0.0;
};

// f(x) = value_at_c + direction * coeff * |x - c|^gamma, with c an endpoint
// of the branch domain, gamma > 1, coeff > 0, direction = +-1.
struct PowerLawModel {
    double c = 0.0;
    double gamma = 2.0;
    double coeff = 1.0;
    double value_at_c = 0.0;
    int direction = +1;
};

// h o f_inner o h^{-1} restricted to h(domain of inner).
struct ConjugatedModel {
    std::shared_ptr<const Branch> inner;
    Diffeo diffeo;
};

using BranchModel = std::variant<AffineModel, PowerLawModel, ConjugatedModel>;

class Branch {
  public:
    Branch() = default;
    Branch(int index, Interval domain, BranchModel model);

    int index() const { return index_; }
    const Interval& domain() const { return domain_; }
    const BranchModel& model() const { return model_; }
    int orientation() const { return orientation_; } // +1 increasing, -1 decreasing

    double eval(double x) const;
    double deriv(double x) const;
    double inverse(double y) const;        // no residual polish; see inverse_tol
    double inverse_tol(double y, double tol) const;
    Interval image() const;

    // Pull an interval back through the inverse of this branch with a
    // cancellation-free length update.
    SizedInterval pull(const SizedInterval& j) const;

    // Power-law data when this branch is critical at the given endpoint:
    // the one-sided limit of f'(x)/|x-c|^(gamma-1) taken from inside the
    // domain. nullopt when the branch is affine there.
    struct PowerLawEnd {
        double c;
        double gamma;
        double limit; // signed one-sided limit
    };
    std::optional<PowerLawEnd> power_law_at(double endpoint) const;

  private:
    int index_ = 0;
    Interval domain_{};
    BranchModel model_{AffineModel{}};
    int orientation_ = +1;

    void derive_orientation();
};

struct CriticalPoint {
    double c = 0.0;
    double gamma = 0.0;
    double a_left = 0.0;  // lim_{x->c-} f'(x)/|x-c|^(gamma-1)
    double b_right = 0.0; // lim_{x->c+} f'(x)/|x-c|^(gamma-1)
    int left_branch = -1;
    int right_branch = -1;
};

struct CriticalOrbit {
    double c = 0.0;
    std::vector<double> points;  // orbit of c, deduplicated in order of first visit
    int cycle_start = -1;        // index in points where the periodic part begins
    int period = 0;
};

enum class Side { Left, Right };

using IncidenceMatrix = std::vector<std::vector<int>>;

// Piecewise-monotone Markov map of a compact interval. Immutable once built;
// all member functions are const and safe to call concurrently.
class MarkovMap {
  public:
    const Interval& ambient() const { return ambient_; }
    const std::vector<Branch>& branches() const { return branches_; }
    const Branch& branch(int i) const { return branches_.at(static_cast<size_t>(i)); }
    int branch_count() const { return static_cast<int>(branches_.size()); }
    const IncidenceMatrix& incidence() const { return incidence_; }
    bool admissible(int from, int to) const { return incidence_[static_cast<size_t>(from)][static_cast<size_t>(to)] != 0; }
    const std::vector<CriticalPoint>& critical_points() const { return critical_points_; }
    bool boundary_into_itself() const { return boundary_into_itself_; }

    Symbol symbol(int i) const { return Symbol{i, branch(i).orientation()}; }

    double evaluate(double x, Side side) const;
    double derivative(double x, Side side) const;
    double inverse_branch(int i, double y, double tol) const;

    // Forward orbits of all critical points; throws NotGeometricallyFinite
    // or CycleThroughCritical on failure.
    std::vector<CriticalOrbit> critical_orbit(int max_iter = 64) const;

    // Whether the critical orbits close into cycles avoiding the critical
    // set.  Never throws; the failure reason is reported instead.
    bool geometrically_finite(std::string* reason = nullptr, int max_iter = 64) const;

    // tau = A/B at a critical point; `c` matched against stored criticals.
    double asymmetry(double c) const;
    const CriticalPoint& critical_near(double c) const;

    // Word utilities bound to this map's incidence and orientations.
    bool suitable(const Word& w) const;
    void require_suitable(const Word& w) const; // throws UnsuitableWord / ParseError
    Word word_from_branches(const std::vector<int>& idx) const;

    int branch_containing(double x, Side side) const;

    static constexpr double kAlignTol = 1e-9;
    static constexpr double kPointTol = 1e-9;

  private:
    friend MarkovMap build_map(const Interval&, std::vector<Branch>);
    Interval ambient_{};
    std::vector<Branch> branches_;
    IncidenceMatrix incidence_;
    std::vector<CriticalPoint> critical_points_;
    bool boundary_into_itself_ = false;
};

// Validates the Markov structure and derives incidence + critical data.
// Branch indices are assigned by domain order.
MarkovMap build_map(const Interval& ambient, std::vector<Branch> branches);

// h f h^{-1} with branch domains h(I_i); incidence must be preserved.
MarkovMap conjugate_map(const MarkovMap& map, const Diffeo& h);

} // namespace scalefn

#endif
