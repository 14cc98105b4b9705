#include "scalefn/markov_map.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "scalefn/errors.hpp"

namespace scalefn {

namespace {

// 5-point Gauss-Legendre on [-1,1].
constexpr double kGlNode[5] = {0.0, -0.5384693101056831, 0.5384693101056831,
                               -0.9061798459386640, 0.9061798459386640};
constexpr double kGlWeight[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                 0.2369268850561891, 0.2369268850561891};

// Length of phi([lo, lo+len]) for smooth monotone phi.  Direct endpoint
// subtraction once the interval is large enough to carry precision,
// quadrature of |phi'| below that.
template <typename Value, typename Deriv>
double monotone_image_length(const Value& phi, const Deriv& dphi, double lo, double len,
                             double scale) {
    if (len <= 0.0) return 0.0;
    if (len > 1e-4 * scale) return std::abs(phi(lo + len) - phi(lo));
    const double mid = lo + 0.5 * len;
    const double half = 0.5 * len;
    double acc = 0.0;
    for (int i = 0; i < 5; ++i) acc += kGlWeight[i] * std::abs(dphi(mid + half * kGlNode[i]));
    return acc * half;
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

// u^(1/gamma) with Newton polish so that preimages of partition endpoints
// land on partition endpoints.  Raw pow() is off by an ulp on cases like
// 8^(1/3), and a gamma-th root amplifies ulp noise near u = 0 to ~1e-5.
double nth_root(double u, double gamma) {
    if (u <= 0.0) return 0.0;
    double r = std::pow(u, 1.0 / gamma);
    for (int it = 0; it < 2; ++it) {
        const double rg1 = std::pow(r, gamma - 1.0);
        r -= (rg1 * r - u) / (gamma * rg1);
    }
    return r;
}

} // namespace

Branch::Branch(int index, Interval domain, BranchModel model)
    : index_(index), domain_(domain), model_(std::move(model)) {
    derive_orientation();
}

void Branch::derive_orientation() {
    if (const auto* a = std::get_if<AffineModel>(&model_)) {
        orientation_ = a->slope > 0.0 ? +1 : -1;
    } else if (const auto* p = std::get_if<PowerLawModel>(&model_)) {
        const int side = std::abs(p->c - domain_.lo) <= std::abs(p->c - domain_.hi) ? +1 : -1;
        orientation_ = p->direction * side;
    } else {
        const auto& c = std::get<ConjugatedModel>(model_);
        orientation_ = c.inner->orientation();
    }
}

double Branch::eval(double x) const {
    if (const auto* a = std::get_if<AffineModel>(&model_)) return a->slope * x + a->intercept;
    if (const auto* p = std::get_if<PowerLawModel>(&model_))
        return p->value_at_c + p->direction * p->coeff * std::pow(std::abs(x - p->c), p->gamma);
    const auto& c = std::get<ConjugatedModel>(model_);
    return c.diffeo.value(c.inner->eval(c.diffeo.inverse(x)));
}

double Branch::deriv(double x) const {
    if (const auto* a = std::get_if<AffineModel>(&model_)) {
        (void)x;
        return a->slope;
    }
    if (const auto* p = std::get_if<PowerLawModel>(&model_)) {
        const double r = std::abs(x - p->c);
        if (r == 0.0) return 0.0;
        return p->direction * p->coeff * p->gamma * std::pow(r, p->gamma - 1.0) * sign_of(x - p->c);
    }
    const auto& c = std::get<ConjugatedModel>(model_);
    const double xin = c.diffeo.inverse(x);
    return c.diffeo.derivative(c.inner->eval(xin)) * c.inner->deriv(xin) / c.diffeo.derivative(xin);
}

Interval Branch::image() const {
    double ya, yb;
    if (const auto* p = std::get_if<PowerLawModel>(&model_)) {
        const double far = std::abs(p->c - domain_.lo) <= std::abs(p->c - domain_.hi) ? domain_.hi
                                                                                      : domain_.lo;
        ya = p->value_at_c;
        yb = p->value_at_c + p->direction * p->coeff * std::pow(std::abs(far - p->c), p->gamma);
    } else if (const auto* a = std::get_if<AffineModel>(&model_)) {
        ya = a->slope * domain_.lo + a->intercept;
        yb = a->slope * domain_.hi + a->intercept;
    } else {
        const auto& c = std::get<ConjugatedModel>(model_);
        Interval inner = c.inner->image();
        ya = c.diffeo.value(inner.lo);
        yb = c.diffeo.value(inner.hi);
    }
    return ya <= yb ? Interval{ya, yb} : Interval{yb, ya};
}

double Branch::inverse(double y) const {
    if (const auto* a = std::get_if<AffineModel>(&model_)) return (y - a->intercept) / a->slope;
    if (const auto* p = std::get_if<PowerLawModel>(&model_)) {
        double u = (y - p->value_at_c) * p->direction / p->coeff;
        const double noise =
            4.0 * 2.220446049250313e-16 * (std::abs(y) + std::abs(p->value_at_c)) / p->coeff;
        if (u < noise) u = 0.0;
        const int side = std::abs(p->c - domain_.lo) <= std::abs(p->c - domain_.hi) ? +1 : -1;
        return p->c + side * nth_root(u, p->gamma);
    }
    const auto& c = std::get<ConjugatedModel>(model_);
    return c.diffeo.value(c.inner->inverse(c.diffeo.inverse(y)));
}

double Branch::inverse_tol(double y, double tol) const {
    double x = clamp_to(inverse(y), domain_);
    if (std::holds_alternative<ConjugatedModel>(model_)) {
        // polish if composition round-off exceeds the requested residual
        if (std::abs(eval(x) - y) > tol) {
            double a = domain_.lo, b = domain_.hi;
            const bool inc = orientation_ > 0;
            for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(b)); ++it) {
                const double fx = eval(x) - y;
                if (std::abs(fx) <= 0.5 * tol) break;
                if ((fx > 0.0) == inc) b = x;
                else a = x;
                double d = deriv(x);
                double next = std::abs(d) > 1e-12 ? x - fx / d : 0.5 * (a + b);
                x = (next > a && next < b) ? next : 0.5 * (a + b);
            }
        }
    }
    return x;
}

std::optional<Branch::PowerLawEnd> Branch::power_law_at(double endpoint) const {
    if (const auto* p = std::get_if<PowerLawModel>(&model_)) {
        if (std::abs(endpoint - p->c) > MarkovMap::kPointTol) return std::nullopt;
        const int side = std::abs(p->c - domain_.lo) <= std::abs(p->c - domain_.hi) ? +1 : -1;
        return PowerLawEnd{p->c, p->gamma, p->direction * p->coeff * p->gamma * side};
    }
    if (const auto* cm = std::get_if<ConjugatedModel>(&model_)) {
        const double inner_pt = cm->diffeo.inverse(endpoint);
        auto inner = cm->inner->power_law_at(inner_pt);
        if (!inner) return std::nullopt;
        // g = h f h^{-1}:  g'(y)/|y-h(c)|^(gamma-1) -> A h'(f(c)) / h'(c)^gamma
        const double hc = cm->diffeo.derivative(inner->c);
        const double hfc = cm->diffeo.derivative(cm->inner->eval(inner->c));
        const double factor = hfc / std::pow(hc, inner->gamma);
        return PowerLawEnd{cm->diffeo.value(inner->c), inner->gamma, inner->limit * factor};
    }
    return std::nullopt;
}

SizedInterval Branch::pull(const SizedInterval& j) const {
    if (const auto* a = std::get_if<AffineModel>(&model_)) {
        const double x1 = (j.lo - a->intercept) / a->slope;
        const double x2 = (j.hi - a->intercept) / a->slope;
        return {std::min(x1, x2), std::max(x1, x2), j.len / std::abs(a->slope)};
    }
    if (const auto* p = std::get_if<PowerLawModel>(&model_)) {
        const double invg = 1.0 / p->gamma;
        const double u1 = (j.lo - p->value_at_c) * p->direction / p->coeff;
        const double u2 = (j.hi - p->value_at_c) * p->direction / p->coeff;
        double umin = std::min(u1, u2);
        const double noise = 4.0 * 2.220446049250313e-16 *
                             (std::abs(j.lo) + std::abs(j.hi) + std::abs(p->value_at_c)) / p->coeff;
        if (umin < noise) umin = 0.0;
        const double uw = j.len / p->coeff; // exact width, no cancellation
        const double umax = umin + uw;
        const double rmin = nth_root(umin, p->gamma);
        const double rmax = nth_root(umax, p->gamma);
        double len;
        if (umin == 0.0) len = rmax;
        else if (uw < 0.25 * umin) len = rmin * std::abs(std::expm1(std::log1p(uw / umin) * invg));
        else len = rmax - rmin;
        const int side = std::abs(p->c - domain_.lo) <= std::abs(p->c - domain_.hi) ? +1 : -1;
        if (side > 0) return {p->c + rmin, p->c + rmax, len};
        return {p->c - rmax, p->c - rmin, len};
    }
    const auto& cm = std::get<ConjugatedModel>(model_);
    const Diffeo& h = cm.diffeo;
    const double scale = h.ambient().length();
    // stage 1: through h^{-1}
    SizedInterval mid;
    mid.lo = h.inverse(j.lo);
    mid.hi = h.inverse(j.hi);
    mid.len = monotone_image_length([&](double y) { return h.inverse(y); },
                                    [&](double y) { return 1.0 / h.derivative(h.inverse(y)); },
                                    j.lo, j.len, scale);
    // stage 2: through the inner inverse branch
    SizedInterval inner = cm.inner->pull(mid);
    // stage 3: forward through h
    SizedInterval out;
    out.lo = h.value(inner.lo);
    out.hi = h.value(inner.hi);
    out.len = monotone_image_length([&](double x) { return h.value(x); },
                                    [&](double x) { return h.derivative(x); }, inner.lo, inner.len,
                                    scale);
    return out;
}

// ---------------------------------------------------------------------------

double MarkovMap::evaluate(double x, Side side) const {
    return branch(branch_containing(x, side)).eval(x);
}

double MarkovMap::derivative(double x, Side side) const {
    return branch(branch_containing(x, side)).deriv(x);
}

double MarkovMap::inverse_branch(int i, double y, double tol) const {
    const Branch& b = branch(i);
    Interval im = b.image();
    const double slack = std::max(tol, kAlignTol);
    if (!im.contains(y, slack)) {
        std::ostringstream os;
        os << "value " << y << " is not in the image of branch " << i;
        throw NotInImage(os.str());
    }
    return b.inverse_tol(clamp_to(y, im), tol);
}

int MarkovMap::branch_containing(double x, Side side) const {
    const double tol = 1e-12 * std::max(1.0, std::abs(ambient_.hi) + std::abs(ambient_.lo));
    if (x < ambient_.lo - tol || x > ambient_.hi + tol) {
        std::ostringstream os;
        os << "point " << x << " is outside the ambient interval";
        throw OutOfDomain(os.str());
    }
    int lo_match = -1, hi_match = -1, interior = -1;
    for (const Branch& b : branches_) {
        if (x > b.domain().lo + tol && x < b.domain().hi - tol) {
            interior = b.index();
            break;
        }
        if (std::abs(x - b.domain().lo) <= tol) lo_match = b.index();
        if (std::abs(x - b.domain().hi) <= tol) hi_match = b.index();
    }
    if (interior >= 0) return interior;
    if (side == Side::Left && hi_match >= 0) return hi_match;
    if (side == Side::Right && lo_match >= 0) return lo_match;
    if (lo_match >= 0) return lo_match;
    if (hi_match >= 0) return hi_match;
    throw OutOfDomain("point is not covered by any branch domain");
}

bool MarkovMap::suitable(const Word& w) const {
    if (w.empty()) return false;
    for (size_t k = 0; k < w.size(); ++k) {
        if (w[k].branch < 0 || w[k].branch >= branch_count()) return false;
        if (w[k].sign != branch(w[k].branch).orientation()) return false;
        if (k > 0 && !admissible(w[k - 1].branch, w[k].branch)) return false;
    }
    return true;
}

void MarkovMap::require_suitable(const Word& w) const {
    if (w.empty()) throw UnsuitableWord("empty word");
    for (size_t k = 0; k < w.size(); ++k) {
        if (w[k].branch < 0 || w[k].branch >= branch_count())
            throw ParseError("symbol index " + std::to_string(w[k].branch) + " out of range");
        if (w[k].sign != branch(w[k].branch).orientation())
            throw ParseError("symbol " + format_symbol(w[k]) +
                             " has the wrong sign for its branch orientation");
        if (k > 0 && !admissible(w[k - 1].branch, w[k].branch))
            throw UnsuitableWord("transition " + format_symbol(w[k - 1]) + " -> " +
                                 format_symbol(w[k]) + " is not admissible");
    }
}

Word MarkovMap::word_from_branches(const std::vector<int>& idx) const {
    Word w;
    w.reserve(idx.size());
    for (int i : idx) w.push_back(symbol(i));
    return w;
}

std::vector<CriticalOrbit> MarkovMap::critical_orbit(int max_iter) const {
    std::vector<CriticalOrbit> out;
    const double tol = kPointTol;
    for (const CriticalPoint& cp : critical_points_) {
        CriticalOrbit orbit;
        orbit.c = cp.c;
        double x = cp.c;
        bool closed = false;
        for (int it = 0; it <= max_iter; ++it) {
            // identify with an earlier orbit point
            int found = -1;
            for (size_t j = 0; j < orbit.points.size(); ++j)
                if (std::abs(orbit.points[j] - x) <= tol) {
                    found = static_cast<int>(j);
                    break;
                }
            if (found >= 0) {
                orbit.cycle_start = found;
                orbit.period = static_cast<int>(orbit.points.size()) - found;
                closed = true;
                break;
            }
            orbit.points.push_back(x);
            // forward step; at the upper ambient endpoint only the left side exists
            const Side side =
                std::abs(x - ambient_.hi) <= tol * std::max(1.0, std::abs(ambient_.hi))
                    ? Side::Left
                    : Side::Right;
            x = evaluate(x, side);
        }
        if (!closed)
            throw NotGeometricallyFinite("critical orbit did not stabilize within " +
                                         std::to_string(max_iter) + " steps");
        for (size_t j = static_cast<size_t>(orbit.cycle_start); j < orbit.points.size(); ++j)
            for (const CriticalPoint& other : critical_points_)
                if (std::abs(orbit.points[j] - other.c) <= tol)
                    throw CycleThroughCritical("critical point lies on a periodic cycle");
        out.push_back(std::move(orbit));
    }
    return out;
}

bool MarkovMap::geometrically_finite(std::string* reason, int max_iter) const {
    try {
        critical_orbit(max_iter);
        return true;
    } catch (const Error& e) {
        if (reason) *reason = e.what();
        return false;
    }
}

const CriticalPoint& MarkovMap::critical_near(double c) const {
    for (const CriticalPoint& cp : critical_points_)
        if (std::abs(cp.c - c) <= kPointTol) return cp;
    throw OutOfDomain("no critical point near the given coordinate");
}

double MarkovMap::asymmetry(double c) const {
    const CriticalPoint& cp = critical_near(c);
    return cp.a_left / cp.b_right;
}

// ---------------------------------------------------------------------------

MarkovMap build_map(const Interval& ambient, std::vector<Branch> branches) {
    if (!(ambient.length() > 0.0)) throw ConfigError("ambient interval is empty");
    if (branches.empty()) throw ConfigError("map needs at least one branch");
    std::sort(branches.begin(), branches.end(),
              [](const Branch& a, const Branch& b) { return a.domain().lo < b.domain().lo; });
    // reindex by position
    for (size_t i = 0; i < branches.size(); ++i)
        branches[i] = Branch(static_cast<int>(i), branches[i].domain(), branches[i].model());

    const double tol = MarkovMap::kAlignTol;
    const double scale = std::max(1.0, ambient.length());

    for (const Branch& b : branches) {
        if (!(b.domain().length() > 0.0))
            throw ConfigError("branch " + std::to_string(b.index()) + " has an empty domain");
        if (const auto* a = std::get_if<AffineModel>(&b.model())) {
            if (a->slope == 0.0)
                throw NonMonotoneError("affine branch " + std::to_string(b.index()) +
                                       " has zero slope");
        } else if (const auto* p = std::get_if<PowerLawModel>(&b.model())) {
            if (!(p->gamma > 1.0)) throw ConfigError("power-law exponent must exceed 1");
            if (!(p->coeff > 0.0)) throw ConfigError("power-law coefficient must be positive");
            const bool at_lo = std::abs(p->c - b.domain().lo) <= tol;
            const bool at_hi = std::abs(p->c - b.domain().hi) <= tol;
            if (at_lo == at_hi)
                throw ConfigError("power-law point must sit at exactly one domain endpoint");
        } else {
            std::get<ConjugatedModel>(b.model()).diffeo.validate();
        }
    }

    // tiling of the ambient interval
    if (std::abs(branches.front().domain().lo - ambient.lo) > tol * scale)
        throw GapError("branch domains do not start at the ambient left endpoint");
    if (std::abs(branches.back().domain().hi - ambient.hi) > tol * scale)
        throw GapError("branch domains do not reach the ambient right endpoint");
    for (size_t i = 0; i + 1 < branches.size(); ++i) {
        const double gap = branches[i + 1].domain().lo - branches[i].domain().hi;
        if (gap > tol * scale) throw GapError("branch domains leave a gap in the ambient interval");
        if (gap < -tol * scale) throw OverlapError("branch domain interiors overlap");
    }

    // strict monotonicity, sampled
    for (const Branch& b : branches) {
        const int n = 64;
        double prev = b.eval(b.domain().lo);
        for (int i = 1; i <= n; ++i) {
            const double x = b.domain().lo + b.domain().length() * i / n;
            const double y = b.eval(x);
            if ((y - prev) * b.orientation() <= 0.0)
                throw NonMonotoneError("branch " + std::to_string(b.index()) +
                                       " is not strictly monotone");
            prev = y;
        }
    }

    // image endpoints must land on partition points
    std::vector<double> cuts;
    for (const Branch& b : branches) cuts.push_back(b.domain().lo);
    cuts.push_back(branches.back().domain().hi);
    auto aligned = [&](double y) {
        for (double c : cuts)
            if (std::abs(y - c) <= tol * scale) return true;
        return false;
    };
    IncidenceMatrix incidence(branches.size(), std::vector<int>(branches.size(), 0));
    for (const Branch& b : branches) {
        const Interval im = b.image();
        if (!aligned(im.lo) || !aligned(im.hi))
            throw AlignmentError("image of branch " + std::to_string(b.index()) +
                                 " does not align with partition endpoints");
        for (const Branch& other : branches)
            if (other.domain().lo >= im.lo - tol * scale && other.domain().hi <= im.hi + tol * scale)
                incidence[static_cast<size_t>(b.index())][static_cast<size_t>(other.index())] = 1;
        bool any = false;
        for (int v : incidence[static_cast<size_t>(b.index())]) any = any || v != 0;
        if (!any)
            throw AlignmentError("image of branch " + std::to_string(b.index()) +
                                 " covers no partition interval");
    }

    // critical points at interior shared endpoints
    std::vector<CriticalPoint> criticals;
    for (size_t i = 0; i + 1 < branches.size(); ++i) {
        const double p = branches[i].domain().hi;
        auto left = branches[i].power_law_at(p);
        auto right = branches[i + 1].power_law_at(p);
        if (!left && !right) continue;
        if (!left || !right)
            throw ConfigError("power-law endpoint at " + std::to_string(p) +
                              " lacks a matching neighbor branch");
        const double vl = branches[i].eval(p), vr = branches[i + 1].eval(p);
        if (std::abs(vl - vr) > tol * scale)
            throw ConfigError("map is discontinuous at its critical point");
        CriticalPoint cp;
        cp.c = p;
        cp.gamma = left->gamma;
        cp.a_left = left->limit;
        cp.b_right = right->limit;
        cp.left_branch = static_cast<int>(i);
        cp.right_branch = static_cast<int>(i + 1);
        if (std::abs(left->gamma - right->gamma) > 1e-12)
            cp.gamma = -1.0; // mismatched sides; asymmetry() rejects this
        criticals.push_back(cp);
    }
    // a power-law point at the ambient boundary has no second side
    if (branches.front().power_law_at(ambient.lo) || branches.back().power_law_at(ambient.hi))
        throw ConfigError("power-law critical point at the ambient boundary is not supported");

    MarkovMap map;
    map.ambient_ = ambient;
    map.branches_ = std::move(branches);
    map.incidence_ = std::move(incidence);
    map.critical_points_ = std::move(criticals);

    const double flo = map.branches_.front().eval(ambient.lo);
    const double fhi = map.branches_.back().eval(ambient.hi);
    auto on_boundary = [&](double y) {
        return std::abs(y - ambient.lo) <= tol * scale || std::abs(y - ambient.hi) <= tol * scale;
    };
    map.boundary_into_itself_ = on_boundary(flo) && on_boundary(fhi);
    if (!map.critical_points_.empty() && !map.boundary_into_itself_)
        throw AlignmentError(
            "maps with critical points must send the ambient boundary into itself");
    return map;
}

MarkovMap conjugate_map(const MarkovMap& map, const Diffeo& h) {
    h.validate();
    if (h.kind() == Diffeo::Kind::Identity) return map;
    if (std::abs(h.ambient().lo - map.ambient().lo) > 1e-12 ||
        std::abs(h.ambient().hi - map.ambient().hi) > 1e-12)
        throw ConfigError("diffeomorphism is bound to a different ambient interval");

    std::vector<Branch> branches;
    branches.reserve(map.branches().size());
    for (const Branch& b : map.branches()) {
        Interval dom{h.value(b.domain().lo), h.value(b.domain().hi)};
        auto inner = std::make_shared<Branch>(b);
        branches.emplace_back(b.index(), dom, ConjugatedModel{std::move(inner), h});
    }
    MarkovMap out = build_map(map.ambient(), std::move(branches));
    if (out.incidence() != map.incidence())
        throw IncompatibleCombinatorics("conjugation changed the incidence matrix");
    return out;
}

} // namespace scalefn
