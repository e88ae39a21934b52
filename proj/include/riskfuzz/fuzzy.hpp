#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace riskfuzz {

/// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operand domain violated (negative support, carrier out of range, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Operands carry different alpha ladders.
class LadderMismatchError : public Error {
public:
    explicit LadderMismatchError(const std::string& msg) : Error(msg) {}
};

/// Operation on an empty fuzzy set (zero area / zero height).
class EmptySetError : public Error {
public:
    explicit EmptySetError(const std::string& msg) : Error(msg) {}
};

/// Closed interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Ordered set of cut heights used engine-wide. Always starts at 0 and ends
/// at 1; the level count is the accuracy knob for nonlinear operations.
class AlphaLadder {
public:
    AlphaLadder() : levels_{0.0, 0.25, 0.5, 0.75, 1.0} {}
    explicit AlphaLadder(std::vector<double> levels);

    static const AlphaLadder& standard();
    /// Uniform ladder with `n` levels (n >= 2).
    static AlphaLadder uniform(std::size_t n);

    std::span<const double> levels() const { return levels_; }
    std::size_t size() const { return levels_.size(); }
    double operator[](std::size_t i) const { return levels_[i]; }
    bool operator==(const AlphaLadder& other) const { return levels_ == other.levels_; }

private:
    std::vector<double> levels_;
};

class MembershipCurve;

/// Normal convex fuzzy quantity stored as one closed interval per ladder
/// level. cut(0) is the support, cut(1) the core; membership between levels
/// is piecewise linear through the cut endpoints, which is exact for
/// trapezoids and an approximation (refined by the ladder) for products and
/// powers.
class FuzzyNumber {
public:
    /// Defaults to the crisp 0 on the standard ladder.
    FuzzyNumber();

    /// Trapezoid from its four abscissas ls <= lc <= rc <= rs.
    static FuzzyNumber trapezoid(double ls, double lc, double rc, double rs,
                                 const AlphaLadder& ladder = AlphaLadder::standard());
    /// Trapezoid in tolerance notation: core [a, b], left width gamma,
    /// right width delta (support [a - gamma, b + delta]).
    static FuzzyNumber tolerance(double gamma, double a, double b, double delta,
                                 const AlphaLadder& ladder = AlphaLadder::standard());
    static FuzzyNumber triangle(double lo, double peak, double hi,
                                const AlphaLadder& ladder = AlphaLadder::standard());
    static FuzzyNumber singleton(double v,
                                 const AlphaLadder& ladder = AlphaLadder::standard());
    /// From explicit per-level cuts (must be nested).
    static FuzzyNumber from_cuts(AlphaLadder ladder, std::vector<Interval> cuts);

    const AlphaLadder& ladder() const { return ladder_; }
    std::span<const Interval> cuts() const { return cuts_; }
    Interval support() const { return cuts_.front(); }
    Interval core() const { return cuts_.back(); }
    double left_support() const { return cuts_.front().lo; }
    double left_core() const { return cuts_.back().lo; }
    double right_core() const { return cuts_.back().hi; }
    double right_support() const { return cuts_.front().hi; }

    /// Interval {t : mu(t) >= alpha}, interpolated between ladder levels.
    Interval cut(double alpha) const;
    /// Membership at t (piecewise linear through the cut endpoints).
    double membership(double t) const;
    /// True when the number is crisp (support width below eps).
    bool is_singleton(double eps = 1e-12) const;
    bool same_ladder(const FuzzyNumber& other) const { return ladder_ == other.ladder_; }
    /// Re-express on another ladder by sampling the membership polyline.
    FuzzyNumber resample(const AlphaLadder& ladder) const;

    MembershipCurve curve() const;

private:
    FuzzyNumber(AlphaLadder ladder, std::vector<Interval> cuts)
        : ladder_(std::move(ladder)), cuts_(std::move(cuts)) {}

    AlphaLadder ladder_;
    std::vector<Interval> cuts_;
};

// Level-by-level interval arithmetic. add/sub are exact; mul/pow/div require
// the stated domains so the endpoint rule is exact per level.
FuzzyNumber add(const FuzzyNumber& x, const FuzzyNumber& y);
FuzzyNumber sub(const FuzzyNumber& x, const FuzzyNumber& y);
/// Both supports must lie in [0, inf).
FuzzyNumber mul(const FuzzyNumber& x, const FuzzyNumber& y);
/// Divisor support must exclude 0.
FuzzyNumber div(const FuzzyNumber& x, const FuzzyNumber& y);
/// Support must lie in [0, 1]; s >= 0. pow(x, 0) is the crisp 1.
FuzzyNumber pow(const FuzzyNumber& x, double s);
/// Multiply by a crisp nonnegative coefficient.
FuzzyNumber scale(const FuzzyNumber& x, double k);
/// Carrier reflection about 0.5: mu'(t) = mu(1 - t). Support must be in [0, 1].
FuzzyNumber invert(const FuzzyNumber& x);
/// Cut-wise max/min (the extension-principle max/min of fuzzy quantities).
FuzzyNumber cut_max(const FuzzyNumber& x, const FuzzyNumber& y);
FuzzyNumber cut_min(const FuzzyNumber& x, const FuzzyNumber& y);
/// Clamp every cut into [lo, hi].
FuzzyNumber clamp(const FuzzyNumber& x, double lo, double hi);

double centroid(const FuzzyNumber& x);

/// General (possibly sub-normal) fuzzy set as a piecewise-linear membership
/// polyline. Used for inference aggregation and area integrals; breakpoints
/// and segment intersections are handled exactly.
class MembershipCurve {
public:
    struct Point {
        double x;
        double mu;
    };

    MembershipCurve() = default;
    explicit MembershipCurve(std::vector<Point> pts);

    static MembershipCurve trapezoid(double ls, double lc, double rc, double rs,
                                     double height = 1.0);

    const std::vector<Point>& points() const { return pts_; }
    bool empty() const { return pts_.empty(); }
    double value(double x) const;
    double height() const;
    double area() const;
    /// First moment: integral of x * mu(x).
    double moment() const;
    /// Center of gravity. Throws EmptySetError on zero area.
    double centroid() const;
    /// x of the maximal membership plateau midpoint (mean-of-maxima).
    double mean_of_maxima() const;

    MembershipCurve scaled(double c) const;
    MembershipCurve clipped(double alpha) const;

    static MembershipCurve min_of(const MembershipCurve& a, const MembershipCurve& b);
    static MembershipCurve max_of(const MembershipCurve& a, const MembershipCurve& b);

private:
    std::vector<Point> pts_;
};

/// Pointwise multiply the membership by c in [0, 1] (sub-normal result).
MembershipCurve scale_membership(const FuzzyNumber& x, double c);

} // namespace riskfuzz
