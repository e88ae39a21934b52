#include "riskfuzz/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace riskfuzz {

namespace {

std::string interval_str(const Interval& iv) {
    std::ostringstream os;
    os << "[" << iv.lo << ", " << iv.hi << "]";
    return os.str();
}

void check_nested(const std::vector<Interval>& cuts) {
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        if (!(cuts[i].lo <= cuts[i].hi)) {
            throw DomainError("fuzzy number cut " + interval_str(cuts[i]) + " is inverted");
        }
        if (i > 0 && (cuts[i].lo < cuts[i - 1].lo - 1e-12 || cuts[i].hi > cuts[i - 1].hi + 1e-12)) {
            throw DomainError("fuzzy number cuts are not nested at level index " + std::to_string(i));
        }
    }
}

void require_same_ladder(const FuzzyNumber& x, const FuzzyNumber& y, const char* op) {
    if (!x.same_ladder(y)) {
        throw LadderMismatchError(std::string(op) + ": operands use different alpha ladders "
                                  "(resample one of them first)");
    }
}

} // namespace

AlphaLadder::AlphaLadder(std::vector<double> levels) : levels_(std::move(levels)) {
    if (levels_.size() < 2) {
        throw DomainError("alpha ladder needs at least 2 levels");
    }
    if (levels_.front() != 0.0 || levels_.back() != 1.0) {
        throw DomainError("alpha ladder must start at 0 and end at 1");
    }
    for (std::size_t i = 1; i < levels_.size(); ++i) {
        if (levels_[i] <= levels_[i - 1]) {
            throw DomainError("alpha ladder levels must be strictly increasing");
        }
    }
}

const AlphaLadder& AlphaLadder::standard() {
    static const AlphaLadder ladder;
    return ladder;
}

AlphaLadder AlphaLadder::uniform(std::size_t n) {
    if (n < 2) {
        throw DomainError("alpha ladder needs at least 2 levels");
    }
    std::vector<double> lv(n);
    for (std::size_t i = 0; i < n; ++i) {
        lv[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    }
    lv.back() = 1.0;
    return AlphaLadder(std::move(lv));
}

FuzzyNumber::FuzzyNumber()
    : ladder_(AlphaLadder::standard()),
      cuts_(AlphaLadder::standard().size(), Interval{0.0, 0.0}) {}

FuzzyNumber FuzzyNumber::trapezoid(double ls, double lc, double rc, double rs,
                                   const AlphaLadder& ladder) {
    if (!(ls <= lc && lc <= rc && rc <= rs)) {
        throw DomainError("trapezoid abscissas must satisfy ls <= lc <= rc <= rs");
    }
    std::vector<Interval> cuts;
    cuts.reserve(ladder.size());
    for (double a : ladder.levels()) {
        cuts.push_back({ls + (lc - ls) * a, rs - (rs - rc) * a});
    }
    return FuzzyNumber(ladder, std::move(cuts));
}

FuzzyNumber FuzzyNumber::tolerance(double gamma, double a, double b, double delta,
                                   const AlphaLadder& ladder) {
    if (gamma < 0 || delta < 0) {
        throw DomainError("tolerance widths must be nonnegative");
    }
    return trapezoid(a - gamma, a, b, b + delta, ladder);
}

FuzzyNumber FuzzyNumber::triangle(double lo, double peak, double hi, const AlphaLadder& ladder) {
    return trapezoid(lo, peak, peak, hi, ladder);
}

FuzzyNumber FuzzyNumber::singleton(double v, const AlphaLadder& ladder) {
    return trapezoid(v, v, v, v, ladder);
}

FuzzyNumber FuzzyNumber::from_cuts(AlphaLadder ladder, std::vector<Interval> cuts) {
    if (cuts.size() != ladder.size()) {
        throw DomainError("cut count must match ladder size");
    }
    check_nested(cuts);
    return FuzzyNumber(std::move(ladder), std::move(cuts));
}

Interval FuzzyNumber::cut(double alpha) const {
    if (alpha < 0.0 || alpha > 1.0) {
        throw DomainError("alpha must lie in [0, 1]");
    }
    auto lv = ladder_.levels();
    auto it = std::lower_bound(lv.begin(), lv.end(), alpha);
    std::size_t hi = static_cast<std::size_t>(it - lv.begin());
    if (hi == 0) {
        return cuts_.front();
    }
    if (lv[hi] == alpha) {
        return cuts_[hi];
    }
    std::size_t lo = hi - 1;
    double t = (alpha - lv[lo]) / (lv[hi] - lv[lo]);
    return {cuts_[lo].lo + t * (cuts_[hi].lo - cuts_[lo].lo),
            cuts_[lo].hi + t * (cuts_[hi].hi - cuts_[lo].hi)};
}

double FuzzyNumber::membership(double t) const {
    const Interval sup = support();
    if (t < sup.lo || t > sup.hi) {
        return 0.0;
    }
    const Interval cor = core();
    if (t >= cor.lo && t <= cor.hi) {
        return 1.0;
    }
    auto lv = ladder_.levels();
    if (t < cor.lo) {
        // left edge: lo(alpha) is nondecreasing; find the bracketing levels
        for (std::size_t i = 0; i + 1 < cuts_.size(); ++i) {
            double x0 = cuts_[i].lo, x1 = cuts_[i + 1].lo;
            if (t >= x0 && t <= x1) {
                if (x1 == x0) {
                    return lv[i + 1];
                }
                return lv[i] + (lv[i + 1] - lv[i]) * (t - x0) / (x1 - x0);
            }
        }
        return 0.0;
    }
    for (std::size_t i = 0; i + 1 < cuts_.size(); ++i) {
        double x0 = cuts_[i].hi, x1 = cuts_[i + 1].hi;
        if (t <= x0 && t >= x1) {
            if (x1 == x0) {
                return lv[i + 1];
            }
            return lv[i] + (lv[i + 1] - lv[i]) * (x0 - t) / (x0 - x1);
        }
    }
    return 0.0;
}

bool FuzzyNumber::is_singleton(double eps) const {
    return support().hi - support().lo <= eps;
}

FuzzyNumber FuzzyNumber::resample(const AlphaLadder& ladder) const {
    std::vector<Interval> cuts;
    cuts.reserve(ladder.size());
    for (double a : ladder.levels()) {
        cuts.push_back(cut(a));
    }
    return FuzzyNumber(ladder, std::move(cuts));
}

MembershipCurve FuzzyNumber::curve() const {
    std::vector<MembershipCurve::Point> pts;
    auto lv = ladder_.levels();
    for (std::size_t i = 0; i < cuts_.size(); ++i) {
        pts.push_back({cuts_[i].lo, lv[i]});
    }
    for (std::size_t i = cuts_.size(); i-- > 0;) {
        pts.push_back({cuts_[i].hi, lv[i]});
    }
    return MembershipCurve(std::move(pts));
}

namespace {

template <typename F>
FuzzyNumber cutwise(const FuzzyNumber& x, const FuzzyNumber& y, F f) {
    std::vector<Interval> cuts;
    cuts.reserve(x.cuts().size());
    for (std::size_t i = 0; i < x.cuts().size(); ++i) {
        cuts.push_back(f(x.cuts()[i], y.cuts()[i]));
    }
    return FuzzyNumber::from_cuts(x.ladder(), std::move(cuts));
}

} // namespace

FuzzyNumber add(const FuzzyNumber& x, const FuzzyNumber& y) {
    require_same_ladder(x, y, "add");
    return cutwise(x, y, [](Interval a, Interval b) { return Interval{a.lo + b.lo, a.hi + b.hi}; });
}

FuzzyNumber sub(const FuzzyNumber& x, const FuzzyNumber& y) {
    require_same_ladder(x, y, "sub");
    return cutwise(x, y, [](Interval a, Interval b) { return Interval{a.lo - b.hi, a.hi - b.lo}; });
}

FuzzyNumber mul(const FuzzyNumber& x, const FuzzyNumber& y) {
    require_same_ladder(x, y, "mul");
    if (x.left_support() < 0 || y.left_support() < 0) {
        throw DomainError("mul requires nonnegative supports");
    }
    return cutwise(x, y, [](Interval a, Interval b) { return Interval{a.lo * b.lo, a.hi * b.hi}; });
}

FuzzyNumber div(const FuzzyNumber& x, const FuzzyNumber& y) {
    require_same_ladder(x, y, "div");
    if (x.left_support() < 0) {
        throw DomainError("div requires a nonnegative dividend support");
    }
    if (y.left_support() <= 0) {
        throw DomainError("div requires a strictly positive divisor support");
    }
    return cutwise(x, y, [](Interval a, Interval b) { return Interval{a.lo / b.hi, a.hi / b.lo}; });
}

FuzzyNumber pow(const FuzzyNumber& x, double s) {
    if (s < 0) {
        throw DomainError("pow exponent must be nonnegative");
    }
    if (x.left_support() < -1e-12 || x.right_support() > 1.0 + 1e-12) {
        throw DomainError("pow requires support within [0, 1]");
    }
    if (s == 0.0) {
        return FuzzyNumber::singleton(1.0, x.ladder());
    }
    std::vector<Interval> cuts;
    cuts.reserve(x.cuts().size());
    for (Interval c : x.cuts()) {
        cuts.push_back({std::pow(std::max(c.lo, 0.0), s), std::pow(std::min(c.hi, 1.0), s)});
    }
    return FuzzyNumber::from_cuts(x.ladder(), std::move(cuts));
}

FuzzyNumber scale(const FuzzyNumber& x, double k) {
    if (k < 0) {
        throw DomainError("scale coefficient must be nonnegative");
    }
    std::vector<Interval> cuts;
    cuts.reserve(x.cuts().size());
    for (Interval c : x.cuts()) {
        cuts.push_back({c.lo * k, c.hi * k});
    }
    return FuzzyNumber::from_cuts(x.ladder(), std::move(cuts));
}

FuzzyNumber invert(const FuzzyNumber& x) {
    if (x.left_support() < -1e-12 || x.right_support() > 1.0 + 1e-12) {
        throw DomainError("invert requires support within [0, 1]");
    }
    std::vector<Interval> cuts;
    cuts.reserve(x.cuts().size());
    for (Interval c : x.cuts()) {
        cuts.push_back({1.0 - c.hi, 1.0 - c.lo});
    }
    return FuzzyNumber::from_cuts(x.ladder(), std::move(cuts));
}

FuzzyNumber cut_max(const FuzzyNumber& x, const FuzzyNumber& y) {
    require_same_ladder(x, y, "cut_max");
    return cutwise(x, y, [](Interval a, Interval b) {
        return Interval{std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
    });
}

FuzzyNumber cut_min(const FuzzyNumber& x, const FuzzyNumber& y) {
    require_same_ladder(x, y, "cut_min");
    return cutwise(x, y, [](Interval a, Interval b) {
        return Interval{std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
    });
}

FuzzyNumber clamp(const FuzzyNumber& x, double lo, double hi) {
    std::vector<Interval> cuts;
    cuts.reserve(x.cuts().size());
    for (Interval c : x.cuts()) {
        cuts.push_back({std::clamp(c.lo, lo, hi), std::clamp(c.hi, lo, hi)});
    }
    return FuzzyNumber::from_cuts(x.ladder(), std::move(cuts));
}

double centroid(const FuzzyNumber& x) {
    if (x.is_singleton()) {
        return 0.5 * (x.left_support() + x.right_support());
    }
    return x.curve().centroid();
}

MembershipCurve::MembershipCurve(std::vector<Point> pts) : pts_(std::move(pts)) {
    for (std::size_t i = 1; i < pts_.size(); ++i) {
        if (pts_[i].x < pts_[i - 1].x - 1e-12) {
            throw DomainError("membership curve abscissas must be nondecreasing");
        }
    }
}

MembershipCurve MembershipCurve::trapezoid(double ls, double lc, double rc, double rs,
                                           double height) {
    std::vector<Point> pts;
    if (ls < lc) {
        pts.push_back({ls, 0.0});
    }
    pts.push_back({lc, height});
    if (rc > lc) {
        pts.push_back({rc, height});
    }
    if (rs > rc) {
        pts.push_back({rs, 0.0});
    }
    return MembershipCurve(std::move(pts));
}

double MembershipCurve::value(double x) const {
    if (pts_.empty()) {
        return 0.0;
    }
    if (x < pts_.front().x || x > pts_.back().x) {
        return 0.0;
    }
    auto it = std::lower_bound(pts_.begin(), pts_.end(), x,
                               [](const Point& p, double v) { return p.x < v; });
    if (it != pts_.end() && it->x == x) {
        // vertical runs (duplicate abscissas) take the max membership
        double mu = it->mu;
        for (auto j = it; j != pts_.end() && j->x == x; ++j) {
            mu = std::max(mu, j->mu);
        }
        for (auto j = it; j != pts_.begin() && (j - 1)->x == x; --j) {
            mu = std::max(mu, (j - 1)->mu);
        }
        return mu;
    }
    if (it == pts_.begin() || it == pts_.end()) {
        return 0.0;
    }
    const Point& p1 = *it;
    const Point& p0 = *(it - 1);
    double t = (x - p0.x) / (p1.x - p0.x);
    return p0.mu + t * (p1.mu - p0.mu);
}

double MembershipCurve::height() const {
    double h = 0.0;
    for (const Point& p : pts_) {
        h = std::max(h, p.mu);
    }
    return h;
}

double MembershipCurve::area() const {
    double s = 0.0;
    for (std::size_t i = 1; i < pts_.size(); ++i) {
        s += 0.5 * (pts_[i - 1].mu + pts_[i].mu) * (pts_[i].x - pts_[i - 1].x);
    }
    return s;
}

double MembershipCurve::moment() const {
    double s = 0.0;
    for (std::size_t i = 1; i < pts_.size(); ++i) {
        double x0 = pts_[i - 1].x, y0 = pts_[i - 1].mu;
        double x1 = pts_[i].x, y1 = pts_[i].mu;
        s += (x1 - x0) * (x0 * (2 * y0 + y1) + x1 * (y0 + 2 * y1)) / 6.0;
    }
    return s;
}

double MembershipCurve::centroid() const {
    double a = area();
    if (a <= 1e-12) {
        throw EmptySetError("centroid of an (almost) empty fuzzy set");
    }
    return moment() / a;
}

double MembershipCurve::mean_of_maxima() const {
    if (pts_.empty()) {
        throw EmptySetError("mean_of_maxima of an empty fuzzy set");
    }
    double h = height();
    if (h <= 1e-12) {
        throw EmptySetError("mean_of_maxima of a zero-height fuzzy set");
    }
    double lo = pts_.back().x, hi = pts_.front().x;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
        if (pts_[i].mu >= h - 1e-12) {
            lo = std::min(lo, pts_[i].x);
            hi = std::max(hi, pts_[i].x);
        }
    }
    return 0.5 * (lo + hi);
}

MembershipCurve MembershipCurve::scaled(double c) const {
    if (c < 0.0 || c > 1.0) {
        throw DomainError("membership scale factor must lie in [0, 1]");
    }
    std::vector<Point> pts = pts_;
    for (Point& p : pts) {
        p.mu *= c;
    }
    return MembershipCurve(std::move(pts));
}

MembershipCurve MembershipCurve::clipped(double alpha) const {
    if (alpha < 0.0 || alpha > 1.0) {
        throw DomainError("clip level must lie in [0, 1]");
    }
    std::vector<Point> pts;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
        if (i > 0) {
            double y0 = pts_[i - 1].mu, y1 = pts_[i].mu;
            if ((y0 - alpha) * (y1 - alpha) < 0) {
                double t = (alpha - y0) / (y1 - y0);
                pts.push_back({pts_[i - 1].x + t * (pts_[i].x - pts_[i - 1].x), alpha});
            }
        }
        pts.push_back({pts_[i].x, std::min(pts_[i].mu, alpha)});
    }
    return MembershipCurve(std::move(pts));
}

namespace {

template <typename F>
MembershipCurve combine(const MembershipCurve& a, const MembershipCurve& b, F pick) {
    if (a.empty()) {
        return b;
    }
    if (b.empty()) {
        return a;
    }
    std::vector<double> xs;
    for (const auto& p : a.points()) {
        xs.push_back(p.x);
    }
    for (const auto& p : b.points()) {
        xs.push_back(p.x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](double u, double v) { return std::abs(u - v) < 1e-15; }),
             xs.end());
    // add intersection abscissas so min/max stay piecewise linear
    std::vector<double> extra;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        double x0 = xs[i - 1], x1 = xs[i];
        double d0 = a.value(x0) - b.value(x0);
        double d1 = a.value(x1) - b.value(x1);
        if (d0 * d1 < 0) {
            extra.push_back(x0 + (x1 - x0) * d0 / (d0 - d1));
        }
    }
    xs.insert(xs.end(), extra.begin(), extra.end());
    std::sort(xs.begin(), xs.end());
    std::vector<MembershipCurve::Point> pts;
    pts.reserve(xs.size());
    for (double x : xs) {
        pts.push_back({x, pick(a.value(x), b.value(x))});
    }
    return MembershipCurve(std::move(pts));
}

} // namespace

MembershipCurve MembershipCurve::min_of(const MembershipCurve& a, const MembershipCurve& b) {
    if (a.empty() || b.empty()) {
        return MembershipCurve();
    }
    return combine(a, b, [](double u, double v) { return std::min(u, v); });
}

MembershipCurve MembershipCurve::max_of(const MembershipCurve& a, const MembershipCurve& b) {
    return combine(a, b, [](double u, double v) { return std::max(u, v); });
}

MembershipCurve scale_membership(const FuzzyNumber& x, double c) {
    return x.curve().scaled(c);
}

} // namespace riskfuzz
