#include "cakecut/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cakecut {

namespace {

constexpr double kCaseTol = 1e-12;

// Mass of max{0, h - k|x-p|} over [0,1] for arbitrary parameters.
double mass_of(double p, double h, double k) {
    const double w = h / k;
    const double vl = p - w;
    const double vr = p + w;
    const double cl = std::max(0.0, -vl);
    const double cr = std::max(0.0, vr - 1.0);
    return 0.5 * k * (2.0 * w * w - cl * cl - cr * cr);
}

// Positive root of a*x^2 + b*x + c = 0 (a >= 0, degenerating to linear).
double positive_root(double a, double b, double c) {
    if (std::abs(a) < 1e-300) {
        if (std::abs(b) < 1e-300) return std::numeric_limits<double>::quiet_NaN();
        return -c / b;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double s = std::sqrt(disc);
    // stable form: larger root first
    const double r1 = (-b + s) / (2.0 * a);
    const double r2 = (-b - s) / (2.0 * a);
    if (r1 > 0.0) return r1;
    if (r2 > 0.0) return r2;
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

SinglePeakedValuation::SinglePeakedValuation(double p, double h, double k)
    : peak_(p), height_(h), slope_(k) {
    const double w = h / k;
    vleft_ = p - w;
    vright_ = p + w;
    left_ = std::max(0.0, vleft_);
    right_ = std::min(1.0, vright_);
    cut_left_ = std::max(0.0, -vleft_);
    cut_right_ = std::max(0.0, vright_ - 1.0);
    mass_left_of_peak_ = 0.5 * k * (w * w - cut_left_ * cut_left_);
    total_ = 0.5 * k * (2.0 * w * w - cut_left_ * cut_left_ - cut_right_ * cut_right_);
}

SinglePeakedValuation SinglePeakedValuation::from_parameters(double peak, double peak_density,
                                                             double slope, double mass_tol) {
    if (!(peak >= 0.0 && peak <= 1.0)) throw DomainError("peak outside [0,1]");
    if (!(peak_density > 0.0)) throw DomainError("peak density must be positive");
    if (!(slope > 0.0)) throw DomainError("slope must be positive");
    SinglePeakedValuation v(peak, peak_density, slope);
    if (std::abs(v.total_ - 1.0) > mass_tol)
        throw DomainError("parameters are not normalized to unit mass");
    return v;
}

SinglePeakedValuation SinglePeakedValuation::from_peak_density(double peak, double peak_density) {
    if (!(peak >= 0.0 && peak <= 1.0)) throw DomainError("peak outside [0,1]");
    if (!(peak_density > 0.0)) throw DomainError("peak density must be positive");
    if (peak_density <= 1.0)
        throw NonNormalizable("peak density <= 1: total mass stays below 1 for every slope");

    const double p = peak;
    const double h = peak_density;
    const double q = 1.0 - p;

    // Closed-form candidates, one per truncation pattern. Validity is the
    // candidate's own support geometry; boundary cases satisfy several
    // patterns at once and agree there.
    double candidates[4];
    int ncand = 0;
    {  // interior triangle: area h^2/k
        candidates[ncand++] = h * h;
    }
    {  // overhangs 0 only: p^2 k^2 + (2 - 2hp) k - h^2 = 0
        const double k = (p < 1e-15) ? 0.5 * h * h : positive_root(p * p, 2.0 - 2.0 * h * p, -h * h);
        candidates[ncand++] = k;
    }
    {  // overhangs 1 only (mirror)
        const double k = (q < 1e-15) ? 0.5 * h * h : positive_root(q * q, 2.0 - 2.0 * h * q, -h * h);
        candidates[ncand++] = k;
    }
    {  // overhangs both ends
        candidates[ncand++] = 2.0 * (h - 1.0) / (p * p + q * q);
    }

    // Per case: does the triangle overhang 0 (w >= p) / overhang 1 (w >= q)?
    const bool need[4][2] = {{false, false}, {true, false}, {false, true}, {true, true}};
    for (int c = 0; c < ncand; ++c) {
        const double k = candidates[c];
        if (!(k > 0.0) || !std::isfinite(k)) continue;
        const double w = h / k;
        if ((need[c][0] && w < p - kCaseTol) || (!need[c][0] && w > p + kCaseTol)) continue;
        if ((need[c][1] && w < q - kCaseTol) || (!need[c][1] && w > q + kCaseTol)) continue;
        if (std::abs(mass_of(p, h, k) - 1.0) <= kArithTol)
            return SinglePeakedValuation(p, h, k);
    }

    // Boundary-ambiguous classification: guarded bisection, mass decreasing in k.
    double lo = h * h, hi = h * h;
    while (mass_of(p, h, lo) < 1.0 && lo > 1e-12) lo *= 0.5;
    while (mass_of(p, h, hi) > 1.0 && hi < 1e12) hi *= 2.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * std::max(1.0, lo); ++it) {
        const double mid = 0.5 * (lo + hi);
        (mass_of(p, h, mid) > 1.0 ? lo : hi) = mid;
    }
    return SinglePeakedValuation(p, h, 0.5 * (lo + hi));
}

SinglePeakedValuation SinglePeakedValuation::from_peak_slope(double peak, double slope) {
    if (!(peak >= 0.0 && peak <= 1.0)) throw DomainError("peak outside [0,1]");
    if (!(slope > 0.0)) throw DomainError("slope must be positive");

    const double p = peak;
    const double k = slope;
    const double q = 1.0 - p;

    double candidates[4];
    candidates[0] = std::sqrt(k);                                          // interior
    candidates[1] = -k * p + std::sqrt(2.0 * k * k * p * p + 2.0 * k);     // overhangs 0
    candidates[2] = -k * q + std::sqrt(2.0 * k * k * q * q + 2.0 * k);     // overhangs 1
    candidates[3] = 1.0 + 0.5 * k * (p * p + q * q);                       // both

    const bool need[4][2] = {{false, false}, {true, false}, {false, true}, {true, true}};
    for (int c = 0; c < 4; ++c) {
        const double h = candidates[c];
        if (!(h > 0.0) || !std::isfinite(h)) continue;
        const double w = h / k;
        if ((need[c][0] && w < p - kCaseTol) || (!need[c][0] && w > p + kCaseTol)) continue;
        if ((need[c][1] && w < q - kCaseTol) || (!need[c][1] && w > q + kCaseTol)) continue;
        if (std::abs(mass_of(p, h, k) - 1.0) <= kArithTol)
            return SinglePeakedValuation(p, h, k);
    }

    // Fallback: mass strictly increasing and unbounded in h.
    double lo = 1.0, hi = 2.0;
    while (mass_of(p, hi, k) < 1.0 && hi < 1e12) hi *= 2.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * std::max(1.0, lo); ++it) {
        const double mid = 0.5 * (lo + hi);
        (mass_of(p, mid, k) < 1.0 ? lo : hi) = mid;
    }
    return SinglePeakedValuation(p, 0.5 * (lo + hi), k);
}

double SinglePeakedValuation::density_at(double x) const {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("position outside [0,1]");
    return std::max(0.0, height_ - slope_ * std::abs(x - peak_));
}

double SinglePeakedValuation::cdf(double t) const {
    if (t <= left_) return 0.0;
    if (t >= right_) return total_;
    if (t <= peak_) {
        const double d = t - vleft_;
        return 0.5 * slope_ * (d * d - cut_left_ * cut_left_);
    }
    const double d = vright_ - t;
    return total_ - 0.5 * slope_ * (d * d - cut_right_ * cut_right_);
}

double SinglePeakedValuation::eval(double x, double y) const {
    constexpr double fuzz = 1e-12;
    if (x > y && x - y <= fuzz) y = x;
    if (x < 0.0 && x >= -fuzz) x = 0.0;
    if (y > 1.0 && y <= 1.0 + fuzz) y = 1.0;
    if (!(x >= 0.0 && y <= 1.0 && x <= y)) throw DomainError("eval requires 0 <= x <= y <= 1");
    return cdf(y) - cdf(x);
}

double SinglePeakedValuation::cut(double x, double target) const {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("cut point outside [0,1]");
    if (!(target >= 0.0)) throw DomainError("cut target must be nonnegative");
    if (target == 0.0) return x;  // smallest-point convention

    const double base = cdf(x);
    double want = base + target;
    if (want > total_ + kArithTol)
        throw Unreachable("cut target exceeds remaining mass");
    want = std::min(want, total_);

    double y;
    if (want <= mass_left_of_peak_) {
        y = vleft_ + std::sqrt(std::max(0.0, 2.0 * want / slope_ + cut_left_ * cut_left_));
    } else {
        const double rest = total_ - want;
        y = vright_ - std::sqrt(std::max(0.0, 2.0 * rest / slope_ + cut_right_ * cut_right_));
    }
    return std::clamp(y, x, 1.0);
}

double SinglePeakedValuation::last_point_with_cdf(double target) const {
    if (target >= total_) return 1.0;
    if (target <= 0.0) return left_;
    double y;
    if (target <= mass_left_of_peak_) {
        y = vleft_ + std::sqrt(std::max(0.0, 2.0 * target / slope_ + cut_left_ * cut_left_));
    } else {
        const double rest = total_ - target;
        y = vright_ - std::sqrt(std::max(0.0, 2.0 * rest / slope_ + cut_right_ * cut_right_));
    }
    return std::clamp(y, 0.0, 1.0);
}

CakeInstance CakeInstance::create(std::vector<SinglePeakedValuation> agents,
                                  bool waste_tolerant) {
    if (agents.empty()) throw DomainError("an instance needs at least one agent");

    CakeInstance inst;
    inst.agents_ = std::move(agents);
    inst.waste_tolerant_ = waste_tolerant;

    const auto& as = inst.agents_;
    inst.common_slope_ = true;
    for (const auto& a : as)
        if (std::abs(a.slope() - as.front().slope()) > kAuditTol) inst.common_slope_ = false;

    std::vector<double> peaks;
    for (const auto& a : as) peaks.push_back(a.peak());
    std::sort(peaks.begin(), peaks.end());
    inst.distinct_peaks_ = true;
    for (size_t i = 1; i < peaks.size(); ++i)
        if (peaks[i] - peaks[i - 1] <= kAuditTol) inst.distinct_peaks_ = false;

    // coverage sweep over supports sorted by left endpoint
    std::vector<std::pair<double, double>> sup;
    for (const auto& a : as) sup.emplace_back(a.support_left(), a.support_right());
    std::sort(sup.begin(), sup.end());
    double covered = 0.0;
    bool cover = true;
    for (const auto& [l, r] : sup) {
        if (l > covered + kAuditTol) cover = false;
        covered = std::max(covered, r);
    }
    if (covered < 1.0 - kAuditTol) cover = false;
    inst.coverage_ = cover;

    if (!cover && !waste_tolerant)
        throw CoverageError("supports do not cover [0,1]; enable waste-tolerant mode to proceed");
    return inst;
}

}  // namespace cakecut
