#ifndef CAKECUT_VALUATION_HPP
#define CAKECUT_VALUATION_HPP

#include <vector>

#include "cakecut/errors.hpp"

namespace cakecut {

/// Default tolerance for audits and structural comparisons.
inline constexpr double kAuditTol = 1e-9;
/// Tolerance for closed-form arithmetic identities.
inline constexpr double kArithTol = 1e-12;

/// One agent's value density over the cake [0,1]:
///
///     v(x) = max{0, h - k*|x - p|}
///
/// normalized so that the integral over [0,1] is 1. Given the peak location p,
/// either the peak density h or the slope k determines the other uniquely.
/// The density is positive exactly on the interior of the support [l, r] with
/// l = max(0, p - h/k) and r = min(1, p + h/k).
///
/// Instances are immutable; all member functions are pure and safe to call
/// concurrently.
class SinglePeakedValuation {
public:
    /// Builds the valuation with peak p and peak density h by solving the
    /// normalization for the slope. Throws NonNormalizable if h <= 1 (even a
    /// vanishing slope cannot reach unit mass) and DomainError for p outside
    /// [0,1] or h <= 0.
    static SinglePeakedValuation from_peak_density(double peak, double peak_density);

    /// Builds the valuation with peak p and slope k by solving the
    /// normalization for the peak density (always solvable for k > 0).
    static SinglePeakedValuation from_peak_slope(double peak, double slope);

    /// Raw-parameter constructor; callers must supply a normalized triple.
    /// Throws DomainError if the parameters are invalid or the mass is not 1
    /// within `mass_tol`.
    static SinglePeakedValuation from_parameters(double peak, double peak_density,
                                                 double slope, double mass_tol = 1e-9);

    double peak() const { return peak_; }
    double peak_density() const { return height_; }
    double slope() const { return slope_; }
    double support_left() const { return left_; }
    double support_right() const { return right_; }

    /// v(x); x must lie in [0,1].
    double density_at(double x) const;

    /// Exact integral of the density over [x, y], 0 <= x <= y <= 1.
    double eval(double x, double y) const;

    /// Smallest y >= x with eval(x, y) == target, by closed-form inversion of
    /// the piecewise quadratic. Target 0 returns x itself. Throws Unreachable
    /// when target exceeds eval(x, 1).
    double cut(double x, double target) const;

    /// Mass to the left of t (the CDF); defined on all of [0,1].
    double cdf(double t) const;

    /// Largest t in [0,1] with cdf(t) <= target; used by the exchange
    /// construction to pick the rightmost equivalent split point.
    double last_point_with_cdf(double target) const;

    double total_mass() const { return total_; }

private:
    SinglePeakedValuation(double p, double h, double k);

    double peak_;
    double height_;
    double slope_;
    double left_, right_;        // support clipped to [0,1]
    double vleft_, vright_;      // virtual apex endpoints p -/+ h/k
    double cut_left_, cut_right_;  // overhang beyond 0 and 1
    double mass_left_of_peak_;
    double total_;
};

/// A cake-cutting problem: the cake [0,1] plus an ordered list of agents.
/// Agent order is the identity used by the mechanisms ("agent 1" = index 0).
class CakeInstance {
public:
    /// Validates and builds the instance. Throws CoverageError if the supports
    /// leave part of [0,1] uncovered and waste_tolerant is false.
    static CakeInstance create(std::vector<SinglePeakedValuation> agents,
                               bool waste_tolerant = false);

    int n() const { return static_cast<int>(agents_.size()); }
    const SinglePeakedValuation& agent(int i) const { return agents_.at(i); }
    const std::vector<SinglePeakedValuation>& agents() const { return agents_; }

    bool common_slope() const { return common_slope_; }
    bool distinct_peaks() const { return distinct_peaks_; }
    bool coverage() const { return coverage_; }
    bool waste_tolerant() const { return waste_tolerant_; }

private:
    CakeInstance() = default;

    std::vector<SinglePeakedValuation> agents_;
    bool common_slope_ = false;
    bool distinct_peaks_ = false;
    bool coverage_ = false;
    bool waste_tolerant_ = false;
};

}  // namespace cakecut

#endif
