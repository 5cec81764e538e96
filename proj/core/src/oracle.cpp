#include "cakecut/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>

namespace cakecut {

void QueryLog::record(QueryRecord r) {
    (r.kind == QueryKind::Eval ? eval_count_ : cut_count_)++;
    records_.push_back(r);
}

void QueryLog::write_transcript(std::ostream& os) const {
    for (const auto& r : records_) {
        os << (r.agent + 1) << ' ' << (r.kind == QueryKind::Eval ? "eval" : "cut") << ' '
           << r.arg0 << ' ' << r.arg1 << " -> " << r.answer << '\n';
    }
}

double RwOracle::rw_eval(int agent, double x, double y) {
    const double ans = instance_->agent(agent).eval(x, y);
    log_.record({agent, QueryKind::Eval, x, y, ans});
    return ans;
}

double RwOracle::rw_cut(int agent, double x, double target) {
    const double ans = instance_->agent(agent).cut(x, target);
    log_.record({agent, QueryKind::Cut, x, target, ans});
    return ans;
}

namespace {

// A candidate triangle in virtual coordinates: apex endpoints (vl, vr) with
// vl < vr, slope k > 0. The realized support is [max(0,vl), min(1,vr)].
struct Candidate {
    double vl, vr, k;
};

Candidate mirrored(const Candidate& c) { return {1.0 - c.vr, 1.0 - c.vl, c.k}; }

// Finds all sign changes of f over negative arguments, scanning magnitudes
// log-spaced from 1e-13 to 1e5 (covers virtual endpoints of near-flat
// triangles) and bisecting each bracket.
std::vector<double> scan_negative_roots(const std::function<double(double)>& f) {
    constexpr int kSteps = 4096;
    const double lo_mag = std::log(1e-13), hi_mag = std::log(1e5);
    std::vector<double> roots;
    auto at = [&](int i) { return -std::exp(lo_mag + (hi_mag - lo_mag) * i / kSteps); };
    double x0 = at(kSteps), f0 = f(x0);  // most negative first
    for (int i = kSteps - 1; i >= 0; --i) {
        const double x1 = at(i);
        const double f1 = f(x1);
        if (std::isfinite(f0) && std::isfinite(f1) && f0 * f1 <= 0.0 && (f0 != 0.0 || f1 != 0.0)) {
            double a = x0, b = x1, fa = f0;
            for (int it = 0; it < 200 && b - a > 1e-16 * std::max(1.0, std::abs(a)); ++it) {
                const double m = 0.5 * (a + b);
                const double fm = f(m);
                if (fa * fm <= 0.0) {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

// Solves the two quantile equations cdf(y1) = 1/4, cdf(y2) = 3/4 for the
// triangle parameters, enumerating branch assignment (both quantiles on the
// ascending side, one on each, both descending) crossed with the truncation
// pattern. Each case either has a closed form or reduces to one scalar
// equation in vl.
std::vector<Candidate> solve_quantiles(double y1, double y2) {
    std::vector<Candidate> out;
    const double sqrt3 = std::sqrt(3.0);

    // --- one quantile on each side of the peak ---------------------------
    {  // untruncated
        const double d = 0.5 * (std::sqrt(2.0) + 1.0) * (y2 - y1);
        if (d > 0.0) out.push_back({y1 - d, y2 + d, 1.0 / (2.0 * d * d)});
    }
    // overhang at 0 only / at 1 only / both: one unknown vl < 0 remains.
    // Q1 (ascending, overhang 0):  k = 1/(2*(y1^2 - 2*y1*vl))
    // Q2 (descending):             vr from the right-mass equation
    // N  (normalization):          residual bisected in vl
    auto push_left_overhang = [&](bool right_too) {
        if (y1 <= 0.0) return;
        auto resid = [&](double vl) {
            const double k = 1.0 / (2.0 * (y1 * y1 - 2.0 * y1 * vl));
            double vr;
            if (!right_too) {
                vr = y2 + std::sqrt(y1 * y1 - 2.0 * y1 * vl);
            } else {
                if (y2 >= 1.0) return std::numeric_limits<double>::quiet_NaN();
                vr = 0.5 * (1.0 / (2.0 * k * (1.0 - y2)) + y2 + 1.0);
            }
            const double w2 = 0.5 * (vr - vl) * (vr - vl);
            const double cr = right_too ? vr - 1.0 : 0.0;
            return 0.5 * k * (w2 - vl * vl - cr * cr) - 1.0;
        };
        for (double vl : scan_negative_roots(resid)) {
            const double k = 1.0 / (2.0 * (y1 * y1 - 2.0 * y1 * vl));
            double vr;
            if (!right_too) {
                vr = y2 + std::sqrt(y1 * y1 - 2.0 * y1 * vl);
            } else {
                vr = 0.5 * (1.0 / (2.0 * k * (1.0 - y2)) + y2 + 1.0);
            }
            out.push_back({vl, vr, k});
        }
    };
    push_left_overhang(false);
    push_left_overhang(true);
    {  // overhang at 1 only: mirror of overhang-at-0-only
        const double m1 = 1.0 - y2, m2 = 1.0 - y1;
        if (m1 > 0.0) {
            auto resid = [&](double vl) {
                const double k = 1.0 / (2.0 * (m1 * m1 - 2.0 * m1 * vl));
                const double vr = m2 + std::sqrt(m1 * m1 - 2.0 * m1 * vl);
                const double w2 = 0.5 * (vr - vl) * (vr - vl);
                return 0.5 * k * (w2 - vl * vl) - 1.0;
            };
            for (double vl : scan_negative_roots(resid)) {
                const double k = 1.0 / (2.0 * (m1 * m1 - 2.0 * m1 * vl));
                const double vr = m2 + std::sqrt(m1 * m1 - 2.0 * m1 * vl);
                out.push_back(mirrored({vl, vr, k}));
            }
        }
    }

    // --- both quantiles on the ascending side (peak right of y2) ---------
    // The 3:1 mass ratio eliminates k; vr then follows from normalization,
    // with or without overhang at 1.
    auto push_ascending = [&](bool mirror_frame) {
        const double a1 = mirror_frame ? 1.0 - y2 : y1;
        const double a2 = mirror_frame ? 1.0 - y1 : y2;
        struct Left {
            double vl, k, cl;
        };
        std::vector<Left> lefts;
        {  // no overhang at 0
            const double vl = (sqrt3 * a1 - a2) / (sqrt3 - 1.0);
            if (vl >= -1e-11 && vl < a1)
                lefts.push_back({vl, 1.0 / (2.0 * (a1 - vl) * (a1 - vl)), 0.0});
        }
        if (std::abs(6.0 * a1 - 2.0 * a2) > 1e-14) {  // overhang at 0
            const double vl = (3.0 * a1 * a1 - a2 * a2) / (6.0 * a1 - 2.0 * a2);
            const double denom = a1 * a1 - 2.0 * a1 * vl;
            if (vl < 1e-11 && denom > 0.0) lefts.push_back({vl, 1.0 / (2.0 * denom), -vl});
        }
        for (const auto& lf : lefts) {
            if (!(lf.k > 0.0) || !std::isfinite(lf.k)) continue;
            {  // no overhang at 1
                const double vr = lf.vl + std::sqrt(4.0 / lf.k + 2.0 * lf.cl * lf.cl);
                const Candidate c{lf.vl, vr, lf.k};
                out.push_back(mirror_frame ? mirrored(c) : c);
            }
            {  // overhang at 1: quadratic in vr
                const double C = 2.0 / lf.k + lf.cl * lf.cl;
                const double disc = (2.0 - lf.vl) * (2.0 - lf.vl) - 2.0 + lf.vl * lf.vl - 2.0 * C;
                if (disc >= 0.0) {
                    const double s = std::sqrt(disc);
                    for (double vr : {2.0 - lf.vl + s, 2.0 - lf.vl - s}) {
                        const Candidate c{lf.vl, vr, lf.k};
                        out.push_back(mirror_frame ? mirrored(c) : c);
                    }
                }
            }
        }
    };
    push_ascending(false);  // both ascending
    push_ascending(true);   // both descending, via the mirror frame

    return out;
}

double quantile_residual(const SinglePeakedValuation& v, double y1, double y2) {
    return std::abs(v.cdf(y1) - 0.25) + std::abs(v.cdf(y2) - 0.75);
}

// Damped Newton on (p, h); from_peak_density re-solves the slope, so the
// normalization stays exact throughout. Converges case-boundary and
// bisection-found candidates to machine precision, and pulls candidates from
// a marginally wrong case pattern onto the true solution.
std::optional<SinglePeakedValuation> polish_candidate(const SinglePeakedValuation& v0, double y1,
                                                      double y2) {
    double p = v0.peak(), h = v0.peak_density();
    if (h <= 1.0 + 1e-12) return std::nullopt;
    SinglePeakedValuation v = SinglePeakedValuation::from_peak_density(p, h);
    double best = quantile_residual(v, y1, y2);
    for (int it = 0; it < 12 && best > 1e-14; ++it) {
        const double f1 = v.cdf(y1) - 0.25;
        const double f2 = v.cdf(y2) - 0.75;
        const double dp = 1e-7, dh = 1e-7;
        SinglePeakedValuation vp = SinglePeakedValuation::from_peak_density(
            std::clamp(p + dp, 0.0, 1.0), h);
        SinglePeakedValuation vh = SinglePeakedValuation::from_peak_density(p, h + dh);
        const double j11 = (vp.cdf(y1) - (f1 + 0.25)) / dp, j12 = (vh.cdf(y1) - (f1 + 0.25)) / dh;
        const double j21 = (vp.cdf(y2) - (f2 + 0.75)) / dp, j22 = (vh.cdf(y2) - (f2 + 0.75)) / dh;
        const double det = j11 * j22 - j12 * j21;
        if (std::abs(det) < 1e-14) break;
        const double step_p = std::clamp((f1 * j22 - f2 * j12) / det, -1e-3, 1e-3);
        const double step_h = std::clamp((f2 * j11 - f1 * j21) / det, -1e-3, 1e-3);
        const double np = std::clamp(p - step_p, 0.0, 1.0);
        const double nh = std::max(h - step_h, 1.0 + 1e-12);
        SinglePeakedValuation nv = SinglePeakedValuation::from_peak_density(np, nh);
        const double res = quantile_residual(nv, y1, y2);
        if (res >= best) break;
        v = nv;
        p = np;
        h = nh;
        best = res;
    }
    if (best > 5e-11) return std::nullopt;  // spurious case solution
    return v;
}

std::optional<SinglePeakedValuation> validate_candidate(const Candidate& c, double y1, double y2) {
    if (!(c.k > 0.0) || !std::isfinite(c.k) || !(c.vr > c.vl)) return std::nullopt;
    const double p = 0.5 * (c.vl + c.vr);
    const double h = 0.5 * c.k * (c.vr - c.vl);
    if (!(p >= -1e-10 && p <= 1.0 + 1e-10) || !(h > 0.0)) return std::nullopt;
    try {
        auto v = SinglePeakedValuation::from_parameters(std::clamp(p, 0.0, 1.0), h, c.k, 1e-9);
        if (quantile_residual(v, y1, y2) > 2e-8) return std::nullopt;
        return polish_candidate(v, y1, y2);
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

SupportTriple RwOracle::recover_structure(int agent) {
    const double y1 = rw_cut(agent, 0.0, 0.25);
    const double y2 = rw_cut(agent, 0.0, 0.75);

    std::vector<SinglePeakedValuation> found;
    for (const auto& cand : solve_quantiles(y1, y2)) {
        auto v = validate_candidate(cand, y1, y2);
        if (!v) continue;
        bool dup = false;
        for (const auto& u : found) {
            if (std::abs(u.support_left() - v->support_left()) < 1e-7 &&
                std::abs(u.peak() - v->peak()) < 1e-7 &&
                std::abs(u.support_right() - v->support_right()) < 1e-7) {
                dup = true;
                break;
            }
        }
        if (!dup) found.push_back(*v);
    }

    if (found.empty())
        throw SolverFailure("structure recovery produced no consistent parameter set");
    if (found.size() > 1) {
        std::vector<std::array<double, 3>> cands;
        for (const auto& v : found)
            cands.push_back({v.support_left(), v.peak(), v.support_right()});
        throw RecoveryAmbiguous("two-query recovery admits multiple parameter sets", cands);
    }
    const auto& v = found.front();
    return {v.support_left(), v.peak(), v.support_right()};
}

RecoveredShape RwOracle::recover_shape(int agent, const SupportTriple& t) {
    constexpr double edge = 1e-10;
    const double l = t.l, p = t.p, r = t.r;

    if (l > edge && r < 1.0 - edge) {  // interior: support is the full triangle base
        const double w = 0.5 * (r - l);
        return {p, 1.0 / w, 1.0 / (w * w)};
    }
    if (l <= edge && r < 1.0 - edge) {  // overhangs 0 at most; right endpoint free
        const double w = r - p;
        const double h = 2.0 * w / (2.0 * w * w - (w - p) * (w - p));
        return {p, h, h / w};
    }
    if (l > edge && r >= 1.0 - edge) {  // mirror
        const double w = p - l;
        const double d = w - (1.0 - p);
        const double h = 2.0 * w / (2.0 * w * w - d * d);
        return {p, h, h / w};
    }

    // Support is all of [0,1]: two evals on the longer flank pin (h, k).
    const bool right_side = (1.0 - p) >= p;
    const double span = right_side ? 1.0 - p : p;
    const double d1 = 0.5 * span, d2 = span;
    const double v1 = right_side ? rw_eval(agent, p, p + d1) : rw_eval(agent, p - d1, p);
    const double v2 = right_side ? rw_eval(agent, p, p + d2) : rw_eval(agent, p - d2, p);
    // v = h*d - k*d^2/2 at d = d1, d2
    const double det = d1 * (-0.5 * d2 * d2) - d2 * (-0.5 * d1 * d1);
    const double h = (v1 * (-0.5 * d2 * d2) - v2 * (-0.5 * d1 * d1)) / det;
    const double k = (d1 * v2 - d2 * v1) / det;
    return {p, h, k};
}

}  // namespace cakecut
