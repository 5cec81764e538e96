#include "cakecut/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "cakecut/format.hpp"

namespace cakecut {

namespace {

// splitmix64; platform-independent uniforms keep seeded instances stable
struct Rng {
    std::uint64_t state;
    std::uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

bool covers(const std::vector<SinglePeakedValuation>& agents) {
    std::vector<std::pair<double, double>> sup;
    for (const auto& a : agents) sup.emplace_back(a.support_left(), a.support_right());
    std::sort(sup.begin(), sup.end());
    double covered = 0.0;
    for (const auto& [l, r] : sup) {
        if (l > covered + kAuditTol) return false;
        covered = std::max(covered, r);
    }
    return covered >= 1.0 - kAuditTol;
}

bool coverage_at_slope(const std::vector<double>& peaks, double k) {
    std::vector<SinglePeakedValuation> agents;
    agents.reserve(peaks.size());
    for (double p : peaks) agents.push_back(SinglePeakedValuation::from_peak_slope(p, k));
    return covers(agents);
}

double max_height_at_slope(const std::vector<double>& peaks, double k) {
    double h = 0.0;
    for (double p : peaks) h = std::max(h, SinglePeakedValuation::from_peak_slope(p, k).peak_density());
    return h;
}

double min_height_at_slope(const std::vector<double>& peaks, double k) {
    double h = 1e300;
    for (double p : peaks) h = std::min(h, SinglePeakedValuation::from_peak_slope(p, k).peak_density());
    return h;
}

// largest k in [lo, hi] with pred(k) true; pred must be monotone (true below)
template <typename Pred>
double bisect_max(Pred pred, double lo, double hi) {
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (pred(mid) ? lo : hi) = mid;
    }
    return lo;
}

std::vector<SinglePeakedValuation> try_common_slope(Rng& rng, const std::vector<double>& peaks) {
    if (!coverage_at_slope(peaks, 0.5)) return {};
    const double k_cov = bisect_max([&](double k) { return coverage_at_slope(peaks, k); }, 0.5, 4.0e4);
    const double k_h6 = bisect_max([&](double k) { return max_height_at_slope(peaks, k) <= 6.0; }, 1e-3, 64.0);
    const double k_lo =
        bisect_max([&](double k) { return min_height_at_slope(peaks, k) <= 1.05; }, 1e-3, 64.0);
    const double hi = 0.995 * std::min(k_cov, k_h6);
    const double lo = std::max(1.05 * k_lo, 0.25);
    if (!(lo < hi)) return {};
    const double k = rng.uniform(lo, hi);
    std::vector<SinglePeakedValuation> agents;
    for (double p : peaks) agents.push_back(SinglePeakedValuation::from_peak_slope(p, k));
    return covers(agents) ? agents : std::vector<SinglePeakedValuation>{};
}

// supports built as an overlapping tiling of [0,1], then inverted to (p,h);
// breakpoints are stratified so tile widths stay bounded for any n
std::vector<SinglePeakedValuation> try_mixed_slopes(Rng& rng, int n, double h_cap) {
    std::vector<double> ts{0.0, 1.0};
    for (int i = 1; i < n; ++i) ts.push_back((i + rng.uniform(-0.25, 0.25)) / n);
    std::sort(ts.begin(), ts.end());
    for (size_t i = 0; i + 1 < ts.size(); ++i)
        if (ts[i + 1] - ts[i] < 0.2 / n) return {};

    std::vector<SinglePeakedValuation> agents;
    for (int i = 0; i < n; ++i) {
        const double tile_l = ts[i], tile_r = ts[i + 1];
        const double left_gap = (i == 0) ? 0.0 : (ts[i] - ts[i - 1]);
        const double right_gap = (i == n - 1) ? 0.0 : (ts[i + 2] - ts[i + 1]);
        const double L = (i == 0) ? 0.0 : tile_l - rng.uniform(0.2, 0.6) * left_gap;
        const double R = (i == n - 1) ? 1.0 : tile_r + rng.uniform(0.2, 0.6) * right_gap;
        if (L > 1e-12 && R < 1.0 - 1e-12) {  // interior triangle on [L,R]
            const double w = 0.5 * (R - L);
            if (1.0 / w > h_cap) return {};
            agents.push_back(SinglePeakedValuation::from_parameters(0.5 * (L + R), 1.0 / w, 1.0 / (w * w)));
        } else if (L <= 1e-12 && R < 1.0 - 1e-12) {  // support [0,R]
            const double p = rng.uniform(0.2, 0.5) * R;
            const double w = R - p;
            const double h = 2.0 * w / (2.0 * w * w - (w - p) * (w - p));
            if (h > h_cap || h <= 1.0) return {};
            agents.push_back(SinglePeakedValuation::from_parameters(p, h, h / w));
        } else if (L > 1e-12) {  // support [L,1]
            const double p = 1.0 - rng.uniform(0.2, 0.5) * (1.0 - L);
            const double w = p - L;
            const double d = w - (1.0 - p);
            const double h = 2.0 * w / (2.0 * w * w - d * d);
            if (h > h_cap || h <= 1.0) return {};
            agents.push_back(SinglePeakedValuation::from_parameters(p, h, h / w));
        } else {  // lone agent spanning [0,1]
            const double p = rng.uniform(0.3, 0.7);
            const double d = std::max(p, 1.0 - p) - 0.5 * (p * p + (1.0 - p) * (1.0 - p));
            const double k = rng.uniform(0.2, 0.95) / d;
            const double h = 1.0 + 0.5 * k * (p * p + (1.0 - p) * (1.0 - p));
            agents.push_back(SinglePeakedValuation::from_parameters(p, h, k));
        }
    }
    return agents;
}

}  // namespace

CakeInstance disjoint_support_instance(int n) {
    if (n < 2) throw DomainError("disjoint-support construction needs n >= 2");
    std::vector<SinglePeakedValuation> agents;
    agents.reserve(n);
    for (int i = 0; i < n; ++i)
        agents.push_back(
            SinglePeakedValuation::from_peak_density((2.0 * i + 1.0) / (2.0 * n), 2.0 * n));
    return CakeInstance::create(std::move(agents));
}

CakeInstance figure3_instance() {
    std::vector<SinglePeakedValuation> agents{
        SinglePeakedValuation::from_peak_density(1.0 / 3.0, 3.0),
        SinglePeakedValuation::from_peak_density(0.5, 3.0),
        SinglePeakedValuation::from_peak_density(2.0 / 3.0, 3.0),
    };
    return CakeInstance::create(std::move(agents));
}

CakeInstance unequal_slopes_instance() {
    std::vector<SinglePeakedValuation> agents{
        SinglePeakedValuation::from_peak_density(0.5, 2.0),
        SinglePeakedValuation::from_peak_density(7.0 / 12.0, 12.0),
    };
    return CakeInstance::create(std::move(agents));
}

std::vector<WelfareLossRow> welfare_loss_curve(int n_min, int n_max) {
    if (n_min < 2 || n_min > n_max) throw DomainError("welfare-loss range needs 2 <= n_min <= n_max");
    std::vector<WelfareLossRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        const auto inst = disjoint_support_instance(n);
        const auto ww = run_ww(inst);
        std::vector<Piece> own(n);
        for (int i = 0; i < n; ++i)
            own[i].push_back({inst.agent(i).support_left(), inst.agent(i).support_right()});
        const auto po = Allocation::from_pieces(std::move(own));
        const double t_po = welfare_metrics(inst, po).average;
        const double t_ww = welfare_metrics(inst, ww.allocation).average;
        rows.push_back({n, t_po, t_ww, t_po - t_ww});
    }
    return rows;
}

CakeInstance random_instance(int n, std::uint64_t seed, bool common_slope) {
    if (n < 1) throw DomainError("instance needs at least one agent");
    Rng rng{seed ^ (0x517cc1b727220a95ull * (2ull * n + (common_slope ? 1 : 0)))};
    rng.next();

    const double h_cap = std::max(6.0, 2.5 * n);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        // stratified peaks: spacing stays >= 0.28/n for any n
        std::vector<double> peaks;
        for (int i = 0; i < n; ++i)
            peaks.push_back(0.03 + 0.94 * (i + 0.5 + rng.uniform(-0.35, 0.35)) / n);
        std::sort(peaks.begin(), peaks.end());
        bool gaps_ok = true;
        for (int i = 0; i + 1 < n; ++i)
            if (peaks[i + 1] - peaks[i] < 4e-3) gaps_ok = false;
        if (!gaps_ok) continue;

        auto agents = common_slope ? try_common_slope(rng, peaks) : try_mixed_slopes(rng, n, h_cap);
        if (agents.empty()) continue;
        try {
            auto inst = CakeInstance::create(std::move(agents));
            if (!inst.coverage() || !inst.distinct_peaks()) continue;
            if (common_slope && !inst.common_slope()) continue;
            return inst;
        } catch (const Error&) {
            continue;
        }
    }
    throw GenerationFailed("random instance generation exhausted its rejection budget");
}

ComparisonTable compare_mechanisms(const CakeInstance& instance) {
    ComparisonTable table;
    table.n = instance.n();

    auto add = [&](const std::string& name, MechanismResult (*mech)(const CakeInstance&)) {
        MechanismRow row;
        row.name = name;
        try {
            const auto res = mech(instance);
            row.applicable = true;
            row.utilities = res.utilities;
            row.sum = std::accumulate(res.utilities.begin(), res.utilities.end(), 0.0);
            row.envy_free = audit_envy_free(instance, res.allocation).passed;
            row.proportional = audit_proportional(instance, res.allocation).passed;
            row.pareto = audit_pareto_sp(instance, res.allocation).verdict;
            row.eval_queries = res.queries.eval_count();
            row.cut_queries = res.queries.cut_count();
        } catch (const PrereqViolated& e) {
            row.skip_reason = e.what();
        }
        table.rows.push_back(std::move(row));
    };
    add("ww", run_ww);
    add("mww", run_mww);
    add("ll", run_ll);
    add("um", run_um);

    const size_t r = table.rows.size();
    table.dominates.assign(r, std::vector<bool>(r, false));
    for (size_t a = 0; a < r; ++a) {
        for (size_t b = 0; b < r; ++b) {
            if (a == b || !table.rows[a].applicable || !table.rows[b].applicable) continue;
            bool weak = true, strict = false;
            for (int i = 0; i < table.n; ++i) {
                const double ua = table.rows[a].utilities[i];
                const double ub = table.rows[b].utilities[i];
                if (ua < ub - kAuditTol) weak = false;
                if (ua > ub + kAuditTol) strict = true;
            }
            table.dominates[a][b] = weak && strict;
        }
    }
    return table;
}

void write_csv(const std::vector<WelfareLossRow>& rows, std::ostream& os) {
    os << "n,t_po,t_ww,wl\n";
    for (const auto& r : rows)
        os << r.n << ',' << format_g12(r.t_po) << ',' << format_g12(r.t_ww) << ','
           << format_g12(r.wl) << '\n';
}

void write_csv(const ComparisonTable& table, std::ostream& os) {
    os << "mechanism,applicable,sum,envy_free,proportional,pareto,eval_queries,cut_queries,"
          "dominates_ww,utilities\n";
    for (size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        os << row.name << ',' << (row.applicable ? "yes" : "no") << ',';
        if (row.applicable) {
            os << format_g12(row.sum) << ',' << (row.envy_free ? "yes" : "no") << ','
               << (row.proportional ? "yes" : "no") << ','
               << (row.pareto == Pareto::PO      ? "po"
                   : row.pareto == Pareto::NotPO ? "not-po"
                                                 : "inapplicable")
               << ',' << row.eval_queries << ',' << row.cut_queries << ','
               << (table.dominates[r][0] ? "yes" : "no") << ',';
            for (size_t i = 0; i < row.utilities.size(); ++i)
                os << (i ? ";" : "") << format_g12(row.utilities[i]);
        } else {
            os << ",,,,,,,";
        }
        os << '\n';
    }
}

}  // namespace cakecut
