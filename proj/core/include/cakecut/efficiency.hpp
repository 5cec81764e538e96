#ifndef CAKECUT_EFFICIENCY_HPP
#define CAKECUT_EFFICIENCY_HPP

#include <optional>
#include <string>
#include <vector>

#include "cakecut/allocation.hpp"

namespace cakecut {

enum class Pareto { PO, NotPO, Inapplicable };

struct WastefulWitness {
    int agent;
    Interval interval;  // positive-length part of the agent's piece outside her support
};

struct OrderWitness {
    int left_owner, right_owner;       // peak(left_owner) > peak(right_owner)
    Interval left_iv, right_iv;        // positionally adjacent intervals
};

struct ParetoVerdict {
    Pareto verdict = Pareto::Inapplicable;
    std::optional<WastefulWitness> wasteful;
    std::optional<OrderWitness> order;
    bool common_slope = false, distinct_peaks = false, coverage = false;
    std::string reason;  // set when Inapplicable
};

/// Decides Pareto optimality for common-slope instances via the structural
/// characterization: PO iff connected, peak-preserving and non-wasteful.
/// Returns Inapplicable (not an error) when the characterization's premises
/// (common slope, distinct peaks, coverage) fail.
ParetoVerdict audit_pareto_sp(const CakeInstance& instance, const Allocation& allocation);

/// One constructive Pareto-improvement step: reassigns a wasteful piece to
/// agents that value it, or untwists one positionally adjacent peak-order
/// violation by the equal-value exchange V_j(b',c) = V_j(a,b). Returns the
/// improved allocation (componentwise weakly dominating, at least one agent
/// strictly better) or nothing iff the allocation is already PO.
std::optional<Allocation> find_improvement_exchange(const CakeInstance& instance,
                                                    const Allocation& allocation);

struct DominanceResult {
    std::vector<double> cell_edges;            // grid refining marks and allocation cuts
    std::vector<std::vector<double>> fractions;  // fractions[i][c] of cell c to agent i
    std::vector<double> utilities;             // achieved utility per agent
    double slack = 0.0;                        // total utility gain over the input allocation
};

/// Independent LP check: looks for a fractional reassignment of grid cells
/// that weakly improves every agent and strictly improves the total. Returns
/// the dominating assignment iff the optimal slack exceeds 1e-7; the cell
/// granularity bounds what improvements it can see.
std::optional<DominanceResult> dominance_oracle(const CakeInstance& instance,
                                                const Allocation& allocation, int grid_cells);

struct WelfareMetrics {
    std::vector<double> utilities;
    double sum = 0.0;
    double average = 0.0;  // T = sum / n
    double minimum = 0.0;
};

WelfareMetrics welfare_metrics(const CakeInstance& instance, const Allocation& allocation);

}  // namespace cakecut

#endif
