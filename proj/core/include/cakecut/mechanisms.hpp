#ifndef CAKECUT_MECHANISMS_HPP
#define CAKECUT_MECHANISMS_HPP

#include <string>
#include <vector>

#include "cakecut/allocation.hpp"
#include "cakecut/oracle.hpp"

namespace cakecut {

struct MechanismResult {
    Allocation allocation;
    std::vector<double> utilities;  // V_i(X_i), the value-matrix diagonal
    QueryLog queries;
    std::string mechanism;
    std::vector<double> marks;  // sorted cut positions / segment boundaries used
};

/// Wang-Wu: recovers every agent's (l, p, r) with two cut queries, cuts the
/// cake at all marks, splits each segment into 2n equal pieces and hands agent
/// i the i-th and (2n+1-i)-th. Envy-free; every utility is exactly 1/n.
MechanismResult run_ww(const CakeInstance& instance);

/// Modified Wang-Wu: same marks, but each segment is split only among the
/// agents whose support overlaps it (2|I_P| pieces). Envy-free and Pareto
/// dominates Wang-Wu.
MechanismResult run_mww(const CakeInstance& instance);

/// Leftmost leaves: agents ordered by peak; agent i takes an equal share of
/// what it values in the remainder, nudged right to the next agent's support.
/// Connected, peak-preserving, non-wasteful; proportional.
MechanismResult run_ll(const CakeInstance& instance);

/// Utilitarian mechanism for common slopes: cuts at consecutive density
/// crossings; maximizes the utility sum (the upper-envelope area).
MechanismResult run_um(const CakeInstance& instance);

/// Utilitarian mechanism for arbitrary slopes: sweeps the upper envelope of
/// the piecewise-linear densities and assigns each cell to a density-maximal
/// agent. The result may be disconnected.
MechanismResult run_envelope_um(const CakeInstance& instance);

}  // namespace cakecut

#endif
