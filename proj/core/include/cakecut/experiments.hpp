#ifndef CAKECUT_EXPERIMENTS_HPP
#define CAKECUT_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cakecut/efficiency.hpp"
#include "cakecut/mechanisms.hpp"

namespace cakecut {

/// n agents with pairwise-disjoint supports [(i-1)/n, i/n]: peaks at the tile
/// centers, peak density 2n, slope 4n^2. The unique PO allocation hands every
/// agent her own support (utility 1 each), the worst case for Wang-Wu.
CakeInstance disjoint_support_instance(int n);

/// Three agents, peaks (1/3, 1/2, 2/3), peak density 3, slope 9.
CakeInstance figure3_instance();

/// Two agents with different slopes: a wide low triangle spanning [0,1]
/// (p=1/2, h=2) and a tall narrow one inside it (p=7/12, h=12). The
/// utilitarian envelope allocation is disconnected for the wide agent.
CakeInstance unequal_slopes_instance();

struct WelfareLossRow {
    int n;
    double t_po, t_ww, wl;
};

/// Runs Wang-Wu on disjoint_support_instance(n) for each n in [n_min, n_max]
/// and reports T_PO = 1, T_WW = 1/n, WL = (n-1)/n.
std::vector<WelfareLossRow> welfare_loss_curve(int n_min, int n_max);

/// Deterministic in (n, seed, common_slope); distinct peaks and full coverage
/// guaranteed (rejection budget 1000, then GenerationFailed).
CakeInstance random_instance(int n, std::uint64_t seed, bool common_slope);

struct MechanismRow {
    std::string name;
    bool applicable = false;
    std::string skip_reason;
    std::vector<double> utilities;
    double sum = 0.0;
    bool envy_free = false;
    bool proportional = false;
    Pareto pareto = Pareto::Inapplicable;
    int eval_queries = 0;
    int cut_queries = 0;
};

struct ComparisonTable {
    int n = 0;
    std::vector<MechanismRow> rows;  // ww, mww, ll, um
    // dominates[a][b]: row a componentwise weakly above row b, strictly somewhere
    std::vector<std::vector<bool>> dominates;
};

/// Runs all four mechanisms and audits each; LL/UM rows are marked
/// inapplicable when their prerequisites fail. No verdict is hard-coded.
ComparisonTable compare_mechanisms(const CakeInstance& instance);

void write_csv(const std::vector<WelfareLossRow>& rows, std::ostream& os);
void write_csv(const ComparisonTable& table, std::ostream& os);

}  // namespace cakecut

#endif
