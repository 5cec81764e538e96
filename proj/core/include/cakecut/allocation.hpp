#ifndef CAKECUT_ALLOCATION_HPP
#define CAKECUT_ALLOCATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "cakecut/valuation.hpp"

namespace cakecut {

struct Interval {
    double start = 0.0;
    double end = 0.0;
    double length() const { return end - start; }
};

using Piece = std::vector<Interval>;

/// A partition of [0,1] into per-agent pieces (finite unions of intervals).
/// Construction normalizes every piece (sorted, merged, zero-length-free) and
/// validates disjointness and full coverage of the cake up to measure zero.
/// Immutable afterwards; audits are pure.
class Allocation {
public:
    static Allocation from_pieces(std::vector<Piece> pieces);

    int n() const { return static_cast<int>(pieces_.size()); }
    const Piece& piece(int i) const { return pieces_.at(i); }
    const std::vector<Piece>& pieces() const { return pieces_; }

    /// All intervals with owners, sorted by position.
    struct Cell {
        Interval interval;
        int owner;
    };
    std::vector<Cell> cells() const;

private:
    std::vector<Piece> pieces_;
};

/// Re-normalizes (idempotent on already-normalized allocations).
Allocation normalize_allocation(const Allocation& a);

/// M[i][j] = V_i(X_j). Rows sum to 1 within tolerance (partition + unit mass).
std::vector<std::vector<double>> value_matrix(const CakeInstance& instance,
                                              const Allocation& allocation);

struct EnvyWitness {
    int envious, envied;     // 0-based agent indices
    double own, other;       // V_i(X_i) vs V_i(X_j)
};

struct ShareWitness {
    int agent;
    double own;
};

struct AuditReport {
    std::string check;  // "envy-free" | "proportional"
    bool passed = false;
    double tolerance = kAuditTol;
    std::optional<EnvyWitness> envy;    // present iff an EF audit failed
    std::optional<ShareWitness> share;  // present iff a proportionality audit failed
};

AuditReport audit_envy_free(const CakeInstance& instance, const Allocation& allocation,
                            double eps = kAuditTol);
AuditReport audit_proportional(const CakeInstance& instance, const Allocation& allocation,
                               double eps = kAuditTol);

struct StructureFlags {
    bool connected = false;        // every piece is a single interval
    bool peak_preserving = false;  // positional order matches peak order (needs connected)
    bool non_wasteful = false;     // each piece inside its owner's support
};

StructureFlags structure_flags(const CakeInstance& instance, const Allocation& allocation,
                               double tol = kAuditTol);

}  // namespace cakecut

#endif
