#include "cakecut/allocation.hpp"

#include <algorithm>
#include <cmath>

namespace cakecut {

namespace {

constexpr double kMergeTol = 1e-13;

Piece normalize_piece(Piece p) {
    std::sort(p.begin(), p.end(),
              [](const Interval& a, const Interval& b) { return a.start < b.start; });
    Piece out;
    for (const auto& iv : p) {
        if (!(iv.start >= -kMergeTol && iv.end <= 1.0 + kMergeTol && iv.start <= iv.end + kMergeTol))
            throw DomainError("interval outside [0,1] or reversed");
        Interval c{std::clamp(iv.start, 0.0, 1.0), std::clamp(iv.end, 0.0, 1.0)};
        if (c.length() <= kMergeTol) continue;
        if (!out.empty() && c.start <= out.back().end + kMergeTol) {
            out.back().end = std::max(out.back().end, c.end);
        } else {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace

Allocation Allocation::from_pieces(std::vector<Piece> pieces) {
    if (pieces.empty()) throw DomainError("allocation needs at least one agent");
    Allocation a;
    a.pieces_.reserve(pieces.size());
    for (auto& p : pieces) a.pieces_.push_back(normalize_piece(std::move(p)));

    // partition check: disjoint up to endpoints, union = [0,1] up to measure zero
    auto cs = a.cells();
    double covered = 0.0;
    for (const auto& c : cs) {
        if (c.interval.start > covered + kAuditTol)
            throw DomainError("allocation leaves part of the cake unassigned");
        if (c.interval.start < covered - kAuditTol)
            throw DomainError("allocation pieces overlap");
        covered = std::max(covered, c.interval.end);
    }
    if (covered < 1.0 - kAuditTol) throw DomainError("allocation leaves part of the cake unassigned");
    return a;
}

std::vector<Allocation::Cell> Allocation::cells() const {
    std::vector<Cell> cs;
    for (int i = 0; i < n(); ++i)
        for (const auto& iv : pieces_[i]) cs.push_back({iv, i});
    std::sort(cs.begin(), cs.end(),
              [](const Cell& a, const Cell& b) { return a.interval.start < b.interval.start; });
    return cs;
}

Allocation normalize_allocation(const Allocation& a) { return Allocation::from_pieces(a.pieces()); }

std::vector<std::vector<double>> value_matrix(const CakeInstance& instance,
                                              const Allocation& allocation) {
    if (instance.n() != allocation.n())
        throw ShapeMismatch("instance and allocation have different agent counts");
    const int n = instance.n();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& iv : allocation.piece(j))
                m[i][j] += instance.agent(i).eval(iv.start, iv.end);
    return m;
}

AuditReport audit_envy_free(const CakeInstance& instance, const Allocation& allocation,
                            double eps) {
    const auto m = value_matrix(instance, allocation);
    AuditReport rep{"envy-free", true, eps, std::nullopt, std::nullopt};
    double worst = 0.0;
    for (int i = 0; i < instance.n(); ++i) {
        for (int j = 0; j < instance.n(); ++j) {
            const double violation = m[i][j] - m[i][i];
            if (violation > eps && violation > worst) {
                worst = violation;
                rep.passed = false;
                rep.envy = EnvyWitness{i, j, m[i][i], m[i][j]};
            }
        }
    }
    return rep;
}

AuditReport audit_proportional(const CakeInstance& instance, const Allocation& allocation,
                               double eps) {
    const auto m = value_matrix(instance, allocation);
    const double fair = 1.0 / instance.n();
    AuditReport rep{"proportional", true, eps, std::nullopt, std::nullopt};
    double worst = 0.0;
    for (int i = 0; i < instance.n(); ++i) {
        const double deficit = fair - m[i][i];
        if (deficit > eps && deficit > worst) {
            worst = deficit;
            rep.passed = false;
            rep.share = ShareWitness{i, m[i][i]};
        }
    }
    return rep;
}

StructureFlags structure_flags(const CakeInstance& instance, const Allocation& allocation,
                               double tol) {
    if (instance.n() != allocation.n())
        throw ShapeMismatch("instance and allocation have different agent counts");
    StructureFlags f;

    f.connected = true;
    for (const auto& p : allocation.pieces())
        if (p.size() > 1) f.connected = false;

    f.peak_preserving = false;
    if (f.connected) {
        f.peak_preserving = true;
        double prev_peak = -1.0;
        for (const auto& c : allocation.cells()) {
            const double pk = instance.agent(c.owner).peak();
            if (pk < prev_peak - kArithTol) f.peak_preserving = false;
            prev_peak = pk;
        }
    }

    f.non_wasteful = true;
    for (int i = 0; i < instance.n(); ++i) {
        const double l = instance.agent(i).support_left();
        const double r = instance.agent(i).support_right();
        double waste = 0.0;
        for (const auto& iv : allocation.piece(i)) {
            waste += std::max(0.0, std::min(iv.end, l) - iv.start);
            waste += std::max(0.0, iv.end - std::max(iv.start, r));
        }
        if (waste > tol) f.non_wasteful = false;
    }
    return f;
}

}  // namespace cakecut
