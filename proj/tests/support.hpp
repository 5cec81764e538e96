#ifndef CAKECUT_TESTS_SUPPORT_HPP
#define CAKECUT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cakecut/allocation.hpp"
#include "cakecut/valuation.hpp"

namespace cakecut::testing {

// ---------------------------------------------------------------------------
// Independent numeric oracle: integrates the density directly (exact trapezoid
// on the linear pieces between kinks) and inverts it by bisection. Shares no
// code with the closed-form cdf/cut under test.
// ---------------------------------------------------------------------------

inline double quad_mass(const SinglePeakedValuation& v, double a, double b) {
    std::vector<double> pts{a, b};
    for (double t : {v.support_left(), v.peak(), v.support_right()})
        if (t > a && t < b) pts.push_back(t);
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        const double da = v.density_at(pts[i]);
        const double db = v.density_at(pts[i + 1]);
        total += 0.5 * (da + db) * (pts[i + 1] - pts[i]);
    }
    return total;
}

inline double quad_cut(const SinglePeakedValuation& v, double x, double target) {
    if (target <= 0.0) return x;
    double lo = x, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (quad_mass(v, x, mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Independent leftmost-leaves recurrence used to pin the third Fig. 3 value.
inline std::vector<double> ll_recurrence_oracle(const CakeInstance& inst) {
    const int n = inst.n();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return inst.agent(a).peak() < inst.agent(b).peak(); });
    std::vector<double> utils(n, 0.0);
    double prev = 0.0;
    for (int j = 0; j < n; ++j) {
        const auto& v = inst.agent(order[j]);
        if (j == n - 1) {
            utils[order[j]] = quad_mass(v, prev, 1.0);
            break;
        }
        const double rest = quad_mass(v, prev, 1.0);
        double cj = quad_cut(v, prev, rest / (n - j));
        const auto& next = inst.agent(order[j + 1]);
        cj = std::max(cj, next.support_left());
        utils[order[j]] = quad_mass(v, prev, cj);
        prev = cj;
    }
    return utils;
}

// ---------------------------------------------------------------------------
// Deterministic RNG (splitmix64) for property tests.
// ---------------------------------------------------------------------------

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
    int pick(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

// Random connected allocation with peak-ordered owners; cuts kept inside the
// feasibility band [l_{i+1}, r_i], so the result is PO by construction.
inline Allocation random_po_allocation(const CakeInstance& inst, Rng& rng) {
    const int n = inst.n();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return inst.agent(a).peak() < inst.agent(b).peak(); });
    std::vector<Piece> pieces(n);
    double prev = 0.0;
    for (int j = 0; j < n; ++j) {
        double hi = inst.agent(order[j]).support_right();
        if (j == n - 1) {
            pieces[order[j]].push_back({prev, 1.0});
            break;
        }
        const double lo = std::max(prev, inst.agent(order[j + 1]).support_left());
        const double cut = rng.uniform(lo, std::max(lo, std::min(hi, 1.0)));
        pieces[order[j]].push_back({prev, cut});
        prev = cut;
    }
    return Allocation::from_pieces(std::move(pieces));
}

// Corrupts a PO allocation: either swaps two adjacent pieces (peak-order
// violation) or hands one agent's piece to a far agent (waste or
// disconnection). Retries until the touched pieces are macroscopic, so the
// resulting Pareto violation is well above audit and LP tolerances.
inline Allocation random_bad_allocation(const CakeInstance& inst, Rng& rng) {
    const int n = inst.n();
    for (int attempt = 0; attempt < 400; ++attempt) {
        auto base = random_po_allocation(inst, rng);
        auto cells = base.cells();
        if (cells.size() < 2) continue;
        if (rng.pick(2) == 0) {  // swap owners of two adjacent pieces
            const int a = rng.pick(static_cast<int>(cells.size()) - 1);
            if (cells[a].interval.length() < 0.04 || cells[a + 1].interval.length() < 0.04)
                continue;
            std::vector<Piece> out(n);
            for (size_t c = 0; c < cells.size(); ++c) {
                int owner = cells[c].owner;
                if (c == static_cast<size_t>(a)) owner = cells[a + 1].owner;
                if (c == static_cast<size_t>(a) + 1) owner = cells[a].owner;
                out[owner].push_back(cells[c].interval);
            }
            return Allocation::from_pieces(std::move(out));
        }
        const int victim = rng.pick(static_cast<int>(cells.size()));
        if (cells[victim].interval.length() < 0.04) continue;
        const int receiver =
            cells[victim].owner == cells.front().owner ? cells.back().owner : cells.front().owner;
        if (receiver == cells[victim].owner) continue;
        std::vector<Piece> out(n);
        for (size_t c = 0; c < cells.size(); ++c)
            out[c == static_cast<size_t>(victim) ? receiver : cells[c].owner].push_back(
                cells[c].interval);
        return Allocation::from_pieces(std::move(out));
    }
    return random_po_allocation(inst, rng);
}

// Step bound for the improvement iteration: maximal wasteful components plus
// inverted piece pairs.
inline int exchange_step_bound(const CakeInstance& inst, const Allocation& alloc) {
    int waste_components = 0;
    for (int i = 0; i < inst.n(); ++i) {
        const double l = inst.agent(i).support_left();
        const double r = inst.agent(i).support_right();
        for (const auto& iv : alloc.piece(i)) {
            if (std::min(iv.end, l) - iv.start > kAuditTol) waste_components++;
            if (iv.end - std::max(iv.start, r) > kAuditTol) waste_components++;
        }
    }
    int inversions = 0;
    const auto cells = alloc.cells();
    for (size_t a = 0; a < cells.size(); ++a)
        for (size_t b = a + 1; b < cells.size(); ++b)
            if (inst.agent(cells[a].owner).peak() > inst.agent(cells[b].owner).peak() + 1e-12)
                inversions++;
    return waste_components + inversions;
}

}  // namespace cakecut::testing

#endif
