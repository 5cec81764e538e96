#include "cakecut/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cakecut/simplex.hpp"

namespace cakecut {

namespace {

std::vector<WastefulWitness> all_wasteful(const CakeInstance& inst, const Allocation& alloc,
                                          double tol) {
    std::vector<WastefulWitness> out;
    for (int i = 0; i < inst.n(); ++i) {
        const double l = inst.agent(i).support_left();
        const double r = inst.agent(i).support_right();
        for (const auto& iv : alloc.piece(i)) {
            if (std::min(iv.end, l) - iv.start > tol)
                out.push_back({i, {iv.start, std::min(iv.end, l)}});
            if (iv.end - std::max(iv.start, r) > tol)
                out.push_back({i, {std::max(iv.start, r), iv.end}});
        }
    }
    return out;
}

std::optional<WastefulWitness> find_wasteful(const CakeInstance& inst, const Allocation& alloc,
                                             double tol) {
    auto ws = all_wasteful(inst, alloc, tol);
    if (ws.empty()) return std::nullopt;
    return ws.front();
}

std::optional<OrderWitness> find_order_violation(const CakeInstance& inst,
                                                 const Allocation& alloc, double tol) {
    const auto cells = alloc.cells();
    for (size_t c = 0; c + 1 < cells.size(); ++c) {
        const auto& left = cells[c];
        const auto& right = cells[c + 1];
        if (left.interval.length() <= tol || right.interval.length() <= tol) continue;
        if (left.owner == right.owner) continue;
        if (inst.agent(left.owner).peak() > inst.agent(right.owner).peak() + kArithTol)
            return OrderWitness{left.owner, right.owner, left.interval, right.interval};
    }
    return std::nullopt;
}

std::vector<double> dedupe_sorted(std::vector<double> xs, double tol) {
    std::sort(xs.begin(), xs.end());
    std::vector<double> out;
    for (double x : xs) {
        x = std::clamp(x, 0.0, 1.0);
        if (out.empty() || x - out.back() > tol) out.push_back(x);
    }
    return out;
}

}  // namespace

ParetoVerdict audit_pareto_sp(const CakeInstance& instance, const Allocation& allocation) {
    ParetoVerdict v;
    v.common_slope = instance.common_slope();
    v.distinct_peaks = instance.distinct_peaks();
    v.coverage = instance.coverage();
    if (!v.common_slope || !v.distinct_peaks || !v.coverage) {
        v.verdict = Pareto::Inapplicable;
        v.reason = !v.common_slope    ? "slopes differ across agents"
                   : !v.distinct_peaks ? "two agents share a peak"
                                       : "supports do not cover the cake";
        return v;
    }

    const auto flags = structure_flags(instance, allocation);
    if (flags.connected && flags.peak_preserving && flags.non_wasteful) {
        v.verdict = Pareto::PO;
        return v;
    }
    v.verdict = Pareto::NotPO;
    // wasteful witness first (mirrors the exchange order), then peak order
    if (!flags.non_wasteful) {
        v.wasteful = find_wasteful(instance, allocation, kAuditTol);
        if (!v.wasteful) v.wasteful = find_wasteful(instance, allocation, 1e-13);
    }
    if (!v.wasteful) {
        v.order = find_order_violation(instance, allocation, kAuditTol);
        if (!v.order) v.order = find_order_violation(instance, allocation, 1e-13);
    }
    return v;
}

std::optional<Allocation> find_improvement_exchange(const CakeInstance& instance,
                                                    const Allocation& allocation) {
    if (!instance.common_slope())
        throw PrereqViolated("the exchange construction requires a common slope");

    const int n = instance.n();

    // Wasteful pieces first: split one at support endpoints and hand each part
    // to an agent that values it most (strict gain for the takers, no loss).
    // On non-covering instances a component may have no taker; try the next.
    for (const auto& w : all_wasteful(instance, allocation, kAuditTol)) {
        std::vector<double> edges{w.interval.start, w.interval.end};
        for (int j = 0; j < n; ++j) {
            for (double e : {instance.agent(j).support_left(), instance.agent(j).support_right()})
                if (e > w.interval.start + 1e-13 && e < w.interval.end - 1e-13)
                    edges.push_back(e);
        }
        edges = dedupe_sorted(std::move(edges), 1e-13);

        auto pieces = allocation.pieces();
        // carve the component out of the owner's piece
        Piece kept;
        for (const auto& iv : pieces[w.agent]) {
            if (iv.end <= w.interval.start + 1e-13 || iv.start >= w.interval.end - 1e-13) {
                kept.push_back(iv);
                continue;
            }
            if (w.interval.start - iv.start > 1e-13) kept.push_back({iv.start, w.interval.start});
            if (iv.end - w.interval.end > 1e-13) kept.push_back({w.interval.end, iv.end});
        }
        pieces[w.agent] = std::move(kept);

        bool reassigned = false;
        for (size_t c = 0; c + 1 < edges.size(); ++c) {
            const Interval cell{edges[c], edges[c + 1]};
            int best = w.agent;
            double best_val = 0.0;
            for (int j = 0; j < n; ++j) {
                const double val = instance.agent(j).eval(cell.start, cell.end);
                if (val > best_val + 1e-15) {
                    best_val = val;
                    best = j;
                }
            }
            pieces[best].push_back(cell);
            if (best != w.agent && best_val > 0.0) reassigned = true;
        }
        if (reassigned) return Allocation::from_pieces(std::move(pieces));
    }

    auto ow = find_order_violation(instance, allocation, kAuditTol);
    if (!ow) return std::nullopt;

    const auto& vj = instance.agent(ow->left_owner);
    const auto& vi = instance.agent(ow->right_owner);
    const double a = ow->left_iv.start, b = ow->left_iv.end;
    const double b2 = ow->right_iv.start, c = ow->right_iv.end;
    const double mu = vj.eval(a, b);
    const double nu = vi.eval(b2, c);

    auto rebuild = [&](double split) {
        auto pieces = allocation.pieces();
        auto drop = [](Piece& p, const Interval& iv) {
            std::erase_if(p, [&](const Interval& q) {
                return std::abs(q.start - iv.start) < 1e-15 && std::abs(q.end - iv.end) < 1e-15;
            });
        };
        drop(pieces[ow->left_owner], ow->left_iv);
        drop(pieces[ow->right_owner], ow->right_iv);
        if (split - a > 1e-15) pieces[ow->right_owner].push_back({a, split});
        if (c - split > 1e-15) pieces[ow->left_owner].push_back({split, c});
        return Allocation::from_pieces(std::move(pieces));
    };

    // orientation 1: j keeps exactly her old value, moved to the right part
    {
        const double split = std::clamp(vj.last_point_with_cdf(vj.cdf(c) - mu), a, c);
        const double gain_i = vi.eval(a, split) - nu;
        const double gain_j = vj.eval(split, c) - mu;
        if (gain_i > 1e-14 && gain_j > -kArithTol) return rebuild(split);
    }
    // orientation 2 (mirror): i keeps exactly her old value on the left
    {
        const double split = std::clamp(vi.cut(a, nu), a, c);
        const double gain_j = vj.eval(split, c) - mu;
        const double gain_i = vi.eval(a, split) - nu;
        if (gain_j > 1e-14 && gain_i > -kArithTol) return rebuild(split);
    }
    throw SolverFailure("peak-order exchange failed to verify a Pareto improvement");
}

std::optional<DominanceResult> dominance_oracle(const CakeInstance& instance,
                                                const Allocation& allocation, int grid_cells) {
    const int n = instance.n();
    if (grid_cells < n) throw DomainError("grid must have at least n cells");
    if (allocation.n() != n)
        throw ShapeMismatch("instance and allocation have different agent counts");

    std::vector<double> edges{0.0, 1.0};
    for (int i = 0; i < n; ++i) {
        edges.push_back(instance.agent(i).support_left());
        edges.push_back(instance.agent(i).peak());
        edges.push_back(instance.agent(i).support_right());
    }
    for (const auto& p : allocation.pieces()) {
        for (const auto& iv : p) {
            edges.push_back(iv.start);
            edges.push_back(iv.end);
        }
    }
    edges = dedupe_sorted(std::move(edges), 1e-12);

    std::vector<double> grid;
    for (size_t e = 0; e + 1 < edges.size(); ++e) {
        const double gap = edges[e + 1] - edges[e];
        const int parts = std::max(1, static_cast<int>(std::ceil(gap * grid_cells - 1e-9)));
        for (int s = 0; s < parts; ++s) grid.push_back(edges[e] + gap * s / parts);
    }
    grid.push_back(1.0);

    const int cell_count = static_cast<int>(grid.size()) - 1;
    std::vector<std::vector<double>> val(n, std::vector<double>(cell_count));
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < cell_count; ++c) val[i][c] = instance.agent(i).eval(grid[c], grid[c + 1]);

    const auto m = value_matrix(instance, allocation);
    std::vector<double> current(n);
    for (int i = 0; i < n; ++i) current[i] = m[i][i];

    const int nvars = n * cell_count;
    const int nrows = cell_count + n;
    std::vector<std::vector<double>> A(nrows, std::vector<double>(nvars, 0.0));
    std::vector<double> b(nrows, 0.0), obj(nvars, 0.0);
    auto idx = [&](int i, int c) { return i * cell_count + c; };
    for (int c = 0; c < cell_count; ++c) {
        for (int i = 0; i < n; ++i) A[c][idx(i, c)] = 1.0;
        b[c] = 1.0;
    }
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < cell_count; ++c) A[cell_count + i][idx(i, c)] = -val[i][c];
        b[cell_count + i] = -current[i];
    }
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < cell_count; ++c) obj[idx(i, c)] = val[i][c];

    std::vector<double> x;
    double best = 0.0;
    const auto status = DenseSimplex(A, b, obj).solve(x, best);
    if (status != DenseSimplex::Status::Optimal)
        throw SolverFailure("dominance LP did not reach an optimum");

    const double slack = best - std::accumulate(current.begin(), current.end(), 0.0);
    if (slack <= 1e-7) return std::nullopt;

    DominanceResult res;
    res.cell_edges = grid;
    res.slack = slack;
    res.fractions.assign(n, std::vector<double>(cell_count, 0.0));
    res.utilities.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < cell_count; ++c) {
            res.fractions[i][c] = std::clamp(x[idx(i, c)], 0.0, 1.0);
            res.utilities[i] += res.fractions[i][c] * val[i][c];
        }
    }
    return res;
}

WelfareMetrics welfare_metrics(const CakeInstance& instance, const Allocation& allocation) {
    const auto m = value_matrix(instance, allocation);
    WelfareMetrics w;
    w.utilities.resize(instance.n());
    w.minimum = 1.0;
    for (int i = 0; i < instance.n(); ++i) {
        w.utilities[i] = m[i][i];
        w.sum += m[i][i];
        w.minimum = std::min(w.minimum, m[i][i]);
    }
    w.average = w.sum / instance.n();
    return w;
}

}  // namespace cakecut
