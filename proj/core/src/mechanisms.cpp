#include "cakecut/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cakecut {

namespace {

constexpr double kMarkTol = 1e-10;

std::vector<double> dedupe_sorted(std::vector<double> xs, double tol) {
    std::sort(xs.begin(), xs.end());
    std::vector<double> out;
    for (double x : xs) {
        x = std::clamp(x, 0.0, 1.0);
        if (out.empty() || x - out.back() > tol) out.push_back(x);
    }
    // 0 and 1 are always in the input; snap the ends back if they merged
    if (!out.empty()) {
        out.front() = 0.0;
        out.back() = 1.0;
    }
    return out;
}

std::vector<double> ww_marks(const std::vector<SupportTriple>& triples) {
    std::vector<double> marks{0.0, 1.0};
    for (const auto& t : triples) {
        marks.push_back(t.l);
        marks.push_back(t.p);
        marks.push_back(t.r);
    }
    return dedupe_sorted(std::move(marks), kMarkTol);
}

std::vector<double> diagonal_utilities(const CakeInstance& inst, const Allocation& alloc) {
    const auto m = value_matrix(inst, alloc);
    std::vector<double> u(inst.n());
    for (int i = 0; i < inst.n(); ++i) u[i] = m[i][i];
    return u;
}

MechanismResult finish(const CakeInstance& inst, std::vector<Piece> pieces, RwOracle& oracle,
                       std::string tag, std::vector<double> marks) {
    auto alloc = Allocation::from_pieces(std::move(pieces));
    auto utils = diagonal_utilities(inst, alloc);
    return {std::move(alloc), std::move(utils), oracle.log(), std::move(tag), std::move(marks)};
}

// Input-order ranks within a segment: rank q of m interested agents takes
// equal pieces q and 2m+1-q (1-based) of the 2m-way split.
void assign_paired_pieces(std::vector<Piece>& pieces, const std::vector<int>& interested,
                          double a, double b) {
    const int m = static_cast<int>(interested.size());
    const int slots = 2 * m;
    auto at = [&](int j) { return a + (b - a) * j / slots; };
    for (int q = 0; q < m; ++q) {
        const int agent = interested[q];
        pieces[agent].push_back({at(q), at(q + 1)});
        pieces[agent].push_back({at(slots - 1 - q), at(slots - q)});
    }
}

}  // namespace

MechanismResult run_ww(const CakeInstance& instance) {
    const int n = instance.n();
    RwOracle oracle(instance);
    std::vector<SupportTriple> triples;
    triples.reserve(n);
    for (int i = 0; i < n; ++i) triples.push_back(oracle.recover_structure(i));

    const auto marks = ww_marks(triples);
    std::vector<Piece> pieces(n);
    std::vector<int> everyone(n);
    std::iota(everyone.begin(), everyone.end(), 0);
    for (size_t s = 0; s + 1 < marks.size(); ++s) {
        if (marks[s + 1] - marks[s] <= kMarkTol) continue;
        assign_paired_pieces(pieces, everyone, marks[s], marks[s + 1]);
    }
    return finish(instance, std::move(pieces), oracle, "ww", marks);
}

MechanismResult run_mww(const CakeInstance& instance) {
    const int n = instance.n();
    RwOracle oracle(instance);
    std::vector<SupportTriple> triples;
    triples.reserve(n);
    for (int i = 0; i < n; ++i) triples.push_back(oracle.recover_structure(i));

    const auto marks = ww_marks(triples);
    std::vector<Piece> pieces(n);
    for (size_t s = 0; s + 1 < marks.size(); ++s) {
        const double a = marks[s], b = marks[s + 1];
        if (b - a <= kMarkTol) continue;
        std::vector<int> interested;
        for (int i = 0; i < n; ++i)
            if (std::min(b, triples[i].r) - std::max(a, triples[i].l) > kMarkTol)
                interested.push_back(i);
        if (interested.empty()) {
            if (!instance.waste_tolerant())
                throw EmptySegment("segment valued by nobody and waste-tolerant mode is off");
            pieces[0].push_back({a, b});  // arbitrary assignment of undesired cake
            continue;
        }
        assign_paired_pieces(pieces, interested, a, b);
    }
    return finish(instance, std::move(pieces), oracle, "mww", marks);
}

MechanismResult run_ll(const CakeInstance& instance) {
    if (!instance.common_slope()) throw PrereqViolated("leftmost leaves requires a common slope");
    if (!instance.coverage()) throw PrereqViolated("leftmost leaves requires covering supports");

    const int n = instance.n();
    RwOracle oracle(instance);
    std::vector<SupportTriple> triples;
    triples.reserve(n);
    for (int i = 0; i < n; ++i) triples.push_back(oracle.recover_structure(i));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return triples[a].p < triples[b].p; });

    std::vector<Piece> pieces(n);
    std::vector<double> cuts;
    double prev = 0.0;
    for (int j = 0; j < n; ++j) {
        const int agent = order[j];
        if (j == n - 1) {
            pieces[agent].push_back({prev, 1.0});
            break;
        }
        const double rest = oracle.rw_eval(agent, prev, 1.0);
        const double target = rest / (n - j);
        const double cj = target > 0.0 ? oracle.rw_cut(agent, prev, target) : prev;
        double cpj = std::max({cj, triples[order[j + 1]].l, prev});
        cpj = std::min(cpj, 1.0);
        pieces[agent].push_back({prev, cpj});
        cuts.push_back(cpj);
        prev = cpj;
    }
    return finish(instance, std::move(pieces), oracle, "ll", cuts);
}

MechanismResult run_um(const CakeInstance& instance) {
    if (!instance.common_slope()) throw PrereqViolated("utilitarian cuts require a common slope");
    if (!instance.coverage()) throw PrereqViolated("utilitarian cuts require covering supports");
    if (!instance.distinct_peaks()) throw EqualPeaks("utilitarian cuts require distinct peaks");

    const int n = instance.n();
    RwOracle oracle(instance);
    std::vector<RecoveredShape> shapes;
    shapes.reserve(n);
    for (int i = 0; i < n; ++i) shapes.push_back(oracle.recover_shape(i, oracle.recover_structure(i)));

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return shapes[a].p < shapes[b].p; });

    double k = 0.0;
    for (const auto& s : shapes) k += s.k;
    k /= n;

    std::vector<double> cuts;
    double prev = 0.0;
    for (int j = 0; j + 1 < n; ++j) {
        const auto& lo = shapes[order[j]];
        const auto& hi = shapes[order[j + 1]];
        double c = (lo.h - hi.h) / (2.0 * k) + 0.5 * (lo.p + hi.p);
        c = std::clamp(c, lo.p, hi.p);
        c = std::max(c, prev);
        cuts.push_back(c);
        prev = c;
    }

    std::vector<Piece> pieces(n);
    double a = 0.0;
    for (int j = 0; j < n; ++j) {
        const double b = (j == n - 1) ? 1.0 : cuts[j];
        pieces[order[j]].push_back({a, b});
        a = b;
    }
    return finish(instance, std::move(pieces), oracle, "um", cuts);
}

MechanismResult run_envelope_um(const CakeInstance& instance) {
    const int n = instance.n();
    RwOracle oracle(instance);
    std::vector<RecoveredShape> shapes;
    shapes.reserve(n);
    for (int i = 0; i < n; ++i) shapes.push_back(oracle.recover_shape(i, oracle.recover_structure(i)));

    // density segments: ascending (slope +k) on [l,p], descending (-k) on [p,r]
    struct Seg {
        double x0, x1, slope, intercept;
    };
    std::vector<Seg> segs;
    for (const auto& s : shapes) {
        const double l = std::max(0.0, s.p - s.h / s.k);
        const double r = std::min(1.0, s.p + s.h / s.k);
        if (s.p - l > kMarkTol) segs.push_back({l, s.p, s.k, s.h - s.k * s.p});
        if (r - s.p > kMarkTol) segs.push_back({s.p, r, -s.k, s.h + s.k * s.p});
    }

    std::vector<double> breaks{0.0, 1.0};
    for (const auto& s : shapes) {
        breaks.push_back(std::max(0.0, s.p - s.h / s.k));
        breaks.push_back(s.p);
        breaks.push_back(std::min(1.0, s.p + s.h / s.k));
    }
    for (size_t i = 0; i < segs.size(); ++i) {
        for (size_t j = i + 1; j < segs.size(); ++j) {
            if (std::abs(segs[i].slope - segs[j].slope) < 1e-14) continue;
            const double x = (segs[j].intercept - segs[i].intercept) / (segs[i].slope - segs[j].slope);
            if (x >= std::max(segs[i].x0, segs[j].x0) - 1e-12 &&
                x <= std::min(segs[i].x1, segs[j].x1) + 1e-12 && x >= 0.0 && x <= 1.0)
                breaks.push_back(x);
        }
    }
    const auto cells = dedupe_sorted(std::move(breaks), 1e-12);

    auto density = [&](const RecoveredShape& s, double x) {
        return std::max(0.0, s.h - s.k * std::abs(x - s.p));
    };
    std::vector<Piece> pieces(n);
    for (size_t c = 0; c + 1 < cells.size(); ++c) {
        if (cells[c + 1] - cells[c] <= 1e-12) continue;
        const double mid = 0.5 * (cells[c] + cells[c + 1]);
        int owner = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            const double d = density(shapes[i], mid);
            if (d > best + 1e-15) {
                best = d;
                owner = i;
            }
        }
        pieces[owner].push_back({cells[c], cells[c + 1]});
    }
    return finish(instance, std::move(pieces), oracle, "envelope", cells);
}

}  // namespace cakecut
