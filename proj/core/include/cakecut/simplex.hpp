#ifndef CAKECUT_SIMPLEX_HPP
#define CAKECUT_SIMPLEX_HPP

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace cakecut {

/// Small dense two-phase simplex: maximize c'x subject to Ax <= b, x >= 0.
/// Deterministic pivoting ((value, index) lexicographic), suitable for the
/// few-hundred-variable programs the dominance oracle builds.
class DenseSimplex {
public:
    enum class Status { Optimal, Infeasible, Unbounded };

    DenseSimplex(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                 const std::vector<double>& c)
        : m_(static_cast<int>(b.size())), n_(static_cast<int>(c.size())), basic_(m_),
          nonbasic_(n_ + 1), tab_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
        for (int i = 0; i < m_; ++i) {
            for (int j = 0; j < n_; ++j) tab_[i][j] = A[i][j];
            basic_[i] = n_ + i;
            tab_[i][n_] = -1.0;
            tab_[i][n_ + 1] = b[i];
        }
        for (int j = 0; j < n_; ++j) {
            nonbasic_[j] = j;
            tab_[m_][j] = -c[j];
        }
        nonbasic_[n_] = -1;
        tab_[m_ + 1][n_] = 1.0;
    }

    Status solve(std::vector<double>& x, double& value) {
        int r = 0;
        for (int i = 1; i < m_; ++i)
            if (tab_[i][n_ + 1] < tab_[r][n_ + 1]) r = i;
        if (tab_[r][n_ + 1] < -kEps) {
            pivot(r, n_);
            if (!optimize(2) || tab_[m_ + 1][n_ + 1] < -kEps) return Status::Infeasible;
            for (int i = 0; i < m_; ++i) {
                if (basic_[i] != -1) continue;
                int s = 0;
                for (int j = 1; j <= n_; ++j)
                    if (std::pair(tab_[i][j], nonbasic_[j]) < std::pair(tab_[i][s], nonbasic_[s]))
                        s = j;
                pivot(i, s);
            }
        }
        const bool bounded = optimize(1);
        x.assign(n_, 0.0);
        for (int i = 0; i < m_; ++i)
            if (basic_[i] < n_) x[basic_[i]] = tab_[i][n_ + 1];
        value = tab_[m_][n_ + 1];
        return bounded ? Status::Optimal : Status::Unbounded;
    }

private:
    static constexpr double kEps = 1e-10;

    void pivot(int r, int s) {
        const double inv = 1.0 / tab_[r][s];
        for (int i = 0; i < m_ + 2; ++i) {
            if (i == r || std::abs(tab_[i][s]) <= kEps) continue;
            const double f = tab_[i][s] * inv;
            for (int j = 0; j < n_ + 2; ++j) tab_[i][j] -= tab_[r][j] * f;
            tab_[i][s] = tab_[r][s] * f;
        }
        for (int j = 0; j < n_ + 2; ++j)
            if (j != s) tab_[r][j] *= inv;
        for (int i = 0; i < m_ + 2; ++i)
            if (i != r) tab_[i][s] *= -inv;
        tab_[r][s] = inv;
        std::swap(basic_[r], nonbasic_[s]);
    }

    bool optimize(int phase) {
        const int row = m_ + phase - 1;
        for (;;) {
            int s = -1;
            for (int j = 0; j <= n_; ++j) {
                if (nonbasic_[j] == -phase) continue;
                if (s == -1 || std::pair(tab_[row][j], nonbasic_[j]) < std::pair(tab_[row][s], nonbasic_[s]))
                    s = j;
            }
            if (tab_[row][s] >= -kEps) return true;
            int r = -1;
            for (int i = 0; i < m_; ++i) {
                if (tab_[i][s] <= kEps) continue;
                if (r == -1 || std::pair(tab_[i][n_ + 1] / tab_[i][s], basic_[i]) <
                                   std::pair(tab_[r][n_ + 1] / tab_[r][s], basic_[r]))
                    r = i;
            }
            if (r == -1) return false;
            pivot(r, s);
        }
    }

    int m_, n_;
    std::vector<int> basic_, nonbasic_;
    std::vector<std::vector<double>> tab_;
};

}  // namespace cakecut

#endif
