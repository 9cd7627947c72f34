#include "saf/lp.hpp"

#include "saf/errors.hpp"

#include <cmath>
#include <vector>

namespace saf {

namespace {

constexpr double kEps = 1e-9;

// Tableau simplex on the reduced-cost row, Bland's rule throughout. Columns
// beyond `n_enter` (the artificials in phase 2) never enter the basis.
// Returns false when the program is unbounded.
bool run_simplex(Eigen::MatrixXd& t, std::vector<int>& basis, int n_enter) {
    const int m = static_cast<int>(t.rows()) - 1;
    const int rhs = static_cast<int>(t.cols()) - 1;
    for (;;) {
        int enter = -1;
        for (int j = 0; j < n_enter; ++j) {
            if (t(m, j) < -kEps) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return true;  // optimal

        int leave = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < m; ++i) {
            if (t(i, enter) <= kEps) continue;
            const double ratio = t(i, rhs) / t(i, enter);
            if (leave < 0 || ratio < best_ratio - kEps ||
                (ratio < best_ratio + kEps && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) return false;  // unbounded

        t.row(leave) /= t(leave, enter);
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = t(i, enter);
            if (f != 0.0) t.row(i) -= f * t.row(leave);
        }
        basis[leave] = enter;
    }
}

} // namespace

std::optional<double> solve_lp_min(const Eigen::VectorXd& c,
                                   const Eigen::MatrixXd& a,
                                   const Eigen::VectorXd& b) {
    const int n = static_cast<int>(c.size());
    const int m = static_cast<int>(a.rows());
    if (a.cols() != n || b.size() != m) {
        throw ConfigError("solve_lp_min: dimension mismatch");
    }

    // Columns: n structural, m slacks, then one artificial per row with a
    // negative right-hand side, then the rhs.
    int n_art = 0;
    for (int i = 0; i < m; ++i)
        if (b[i] < 0.0) ++n_art;
    const int n_slack_end = n + m;
    const int cols = n_slack_end + n_art + 1;

    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, cols);
    std::vector<int> basis(m);
    int art = n_slack_end;
    for (int i = 0; i < m; ++i) {
        t.block(i, 0, 1, n) = a.row(i);
        t(i, n + i) = 1.0;
        t(i, cols - 1) = b[i];
        if (b[i] < 0.0) {
            t.row(i) = -t.row(i);
            t(i, art) = 1.0;
            basis[i] = art++;
        } else {
            basis[i] = n + i;
        }
    }

    if (n_art > 0) {
        // Phase 1: minimize the artificial sum, priced out over its basis.
        for (int j = n_slack_end; j < cols - 1; ++j) t(m, j) = 1.0;
        for (int i = 0; i < m; ++i)
            if (basis[i] >= n_slack_end) t.row(m) -= t.row(i);
        if (!run_simplex(t, basis, cols - 1)) return std::nullopt;
        if (t(m, cols - 1) < -kEps) return std::nullopt;  // infeasible
        // Drive lingering artificials out on any usable pivot; an all-zero
        // row is redundant and its artificial stays pinned at zero.
        for (int i = 0; i < m; ++i) {
            if (basis[i] < n_slack_end) continue;
            for (int j = 0; j < n_slack_end; ++j) {
                if (std::abs(t(i, j)) > kEps) {
                    t.row(i) /= t(i, j);
                    for (int r = 0; r <= m; ++r) {
                        if (r == i) continue;
                        const double f = t(r, j);
                        if (f != 0.0) t.row(r) -= f * t.row(i);
                    }
                    basis[i] = j;
                    break;
                }
            }
        }
    }

    // Phase 2 objective row.
    t.row(m).setZero();
    for (int j = 0; j < n; ++j) t(m, j) = c[j];
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n && c[basis[i]] != 0.0) t.row(m) -= c[basis[i]] * t.row(i);
    }
    if (!run_simplex(t, basis, n_slack_end)) return std::nullopt;

    double value = 0.0;
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n) value += c[basis[i]] * t(i, cols - 1);
    }
    return value;
}

} // namespace saf
