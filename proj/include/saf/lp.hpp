#ifndef SAF_LP_HPP
#define SAF_LP_HPP

#include <Eigen/Dense>
#include <optional>

namespace saf {

/// Minimize c^T x subject to A x <= b, x >= 0.
///
/// Dense two-phase simplex with Bland's anti-cycling rule; sized for the
/// small exponent programs this project generates (tens of variables and
/// constraints). Returns the optimal value, or nullopt when the program is
/// infeasible or unbounded.
std::optional<double> solve_lp_min(const Eigen::VectorXd& c,
                                   const Eigen::MatrixXd& a,
                                   const Eigen::VectorXd& b);

} // namespace saf

#endif
