#ifndef SAF_DMT_HPP
#define SAF_DMT_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace saf {

/// Piecewise-linear diversity-multiplexing tradeoff d(r) on [0, r_max].
struct DmtCurve {
    std::string label;
    /// (r, d) knots, ascending in r, linear between consecutive knots.
    std::vector<std::pair<double, double>> points;

    /// Linear interpolation; zero past the last knot, ConfigError for r < 0.
    double eval(double r) const;
};

/// (N+1)(1 - r)^+, the transmit-diversity bound with N relays.
DmtCurve miso_bound(int n_relays);

/// (1 - r)^+ + N (1 - M r / (M-1))^+.
DmtCurve saf_upper_bound(int n_relays, int n_slots);

/// (1 - r)^+ + N (1 - 2 r)^+.
DmtCurve naf_dmt(int n_relays);

/// Linear expression constant + coef . alpha.
struct AffineExpr {
    Eigen::VectorXd coef;
    double constant = 0.0;
};

/// weight * (1 - alpha_var)^+ on the left-hand side of a constraint.
struct TruncTerm {
    int var = 0;
    double weight = 1.0;
};

enum class RhsKind {
    Rate,       // r_H = rate_scale * r
    MaxRatePhi, // max(r_H, phi)
    Const,
};

/// sum of trunc terms + affine <= rhs.
struct LpConstraint {
    std::vector<TruncTerm> trunc;
    AffineExpr affine;
    RhsKind rhs = RhsKind::Rate;
    double rhs_const = 0.0;
};

/// Outage-exponent program: d(r) is the minimum of weights . alpha over the
/// outage region, alpha in [0, 2]^n.
struct ExponentLp {
    std::string label;
    std::vector<std::string> var_names;
    Eigen::VectorXd weights;
    double rate_scale = 1.0;
    std::optional<AffineExpr> phi;               // required by MaxRatePhi rows
    std::vector<LpConstraint> constraints;
    std::vector<std::pair<int, int>> orderings;  // alpha_first <= alpha_second

    /// Human-readable dump of variables, objective and constraints.
    std::string describe() const;
};

ExponentLp genie_instance(int n_relays, int n_slots);
ExponentLp dumb_instance(int n_relays, int n_slots);
ExponentLp smart_instance(int n_relays, int n_slots);
ExponentLp two_relay_three_slot_instance(bool ordered);

/// Parses instance names of the form "genie:N:M", "dumb:N:M", "smart:N:M",
/// "2r3s:ordered" and "2r3s:unordered". Throws ConfigError otherwise.
ExponentLp make_exponent_instance(const std::string& name);

/// d(r): splits max(r_H, phi) right-hand sides into the two global cases and
/// enumerates activation patterns of the distinct truncated terms, solving
/// one ordinary LP per case. Throws EvalError when no case is feasible.
double solve_exponent_lp(const ExponentLp& model, double r);

/// Traces d(r) on a uniform grid over [0, 1], then refines every slope
/// change by bisection (to 1e-6 in r) and emits the breakpoint knots.
DmtCurve dmt_curve_from_lp(const ExponentLp& model, int grid_points = 101);

} // namespace saf

#endif
