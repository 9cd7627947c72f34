#include "saf/dmt.hpp"

#include "saf/errors.hpp"
#include "saf/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace saf {

double DmtCurve::eval(double r) const {
    if (r < 0.0) throw ConfigError("DmtCurve::eval: negative multiplexing gain");
    if (points.empty()) throw ConfigError("DmtCurve::eval: empty curve");
    if (r <= points.front().first) return points.front().second;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const auto& [r0, d0] = points[i];
        const auto& [r1, d1] = points[i + 1];
        if (r <= r1) {
            const double t = (r - r0) / (r1 - r0);
            return d0 + t * (d1 - d0);
        }
    }
    return 0.0;
}

DmtCurve miso_bound(int n_relays) {
    if (n_relays < 0) throw ConfigError("miso_bound: negative relay count");
    DmtCurve c;
    c.label = "miso_bound";
    c.points = {{0.0, n_relays + 1.0}, {1.0, 0.0}};
    return c;
}

DmtCurve saf_upper_bound(int n_relays, int n_slots) {
    if (n_relays < 1 || n_slots < 2) {
        throw ConfigError("saf_upper_bound: need N >= 1 and M >= 2");
    }
    const double rk = (n_slots - 1.0) / n_slots;
    DmtCurve c;
    c.label = "saf_upper_bound";
    c.points = {{0.0, n_relays + 1.0}, {rk, 1.0 / n_slots}, {1.0, 0.0}};
    return c;
}

DmtCurve naf_dmt(int n_relays) {
    if (n_relays < 1) throw ConfigError("naf_dmt: need N >= 1");
    DmtCurve c;
    c.label = "naf";
    c.points = {{0.0, n_relays + 1.0}, {0.5, 0.5}, {1.0, 0.0}};
    return c;
}

namespace {

LpConstraint trunc_row(std::vector<TruncTerm> terms) {
    LpConstraint row;
    row.trunc = std::move(terms);
    return row;
}

} // namespace

ExponentLp genie_instance(int n_relays, int n_slots) {
    if (n_relays < 1 || n_slots < 2) {
        throw ConfigError("genie_instance: need N >= 1 and M >= 2");
    }
    ExponentLp model;
    model.label = "genie";
    model.rate_scale = n_slots;
    model.var_names.push_back("a0");
    for (int i = 1; i <= n_relays; ++i) model.var_names.push_back("g" + std::to_string(i));
    model.weights = Eigen::VectorXd::Ones(n_relays + 1);
    model.constraints.push_back(trunc_row({{0, static_cast<double>(n_slots)}}));
    for (int i = 1; i <= n_relays; ++i) {
        model.constraints.push_back(trunc_row({{i, n_slots - 1.0}}));
    }
    return model;
}

ExponentLp dumb_instance(int n_relays, int n_slots) {
    if (n_relays < 1 || n_slots < 2) {
        throw ConfigError("dumb_instance: need N >= 1 and M >= 2");
    }
    const int eff = n_slots - 1;
    const int k = eff / n_relays;
    const int m = eff % n_relays;

    ExponentLp model;
    model.label = "dumb";
    model.rate_scale = n_slots;
    model.var_names.push_back("a0");
    for (int i = 1; i <= n_relays; ++i) model.var_names.push_back("r" + std::to_string(i));
    model.weights = Eigen::VectorXd::Ones(n_relays + 1);
    model.constraints.push_back(trunc_row({{0, static_cast<double>(n_slots)}}));

    // One row per m-subset of relays: the subset forwards one extra slot in
    // the truncated round robin.
    std::vector<bool> pick(n_relays, false);
    std::fill(pick.begin(), pick.begin() + m, true);
    do {
        std::vector<TruncTerm> terms;
        for (int i = 0; i < n_relays; ++i) {
            const double w = k + (pick[i] ? 1.0 : 0.0);
            if (w > 0.0) terms.push_back({i + 1, w});
        }
        if (!terms.empty()) model.constraints.push_back(trunc_row(std::move(terms)));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return model;
}

ExponentLp smart_instance(int n_relays, int n_slots) {
    if (n_relays < 2 || n_slots < 2) {
        throw ConfigError("smart_instance: need N >= 2 and M >= 2");
    }
    const int eff = n_slots - 1;
    const double hi = (eff + 1) / 2;
    const double lo = eff / 2;

    ExponentLp model;
    model.label = "smart";
    model.rate_scale = n_slots;
    model.var_names.push_back("a0");
    for (int i = 1; i <= n_relays; ++i) model.var_names.push_back("r" + std::to_string(i));
    model.weights = Eigen::VectorXd::Ones(n_relays + 1);
    model.constraints.push_back(trunc_row({{0, static_cast<double>(n_slots)}}));
    for (int i = 1; i <= n_relays; ++i) {
        for (int j = 1; j <= n_relays; ++j) {
            if (i == j) continue;
            std::vector<TruncTerm> terms{{i, hi}};
            if (lo > 0.0) terms.push_back({j, lo});
            model.constraints.push_back(trunc_row(std::move(terms)));
        }
    }
    return model;
}

ExponentLp two_relay_three_slot_instance(bool ordered) {
    // Variables: g0, g1, g2, h1, h2, gam12, theta.
    ExponentLp model;
    model.label = ordered ? "2r3s_ordered" : "2r3s_unordered";
    model.rate_scale = 3.0;
    model.var_names = {"g0", "g1", "g2", "h1", "h2", "gam12", "theta"};
    model.weights.resize(7);
    model.weights << 1, 1, 1, 1, 1, 1, 0.5;

    AffineExpr phi;
    phi.constant = 2.0;
    phi.coef.resize(7);
    phi.coef << -0.5, -0.5, -1.0, -1.0, -0.5, -0.5, 0.0;
    model.phi = phi;

    auto affine_row = [](double c0, std::initializer_list<double> coefs,
                         RhsKind rhs) {
        LpConstraint row;
        row.affine.constant = c0;
        row.affine.coef = Eigen::VectorXd::Zero(7);
        int i = 0;
        for (double v : coefs) row.affine.coef[i++] = v;
        row.rhs = rhs;
        return row;
    };
    model.constraints = {
        affine_row(3, {-3, 0, 0, 0, 0, 0, 0}, RhsKind::Rate),
        affine_row(2, {-1, -1, 0, -1, 0, 0, 0}, RhsKind::Rate),
        affine_row(2, {-1, 0, -1, 0, -1, 0, 0}, RhsKind::Rate),
        affine_row(1, {0, 0, -1, -1, 0, -1, 0}, RhsKind::Rate),
        affine_row(2, {-1, 0, -1, -1, 0, -1, -1}, RhsKind::Rate),
        affine_row(2, {0, -1, -1, -1, -1, 0, -1}, RhsKind::Rate),
        affine_row(2, {-1, 0, -1, -1, 0, -1, 0}, RhsKind::MaxRatePhi),
        affine_row(2, {0, -1, -1, -1, -1, 0, 0}, RhsKind::MaxRatePhi),
    };
    if (ordered) model.orderings.push_back({4, 3});  // h2 <= h1
    return model;
}

ExponentLp make_exponent_instance(const std::string& name) {
    std::vector<std::string> parts;
    std::stringstream ss(name);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    try {
        if (parts.size() == 2 && parts[0] == "2r3s") {
            if (parts[1] == "ordered") return two_relay_three_slot_instance(true);
            if (parts[1] == "unordered") return two_relay_three_slot_instance(false);
        } else if (parts.size() == 3) {
            const int n = std::stoi(parts[1]);
            const int m = std::stoi(parts[2]);
            if (parts[0] == "genie") return genie_instance(n, m);
            if (parts[0] == "dumb") return dumb_instance(n, m);
            if (parts[0] == "smart") return smart_instance(n, m);
        }
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    throw ConfigError("unknown exponent instance '" + name +
                      "' (expected genie:N:M, dumb:N:M, smart:N:M, "
                      "2r3s:ordered or 2r3s:unordered)");
}

std::string ExponentLp::describe() const {
    std::ostringstream os;
    os << "instance " << label << ", rate scale " << rate_scale << "\n";
    os << "minimize";
    for (int i = 0; i < weights.size(); ++i) {
        os << (i ? " + " : " ") << weights[i] << "*" << var_names[i];
    }
    os << "  over [0,2]^" << weights.size() << "\n";
    auto print_affine = [&](const AffineExpr& e) {
        os << e.constant;
        for (int i = 0; i < e.coef.size(); ++i) {
            if (e.coef[i] == 0.0) continue;
            os << (e.coef[i] < 0 ? " - " : " + ") << std::abs(e.coef[i]) << "*"
               << var_names[i];
        }
    };
    if (phi) {
        os << "phi = ";
        print_affine(*phi);
        os << "\n";
    }
    for (const LpConstraint& c : constraints) {
        os << "  ";
        bool first = true;
        for (const TruncTerm& t : c.trunc) {
            if (!first) os << " + ";
            os << t.weight << "*(1-" << var_names[t.var] << ")^+";
            first = false;
        }
        if (c.affine.coef.size() > 0 || c.affine.constant != 0.0) {
            if (!first) os << " + ";
            print_affine(c.affine);
        }
        os << " <= ";
        switch (c.rhs) {
        case RhsKind::Rate: os << "r_H"; break;
        case RhsKind::MaxRatePhi: os << "max(r_H, phi)"; break;
        case RhsKind::Const: os << c.rhs_const; break;
        }
        os << "\n";
    }
    for (const auto& [a, b] : orderings) {
        os << "  " << var_names[a] << " <= " << var_names[b] << "\n";
    }
    return os.str();
}

double solve_exponent_lp(const ExponentLp& model, double r) {
    if (r < 0.0) throw ConfigError("solve_exponent_lp: negative multiplexing gain");
    const int n = static_cast<int>(model.weights.size());
    const double r_h = model.rate_scale * r;

    // Distinct truncated inners, in order of first appearance.
    std::vector<int> trunc_vars;
    for (const LpConstraint& c : model.constraints) {
        for (const TruncTerm& t : c.trunc) {
            if (std::find(trunc_vars.begin(), trunc_vars.end(), t.var) ==
                trunc_vars.end()) {
                trunc_vars.push_back(t.var);
            }
        }
    }
    const int n_trunc = static_cast<int>(trunc_vars.size());
    if (n_trunc > 20) throw EvalError("solve_exponent_lp: too many truncated terms");

    bool any_max_rhs = false;
    for (const LpConstraint& c : model.constraints) {
        if (c.rhs == RhsKind::MaxRatePhi) any_max_rhs = true;
    }
    if (any_max_rhs && !model.phi) {
        throw ConfigError("solve_exponent_lp: max(r,phi) constraint without phi");
    }
    const int n_phi_cases = any_max_rhs ? 2 : 1;

    double best = std::numeric_limits<double>::infinity();
    for (int phi_case = 0; phi_case < n_phi_cases; ++phi_case) {
        for (std::uint32_t pattern = 0; pattern < (1u << n_trunc); ++pattern) {
            std::vector<Eigen::VectorXd> rows;
            std::vector<double> rhs;
            auto add_row = [&](const Eigen::VectorXd& coef, double ub) {
                rows.push_back(coef);
                rhs.push_back(ub);
            };
            const auto active = [&](int var) {
                for (int t = 0; t < n_trunc; ++t) {
                    if (trunc_vars[t] == var) return (pattern >> t & 1u) != 0;
                }
                return false;
            };

            bool ok = true;
            for (const LpConstraint& c : model.constraints) {
                Eigen::VectorXd coef = Eigen::VectorXd::Zero(n);
                double cst = 0.0;
                if (c.affine.coef.size() > 0) {
                    coef += c.affine.coef;
                    cst += c.affine.constant;
                }
                for (const TruncTerm& t : c.trunc) {
                    if (active(t.var)) {
                        cst += t.weight;
                        coef[t.var] -= t.weight;
                    }
                }
                double ub = 0.0;
                switch (c.rhs) {
                case RhsKind::Rate: ub = r_h; break;
                case RhsKind::Const: ub = c.rhs_const; break;
                case RhsKind::MaxRatePhi:
                    if (phi_case == 0) {
                        ub = r_h;
                    } else {
                        coef -= model.phi->coef;
                        cst -= model.phi->constant;
                        ub = 0.0;
                    }
                    break;
                }
                add_row(coef, ub - cst);
            }
            // Activation pattern: active inner stays nonnegative, inactive
            // inner nonpositive.
            for (int t = 0; t < n_trunc; ++t) {
                Eigen::VectorXd coef = Eigen::VectorXd::Zero(n);
                if (pattern >> t & 1u) {
                    coef[trunc_vars[t]] = 1.0;
                    add_row(coef, 1.0);  // alpha <= 1
                } else {
                    coef[trunc_vars[t]] = -1.0;
                    add_row(coef, -1.0);  // alpha >= 1
                }
            }
            if (any_max_rhs) {
                if (phi_case == 0) {
                    add_row(model.phi->coef, r_h - model.phi->constant);  // phi <= r_H
                } else {
                    add_row(-model.phi->coef, model.phi->constant - r_h);  // phi >= r_H
                }
            }
            for (const auto& [a, b] : model.orderings) {
                Eigen::VectorXd coef = Eigen::VectorXd::Zero(n);
                coef[a] = 1.0;
                coef[b] = -1.0;
                add_row(coef, 0.0);
            }
            for (int i = 0; i < n; ++i) {
                Eigen::VectorXd coef = Eigen::VectorXd::Zero(n);
                coef[i] = 1.0;
                add_row(coef, 2.0);
            }
            if (!ok) continue;

            Eigen::MatrixXd a(rows.size(), n);
            Eigen::VectorXd b(rows.size());
            for (std::size_t i = 0; i < rows.size(); ++i) {
                a.row(i) = rows[i];
                b[i] = rhs[i];
            }
            if (const auto val = solve_lp_min(model.weights, a, b)) {
                best = std::min(best, *val);
            }
        }
    }
    if (!std::isfinite(best)) {
        throw EvalError("solve_exponent_lp: outage region empty in every case");
    }
    return best;
}

DmtCurve dmt_curve_from_lp(const ExponentLp& model, int grid_points) {
    if (grid_points < 5) throw ConfigError("dmt_curve_from_lp: need at least 5 grid points");
    const int k = grid_points;
    const double step = 1.0 / (k - 1);
    std::vector<double> r(k), d(k);
    for (int i = 0; i < k; ++i) {
        r[i] = i * step;
        d[i] = solve_exponent_lp(model, r[i]);
    }

    std::vector<double> slope(k - 1);
    for (int i = 0; i + 1 < k; ++i) slope[i] = (d[i + 1] - d[i]) / step;

    DmtCurve curve;
    curve.label = model.label;
    curve.points.push_back({0.0, d[0]});

    const double slope_tol = 1e-6;
    int i = 1;
    while (i < k - 1) {
        if (std::abs(slope[i] - slope[i - 1]) <= slope_tol) {
            ++i;
            continue;
        }
        // Maximal run of changing slopes; the segments flanking the run are
        // pure, so they define the incoming and outgoing lines.
        int run_end = i;
        while (run_end + 1 < k - 1 &&
               std::abs(slope[run_end + 1] - slope[run_end]) > slope_tol) {
            ++run_end;
        }
        const double ml = slope[i - 1];
        const double bl = d[i - 1] - ml * r[i - 1];
        const double mr = slope[run_end];
        const double br = d[run_end] - mr * r[run_end];

        // Bisect for the last point still on the incoming line.
        double lo = r[i - 1], hi = r[run_end + 1];
        while (hi - lo > 1e-6) {
            const double mid = 0.5 * (lo + hi);
            const double val = solve_exponent_lp(model, mid);
            if (std::abs(val - (ml * mid + bl)) < 1e-7) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        double bp = 0.5 * (lo + hi);
        // The line intersection is sharper when it agrees with the bisection.
        if (std::abs(ml - mr) > slope_tol) {
            const double xi = (bl - br) / (mr - ml);
            if (std::abs(xi - bp) <= 2e-6) bp = xi;
        }
        curve.points.push_back({bp, ml * bp + bl});
        i = run_end + 1;
    }
    curve.points.push_back({1.0, d[k - 1]});
    return curve;
}

} // namespace saf
