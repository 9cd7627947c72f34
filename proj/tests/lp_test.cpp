#include "saf/errors.hpp"
#include "saf/lp.hpp"

#include <doctest.h>

using namespace saf;

namespace {

std::optional<double> solve(const std::vector<double>& c,
                            const std::vector<std::vector<double>>& a,
                            const std::vector<double>& b) {
    const int n = static_cast<int>(c.size());
    const int m = static_cast<int>(a.size());
    Eigen::VectorXd cv(n), bv(m);
    Eigen::MatrixXd av(m, n);
    for (int j = 0; j < n; ++j) cv[j] = c[j];
    for (int i = 0; i < m; ++i) {
        bv[i] = b[i];
        for (int j = 0; j < n; ++j) av(i, j) = a[i][j];
    }
    return solve_lp_min(cv, av, bv);
}

} // namespace

TEST_CASE("trivial minimizations") {
    // min x s.t. x >= 1 (as -x <= -1)
    auto r = solve({1}, {{-1}}, {-1});
    REQUIRE(r.has_value());
    CHECK(*r == doctest::Approx(1.0).epsilon(1e-9));

    // unconstrained nonnegative variable
    r = solve({1}, {{1}}, {5});
    REQUIRE(r.has_value());
    CHECK(*r == doctest::Approx(0.0));
}

TEST_CASE("two-variable program with an active vertex") {
    // min x + 2y s.t. x + y >= 2, y >= 0.5  ->  x = 1.5, y = 0.5, value 2.5
    auto r = solve({1, 2}, {{-1, -1}, {0, -1}}, {-2, -0.5});
    REQUIRE(r.has_value());
    CHECK(*r == doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("infeasible and unbounded programs return nullopt") {
    // x <= -1 with x >= 0 is infeasible
    CHECK(!solve({1}, {{1}}, {-1}).has_value());
    // min -x with x unbounded above
    CHECK(!solve({-1}, {{0}}, {1}).has_value());
}

TEST_CASE("degenerate constraints do not cycle") {
    // multiple constraints active at the optimum
    auto r = solve({1, 1, 1},
                   {{-1, -1, 0}, {0, -1, -1}, {-1, 0, -1}, {-1, -1, -1}},
                   {-1, -1, -1, -1.5});
    REQUIRE(r.has_value());
    CHECK(*r == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("redundant equality-like rows are handled") {
    // x + y <= 1 and -(x + y) <= -1 pin x + y = 1; min x -> 0
    auto r = solve({1, 0}, {{1, 1}, {-1, -1}}, {1, -1});
    REQUIRE(r.has_value());
    CHECK(*r == doctest::Approx(0.0));
}

TEST_CASE("dimension mismatch is rejected") {
    Eigen::VectorXd c(2), b(1);
    Eigen::MatrixXd a(1, 3);
    c.setOnes();
    b.setOnes();
    a.setOnes();
    CHECK_THROWS_AS(solve_lp_min(c, a, b), ConfigError);
}
